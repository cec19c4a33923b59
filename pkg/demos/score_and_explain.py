"""
Scoring a case and reading its factor contributions
===================================================

"""

import tempfile

from sibyl.dataio import generate_demo_corpus
from sibyl.explain import local_contributions
from sibyl.model import predict_raw, predict_score
from sibyl.present import merge_contributions, top_k
from sibyl.service import DataPaths, build_state

# Build a small synthetic corpus. The generator writes the same five files
# the service reads: model, factor metadata, cases, outcomes, events.
out = tempfile.mkdtemp(prefix="sibyl-demo-")
generate_demo_corpus(60, 10, seed=3, out_dir=out)
paths = DataPaths.in_dir(out)
state = build_state(paths)

# Pick a case and translate the raw additive output into the 1-20 score.
case = state.corpus.cases[0]
raw = predict_raw(state.model, case)
score = predict_score(state.model, state.bins, case)
print(f"case {case.id}: raw output {raw:+.4f}, risk score {score}")

# Per-factor contributions are exact for an additive model: each factor
# moves the prediction by weight * (value - reference mean).
contribs = local_contributions(state.model, state.stats, case)
print(f"base value (reference average): {contribs.base_value:+.4f}")

# Screeners see presented rows, where one-hot groups collapse to a single
# categorical factor. The default view keeps the ten largest magnitudes.
rows = merge_contributions(state.schema, contribs, case)
for row in top_k(rows):
    print(f"  {row.contribution:+8.4f}  {row.label:<11}  {row.display_name}")

# Contributions plus the base value reproduce the raw output exactly.
total = contribs.base_value + sum(contribs.contributions.values())
print(f"base + contributions = {total:+.4f} (raw {raw:+.4f})")
