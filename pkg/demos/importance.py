"""
Global factor importance by permutation
=======================================

"""

import tempfile

from sibyl.dataio import generate_demo_corpus
from sibyl.explain import global_importance
from sibyl.service import DataPaths, build_state

out = tempfile.mkdtemp(prefix="sibyl-demo-")
generate_demo_corpus(60, 10, seed=3, out_dir=out)
state = build_state(DataPaths.in_dir(out))

# Shuffle one factor's column across the reference corpus and measure how
# much the squared error against the recorded outcomes grows. Factors the
# model ignores change nothing, so their importance is exactly zero.
report = global_importance(
    state.model, state.corpus, state.outcomes, repeats=10, seed=42
)
print(f"metric: {report.metric_name}, {report.repeats} repeats, seed {report.seed}")
for entry in report.entries:
    bar = "#" * round(40 * entry.relative_importance)
    description = state.schema.metas[entry.factor].description
    print(f"  {entry.relative_importance:5.2f} {bar:<40} {description}")
