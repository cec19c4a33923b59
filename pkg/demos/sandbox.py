"""
What-if sandbox: edit factor values and watch the score respond
===============================================================

"""

import tempfile

from sibyl.dataio import generate_demo_corpus
from sibyl.model import predict_score
from sibyl.service import DataPaths, build_state
from sibyl.whatif import FactorChange, flip_all_booleans, whatif_score

out = tempfile.mkdtemp(prefix="sibyl-demo-")
generate_demo_corpus(60, 10, seed=3, out_dir=out)
state = build_state(DataPaths.in_dir(out))

case = state.corpus.cases[0]
score = predict_score(state.model, state.bins, case)
print(f"case {case.id} currently scores {score}")

# Changes are expressed against presented factors, so a categorical edit
# moves the whole one-hot group at once. Up to four edits per request.
numeric = next(f for f in state.schema.presented if f.kind == "numeric")
flag = next(f for f in state.schema.presented if f.kind == "binary")
changes = [
    FactorChange(factor=numeric.display_name, new_value=0),
    FactorChange(factor=flag.display_name,
                 new_value=1.0 - case.values[flag.source_factors[0]]),
]
result = whatif_score(state.model, state.bins, state.schema, case, changes)
print(f"after editing {numeric.display_name!r} and {flag.display_name!r}:")
print(f"  raw {result.old_raw:+.4f} -> {result.new_raw:+.4f}")
print(f"  score {result.old_score} -> {result.new_score} ({result.direction})")

# The flip table answers a different question: for each standalone Boolean
# factor on its own, what would the score be if it were reversed? Every row
# starts from the unmodified case.
table = flip_all_booleans(state.model, state.bins, state.schema, case)
print(f"one-at-a-time flips from score {table.old_score}:")
for flip in table.rows:
    print(f"  score {flip.new_score:>2} ({flip.direction:<9})  {flip.statement}")
