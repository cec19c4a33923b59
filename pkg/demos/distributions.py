"""
How factor values distribute inside one score band
==================================================

"""

import tempfile

from sibyl.dataio import generate_demo_corpus
from sibyl.service import DataPaths, build_state, distributions_payload

out = tempfile.mkdtemp(prefix="sibyl-demo-")
generate_demo_corpus(60, 10, seed=3, out_dir=out)
state = build_state(DataPaths.in_dir(out))

# Pick the best-populated score band. Each band is the slice of reference
# cases whose raw output lands in that ventile.
score = max(
    range(1, 21), key=lambda s: len(state.slice_index.cases_for(s))
)
payload = distributions_payload(state, score)
print(
    f"score {score}: {payload['case_count']} reference cases, "
    f"removal rate {payload['removal_rate_pct']:.1f}%"
)

# Binary factors summarize to a share, numeric ones to a five-number box
# with the corpus-wide range for context, categoricals to label percentages.
for widget in payload["factors"]:
    if widget["kind"] == "binary":
        print(f"  {widget['display_name']}: {widget['pct_true']:.1f}% true")
    elif widget["kind"] == "numeric":
        box = widget["box"]
        print(
            f"  {widget['display_name']}: "
            f"median {box['median']:.1f}, "
            f"slice {box['slice_min']:.1f}..{box['slice_max']:.1f}, "
            f"corpus {box['global_min']:.1f}..{box['global_max']:.1f}"
        )
    else:
        shares = ", ".join(
            f"{s['label']} {s['pct']:.0f}%" for s in widget["segments"]
        )
        print(f"  {widget['display_name']}: {shares}")
