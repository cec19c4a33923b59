"""
Similar past cases on a shared timeline
=======================================

"""

import tempfile

from sibyl.dataio import generate_demo_corpus
from sibyl.neighbors import assemble_timelines, find_similar
from sibyl.service import DataPaths, build_state

out = tempfile.mkdtemp(prefix="sibyl-demo-")
generate_demo_corpus(60, 10, seed=3, out_dir=out)
state = build_state(DataPaths.in_dir(out))

# Retrieval runs over z-scored factor values, so a one-unit gap in a rare
# count weighs the same as a one-sigma gap in a common one.
case = state.corpus.cases[0]
result = find_similar(case, state.corpus, state.standardizer, k=3)
print(f"nearest neighbors of case {case.id}:")
for neighbor_id, dist in result.neighbors:
    print(f"  {neighbor_id}  distance {dist:.3f}")

# Each case carries its referral and outcome events. Lining the timelines up
# on one calendar axis shows how the histories overlap.
bundle = assemble_timelines(
    state.timelines[case.id],
    [state.timelines[nid] for nid, _ in result.neighbors],
)
if bundle.empty:
    print("no recorded events for these cases")
else:
    print(f"shared axis {bundle.axis_start} to {bundle.axis_end}")
    for timeline_row in bundle.rows:
        marker = "*" if timeline_row.is_current else " "
        events = ", ".join(
            f"{e.date} {e.kind}" for e in timeline_row.events
        ) or "(no events)"
        print(f" {marker} {timeline_row.case_id}: {events}")
