"""Diving into a grain line and searching for subdivisions.

A grain line made of every other path of F_8 lives inside the full F_8 grain
line. Diving follows it into strictly deeper segments. The second half asks
whether a few small graphs occur as subdivisions in a generalised halved
Farey graph.

    python3 demos/02_diving.py
"""

from farey_lab import dive, find_subdivision, generalised_halved_farey, halved_farey
from farey_lab.graph_core import complete_graph
from farey_lab.grainline import sub_grain_line
from farey_lab.minors import check_dive_trace, interval_projection

outer = halved_farey(8).grain_line()
inner = sub_grain_line(outer, range(0, 9, 2))
proj = interval_projection(outer, inner)
print(f"inner limit set spans {proj.interval} in the {proj.orientation} order")

trace = dive(outer, inner, 3)
print(f"start index q = {trace.q}, depths p = {trace.p}")
for (u, v), seg in zip(trace.intervals[1:], trace.segments):
    print(f"  depth {seg.depth}: [{u}, {v}] via {len(seg)} edges")
print("trace invariants:", "ok" if check_dive_trace(outer, trace).ok else "violated")

host = generalised_halved_farey((1, 3, 3), 2).graph
for name, H in [("triangle", complete_graph(3)), ("F_1", halved_farey(1).graph), ("K_4", complete_graph(4))]:
    res = find_subdivision(H, host)
    extra = ""
    if res.found:
        extra = f", {sum(len(r) - 2 for r in res.model.routes.values())} subdividing vertices"
    print(f"{name} in F(1,3,3): {res.status} after {res.nodes} nodes{extra}")
