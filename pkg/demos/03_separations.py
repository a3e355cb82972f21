"""Edge-blocks, tree-cut decompositions and unitary separations.

Three triangles in a row decompose along their bridges. In F_3 the first
apex splits x from y with a single cross edge. The faithful set at that apex
is a star, and peeling F_5 repeatedly keeps the pieces edge-disjoint.

    python3 demos/03_separations.py
"""

from farey_lab import halved_farey
from farey_lab.graph_core import Graph
from farey_lab.separations import (edge_blocks, faithful_set, find_compound_separation, iterated_split,
                                   star_orientation, tree_cut_decomposition)

edges = []
for i in range(3):
    a, b, c = f"{i}a", f"{i}b", f"{i}c"
    edges += [(a, b), (b, c), (a, c)]
    if i:
        edges.append((f"{i - 1}c", a))
row = Graph({v for e in edges for v in e}, edges)
tcd = tree_cut_decomposition(row, 2)
print("blocks:", [sorted(b) for b in edge_blocks(row, 2)])
print("adhesion:", {f"{s}-{t}": sorted(es) for (s, t), es in tcd.adhesion.items()})

G = halved_farey(3).graph
sep = find_compound_separation(G, "x", "y", s=1, f=3)
print(f"x and y split at {sorted(sep.separator)} with {len(sep.cross)} cross edge(s)")

seps = faithful_set(G, "1/0.1", 2)
print(f"faithful set at 1/0.1: {len(seps)} separations, star: {star_orientation(seps) is not None}")
for s in seps:
    print("  small side", sorted(s.A - s.B))

rep = iterated_split(halved_farey(5).graph, f=16, steps=3)
for n, step in enumerate(rep.steps):
    print(f"step {n}: separator {sorted(step.separation.separator)}, checks {step.checks}")
