"""Grain lines in halved Farey graphs.

Builds the order-4 halved Farey graph, prints its blue paths and checks the
grain-line axioms. Then it swaps two limit vertices to show how a violation
is reported.

    python3 demos/01_grain_lines.py
"""

from farey_lab import GrainLine, check_grain_line, halved_farey
from farey_lab.grainline import check_prime_axioms, is_wildly_presented, p_segments

h = halved_farey(4)
print(f"F_4 has {len(h.graph)} vertices and {h.graph.num_edges()} edges")
for k, p in enumerate(h.paths):
    print(f"  P_{k} has length {len(p) - 1}")

gl = h.grain_line()
print("axioms hold:", check_grain_line(gl).ok)
print("primed axioms:", check_prime_axioms(gl))
print("wildly presented:", is_wildly_presented(gl))

# depth-2 segments sit between consecutive limit vertices of depth < 2
for seg in p_segments(gl, 2):
    print(f"  segment {seg.u} .. {seg.v}: {' '.join(seg.path)}")

L = list(gl.L)
i, j = L.index("1/0.1"), L.index("2/0.1")
L[i], L[j] = L[j], L[i]
broken = GrainLine(gl.x, gl.y, tuple(L), gl.paths)
print("after swapping two limit vertices:")
print(check_grain_line(broken))
