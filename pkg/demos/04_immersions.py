"""Immersions of halved Farey graphs and crossing-edge bounds.

The construction places F_3 inside the grain line of F_6 level by level.
Then the crossing-edge bound on the order-2 Farey graph rules out some
placements of K_4, which exhaustive search confirms.

    python3 demos/04_immersions.py
"""

from itertools import combinations

from farey_lab import farey_with_order, halved_farey, immerse_halved_farey, verify_immersion
from farey_lab.graph_core import complete_graph
from farey_lab.immersion import branch_levels, cut_bound_complete, find_immersion_bruteforce

model = immerse_halved_farey(halved_farey(6).grain_line(), 3)
print("strong immersion verifies:", verify_immersion(model).ok)
for n, U in enumerate(branch_levels(model)):
    print(f"  |U_{n}| = {len(U)}")

F, cyc = farey_with_order(2)
certified = found = 0
for U in combinations(F.vertices, 4):
    if cut_bound_complete(F, cyc, U).certifies_impossible:
        certified += 1
        res = find_immersion_bruteforce(complete_graph(4), F, allowed=U)
        found += res.status == "found"
print(f"{certified} placements of K_4 ruled out by the bound, {found} contradicted by search")
