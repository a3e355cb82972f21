import itertools
import json
import random

import networkx as nx
import pytest

from conftest import random_graph, to_nx
from farey_lab.generators import farey_with_order, generalised_halved_farey, halved_farey
from farey_lab.graph_core import Graph, InputError, complete_graph, path_edges
from farey_lab.grainline import GrainLine, check_grain_line
from farey_lab.immersion import (ImmersionModel, branch_levels, cut_bound_complete, cut_bound_farey_in_halved,
                                 find_immersion_bruteforce, immerse_halved_farey, verify_immersion,
                                 wild_separations_to_grainline)
from farey_lab.separations import CompoundSeparation


def permutation_oracle(H: Graph, G: Graph, strong: bool = True, allowed=None) -> bool:
    """Every injective branch map, then every edge-disjoint choice of simple routes."""
    g = to_nx(G)
    hv = list(H.vertices)
    he = list(H.sorted_edges())
    pool = list(G.vertices) if allowed is None else sorted(allowed)
    for image in itertools.permutations(pool, len(hv)):
        b = dict(zip(hv, image))
        if any(G.degree(b[h]) < H.degree(h) for h in hv):
            continue
        branch = set(image)

        def route(i, used):
            if i == len(he):
                return True
            s, t = b[he[i][0]], b[he[i][1]]
            sub = g
            if strong:
                sub = g.subgraph(v for v in g if v not in branch - {s, t})
            for p in nx.all_simple_paths(sub, s, t):
                es = {frozenset(e) for e in zip(p, p[1:])}
                if not es & used and route(i + 1, used | es):
                    return True
            return False
        if route(0, frozenset()):
            return True
    return False


def identity_model(G: Graph) -> ImmersionModel:
    return ImmersionModel(G, G, {v: v for v in G.vertices}, {e: e for e in G.sorted_edges()}, True)


def test_verify_examples():
    G = halved_farey(2).graph
    assert verify_immersion(identity_model(G)).ok
    tri = complete_graph(3, "t")
    host = Graph("abcd", [("a", "b"), ("b", "c"), ("c", "a"), ("c", "d"), ("d", "a")])
    routes = {("t0", "t1"): ("a", "b"), ("t1", "t2"): ("b", "c"), ("t0", "t2"): ("a", "b", "c")}
    model = ImmersionModel(tri, host, {"t0": "a", "t1": "b", "t2": "c"}, routes, False)
    rules = verify_immersion(model).rules()
    assert "edge_disjoint" in rules
    model = immerse_halved_farey(halved_farey(4).grain_line(), 2)
    assert verify_immersion(model).ok and model.strong


def test_verify_strong_rule():
    tri = complete_graph(3, "t")
    host = Graph("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    routes = {("t0", "t1"): ("a", "b"), ("t1", "t2"): ("b", "c"), ("t0", "t2"): ("a", "d", "c")}
    cycle = ImmersionModel(tri, host, {"t0": "a", "t1": "b", "t2": "c"}, routes, True)
    assert verify_immersion(cycle).ok
    host2 = Graph("abcd", [("a", "b"), ("b", "c"), ("b", "d"), ("d", "a"), ("a", "c")])
    routes2 = {("t0", "t1"): ("a", "b"), ("t1", "t2"): ("b", "c"), ("t0", "t2"): ("a", "c")}
    assert verify_immersion(ImmersionModel(tri, host2, {"t0": "a", "t1": "b", "t2": "c"}, routes2, True)).ok
    through = {("t0", "t1"): ("a", "d", "b"), ("t1", "t2"): ("b", "c"), ("t0", "t2"): ("a", "b", "c")}
    bad = ImmersionModel(tri, host2, {"t0": "a", "t1": "b", "t2": "c"}, through, True)
    assert "strong" in verify_immersion(bad).rules()
    assert "strong" not in verify_immersion(ImmersionModel(tri, host2, bad.branch, through, False)).rules()


def test_model_json_round_trip():
    model = immerse_halved_farey(halved_farey(3).grain_line(), 2)
    again = ImmersionModel.from_json(json.loads(json.dumps(model.to_json())))
    assert again.branch == model.branch and again.routes == model.routes and again.strong
    assert verify_immersion(again).ok


def test_bruteforce_examples():
    assert find_immersion_bruteforce(complete_graph(3), halved_farey(1).graph).status == "found"
    assert find_immersion_bruteforce(complete_graph(4), halved_farey(1).graph).status == "none"
    res = find_immersion_bruteforce(complete_graph(4), halved_farey(3).graph)
    assert res.status in ("found", "none")
    if res.status == "found":
        U = list(res.model.branch.values())
        assert not cut_bound_farey_in_halved(halved_farey(3), U).certifies_impossible
    assert res.status == ("found" if permutation_oracle(complete_graph(4), halved_farey(3).graph) else "none")


def test_bruteforce_budget_gives_unknown():
    res = find_immersion_bruteforce(complete_graph(5), halved_farey(3).graph, budget=3)
    assert res.status == "unknown" and res.model is None


def test_bruteforce_matches_permutation_oracle_on_100_pairs():
    rng = random.Random(17)
    for t in range(100):
        H = random_graph(rng, rng.randint(2, 4), rng.uniform(0.5, 1.0), "h")
        G = random_graph(rng, rng.randint(3, 9), rng.uniform(0.25, 0.8), "g")
        res = find_immersion_bruteforce(H, G, strong=True)
        assert res.status != "unknown"
        if res.status == "found":
            assert verify_immersion(res.model).ok and res.model.strong
        assert (res.status == "found") == permutation_oracle(H, G, strong=True)


def test_weak_search_matches_oracle_and_strong_implies_weak():
    rng = random.Random(23)
    for _ in range(60):
        H = random_graph(rng, rng.randint(3, 4), rng.uniform(0.6, 1.0), "h")
        G = random_graph(rng, rng.randint(4, 8), rng.uniform(0.3, 0.8), "g")
        strong = find_immersion_bruteforce(H, G, strong=True)
        weak = find_immersion_bruteforce(H, G, strong=False)
        if strong.status == "found":
            assert weak.status == "found"
        if weak.status == "found":
            assert verify_immersion(weak.model).ok
        assert (weak.status == "found") == permutation_oracle(H, G, strong=False)


def test_weak_but_not_strong():
    # found by random search; weak K^3 always gives strong K^3, so the pattern is K^4
    host = Graph(["g0", "g1", "g2", "g3", "g4", "g5"],
                 [("g0", "g2"), ("g0", "g3"), ("g0", "g4"), ("g1", "g2"), ("g1", "g5"), ("g2", "g3"),
                  ("g2", "g4"), ("g2", "g5"), ("g3", "g5")])
    K4 = complete_graph(4)
    assert find_immersion_bruteforce(K4, host, strong=True).status == "none"
    assert not permutation_oracle(K4, host, strong=True)
    weak = find_immersion_bruteforce(K4, host, strong=False)
    assert weak.status == "found" and verify_immersion(weak.model).ok


# the halved Farey construction

@pytest.mark.parametrize("m", range(4))
def test_construction_on_f6(m):
    model = immerse_halved_farey(halved_farey(6).grain_line(), m)
    assert verify_immersion(model).ok and model.strong
    assert [len(U) for U in branch_levels(model)] == [2 ** n + 1 for n in range(m + 1)]


def test_construction_small_cases():
    gl = halved_farey(6).grain_line()
    m0 = immerse_halved_farey(gl, 0)
    assert set(m0.branch.values()) == {"x", "y"} and list(m0.routes.values()) == [gl.paths[0]]
    ell = tuple(k + 2 for k in range(4))
    model = immerse_halved_farey(generalised_halved_farey(ell, 3).grain_line(), 2)
    assert verify_immersion(model).ok
    with pytest.raises(InputError, match="level 3"):
        immerse_halved_farey(halved_farey(2).grain_line(), 3)


def test_construction_reports_failing_level():
    theta = GrainLine("x", "y", ("x", "y"), [("x", f"t{i}", "y") for i in range(3)])
    with pytest.raises(InputError, match="level 1"):
        immerse_halved_farey(theta, 1)


# grain lines from chains of separations

def _apex_separation(gl, w):
    i = gl.L.index(w)
    return CompoundSeparation.make(gl.host, gl.L[:i + 1], gl.L[i:])


def test_wild_extraction_on_f4():
    h4 = halved_farey(4)
    gl = h4.grain_line()
    chain = [_apex_separation(gl, w) for w in ("2/0.1", "1/0.1", "2/1.1")]
    out = wild_separations_to_grainline(h4.graph, chain, "x", "y", paths=h4.paths)
    assert out.grain_line.L == ("x", "2/0.1", "1/0.1", "2/1.1", "y")
    assert check_grain_line(out.grain_line).ok and verify_immersion(out.model).ok
    assert len(out.grain_line.paths) == 4


def test_wild_extraction_edge_cases():
    h4 = halved_farey(4)
    gl = h4.grain_line()
    empty = wild_separations_to_grainline(h4.graph, [], "x", "y")
    assert empty.grain_line.L == ("x", "y") and verify_immersion(empty.model).ok
    s = _apex_separation(gl, "1/0.1")
    with pytest.raises(InputError, match="duplicate"):
        wild_separations_to_grainline(h4.graph, [s, s], "x", "y")
    unordered = [_apex_separation(gl, w) for w in ("1/0.1", "2/0.1")]
    with pytest.raises(InputError):
        wild_separations_to_grainline(h4.graph, unordered, "x", "y")


def test_wild_extraction_from_reversed_sides():
    h3 = halved_farey(3)
    gl = h3.grain_line()
    s = _apex_separation(gl, "1/0.1")
    flipped = CompoundSeparation(s.B, s.A, s.cross)
    out = wild_separations_to_grainline(h3.graph, [flipped], "x", "y", paths=h3.paths)
    assert out.grain_line.L == ("x", "1/0.1", "y")


# cut bounds

def test_cut_bound_complete_examples():
    F, cyc = farey_with_order(2)
    rep = cut_bound_complete(F, cyc, cyc[::2])
    assert not rep.vacuous and rep.min_slack == -1 and rep.certifies_impossible
    for row in rep.rows:
        arc = set(cyc[cyc.index(row.u) + 1:cyc.index(row.v)])
        other = set(cyc) - arc - {row.u, row.v}
        g = to_nx(F.remove_vertices([row.u, row.v]))
        # an independent count: edges leaving the arc in F - {u, v}
        assert row.supply == nx.cut_size(g, arc, other)
    assert cut_bound_complete(F, cyc, cyc[:3]).vacuous
    with pytest.raises(InputError):
        cut_bound_complete(F, cyc[:-1], cyc[:4])


def test_cut_bound_halved_examples():
    h3 = halved_farey(3)
    rep = cut_bound_farey_in_halved(h3, ["x", "1/0.1", "y"])
    (row,) = rep.rows
    G = h3.graph.remove_vertices(["1/0.1"])
    assert row.supply == nx.edge_connectivity(to_nx(G), "x", "y")
    assert row.demand == 1 and row.slack >= 0
    assert cut_bound_farey_in_halved(h3, ["x", "2/0.1"]).vacuous


@pytest.mark.parametrize("n", [1, 2])
def test_cut_bound_sound_on_small_hosts(n):
    F, cyc = farey_with_order(n)
    h = halved_farey(n)
    for host, bound in ((F, lambda U: cut_bound_complete(F, cyc, U)),
                        (h.graph, lambda U: cut_bound_farey_in_halved(h, U))):
        for k in range(3, 6):
            for U in itertools.combinations(host.vertices, k):
                if bound(U).certifies_impossible:
                    res = find_immersion_bruteforce(complete_graph(k), host, allowed=U, budget=2_000_000)
                    assert res.status == "none"
                    assert not permutation_oracle(complete_graph(k), host, allowed=U)


def test_cut_bound_with_pattern_demand():
    h4 = halved_farey(4)
    model = immerse_halved_farey(h4.grain_line(), 2)
    rep = cut_bound_farey_in_halved(h4, model.branch.values(), model.pattern, model.branch)
    assert not rep.certifies_impossible
    for row in rep.rows:
        assert row.demand <= row.supply
    with pytest.raises(InputError):
        cut_bound_farey_in_halved(h4, ["x", "y"], model.pattern, None)


def test_routes_use_the_right_levels():
    gl = halved_farey(5).grain_line()
    model = immerse_halved_farey(gl, 3)
    for (a, b), r in model.routes.items():
        level = max(0 if h in ("x", "y") else int(h.split("/")[0]) for h in (a, b))
        assert {gl.edge_depth[e] for e in path_edges(r)} == {level}
