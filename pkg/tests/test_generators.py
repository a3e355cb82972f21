import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import to_nx
from farey_lab.generators import (adversarial_length_function, blue_hamilton_paths, farey, farey_with_order,
                                  generalised_halved_farey, halved_farey, level_counts, validate_lengths)
from farey_lab.graph_core import InputError, edge_disjoint, girth, is_path, path_edges
from farey_lab.grainline import GrainLine, check_grain_line, check_prime_axioms, p_segments


@pytest.mark.parametrize("n", range(13))
def test_halved_counts(n):
    g = halved_farey(n).graph
    assert (len(g), g.num_edges()) == (2 ** n + 1, 2 ** (n + 1) - 1)


@pytest.mark.parametrize("n,v,e", [(0, 2, 1), (1, 3, 3), (3, 9, 15)])
def test_halved_examples(n, v, e):
    g = halved_farey(n).graph
    assert (len(g), g.num_edges()) == (v, e)


@pytest.mark.parametrize("n", range(11))
def test_farey_counts(n):
    g = farey(n)
    assert (len(g), g.num_edges()) == (2 ** (n + 1), 2 ** (n + 2) - 3)


def test_farey_small_cases():
    assert farey(0).num_edges() == 1
    g1 = farey(1)
    assert (len(g1), g1.num_edges()) == (4, 5)
    assert sorted(len(c) for c in nx.cycle_basis(to_nx(g1))) == [3, 3]


def test_halved_is_generalised_with_twos():
    a = halved_farey(4)
    b = generalised_halved_farey((1, 2, 2, 2, 2), 4)
    assert a.graph == b.graph and a.paths == b.paths
    assert nx.is_isomorphic(to_nx(generalised_halved_farey((1, 2, 2), 2).graph), to_nx(halved_farey(2).graph))


def test_example_lengths_k_plus_one():
    g = generalised_halved_farey((1, 2, 3), 2)
    assert (len(g.graph), g.graph.num_edges()) == (7, 9)
    assert [len(p) - 1 for p in blue_hamilton_paths(g)] == [1, 2, 6]


def test_blue_paths_examples():
    assert len(blue_hamilton_paths(halved_farey(2))[2]) - 1 == 4
    assert blue_hamilton_paths(halved_farey(0)) == [("x", "y")]
    with pytest.raises(InputError):
        blue_hamilton_paths(object())


lengths_strategy = st.integers(0, 4).flatmap(
    lambda n: st.tuples(st.integers(1, 3), *[st.integers(2, 4)] * n))


@given(lengths_strategy)
def test_generalised_invariants(ls):
    n = len(ls) - 1
    g = generalised_halved_farey(ls, n)
    assert (len(g.graph), g.graph.num_edges()) == level_counts(ls, n)
    blue = ls[0]
    for k, p in enumerate(g.paths):
        if k:
            blue *= ls[k]
        assert len(p) - 1 == blue
        assert p[0] == "x" and p[-1] == "y" and is_path(g.graph, p)
        assert {g.edge_level[e] for e in path_edges(p)} == {k}
    assert edge_disjoint(g.paths)
    assert set(g.blue) == {e for e, lv in g.edge_level.items() if lv == n}
    # every vertex lies on the order exactly once, which spans all vertices
    assert sorted(g.order) == sorted(g.graph.vertices)
    gl = g.grain_line()
    assert check_grain_line(gl).ok and check_prime_axioms(gl) == (True, True)
    for d in range(1, n + 1):
        assert {len(s) for s in p_segments(gl, d)} == {ls[d]}


@given(lengths_strategy)
def test_outerplanar_via_apex(ls):
    g = to_nx(generalised_halved_farey(ls, len(ls) - 1).graph)
    g.add_edges_from(("apex", v) for v in list(g.nodes))
    assert nx.check_planarity(g)[0]


def test_circular_layout_is_hamilton_cycle():
    g = generalised_halved_farey((1, 3, 2), 2)
    cyc = g.circular_layout()
    assert all(g.graph.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))


def test_farey_cyclic_order_is_hamilton_cycle():
    g, cyc = farey_with_order(3)
    assert sorted(cyc) == sorted(g.vertices)
    assert all(g.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_girth_construction(k):
    g = generalised_halved_farey((1, 3 * k, 3 * k), 2).graph
    assert girth(g) >= 3 * k + 1


def test_girth_example_six():
    assert girth(generalised_halved_farey((1, 6, 6), 2).graph) >= 7


def test_length_validation():
    with pytest.raises(InputError):
        validate_lengths((1, 1))
    with pytest.raises(InputError):
        validate_lengths((0,))
    with pytest.raises(InputError):
        generalised_halved_farey((1, 2), 3)
    with pytest.raises(InputError):
        halved_farey(-1)


def _uniform_family(length, count):
    paths = [("x",) + tuple(f"p{i}.{j}" for j in range(length - 1)) + ("y",) for i in range(count)]
    return GrainLine("x", "y", ("x", "y"), paths)


def test_adversarial_constant_input():
    assert adversarial_length_function([_uniform_family(2, 5)], 2) == (3, 3, 3)


def test_adversarial_two_families():
    fam1 = _uniform_family(2, 5)
    paths = [("x",) + tuple(f"q{i}.{j}" for j in range(4 if i == 2 else 1)) + ("y",) for i in range(5)]
    fam2 = GrainLine("x", "y", ("x", "y"), paths)
    ell = adversarial_length_function([fam1, fam2], 2)
    assert ell == (3, 6, 6)


def test_adversarial_errors():
    with pytest.raises(InputError):
        adversarial_length_function([], 1)
    with pytest.raises(InputError):
        adversarial_length_function([_uniform_family(2, 2)], 1)


family_lengths = st.lists(st.integers(2, 6), min_size=5, max_size=7)


@given(st.lists(family_lengths, min_size=1, max_size=4))
def test_adversarial_is_nondecreasing_and_exact(specs):
    fams = []
    for i, lengths in enumerate(specs):
        paths = [("x",) + tuple(f"f{i}p{j}.{t}" for t in range(n - 1)) + ("y",) for j, n in enumerate(lengths)]
        fams.append(GrainLine("x", "y", ("x", "y"), paths))
    ell = adversarial_length_function(fams, 2)
    assert all(a <= b for a, b in zip(ell, ell[1:]))
    for k in range(3):
        raw = 1 + max(specs[i][j] for i in range(min(2 * k + 1, len(specs))) for j in range(2 * k + 1))
        assert ell[k] == max(raw, {0: 1, 1: 2}.get(k, 0))
