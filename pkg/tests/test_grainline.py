import json

import pytest
from hypothesis import given, strategies as st

from farey_lab.generators import generalised_halved_farey, halved_farey
from farey_lab.graph_core import InputError, path_edges, separates
from farey_lab.grainline import (GrainLine, all_segments, check_grain_line, check_prime_axioms,
                                 check_vertex_separation, density_report, depth, extract_exhaustive,
                                 extract_grain_line, extract_greedy, from_paths, is_free, is_well_structured,
                                 is_wildly_presented, p_segments, separation_at_vertex, sub_grain_line)


def disjoint_paths(k, length):
    return [("x",) + tuple(f"p{i}.{j}" for j in range(length - 1)) + ("y",) for i in range(k)]


def test_example_on_f3_is_valid():
    assert check_grain_line(halved_farey(3).grain_line()).ok


def test_two_disjoint_paths_valid():
    assert check_grain_line(GrainLine("x", "y", ("x", "y"), disjoint_paths(2, 2))).ok


def test_swapping_limit_vertices_breaks_gl3():
    gl = halved_farey(3).grain_line()
    L = list(gl.L)
    i, j = L.index("1/0.1"), L.index("2/0.1")
    L[i], L[j] = L[j], L[i]
    rep = check_grain_line(GrainLine(gl.x, gl.y, tuple(L), gl.paths, host=gl.host))
    assert "GL3" in rep.rules()
    assert any(v.witness for v in rep.violations)


def test_gl1_and_gl2_violations():
    # a limit vertex that leaves the later paths breaks GL1
    paths = [("x", "a", "y"), ("x", "b", "y"), ("x", "c", "a", "d", "y")]
    rep = check_grain_line(GrainLine("x", "y", ("x", "a", "y"), paths))
    assert "GL1" in rep.rules()
    # a non-limit vertex on two paths breaks GL2
    paths = [("x", "y"), ("x", "a", "b", "y"), ("x", "c", "a", "d", "y")]
    rep = check_grain_line(GrainLine("x", "y", ("x", "y"), paths))
    assert "GL2" in rep.rules()


def test_edge_sharing_paths_flagged():
    paths = [("x", "a", "y"), ("x", "a", "b", "y")]
    assert "disjoint" in check_grain_line(GrainLine("x", "y", ("x", "a", "y"), paths)).rules()


@pytest.mark.parametrize("n", range(11))
def test_halved_farey_properties(n):
    gl = halved_farey(n).grain_line()
    assert check_prime_axioms(gl) == (True, True)
    assert (is_well_structured(gl), is_free(gl), is_wildly_presented(gl)) == (True, True, True)
    assert density_report(gl) == []


def test_prime_axioms_examples():
    g = generalised_halved_farey((1, 3, 2), 2)
    # L omits mid-path vertex 1/0.1 of P_1
    short = GrainLine("x", "y", ("x", "1/0.2", "y"), g.paths[:2], host=g.graph)
    assert check_grain_line(short).ok
    assert check_prime_axioms(short)[0] is False
    theta = GrainLine("x", "y", ("x", "y"), disjoint_paths(3, 3))
    assert check_prime_axioms(theta) == (False, True)
    with pytest.raises(InputError):
        check_prime_axioms(GrainLine("x", "y", ("x", "a", "y"), [("x", "a", "y"), ("x", "b", "y")]))


def test_extract_examples():
    h5 = halved_farey(5)
    gl = extract_grain_line(h5.paths)
    assert gl.paths == h5.paths and check_grain_line(gl).ok
    gl = extract_grain_line(disjoint_paths(4, 3))
    assert len(gl.paths) == 4 and gl.L == ("x", "y")
    paths = [("x", "a", "b", "y"), ("x", "c", "a", "d", "b", "g", "y"), ("x", "e", "b", "f", "a", "h", "y")]
    gl = extract_grain_line(paths)
    assert gl.paths == tuple(paths[:2]) and check_grain_line(gl).ok


def test_extract_errors():
    with pytest.raises(InputError):
        extract_grain_line([("x", "y")])
    with pytest.raises(InputError):
        extract_grain_line([("x", "a", "y"), ("x", "a", "b")])
    with pytest.raises(InputError):
        extract_grain_line([("x", "a", "y"), ("x", "a", "y")])


@st.composite
def path_families(draw):
    """Pairwise edge-disjoint x-y paths over a small shared vertex pool."""
    pool = [f"v{i}" for i in range(6)]
    k = draw(st.integers(2, 6))
    used = set()
    paths = []
    for _ in range(k):
        inner = draw(st.lists(st.sampled_from(pool), unique=True, max_size=4))
        p = ("x",) + tuple(inner) + ("y",)
        es = set(path_edges(p))
        if es & used:
            continue
        used |= es
        paths.append(p)
    return paths


@given(path_families())
def test_extract_output_always_valid(paths):
    if len(paths) < 2:
        return
    try:
        gl = extract_grain_line(paths)
    except InputError:
        assert extract_exhaustive(paths) is None
        return
    assert check_grain_line(gl).ok
    it = iter(paths)
    assert all(any(p == q for q in it) for p in gl.paths)  # a subsequence of the input


@given(path_families())
def test_greedy_never_beats_exhaustive(paths):
    if len(paths) < 2:
        return
    ex, gr = extract_exhaustive(paths), extract_greedy(paths)
    if gr is not None:
        assert ex is not None and len(ex.paths) >= len(gr.paths)
        assert check_grain_line(gr).ok


lengths_strategy = st.integers(0, 4).flatmap(
    lambda n: st.tuples(st.integers(1, 3), *[st.integers(2, 4)] * n))


@given(lengths_strategy)
def test_edge_depth_at_least_endpoint_depths(ls):
    gl = generalised_halved_farey(ls, len(ls) - 1).grain_line()
    for (a, b), d in gl.edge_depth.items():
        assert d >= max(gl.vertex_depth[a], gl.vertex_depth[b])


def test_depth_examples():
    gl = halved_farey(3).grain_line()
    assert depth(gl, "x") == 0
    assert depth(halved_farey(1).grain_line(), "1/0.1") == 1
    assert depth(gl, ("x", "y")) == 0
    with pytest.raises(InputError):
        depth(gl, "nowhere")


def test_segment_examples():
    segs = p_segments(halved_farey(2).grain_line(), 2)
    assert len(segs) == 2 and all(len(s) == 2 for s in segs)
    g = generalised_halved_farey((1, 2, 3), 2).grain_line()
    assert {len(s) for s in p_segments(g, 2)} == {3}
    segs = p_segments(halved_farey(4).grain_line(), 1)
    assert [(s.u, s.v) for s in segs] == [("x", "y")]
    with pytest.raises(InputError):
        p_segments(halved_farey(2).grain_line(), 3)


def test_free_and_wild_counterexample():
    gl = GrainLine("x", "y", ("x", "y"), disjoint_paths(2, 3))
    assert (is_well_structured(gl), is_free(gl), is_wildly_presented(gl)) == (True, False, False)


def test_free_on_restricted_limit_set():
    g = generalised_halved_farey((1, 2, 4), 2)
    full = g.grain_line()
    assert is_free(full)
    # keep only the branch vertices of P_1 as limit vertices
    restricted = GrainLine("x", "y", ("x", "1/0.1", "y"), g.paths[:2], host=g.graph)
    assert check_grain_line(restricted).ok and is_free(restricted)
    three = from_paths(g.paths, "shared", host=g.graph)
    assert check_grain_line(three).ok and not is_free(three)


def test_separation_examples():
    gl2 = halved_farey(2).grain_line()
    v, es = separation_at_vertex(gl2, "1/0.1")
    assert len(es) == 3 and check_vertex_separation(gl2, v)
    gl1 = halved_farey(1).grain_line()
    v, es = separation_at_vertex(gl1, "1/0.1")
    rest = gl1.union.remove_vertices([v]).remove_edges(es)
    assert separates(rest, ["x"], ["y"])
    with pytest.raises(InputError):
        separation_at_vertex(gl2, "x")


@pytest.mark.parametrize("ell", [lambda n: (1,) + (2,) * n, lambda n: tuple([1] + list(range(2, n + 2))),
                                 lambda n: (1,) + (3,) * n])
@pytest.mark.parametrize("n", range(5))
def test_vertex_separation_everywhere(ell, n):
    gl = generalised_halved_farey(ell(n), n).grain_line()
    assert all(check_vertex_separation(gl, v) for v in gl.L if v not in (gl.x, gl.y))


def test_json_round_trip():
    gl = halved_farey(3).grain_line()
    again = GrainLine.from_json(json.loads(json.dumps(gl.to_json())), host=gl.host)
    assert again == gl
    with pytest.raises(InputError):
        GrainLine.from_json({"x": "x"})


def test_sub_grain_line_keeps_host():
    gl = halved_farey(4).grain_line()
    sub = sub_grain_line(gl, [0, 2, 4])
    assert sub.host == gl.host and check_grain_line(sub).ok
    assert all(len(s) >= 1 for s in all_segments(sub))


def test_interval_and_before():
    gl = halved_farey(2).grain_line()
    assert gl.before(1) == ["x", "y"]
    assert gl.interval("x", "1/0.1", (True, False)) == ["x", "2/0.1"]
    assert gl.lt("x", "y") and not gl.lt("y", "x")
