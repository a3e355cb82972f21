"""Grain lines at a finite horizon.

A grain line here is a finite sequence P_0..P_m of pairwise edge-disjoint
x-y paths plus an ordered vertex list L (the limit vertices).  The axioms
are checked as restricted to indices 0..m: "final segment of N" becomes
"final segment of 0..m".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .graph_core import (Edge, Graph, InputError, Path, edge, graph_from_paths, is_path,
                         path_edges, separates, subpath)
from .reports import ValidationReport


@dataclass(frozen=True)
class Segment:
    depth: int
    path: Path
    u: str
    v: str

    def __len__(self) -> int:
        return len(self.path) - 1


@dataclass(frozen=True, eq=False)
class GrainLine:
    x: str
    y: str
    L: tuple
    paths: tuple
    host: Graph | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "L", tuple(self.L))
        object.__setattr__(self, "paths", tuple(tuple(p) for p in self.paths))
        if self.host is None:
            object.__setattr__(self, "host", graph_from_paths(self.paths))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrainLine):
            return NotImplemented
        return (self.x, self.y, self.L, self.paths) == (other.x, other.y, other.L, other.paths)

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.L, self.paths))

    @property
    def m(self) -> int:
        """Index of the last path (the horizon)."""
        return len(self.paths) - 1

    @cached_property
    def rank(self) -> dict:
        return {v: i for i, v in enumerate(self.L)}

    @cached_property
    def L_set(self) -> frozenset:
        return frozenset(self.L)

    @cached_property
    def vertex_depth(self) -> dict:
        d: dict = {}
        for n, p in enumerate(self.paths):
            for v in p:
                d.setdefault(v, n)
        return d

    @cached_property
    def edge_depth(self) -> dict:
        d: dict = {}
        for n, p in enumerate(self.paths):
            for e in path_edges(p):
                d.setdefault(e, n)
        return d

    @cached_property
    def memberships(self) -> dict:
        idx: dict = {}
        for n, p in enumerate(self.paths):
            for v in p:
                idx.setdefault(v, []).append(n)
        return idx

    @cached_property
    def union(self) -> Graph:
        """The graph defined by the grain line (union of its paths)."""
        return graph_from_paths(self.paths)

    def before(self, n: int) -> list:
        """L_{<n} in L-order: limit vertices of depth less than n."""
        depth = self.vertex_depth
        return [v for v in self.L if depth.get(v, self.m + 1) < n]

    def interval(self, u: str, v: str, closed: tuple[bool, bool] = (True, True)) -> list:
        i, j = self.rank[u], self.rank[v]
        lo = i if closed[0] else i + 1
        hi = j if closed[1] else j - 1
        return list(self.L[lo:hi + 1])

    def lt(self, u: str, v: str) -> bool:
        return self.rank[u] < self.rank[v]

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y, "L": list(self.L), "paths": [list(p) for p in self.paths]}

    @classmethod
    def from_json(cls, data: dict, host: Graph | None = None) -> "GrainLine":
        try:
            return cls(data["x"], data["y"], data["L"], data["paths"], host=host)
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed grain-line JSON: {exc}") from exc


def limit_from_paths(paths: Sequence[Sequence[str]], rule: str = "shared") -> tuple:
    """Choose L for a path sequence, ordered by the last path.

    ``shared``: x, y and every vertex on at least two paths.
    ``final``: every vertex whose path indices form a final segment.
    """
    if rule not in ("shared", "final"):
        raise InputError(f"unknown limit rule {rule!r}")
    m = len(paths) - 1
    idx: dict = {}
    for n, p in enumerate(paths):
        for v in p:
            idx.setdefault(v, []).append(n)
    x, y = paths[0][0], paths[0][-1]
    keep = set()
    for v, ns in idx.items():
        if v in (x, y):
            keep.add(v)
        elif rule == "shared" and len(ns) >= 2:
            keep.add(v)
        elif rule == "final" and ns == list(range(ns[0], m + 1)):
            keep.add(v)
    last = paths[-1]
    ordered = [v for v in last if v in keep]
    # anything kept but not on the last path breaks GL1; put it at the end so the checker flags it
    ordered += sorted(keep.difference(ordered))
    return tuple(ordered)


def from_paths(paths: Sequence[Sequence[str]], rule: str = "shared", host: Graph | None = None) -> GrainLine:
    if not paths:
        raise InputError("need at least one path")
    paths = [tuple(p) for p in paths]
    return GrainLine(paths[0][0], paths[0][-1], limit_from_paths(paths, rule), paths, host=host)


def sub_grain_line(gl: GrainLine, indices: Iterable[int], rule: str = "final") -> GrainLine:
    """Grain line on a subsequence of gl's paths, hosted in the same graph."""
    ps = [gl.paths[i] for i in indices]
    return from_paths(ps, rule, host=gl.host)


# checks

def check_grain_line(gl: GrainLine) -> ValidationReport:
    rep = ValidationReport()
    if gl.x == gl.y:
        rep.add("shape", "x and y coincide", gl.x)
    if len(set(gl.L)) != len(gl.L):
        rep.add("shape", "L lists a vertex twice")
    if not gl.L or gl.L[0] != gl.x or gl.L[-1] != gl.y:
        rep.add("shape", "L must start at x and end at y", (gl.L[:1], gl.L[-1:]))
    if not gl.paths:
        rep.add("shape", "no paths")
        return rep
    for n, p in enumerate(gl.paths):
        if not is_path(gl.host, p):
            rep.add("path", f"P_{n} is not a path of the host graph", n)
        if p[0] != gl.x or p[-1] != gl.y:
            rep.add("path", f"P_{n} does not run from x to y", n)
    owner: dict[Edge, int] = {}
    for n, p in enumerate(gl.paths):
        for e in path_edges(p):
            if e in owner:
                rep.add("disjoint", f"edge {e} lies on P_{owner[e]} and P_{n}", e)
            else:
                owner[e] = n
    m = gl.m
    members = gl.memberships
    for v in gl.L:
        ns = members.get(v)
        if not ns or ns != list(range(ns[0], m + 1)):
            rep.add("GL1", f"limit vertex {v} does not lie on a final segment of the paths", (v, ns))
    for v, ns in members.items():
        if v not in gl.L_set and len(ns) > 1:
            rep.add("GL2", f"vertex {v} outside L lies on paths {ns}", (v, ns))
    rank = gl.rank
    depth = gl.vertex_depth
    for n in range(1, m + 1):
        seq = [v for v in gl.paths[n] if v in rank and depth[v] < n]
        for a, b in zip(seq, seq[1:]):
            if rank[a] > rank[b]:
                rep.add("GL3", f"P_{n} visits {a} before {b}, against the order of L", (n, a, b))
                break
    return rep


def check_prime_axioms(gl: GrainLine) -> tuple[bool, bool]:
    """(GL2', GL3') for a valid grain line.

    GL3' is read on L: every path order restricted to L agrees with L, and
    every pair of L is ordered by some path.
    """
    rep = check_grain_line(gl)
    if not rep.ok:
        raise InputError(f"not a valid grain line:\n{rep}")
    on_paths = set(gl.memberships)
    gl2 = gl.L_set == on_paths
    rank = gl.rank
    gl3 = True
    for p in gl.paths:
        seq = [rank[v] for v in p if v in rank]
        if any(a > b for a, b in zip(seq, seq[1:])):
            gl3 = False
            break
    if gl3:
        members = gl.memberships
        sets = [set(members.get(v, ())) for v in gl.L]
        common = set.intersection(*sets) if sets else set()
        if not common:
            gl3 = all(sets[i] & sets[j] for i in range(len(sets)) for j in range(i + 1, len(sets)))
    return gl2, gl3


def depth(gl: GrainLine, item) -> int:
    """Index of the first path containing a vertex, or an edge given as a pair."""
    if isinstance(item, str):
        if item not in gl.vertex_depth:
            raise InputError(f"vertex {item} lies on no path")
        return gl.vertex_depth[item]
    e = edge(*item)
    if e not in gl.edge_depth:
        raise InputError(f"edge {e} lies on no path")
    d = gl.edge_depth[e]
    assert d >= max(gl.vertex_depth[e[0]], gl.vertex_depth[e[1]])
    return d


def p_segments(gl: GrainLine, d: int) -> list[Segment]:
    if not 1 <= d <= gl.m:
        raise InputError(f"depth {d} outside 1..{gl.m}")
    older = gl.before(d)
    path = gl.paths[d]
    return [Segment(d, subpath(path, u, v), u, v) for u, v in zip(older, older[1:])]


def all_segments(gl: GrainLine) -> list[Segment]:
    return [s for d in range(1, gl.m + 1) for s in p_segments(gl, d)]


def is_well_structured(gl: GrainLine) -> bool:
    rank = gl.rank
    for seg in all_segments(gl):
        lo, hi = rank[seg.u], rank[seg.v]
        if any(v in rank and not lo <= rank[v] <= hi for v in seg.path):
            return False
    return True


def is_free(gl: GrainLine) -> bool:
    return gl.L_set == frozenset(gl.union.vertices)


def is_wildly_presented(gl: GrainLine) -> bool:
    # For a valid grain line it suffices to test L_{<n}-consecutive pairs: any
    # other pair u < v has a member of L_{<n} strictly between it, lying on u P_n v.
    rank = gl.rank
    for seg in all_segments(gl):
        lo, hi = rank[seg.u], rank[seg.v]
        if not any(v in rank and lo < rank[v] < hi for v in seg.path[1:-1]):
            return False
    return True


def density_report(gl: GrainLine) -> list[tuple[int, str, str]]:
    """Gaps of L_{<n} (for n in 1..m) with no later limit vertex inside them.

    An empty list means every gap is eventually refined within the horizon.
    """
    depth_of = gl.vertex_depth
    bad = []
    for n in range(1, gl.m + 1):
        older = gl.before(n)
        for u, v in zip(older, older[1:]):
            inside = gl.interval(u, v, (False, False))
            if not any(depth_of.get(w, -1) >= n for w in inside):
                bad.append((n, u, v))
    return bad


def separation_at_vertex(gl: GrainLine, v: str) -> tuple[str, frozenset]:
    """v and the edges of depth at most depth(v), which separate [x,v) from (v,y]."""
    if v not in gl.rank or v in (gl.x, gl.y):
        raise InputError(f"{v} must be a limit vertex other than x and y")
    if not is_well_structured(gl):
        raise InputError("grain line is not well-structured")
    d = gl.vertex_depth[v]
    return v, frozenset(e for e, k in gl.edge_depth.items() if k <= d)


def check_vertex_separation(gl: GrainLine, v: str) -> bool:
    """Reachability check that separation_at_vertex really separates."""
    w, es = separation_at_vertex(gl, v)
    rest = gl.union.remove_edges(es).remove_vertices([w])
    left = gl.interval(gl.x, w, (True, False))
    right = gl.interval(w, gl.y, (False, True))
    return separates(rest, left, right)


# extraction

def _valid_subsequence(paths: Sequence[Path]) -> GrainLine | None:
    gl = from_paths(paths, "shared")
    return gl if check_grain_line(gl).ok else None


def extract_exhaustive(paths: Sequence[Sequence[str]]) -> GrainLine | None:
    """Longest valid subsequence; ties broken by earliest indices."""
    ps = [tuple(p) for p in paths]
    for size in range(len(ps), 1, -1):
        for idx in itertools.combinations(range(len(ps)), size):
            gl = _valid_subsequence([ps[i] for i in idx])
            if gl is not None:
                return gl
    return None


def extract_greedy(paths: Sequence[Sequence[str]]) -> GrainLine | None:
    ps = [tuple(p) for p in paths]
    chosen: list[Path] = []
    for p in ps:
        if not chosen:
            chosen.append(p)
            continue
        if _valid_subsequence(chosen + [p]) is not None:
            chosen.append(p)
    if len(chosen) >= 2:
        return _valid_subsequence(chosen)
    for a, b in itertools.combinations(range(len(ps)), 2):
        gl = _valid_subsequence([ps[a], ps[b]])
        if gl is not None:
            return gl
    return None


EXHAUSTIVE_LIMIT = 8


def extract_grain_line(paths: Sequence[Sequence[str]]) -> GrainLine:
    """A grain line whose paths are a subsequence of ``paths``.

    Up to eight paths the longest valid subsequence is found exhaustively;
    beyond that a greedy pass keeps every path that leaves the prefix valid.
    L consists of x, y and the vertices shared by at least two chosen paths.
    """
    ps = [tuple(p) for p in paths]
    if len(ps) < 2:
        raise InputError("need at least two paths")
    x, y = ps[0][0], ps[0][-1]
    if any(p[0] != x or p[-1] != y for p in ps):
        raise InputError("paths must share their endpoints")
    seen: set[Edge] = set()
    for p in ps:
        es = set(path_edges(p))
        if es & seen:
            raise InputError("paths must be pairwise edge-disjoint")
        seen |= es
    gl = extract_exhaustive(ps) if len(ps) <= EXHAUSTIVE_LIMIT else extract_greedy(ps)
    if gl is None:
        trivial = GrainLine(x, y, (x, y), ps[:2])
        if check_grain_line(trivial).ok:
            return trivial
        raise InputError("no two of the paths form a grain line")
    return gl
