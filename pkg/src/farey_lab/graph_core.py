"""Finite simple graphs, paths, cuts and unit-capacity flows.

Vertex ids are strings.  Everything that iterates over vertices or
neighbours does so in sorted order so results are reproducible.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Vertex = str
Edge = tuple[str, str]
Path = tuple[str, ...]


class InputError(ValueError):
    """Raised when an operation's precondition is violated by its input."""


def edge(u: Vertex, v: Vertex) -> Edge:
    """Canonical (sorted) form of the undirected edge uv."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable finite simple undirected graph."""

    __slots__ = ("_vertices", "_edges", "_adj")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Sequence[Vertex]] = ()):
        vs = set(vertices)
        for v in vs:
            if not isinstance(v, str):
                raise InputError(f"vertex ids must be strings, got {v!r}")
        adj: dict[Vertex, list[Vertex]] = {v: [] for v in vs}
        es = set()
        for e in edges:
            u, v = e
            if u == v:
                raise InputError(f"loop at {u!r}")
            if u not in adj or v not in adj:
                raise InputError(f"edge {u!r}-{v!r} has an endpoint outside the vertex set")
            ce = edge(u, v)
            if ce in es:
                continue
            es.add(ce)
            adj[u].append(v)
            adj[v].append(u)
        self._vertices = tuple(sorted(vs))
        self._edges = frozenset(es)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._vertices)

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self._vertices)

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        return self._adj[v]

    def degree(self, v: Vertex) -> int:
        return len(self._adj[v])

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return u != v and edge(u, v) in self._edges

    def num_edges(self) -> int:
        return len(self._edges)

    def remove_vertices(self, xs: Iterable[Vertex]) -> "Graph":
        drop = set(xs)
        return Graph((v for v in self._vertices if v not in drop),
                     (e for e in self._edges if e[0] not in drop and e[1] not in drop))

    def remove_edges(self, es: Iterable[Sequence[Vertex]]) -> "Graph":
        drop = {edge(*e) for e in es}
        return Graph(self._vertices, (e for e in self._edges if e not in drop))

    def union(self, other: "Graph") -> "Graph":
        return Graph(set(self._vertices) | set(other._vertices), self._edges | other._edges)

    def rename(self, mapping: dict[Vertex, Vertex]) -> "Graph":
        return Graph((mapping.get(v, v) for v in self._vertices),
                     ((mapping.get(u, u), mapping.get(v, v)) for u, v in self._edges))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self._vertices)}, |E|={len(self._edges)})"

    # serialisation

    def to_json(self) -> dict:
        return {"vertices": list(self._vertices), "edges": [list(e) for e in sorted(self._edges)]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        try:
            return cls(data["vertices"], (tuple(e) for e in data["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed graph JSON: {exc}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in self._vertices:
            lines.append(f'  "{v}" [label="{v}"];')
        for u, v in sorted(self._edges):
            lines.append(f'  "{u}" -- "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def graph_from_paths(paths: Iterable[Sequence[Vertex]]) -> Graph:
    vs: set[Vertex] = set()
    es: set[Edge] = set()
    for p in paths:
        vs.update(p)
        es.update(path_edges(p))
    return Graph(vs, es)


def complete_graph(n: int, prefix: str = "k") -> Graph:
    names = [f"{prefix}{i}" for i in range(n)]
    return Graph(names, ((a, b) for i, a in enumerate(names) for b in names[i + 1:]))


def induced_subgraph(G: Graph, X: Iterable[Vertex]) -> Graph:
    xs = set(X)
    missing = xs.difference(G.vertices)
    if missing:
        raise InputError(f"vertices not in graph: {sorted(missing)}")
    return Graph(xs, (e for e in G.edges if e[0] in xs and e[1] in xs))


# paths

def path_edges(p: Sequence[Vertex]) -> list[Edge]:
    return [edge(p[i], p[i + 1]) for i in range(len(p) - 1)]


def is_path(G: Graph, p: Sequence[Vertex]) -> bool:
    if not p or len(set(p)) != len(p):
        return False
    if any(v not in G for v in p):
        return False
    return all(G.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1))


def subpath(p: Sequence[Vertex], a: Vertex, b: Vertex) -> Path:
    """The subpath of p between a and b, traversed from a to b."""
    p = tuple(p)
    if a not in p or b not in p:
        raise InputError(f"{a if a not in p else b!r} is not on the path")
    i, j = p.index(a), p.index(b)
    if i <= j:
        return tuple(p[i:j + 1])
    return tuple(reversed(p[j:i + 1]))


def loop_erase(walk: Sequence[Vertex]) -> Path:
    """Erase cycles from a walk, keeping the first visit to each vertex."""
    out: list[Vertex] = []
    pos: dict[Vertex, int] = {}
    for v in walk:
        if v in pos:
            k = pos[v]
            for w in out[k + 1:]:
                del pos[w]
            del out[k + 1:]
        else:
            pos[v] = len(out)
            out.append(v)
    return tuple(out)


def edge_disjoint(paths: Iterable[Sequence[Vertex]]) -> bool:
    seen: set[Edge] = set()
    for p in paths:
        for e in path_edges(p):
            if e in seen:
                return False
            seen.add(e)
    return True


@dataclass(frozen=True)
class Cut:
    A: frozenset
    B: frozenset
    cross_edges: frozenset

    @classmethod
    def from_side(cls, G: Graph, A: Iterable[Vertex]) -> "Cut":
        a = frozenset(A)
        b = frozenset(G.vertices) - a
        cross = frozenset(e for e in G.edges if (e[0] in a) != (e[1] in a))
        return cls(a, b, cross)

    def __len__(self) -> int:
        return len(self.cross_edges)


# flows

class FlowNetwork:
    """Integer-capacity flow network with BFS augmentation.

    Arcs are explored in sorted neighbour order so augmenting paths, and
    therefore the decomposed path systems, are deterministic.
    """

    def __init__(self) -> None:
        self.cap: dict[str, dict[str, int]] = {}
        self._orig: dict[str, dict[str, int]] = {}
        self._order: dict[str, list[str]] | None = None

    def _arc(self, a: str, b: str, c: int) -> None:
        for x, y, cc in ((a, b, c), (b, a, 0)):
            self.cap.setdefault(x, {})
            self._orig.setdefault(x, {})
            self.cap[x][y] = self.cap[x].get(y, 0) + cc
            self._orig[x][y] = self._orig[x].get(y, 0) + cc
        self._order = None

    def add_arc(self, a: str, b: str, c: int = 1) -> None:
        self._arc(a, b, c)

    def add_edge(self, a: str, b: str, c: int = 1) -> None:
        self._arc(a, b, c)
        self._arc(b, a, c)

    def _neighbours(self, a: str) -> list[str]:
        if self._order is None:
            self._order = {x: sorted(ys) for x, ys in self.cap.items()}
        return self._order.get(a, [])

    def _augment(self, s: str, t: str) -> bool:
        parent = {s: s}
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for b in self._neighbours(a):
                if b not in parent and self.cap[a][b] > 0:
                    parent[b] = a
                    if b == t:
                        while b != s:
                            a = parent[b]
                            self.cap[a][b] -= 1
                            self.cap[b][a] += 1
                            b = a
                        return True
                    queue.append(b)
        return False

    def max_flow(self, s: str, t: str, limit: int | None = None) -> int:
        if s not in self.cap or t not in self.cap:
            return 0
        value = 0
        while (limit is None or value < limit) and self._augment(s, t):
            value += 1
        return value

    def reachable(self, s: str) -> set[str]:
        seen = {s}
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for b in self._neighbours(a):
                if b not in seen and self.cap[a][b] > 0:
                    seen.add(b)
                    queue.append(b)
        return seen

    def flow_paths(self, s: str, t: str) -> list[Path]:
        """Decompose the current s-t flow into simple paths (cycles discarded)."""
        out: dict[str, list[str]] = {}
        for a, ys in self._orig.items():
            for b in sorted(ys):
                f = self._orig[a][b] - self.cap[a][b]
                if f > 0:
                    out.setdefault(a, []).extend([b] * f)
        paths = []
        while out.get(s):
            walk = [s]
            while walk[-1] != t:
                a = walk[-1]
                walk.append(out[a].pop(0))
            paths.append(loop_erase(walk))
        return paths


def _unit_network(G: Graph) -> FlowNetwork:
    net = FlowNetwork()
    for v in G.vertices:
        net.cap.setdefault(v, {})
        net._orig.setdefault(v, {})
    for u, v in G.sorted_edges():
        net.add_edge(u, v)
    return net


def _check_pair(G: Graph, u: Vertex, v: Vertex) -> None:
    if u not in G or v not in G:
        raise InputError(f"vertex not in graph: {u if u not in G else v!r}")
    if u == v:
        raise InputError("u and v must be distinct")


def edge_connectivity(G: Graph, u: Vertex, v: Vertex) -> tuple[int, list[Path]]:
    """Maximum number of pairwise edge-disjoint u-v paths, with a witness system."""
    _check_pair(G, u, v)
    net = _unit_network(G)
    lam = net.max_flow(u, v)
    paths = net.flow_paths(u, v)
    assert len(paths) == lam
    return lam, paths


def local_edge_connectivity(G: Graph, u: Vertex, v: Vertex, limit: int | None = None) -> int:
    _check_pair(G, u, v)
    return _unit_network(G).max_flow(u, v, limit)


def min_edge_cut(G: Graph, u: Vertex, v: Vertex) -> Cut:
    """A minimum u-v edge cut; its u-side is the smallest one (residual reach)."""
    _check_pair(G, u, v)
    net = _unit_network(G)
    net.max_flow(u, v)
    return Cut.from_side(G, net.reachable(u))


def vertex_disjoint_count(G: Graph, a: Vertex, b: Vertex, blocked: Iterable[Vertex] = (),
                          limit: int | None = None) -> int:
    """Number of internally vertex-disjoint a-b paths avoiding ``blocked``."""
    blk = set(blocked) - {a, b}
    net = FlowNetwork()
    for v in G.vertices:
        if v in blk:
            continue
        if v not in (a, b):
            net.add_arc(v + "\x00in", v + "\x00out", 1)
    def port(v: str, side: str) -> str:
        return v if v in (a, b) else v + "\x00" + side
    for x, y in G.sorted_edges():
        if x in blk or y in blk:
            continue
        if {x, y} == {a, b}:
            net.add_arc(a, b, 1)
            continue
        net.add_arc(port(x, "out"), port(y, "in"), 1)
        net.add_arc(port(y, "out"), port(x, "in"), 1)
    return net.max_flow(a, b, limit)


def components(G: Graph) -> list[list[Vertex]]:
    seen: set[Vertex] = set()
    comps = []
    for s in G.vertices:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for b in G.neighbors(a):
                if b not in seen:
                    seen.add(b)
                    comp.append(b)
                    queue.append(b)
        comps.append(sorted(comp))
    return comps


def shortest_path(G: Graph, s: Vertex, t: Vertex, avoid: Iterable[Vertex] = (),
                  avoid_edges: Iterable[Edge] = ()) -> Path | None:
    """BFS path from s to t whose interior avoids ``avoid`` and whose edges avoid ``avoid_edges``."""
    blocked = set(avoid) - {s, t}
    bad_edges = set(avoid_edges)
    parent = {s: s}
    queue = deque([s])
    while queue:
        a = queue.popleft()
        if a == t:
            p = [t]
            while p[-1] != s:
                p.append(parent[p[-1]])
            return tuple(reversed(p))
        for b in G.neighbors(a):
            if b in parent or b in blocked or edge(a, b) in bad_edges:
                continue
            parent[b] = a
            queue.append(b)
    return None


def separates(G: Graph, left: Iterable[Vertex], right: Iterable[Vertex]) -> bool:
    """True if no path of G joins a vertex of ``left`` to one of ``right``."""
    lset = [v for v in left if v in G]
    rset = {v for v in right if v in G}
    seen = set(lset)
    queue = deque(lset)
    while queue:
        a = queue.popleft()
        if a in rset:
            return False
        for b in G.neighbors(a):
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return True


def girth(G: Graph) -> int | None:
    """Length of a shortest cycle, or None if G is a forest."""
    best: int | None = None
    for root in G.vertices:
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            a = queue.popleft()
            if best is not None and 2 * dist[a] >= best:
                break
            for b in G.neighbors(a):
                if b not in dist:
                    dist[b] = dist[a] + 1
                    parent[b] = a
                    queue.append(b)
                elif parent[a] != b:
                    length = dist[a] + dist[b] + 1
                    if best is None or length < best:
                        best = length
    return best


def combine_path_systems(P: Sequence[Sequence[Vertex]], Q: Sequence[Sequence[Vertex]]) -> list[Path]:
    """Greedily join u-w paths with a-w paths into edge-disjoint u-a paths.

    Each output is ``p`` followed by ``q`` reversed, with loops erased.  A
    pair is accepted only if its result is edge-disjoint from the paths
    already accepted; every ``p`` and ``q`` is used at most once.
    """
    if not P or not Q:
        return []
    u, w = P[0][0], P[0][-1]
    a = Q[0][0]
    if any(p[0] != u or p[-1] != w for p in P):
        raise InputError("all P-paths must run from the same u to the same w")
    if any(q[0] != a or q[-1] != w for q in Q):
        raise InputError("all Q-paths must run from the same a to w")
    if u == a:
        raise InputError("u and a coincide; nothing to combine")
    used_edges: set[Edge] = set()
    used_q: set[int] = set()
    out: list[Path] = []
    for p in P:
        for j, q in enumerate(Q):
            if j in used_q:
                continue
            joined = loop_erase(list(p) + list(reversed(q))[1:])
            es = path_edges(joined)
            if used_edges.isdisjoint(es):
                used_edges.update(es)
                used_q.add(j)
                out.append(joined)
                break
    return out
