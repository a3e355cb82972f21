"""Compound-separations with explicit budgets, edge-blocks and tree-cut decompositions.

Finiteness conditions become numbers: a separator budget ``s``, a cross-edge
budget ``f`` and an edge-block threshold ``c`` (two vertices share a block
when no fewer than ``c`` edges separate them).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .graph_core import (Edge, FlowNetwork, Graph, InputError, components, edge, induced_subgraph,
                         loop_erase, min_edge_cut, shortest_path, _unit_network)
from .immersion import ImmersionModel, verify_immersion
from .reports import ValidationReport


@dataclass(frozen=True)
class CompoundSeparation:
    A: frozenset
    B: frozenset
    cross: frozenset  # E(A \ B, B \ A)

    @classmethod
    def make(cls, G: Graph, A: Iterable[str], B: Iterable[str]) -> "CompoundSeparation":
        a, b = frozenset(A), frozenset(B)
        if a | b != frozenset(G.vertices):
            raise InputError("sides must cover the vertex set")
        if not a - b or not b - a:
            raise InputError("improper separation: one side lies inside the other")
        ab, ba = a - b, b - a
        cross = frozenset(e for e in G.edges
                          if (e[0] in ab and e[1] in ba) or (e[0] in ba and e[1] in ab))
        return cls(a, b, cross)

    @property
    def separator(self) -> frozenset:
        return self.A & self.B

    @property
    def order(self) -> int:
        return len(self.separator)

    @property
    def is_unitary(self) -> bool:
        return self.order == 1

    def separates(self, u: str, v: str) -> bool:
        return (u in self.A - self.B and v in self.B - self.A) or (v in self.A - self.B and u in self.B - self.A)

    def to_json(self) -> dict:
        return {"A": sorted(self.A), "B": sorted(self.B), "separator": sorted(self.separator),
                "cross": [list(e) for e in sorted(self.cross)]}


def check_separation(G: Graph, sep: CompoundSeparation) -> ValidationReport:
    rep = ValidationReport()
    if sep.A | sep.B != frozenset(G.vertices):
        rep.add("cover", "A and B do not cover V(G)")
    if not sep.A - sep.B or not sep.B - sep.A:
        rep.add("proper", "separation is improper")
    ab, ba = sep.A - sep.B, sep.B - sep.A
    cross = frozenset(e for e in G.edges if (e[0] in ab and e[1] in ba) or (e[0] in ba and e[1] in ab))
    if cross != sep.cross:
        rep.add("cross", "stored cross edges differ from E(A\\B, B\\A)", sorted(cross ^ sep.cross))
    return rep


def _cut_separation(G: Graph, u: str, v: str, S: Sequence[str]):
    """Minimum u-v cut in G - S turned into a separation with separator S."""
    H = G.remove_vertices(S)
    cut = min_edge_cut(H, u, v)
    A = set(cut.A) | set(S)
    B = (set(H.vertices) - cut.A) | set(S)
    return len(cut), CompoundSeparation.make(G, A, B)


def find_compound_separation(G: Graph, u: str, v: str, s: int, f: int) -> CompoundSeparation | None:
    """First separation of u from v with |S| <= s and at most f cross edges.

    Separators are tried by size, then in sorted order; for each one a single
    minimum cut decides, so ``None`` is exhaustive.
    """
    if u not in G or v not in G:
        raise InputError(f"vertex not in graph: {u if u not in G else v!r}")
    if u == v:
        raise InputError("u and v must be distinct")
    if s < 0 or f < 0:
        raise InputError("budgets must be non-negative")
    rest = [w for w in G.vertices if w not in (u, v)]
    for size in range(min(s, len(rest)) + 1):
        for S in combinations(rest, size):
            k, sep = _cut_separation(G, u, v, S)
            if k <= f:
                return sep
    return None


def is_minimally_separating(G: Graph, sep: CompoundSeparation, u: str, v: str, f: int | None = None) -> bool:
    """No separation of u and v within budget has a separator strictly inside sep's.

    The budget defaults to sep's own cross count.
    """
    if not sep.separates(u, v):
        return False
    budget = len(sep.cross) if f is None else f
    S = sorted(sep.separator)
    for size in range(len(S)):
        for T in combinations(S, size):
            k, _ = _cut_separation(G, u, v, T)
            if k <= budget:
                return False
    return True


def is_k_compound_connected(G: Graph, k: int, f: int) -> bool:
    """True iff no pair is separated by a compound-separation of order < k with <= f cross edges."""
    if k < 1:
        raise InputError("k must be at least 1")
    for u, v in combinations(G.vertices, 2):
        if find_compound_separation(G, u, v, k - 1, f) is not None:
            return False
    return True


# edge-blocks via a Gomory-Hu cut tree

def gomory_hu_tree(G: Graph) -> list[tuple[str, str, int]]:
    """Gusfield's cut tree as (vertex, parent, weight) triples.

    For every pair the minimum weight on the tree path equals their local
    edge-connectivity, and removing a tree edge leaves a minimum cut.
    """
    V = list(G.vertices)
    if len(V) < 2:
        return []
    parent = [0] * len(V)
    weight = [0] * len(V)
    for s in range(1, len(V)):
        t = parent[s]
        net = _unit_network(G)
        value = net.max_flow(V[s], V[t])
        X = net.reachable(V[s])
        weight[s] = value
        for i in range(len(V)):
            if i != s and V[i] in X and parent[i] == t:
                parent[i] = s
        if V[parent[t]] in X:
            parent[s] = parent[t]
            parent[t] = s
            weight[s] = weight[t]
            weight[t] = value
    return [(V[i], V[parent[i]], weight[i]) for i in range(1, len(V))]


def edge_blocks(G: Graph, c: int) -> list[frozenset]:
    """Classes of u ~ v iff fewer than c edges cannot separate u from v."""
    if c < 1:
        raise InputError("threshold c must be at least 1")
    keep = [(a, b) for a, b, w in gomory_hu_tree(G) if w >= c]
    forest = Graph(G.vertices, keep)
    return sorted((frozenset(comp) for comp in components(forest)), key=min)


@dataclass
class TreeCutDecomposition:
    tree: Graph
    parts: dict        # tree node -> frozenset of vertices
    adhesion: dict     # tree edge -> frozenset of graph edges

    def to_json(self) -> dict:
        return {"tree": self.tree.to_json(),
                "parts": {k: sorted(v) for k, v in sorted(self.parts.items())},
                "adhesion": [[a, b, [list(e) for e in sorted(es)]]
                             for (a, b), es in sorted(self.adhesion.items())]}


def _side_of(T: Graph, removed: Edge, start: str) -> set:
    seen = {start}
    stack = [start]
    while stack:
        a = stack.pop()
        for b in T.neighbors(a):
            if edge(a, b) != removed and b not in seen:
                seen.add(b)
                stack.append(b)
    return seen


def tree_cut_decomposition(G: Graph, c: int) -> TreeCutDecomposition:
    """Tree-cut decomposition of a connected graph into its edge-blocks."""
    if c < 1:
        raise InputError("threshold c must be at least 1")
    if len(components(G)) != 1:
        raise InputError("graph must be connected")
    tree_edges = gomory_hu_tree(G)
    blocks = sorted((frozenset(comp) for comp in components(
        Graph(G.vertices, [(a, b) for a, b, w in tree_edges if w >= c]))), key=min)
    node_of = {}
    parts = {}
    for i, X in enumerate(blocks):
        parts[f"b{i}"] = X
        for v in X:
            node_of[v] = f"b{i}"
    T = Graph(parts, {edge(node_of[a], node_of[b]) for a, b, w in tree_edges if w < c})
    adhesion = {}
    for te in T.sorted_edges():
        side = set().union(*(parts[t] for t in _side_of(T, te, te[0])))
        adhesion[te] = frozenset(e for e in G.edges if (e[0] in side) != (e[1] in side))
        assert len(adhesion[te]) < c, "cut tree edge below threshold must give a small adhesion"
    return TreeCutDecomposition(T, parts, adhesion)


def check_tree_cut_decomposition(G: Graph, tcd: TreeCutDecomposition, c: int | None = None) -> ValidationReport:
    rep = ValidationReport()
    seen: set = set()
    for node, X in tcd.parts.items():
        if seen & X:
            rep.add("parts", f"part {node} overlaps an earlier part", sorted(seen & X))
        seen |= X
    if seen != set(G.vertices):
        rep.add("parts", "parts do not cover V(G)")
    if len(components(tcd.tree)) != 1 or tcd.tree.num_edges() != len(tcd.tree) - 1:
        rep.add("tree", "decomposition tree is not a tree")
        return rep
    for te in tcd.tree.sorted_edges():
        side = set().union(*(tcd.parts[t] for t in _side_of(tcd.tree, te, te[0])))
        want = frozenset(e for e in G.edges if (e[0] in side) != (e[1] in side))
        if tcd.adhesion.get(te) != want:
            rep.add("adhesion", f"adhesion of {te} is not the cut between its sides", te)
        if c is not None and len(want) >= c:
            rep.add("adhesion", f"adhesion of {te} has {len(want)} >= {c} edges", te)
    return rep


def min_pairwise_connectivity(G: Graph) -> int | None:
    tree = gomory_hu_tree(G)
    return min((w for _, _, w in tree), default=None)


@dataclass
class SplitReport:
    GA: Graph
    GB: Graph
    lambda_A: int | None
    lambda_B: int | None


def split(G: Graph, sep: CompoundSeparation) -> SplitReport:
    """Both induced sides with the least pairwise edge-connectivity inside each."""
    rep = check_separation(G, sep)
    if not rep.ok:
        raise InputError(f"not a separation of G:\n{rep}")
    GA, GB = induced_subgraph(G, sep.A), induced_subgraph(G, sep.B)
    return SplitReport(GA, GB, min_pairwise_connectivity(GA), min_pairwise_connectivity(GB))


@dataclass
class Fan:
    paths: list
    counts: dict      # separator vertex -> paths ending there
    quota: int
    complete: bool
    minimal: bool


def u_to_separator_fan(G: Graph, sep: CompoundSeparation, u: str, quota: int, v: str | None = None) -> Fan:
    """Edge-disjoint u-S paths in G[A], internally avoiding S, ``quota`` per w in S.

    Separator vertices are served in sorted order and each takes edges left
    over by the earlier ones.  ``minimal`` records whether sep separates u
    from ``v`` minimally (checked only when ``v`` is given).
    """
    if u not in sep.A - sep.B:
        raise InputError("u must lie in A \\ B")
    if quota < 0:
        raise InputError("quota must be non-negative")
    minimal = is_minimally_separating(G, sep, u, v) if v is not None else False
    side = induced_subgraph(G, sep.A)
    used: set = set()
    paths: list = []
    counts: dict = {}
    S = sorted(sep.separator)
    for w in S:
        counts[w] = 0
        if quota == 0:
            continue
        H = side.remove_vertices(x for x in S if x != w).remove_edges(used)
        net = _unit_network(H)
        net.max_flow(u, w, quota)
        for p in net.flow_paths(u, w):
            paths.append(p)
            used.update(edge(a, b) for a, b in zip(p, p[1:]))
            counts[w] += 1
    complete = all(n >= quota for n in counts.values())
    return Fan(paths, counts, quota, complete, minimal)


# orientations, nestedness and stars

@dataclass(frozen=True)
class OrientedSeparation:
    A: frozenset
    B: frozenset

    def __le__(self, other: "OrientedSeparation") -> bool:
        return self.A <= other.A and self.B >= other.B

    def inverse(self) -> "OrientedSeparation":
        return OrientedSeparation(self.B, self.A)


def orientations(sep: CompoundSeparation) -> tuple[OrientedSeparation, OrientedSeparation]:
    return OrientedSeparation(sep.A, sep.B), OrientedSeparation(sep.B, sep.A)


def nested(s1: CompoundSeparation, s2: CompoundSeparation) -> bool:
    return any(a <= b for a in orientations(s1) for b in orientations(s2))


def star_orientation(seps: Sequence[CompoundSeparation]) -> list[OrientedSeparation] | None:
    """Orientations (A_i, B_i) with (A_i, B_i) <= (B_j, A_j) for all i != j, or None."""
    seps = list(seps)
    choice: list = []

    def ok(o, i):
        return all(o <= choice[j].inverse() and choice[j] <= o.inverse() for j in range(i))

    def rec(i):
        if i == len(seps):
            return True
        for o in orientations(seps[i]):
            if ok(o, i):
                choice.append(o)
                if rec(i + 1):
                    return True
                choice.pop()
        return False

    return list(choice) if rec(0) else None


def faithful_set(G: Graph, w: str, c: int) -> list[CompoundSeparation]:
    """One unitary separation {X + w, V - X} per edge-block X of G - w.

    Blocks spanning all of V - w give improper candidates, which are dropped.
    """
    if w not in G:
        raise InputError(f"vertex not in graph: {w!r}")
    if G.degree(w) == 0:
        return []
    H = G.remove_vertices([w])
    V = frozenset(G.vertices)
    out = []
    for X in edge_blocks(H, c):
        A, B = X | {w}, V - X
        if A - B and B - A:
            out.append(CompoundSeparation.make(G, A, B))
    return out


def check_faithful(G: Graph, w: str, seps: Sequence[CompoundSeparation], budget: int) -> ValidationReport:
    """Every pair split by some unitary separation at w with <= budget cross edges is split by a member."""
    rep = ValidationReport()
    H = G.remove_vertices([w])
    for a, b in combinations(H.vertices, 2):
        net = _unit_network(H)
        if net.max_flow(a, b, budget + 1) <= budget and not any(s.separates(a, b) for s in seps):
            rep.add("faithful", f"{a} and {b} are split at {w} but by no member", (a, b))
    return rep


# K^t from edge-blocks

@dataclass
class BlockImmersion:
    model: ImmersionModel | None
    diagnostic: str
    hub: str | None = None
    blocks: list = field(default_factory=list)


def complete_immersion_from_blocks(G: Graph, X: Iterable[str], t: int, c: int) -> BlockImmersion:
    """Strong immersion of K^t with one branch vertex in each of t edge-blocks of G - X.

    For t >= 3 every route passes through one hub x in X: each branch vertex
    sends t - 1 edge-disjoint paths to x (a single flow from a super-source)
    and the route between two branch vertices joins one path from each.
    """
    if t < 2:
        raise InputError("t must be at least 2")
    X = sorted(set(X))
    if any(x not in G for x in X):
        raise InputError("X must be a set of vertices of G")
    H = G.remove_vertices(X)
    blocks = edge_blocks(H, c) if len(H) else []
    if len(blocks) < t:
        return BlockImmersion(None, f"G - X has {len(blocks)} edge-blocks, need {t}", None, blocks)
    pattern_names = [f"k{i}" for i in range(t)]
    pattern = Graph(pattern_names, combinations(pattern_names, 2))

    def rep_vertex(block):
        return min(block, key=lambda v: (-G.degree(v), v))

    if t == 2:
        for b1, b2 in combinations(blocks, 2):
            a, b = rep_vertex(b1), rep_vertex(b2)
            p = shortest_path(G, a, b)
            if p is not None:
                model = ImmersionModel(pattern, G, {"k0": a, "k1": b}, {("k0", "k1"): tuple(p)}, True)
                assert verify_immersion(model).ok
                return BlockImmersion(model, "found", None, [b1, b2])
        return BlockImmersion(None, "no two edge-blocks are joined by a path", None, blocks)

    for x in X:
        for combo in combinations(blocks, t):
            branch = [rep_vertex(b) for b in combo]
            bset = set(branch)
            net = FlowNetwork()
            src = "\x00source"
            for b in branch:
                net.add_arc(src, b, t - 1)
            for a, b in G.sorted_edges():
                if a in bset and b in bset:
                    continue
                if b in bset:
                    a, b = b, a
                if a in bset:
                    net.add_arc(a, b, 1)
                else:
                    net.add_edge(a, b, 1)
            if net.max_flow(src, x) < t * (t - 1):
                continue
            per: dict = {b: [] for b in branch}
            for p in net.flow_paths(src, x):
                per[p[1]].append(tuple(p[1:]))
            routes = {}
            for i, j in combinations(range(t), 2):
                pi = per[branch[i]][j - 1]
                pj = per[branch[j]][i]
                routes[(pattern_names[i], pattern_names[j])] = loop_erase(pi + tuple(reversed(pj))[1:])
            model = ImmersionModel(pattern, G, dict(zip(pattern_names, branch)), routes, True)
            assert verify_immersion(model).ok
            return BlockImmersion(model, "found", x, list(combo))
    return BlockImmersion(None, "routing through a single hub failed for every hub and block choice",
                          None, blocks)


# the peeling recursion

@dataclass
class PeelStep:
    separation: CompoundSeparation
    pair: tuple
    G_n: Graph
    H_n: Graph
    checks: dict


@dataclass
class PeelReport:
    steps: list
    stopped_early: bool
    reason: str = ""

    @property
    def ok(self) -> bool:
        return all(all(s.checks.values()) for s in self.steps)


def find_minimal_unitary(H: Graph, f: int):
    """First (w, u, v, sep) with lambda_{H-w}(u, v) <= f and lambda_H(u, v) larger.

    Minimality is measured at the separation's own cross count: no order-0
    separation of u and v has that few cross edges.
    """
    for w in H.vertices:
        Hw = H.remove_vertices([w])
        for u, v in combinations(Hw.vertices, 2):
            k = _unit_network(Hw).max_flow(u, v, f + 1)
            if k > f:
                continue
            if _unit_network(H).max_flow(u, v, k + 1) > k:
                _, sep = _cut_separation(H, u, v, [w])
                return w, u, v, sep
    return None


def _intersection_connected(sets: Sequence[frozenset]) -> bool:
    if not sets:
        return True
    names = [str(i) for i in range(len(sets))]
    links = [(names[i], names[j]) for i, j in combinations(range(len(sets)), 2) if sets[i] & sets[j]]
    return len(components(Graph(names, links))) == 1


def iterated_split(G: Graph, f: int, steps: int) -> PeelReport:
    """Peel minimally separating unitary separations off G, ``steps`` times."""
    if steps < 1:
        raise InputError("steps must be at least 1")
    if len(G) == 0:
        raise InputError("graph is empty")
    prev_vertices = frozenset([G.vertices[0]])
    H = G
    parts: list[Graph] = []
    out: list[PeelStep] = []
    for n in range(steps):
        found = find_minimal_unitary(H, f)
        if found is None:
            return PeelReport(out, True, f"no minimally separating unitary separation at step {n}")
        w, u, v, sep = found
        A, B = sep.A, sep.B
        if not A & prev_vertices:
            A, B = B, A
        S = A & B
        G_n = induced_subgraph(G, A)
        inside = [e for e in H.edges if e[0] in S and e[1] in S]
        H_n = induced_subgraph(G, B).remove_edges(inside)
        cover = A | B == frozenset(H.vertices) and bool(A - B) and bool(B - A)
        cross = len([e for e in H.edges if (e[0] in A - B and e[1] in B - A)
                     or (e[0] in B - A and e[1] in A - B)])
        family = parts + [G_n, H_n]
        disjoint = all(not (g1.edges & g2.edges) for g1, g2 in combinations(family, 2))
        parts.append(G_n)
        checks = {
            "edge_disjoint": disjoint,
            "separation": cover and cross <= f,
            "intersection_connected": _intersection_connected([frozenset(g.vertices) for g in parts]),
        }
        out.append(PeelStep(CompoundSeparation.make(H, A, B), (u, v), G_n, H_n, checks))
        H = H_n
        prev_vertices = frozenset(G_n.vertices)
    return PeelReport(out, False)
