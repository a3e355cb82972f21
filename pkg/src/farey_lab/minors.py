"""Topological-minor search and the diving machinery for grain lines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .generators import adversarial_length_function, generalised_halved_farey
from .graph_core import (Graph, InputError, edge, is_path, path_edges, subpath,
                         vertex_disjoint_count)
from .grainline import GrainLine, Segment, check_grain_line, p_segments
from .reports import ValidationReport

FOUND, NONE, UNKNOWN = "found", "none", "unknown"


@dataclass(frozen=True)
class SubdivisionModel:
    pattern: Graph
    host: Graph
    branch: dict
    routes: dict  # pattern edge (sorted pair) -> host path from branch[e[0]] to branch[e[1]]


@dataclass
class SearchResult:
    status: str
    model: object = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND

    @property
    def exhaustive(self) -> bool:
        return self.status != UNKNOWN


class BudgetExhausted(Exception):
    pass


def verify_subdivision(model: SubdivisionModel) -> ValidationReport:
    H, G = model.pattern, model.host
    rep = ValidationReport()
    images = [model.branch.get(h) for h in H.vertices]
    if None in images:
        rep.add("branch", "some pattern vertex has no image")
        return rep
    if len(set(images)) != len(images):
        rep.add("branch", "branch map is not injective")
    if any(b not in G for b in images):
        rep.add("branch", "branch image outside host")
    image_set = set(images)
    internal_owner: dict = {}
    for e in H.sorted_edges():
        r = model.routes.get(e)
        if r is None:
            rep.add("route", f"pattern edge {e} has no route", e)
            continue
        ends = {model.branch[e[0]], model.branch[e[1]]}
        if {r[0], r[-1]} != ends or not is_path(G, r) or len(r) < 2:
            rep.add("route", f"route of {e} is not a host path between its branch vertices", e)
            continue
        for v in r[1:-1]:
            if v in image_set:
                rep.add("internal", f"route of {e} passes branch vertex {v}", (e, v))
            if v in internal_owner:
                rep.add("disjoint", f"routes of {internal_owner[v]} and {e} share {v}", v)
            internal_owner[v] = e
    return rep


# pattern reduction: suppress degree-2 vertices into chains between core vertices

def _core(H: Graph):
    core = {v for v in H.vertices if H.degree(v) != 2}
    seen_comp: set = set()
    for v in H.vertices:
        if v in seen_comp or H.degree(v) != 2:
            continue
        comp, stack = {v}, [v]
        while stack:
            a = stack.pop()
            for b in H.neighbors(a):
                if b not in comp:
                    comp.add(b)
                    stack.append(b)
        seen_comp |= comp
        if all(H.degree(w) == 2 for w in comp):
            core.add(min(comp))
    covered: set = set()
    chains = []
    for a in sorted(core):
        for n in H.neighbors(a):
            if edge(a, n) in covered:
                continue
            chain = [a, n]
            covered.add(edge(a, n))
            while chain[-1] not in core:
                cur, prev = chain[-1], chain[-2]
                nxt = next(w for w in H.neighbors(cur) if w != prev)
                covered.add(edge(cur, nxt))
                chain.append(nxt)
            chains.append(tuple(chain))
    return sorted(core), chains


class _SubdivisionSearch:
    def __init__(self, H: Graph, G: Graph, budget: int):
        self.H, self.G, self.budget = H, G, budget
        self.nodes = 0
        self.core, self.chains = _core(H)
        self.cdeg = {v: 0 for v in self.core}
        for ch in self.chains:
            self.cdeg[ch[0]] += 1
            self.cdeg[ch[-1]] += 1
        self.order = self._vertex_order()
        self.img: dict = {}
        self.used: set = set()
        self.routes: dict = {}

    def _vertex_order(self):
        order: list = []
        rest = set(self.core)
        while rest:
            def key(v):
                links = sum(1 for ch in self.chains if (ch[0] == v and ch[-1] in order)
                            or (ch[-1] == v and ch[0] in order))
                return (-links, -self.cdeg[v], v)
            v = min(rest, key=key)
            order.append(v)
            rest.remove(v)
        return order

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted

    def run(self):
        if len(self.core) > len(self.G):
            return None
        return self._assign(0)

    def _assign(self, i: int):
        if i == len(self.order):
            return dict(self.routes)
        h = self.order[i]
        for g in self.G.vertices:
            if g in self.used or self.G.degree(g) < self.cdeg[h]:
                continue
            self.tick()
            self.img[h] = g
            self.used.add(g)
            pending = [k for k, ch in enumerate(self.chains)
                       if k not in self.routes and ch[0] in self.img and ch[-1] in self.img]
            if self._feasible():
                res = self._route(pending, 0, i)
                if res is not None:
                    return res
            del self.img[h]
            self.used.discard(g)
        return None

    def _route(self, pending, j, i):
        if j == len(pending):
            return self._assign(i + 1)
        k = pending[j]
        ch = self.chains[k]
        for path in self._paths(self.img[ch[0]], self.img[ch[-1]], len(ch) - 1):
            self.tick()
            self.routes[k] = path
            inner = path[1:-1]
            self.used.update(inner)
            if self._feasible():
                res = self._route(pending, j + 1, i)
                if res is not None:
                    return res
            self.used.difference_update(inner)
            del self.routes[k]
        return None

    def _paths(self, s, t, min_len):
        G, used = self.G, self.used
        loop = s == t
        need = max(min_len, 3) if loop else min_len
        path = [s]
        on = {s}

        def rec():
            a = path[-1]
            for b in G.neighbors(a):
                if b == t and len(path) >= need and (not loop or len(path) >= 3):
                    if loop and path[1] > path[-1]:
                        continue
                    yield tuple(path) + (t,)
                    continue
                if b in on or b in used:
                    continue
                path.append(b)
                on.add(b)
                yield from rec()
                path.pop()
                on.discard(b)
        yield from rec()

    def _feasible(self) -> bool:
        G = self.G
        remaining: dict = {}
        pairs: dict = {}
        for k, ch in enumerate(self.chains):
            if k in self.routes:
                continue
            a, b = ch[0], ch[-1]
            for v in (a, b):
                if v in self.img:
                    remaining[v] = remaining.get(v, 0) + 1
            if a in self.img and b in self.img:
                key = tuple(sorted((a, b)))
                pairs[key] = pairs.get(key, 0) + 1
        for v, r in remaining.items():
            g = self.img[v]
            free = sum(1 for n in G.neighbors(g) if n not in self.used)
            direct = sum(1 for n in G.neighbors(g) if n in self.used and n in self.img.values())
            if free + direct < r:
                return False
        for (a, b), k in pairs.items():
            if a == b:
                continue
            ga, gb = self.img[a], self.img[b]
            blocked = self.used - {ga, gb}
            if vertex_disjoint_count(G, ga, gb, blocked, limit=k) < k:
                return False
        return True

    def model(self, routes) -> SubdivisionModel:
        branch = dict(self.img)
        hroutes = {}
        for k, ch in enumerate(self.chains):
            r = routes[k]
            inner = len(ch) - 2
            for t in range(1, inner + 1):
                branch[ch[t]] = r[t]
            for t in range(len(ch) - 1):
                seg = r[t:t + 2] if t < len(ch) - 2 else r[t:]
                e = edge(ch[t], ch[t + 1])
                hroutes[e] = seg if ch[t] == e[0] else tuple(reversed(seg))
        return SubdivisionModel(self.H, self.G, branch, hroutes)


def find_subdivision(H: Graph, G: Graph, budget: int = 200_000) -> SearchResult:
    """Search for a subdivision of H in G.

    ``none`` is reported only when the search finished inside the node budget;
    otherwise the status is ``unknown``.
    """
    search = _SubdivisionSearch(H, G, budget)
    try:
        routes = search.run()
    except BudgetExhausted:
        return SearchResult(UNKNOWN, None, search.nodes)
    if routes is None:
        return SearchResult(NONE, None, search.nodes)
    model = search.model(routes)
    assert verify_subdivision(model).ok
    return SearchResult(FOUND, model, search.nodes)


# diving

def _max_edge_depth(gl: GrainLine, P: Sequence[str]) -> int:
    try:
        return max(gl.edge_depth[e] for e in path_edges(P))
    except KeyError as exc:
        raise InputError(f"edge {exc.args[0]} is not in the grain line") from None


def first_dive(gl: GrainLine, P: Sequence[str]) -> Segment:
    """A P-segment inside P whose depth is the largest edge depth on P."""
    P = tuple(P)
    if len(P) < 2:
        raise InputError("path must have an edge")
    d = _max_edge_depth(gl, P)
    vd = gl.vertex_depth
    if max(vd[P[0]], vd[P[-1]]) >= d:
        raise InputError("no edge of P is deeper than its endvertices")
    cut = [i for i, v in enumerate(P) if vd[v] < d]
    for i, j in zip(cut, cut[1:]):
        piece = P[i:j + 1]
        if _max_edge_depth(gl, piece) == d:
            break
    else:  # pragma: no cover - the endpoints are shallow, so some piece carries depth d
        raise AssertionError("no deep piece found")
    u, v = piece[0], piece[-1]
    if gl.rank[u] > gl.rank[v]:
        u, v = v, u
    seg = Segment(d, subpath(gl.paths[d], u, v), u, v)
    assert set(path_edges(seg.path)) == set(path_edges(piece))
    return seg


@dataclass
class Projection:
    interval: tuple | None
    orientation: str | None
    report: ValidationReport


def interval_projection(outer: GrainLine, inner: GrainLine) -> Projection:
    """Locate inner's limit set M inside outer's L: an interval, same or reversed order."""
    rep = ValidationReport()
    rank = outer.rank
    off = [v for v in inner.L if v not in rank]
    if off:
        rep.add("subset", "M is not contained in L", off)
        return Projection(None, None, rep)
    ranks = [rank[v] for v in inner.L]
    lo, hi = min(ranks), max(ranks)
    if hi - lo + 1 != len(ranks):
        missing = [v for v in outer.L[lo:hi + 1] if v not in inner.L_set]
        rep.add("interval", "M is not an interval of L", missing)
    if all(a < b for a, b in zip(ranks, ranks[1:])):
        orient = "same"
    elif all(a > b for a, b in zip(ranks, ranks[1:])):
        orient = "reversed"
    else:
        orient = None
        rep.add("order", "the order of M is neither the order of L nor its reverse")
    return Projection((outer.L[lo], outer.L[hi]), orient, rep)


def reverse_grain_line(gl: GrainLine) -> GrainLine:
    return GrainLine(gl.y, gl.x, tuple(reversed(gl.L)), [tuple(reversed(p)) for p in gl.paths],
                     host=gl.host)


@dataclass
class DiveTrace:
    q: int | None
    p: list = field(default_factory=list)
    intervals: list = field(default_factory=list)  # [(u_k, v_k)], one more than p
    segments: list = field(default_factory=list)   # segments[k] = u_{k+1} P_{p_k} v_{k+1}
    truncated: bool = False
    reason: str = ""
    inner: GrainLine | None = None  # inner grain line, oriented like L


def dive(outer: GrainLine, inner: GrainLine, k_max: int) -> DiveTrace:
    """Dive simultaneously into ``outer`` and a grain line ``inner`` living in it.

    Where the argument only asks for q "large enough", the smallest q with
    the required properties is taken.  Running out of inner paths ends the
    trace early with ``truncated`` set.
    """
    if not check_grain_line(outer).ok:
        raise InputError("outer is not a valid grain line")
    if not check_grain_line(inner).ok:
        raise InputError("inner is not a valid grain line")
    proj = interval_projection(outer, inner)
    if proj.orientation is None or not proj.report.ok:
        raise InputError(f"inner does not project onto an interval of outer:\n{proj.report}")
    if proj.orientation == "reversed":
        inner = reverse_grain_line(inner)
    u0, v0 = inner.x, inner.y
    vd = outer.vertex_depth
    p = max(vd[u0], vd[v0])
    trace = DiveTrace(None, intervals=[(u0, v0)], inner=inner)
    q = None
    for cand in range(inner.m + 1):
        tail = {v for P in inner.paths[cand:] for v in P}
        if not tail <= inner.L_set:
            continue
        if _max_edge_depth(outer, inner.paths[cand]) > p:
            q = cand
            break
    trace.q = q
    if q is None:
        trace.truncated = k_max > 0
        trace.reason = "no inner path dives below the endpoints within the horizon"
        return trace
    if k_max == 0:
        return trace
    seg = first_dive(outer, inner.paths[q])
    trace.p.append(seg.depth)
    trace.segments.append(seg)
    trace.intervals.append((seg.u, seg.v))
    rank = outer.rank
    for k in range(1, k_max):
        idx = q + k
        if idx > inner.m:
            trace.truncated = True
            trace.reason = f"inner grain line has no path Q_{idx}"
            return trace
        u, v = seg.u, seg.v
        inside = [w for w in seg.path[1:-1] if w in rank and rank[u] < rank[w] < rank[v]]
        if not inside:
            trace.truncated = True
            trace.reason = f"segment at depth {seg.depth} has no internal limit vertex"
            return trace
        w = min(inside, key=rank.__getitem__)
        Q = inner.paths[idx]
        if not {u, v, w} <= set(Q):
            trace.truncated = True
            trace.reason = f"Q_{idx} misses one of {u}, {v}, {w}"
            return trace
        Quv = subpath(Q, u, v)
        i = Quv.index(w)
        step = None
        for j in (i - 1, i + 1):
            if 0 <= j < len(Quv) and outer.edge_depth.get(edge(w, Quv[j]), -1) > seg.depth:
                step = 1 if j > i else -1
                break
        if step is None:
            trace.truncated = True
            trace.reason = f"no edge at {w} on Q_{idx} deeper than {seg.depth}"
            return trace
        piece = [w]
        j = i + step
        while True:
            piece.append(Quv[j])
            if vd[Quv[j]] <= seg.depth:
                break
            j += step
        seg = first_dive(outer, piece)
        trace.p.append(seg.depth)
        trace.segments.append(seg)
        trace.intervals.append((seg.u, seg.v))
    return trace


def check_dive_trace(outer: GrainLine, trace: DiveTrace, lengths: Sequence[int] | None = None) -> ValidationReport:
    """Check the invariants a dive trace promises."""
    rep = ValidationReport()
    inner = trace.inner
    rank = outer.rank
    if any(a >= b for a, b in zip(trace.p, trace.p[1:])):
        rep.add("increasing", "depth sequence is not strictly increasing", trace.p)
    for k in range(len(trace.intervals) - 1):
        (a, b), (c, d) = trace.intervals[k], trace.intervals[k + 1]
        if not rank[a] <= rank[c] <= rank[d] <= rank[b]:
            rep.add("nested", f"interval {k + 1} leaves interval {k}", (trace.intervals[k], trace.intervals[k + 1]))
    for k, seg in enumerate(trace.segments):
        if seg not in p_segments(outer, seg.depth):
            rep.add("segment", f"step {k} does not return a segment of depth {seg.depth}", k)
        if (seg.u, seg.v) != trace.intervals[k + 1]:
            rep.add("segment", f"step {k} segment endpoints differ from interval {k + 1}", k)
        u, v = trace.intervals[k]
        Q = subpath(inner.paths[trace.q + k], u, v)
        es = path_edges(Q)
        if not _contiguous(path_edges(seg.path), es):
            rep.add("subpath", f"segment {k} is not a subpath of u_k Q_(q+k) v_k", k)
        if lengths is not None and len(inner.paths[trace.q + k]) - 1 < lengths[seg.depth]:
            rep.add("length", f"Q_(q+{k}) is shorter than l(p_{k})", k)
    return rep


def _contiguous(part, whole) -> bool:
    n = len(part)
    if n == 0:
        return True
    for seq in (list(whole), list(reversed(whole))):
        for i in range(len(seq) - n + 1):
            if seq[i:i + n] == list(part):
                return True
    return False


@dataclass
class AlmostSubgraphReport:
    depth: int
    within_horizon: bool
    subdivided: list


def almost_subgraph_depth(outer: GrainLine, inner: GrainLine, model: SubdivisionModel) -> AlmostSubgraphReport:
    """Least d such that no inner edge of depth >= d is subdivided by the model."""
    rep = verify_subdivision(model)
    if not rep.ok:
        raise InputError(f"model does not verify:\n{rep}")
    if not set(model.host.edges) <= set(outer.union.edges) | set(outer.host.edges):
        raise InputError("model host is not the graph of the outer grain line")
    sub = sorted((inner.edge_depth[e], e) for e, r in model.routes.items()
                 if len(r) > 2 and e in inner.edge_depth)
    d = sub[-1][0] + 1 if sub else 0
    return AlmostSubgraphReport(d, d <= inner.m, [e for _, e in sub])


def subdivision_experiment(families: Sequence[GrainLine], horizon: int, budget: int = 200_000) -> dict:
    """Finite evidence for the topological-minor construction.

    Builds the adversarial length function for ``families``, the order
    ``horizon`` truncation of F(l), and searches that truncation for a
    subdivision of each family's graph.  A finite "none" is evidence only;
    it says nothing about the infinite graphs.
    """
    if not families:
        raise InputError("need at least one grain line")
    lengths = adversarial_length_function(families, horizon)
    host = generalised_halved_farey(lengths, horizon)
    rows = []
    for i, gl in enumerate(families):
        res = find_subdivision(gl.union, host.graph, budget)
        rows.append({"family": i, "status": res.status, "nodes": res.nodes,
                     "pattern_vertices": len(gl.union), "pattern_edges": gl.union.num_edges()})
    return {
        "lengths": list(lengths),
        "host_vertices": len(host.graph),
        "host_edges": host.graph.num_edges(),
        "results": rows,
        "conclusive": False,
    }


def subdivide_edge_paths(model: SubdivisionModel) -> dict:
    """Pattern edge -> number of subdividing vertices."""
    return {e: len(r) - 2 for e, r in model.routes.items()}


__all__ = [
    "FOUND", "NONE", "UNKNOWN", "SubdivisionModel", "SearchResult", "find_subdivision",
    "verify_subdivision", "first_dive", "interval_projection", "Projection", "dive", "DiveTrace",
    "check_dive_trace", "almost_subgraph_depth", "AlmostSubgraphReport", "subdivision_experiment",
    "reverse_grain_line",
]
