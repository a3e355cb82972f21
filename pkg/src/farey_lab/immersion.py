"""Immersions: models, verification, a brute-force oracle, constructions and cut bounds."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .generators import halved_farey
from .graph_core import Graph, InputError, Path, edge, edge_connectivity, is_path, path_edges, subpath
from .grainline import GrainLine, check_grain_line
from .reports import ValidationReport


@dataclass
class ImmersionModel:
    pattern: Graph
    host: Graph
    branch: dict
    routes: dict  # pattern edge (sorted pair) -> host path
    strong: bool = True

    def to_json(self) -> dict:
        return {
            "branch": dict(sorted(self.branch.items())),
            "routes": {f"{a}-{b}": list(p) for (a, b), p in sorted(self.routes.items())},
            "strong": self.strong,
            "pattern": self.pattern.to_json(),
            "host": self.host.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ImmersionModel":
        try:
            pattern = Graph.from_json(data["pattern"])
            host = Graph.from_json(data["host"])
            routes = {}
            for key, p in data["routes"].items():
                a, b = _split_key(key, pattern)
                routes[edge(a, b)] = tuple(p) if a < b else tuple(reversed(p))
            return cls(pattern, host, dict(data["branch"]), routes, bool(data.get("strong", True)))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"malformed immersion model: {exc!r}") from None


def _split_key(key: str, pattern: Graph) -> tuple[str, str]:
    # vertex names may themselves contain "-", so try every split point
    for i, ch in enumerate(key):
        if ch == "-" and key[:i] in pattern and key[i + 1:] in pattern:
            return key[:i], key[i + 1:]
    raise InputError(f"route key {key!r} does not name a pattern edge")


def verify_immersion(model: ImmersionModel) -> ValidationReport:
    """Empty report iff branch map, routes, edge-disjointness and (if strong) interiors are fine."""
    H, G = model.pattern, model.host
    rep = ValidationReport()
    missing = [h for h in H.vertices if h not in model.branch]
    if missing:
        rep.add("branch", "pattern vertices without a branch vertex", missing)
    images = [model.branch[h] for h in H.vertices if h in model.branch]
    if len(set(images)) != len(images):
        rep.add("injective", "branch map is not injective")
    bad = [b for b in images if b not in G]
    if bad:
        rep.add("branch", "branch vertices outside the host", bad)
    extra = [e for e in model.routes if e not in H.edges]
    if extra:
        rep.add("route", "routes for non-edges of the pattern", extra)
    image_set = set(images)
    owner: dict = {}
    for e in H.sorted_edges():
        r = model.routes.get(e)
        if r is None:
            rep.add("route", f"pattern edge {e} has no route", e)
            continue
        if e[0] not in model.branch or e[1] not in model.branch:
            continue
        a, b = model.branch[e[0]], model.branch[e[1]]
        if {r[0], r[-1]} != {a, b} or len(r) < 2 or not is_path(G, r):
            rep.add("route", f"route of {e} is not a host path from {a} to {b}", e)
            continue
        for f in path_edges(r):
            if f in owner:
                rep.add("edge_disjoint", f"routes of {owner[f]} and {e} share host edge {f}", f)
            owner[f] = e
        if model.strong:
            hit = [v for v in r[1:-1] if v in image_set]
            if hit:
                rep.add("strong", f"route of {e} passes through branch vertices", hit)
    return rep


# brute-force oracle

@dataclass
class ImmersionSearch:
    status: str
    model: ImmersionModel | None
    nodes: int


class _Budget(Exception):
    pass


def find_immersion_bruteforce(H: Graph, G: Graph, strong: bool = True, budget: int = 200_000,
                              fixed_branch: dict | None = None,
                              allowed: Iterable[str] | None = None) -> ImmersionSearch:
    """Exhaustive backtracking over branch vertices and routes.

    ``allowed`` restricts branch vertices to a host subset; ``fixed_branch``
    pins the whole branch map.  ``none`` is only returned when the search
    finished within ``budget`` nodes.
    """
    if len(H) > len(G):
        return ImmersionSearch("none", None, 0)
    allowed_set = set(G.vertices) if allowed is None else set(allowed)
    if len(H) > len(allowed_set):
        return ImmersionSearch("none", None, 0)
    order = _pattern_order(H)
    state = {"nodes": 0}
    branch: dict = {}
    used_edges: set = set()
    interior: dict = {}  # host vertex -> number of routes through it
    routes: dict = {}

    def tick():
        state["nodes"] += 1
        if state["nodes"] > budget:
            raise _Budget

    def free_degree(g):
        return sum(1 for n in G.neighbors(g) if edge(g, n) not in used_edges)

    def remaining_at(h):
        return sum(1 for n in H.neighbors(h) if edge(h, n) not in routes)

    def feasible():
        return all(free_degree(branch[h]) >= remaining_at(h) for h in branch)

    def paths(a, b):
        images = set(branch.values())
        path = [a]
        on = {a}

        def rec():
            cur = path[-1]
            for n in G.neighbors(cur):
                e = edge(cur, n)
                if e in used_edges or n in on:
                    continue
                if n == b:
                    yield tuple(path) + (b,)
                    continue
                if strong and n in images:
                    continue
                path.append(n)
                on.add(n)
                yield from rec()
                path.pop()
                on.discard(n)
        yield from rec()

    def assign(i):
        if i == len(order):
            return True
        h = order[i]
        if fixed_branch is not None:
            cands = [fixed_branch[h]]
        else:
            cands = [g for g in G.vertices if g in allowed_set]
        for g in cands:
            if g in branch.values() or G.degree(g) < H.degree(h):
                continue
            if strong and interior.get(g):
                continue
            tick()
            branch[h] = g
            todo = [n for n in H.neighbors(h) if n in branch and n != h]
            if feasible() and route(h, todo, 0, i):
                return True
            del branch[h]
        return False

    def route(h, todo, j, i):
        if j == len(todo):
            return assign(i + 1)
        n = todo[j]
        e = edge(h, n)
        a, b = branch[e[0]], branch[e[1]]
        for p in paths(a, b):
            tick()
            es = path_edges(p)
            routes[e] = p
            used_edges.update(es)
            for v in p[1:-1]:
                interior[v] = interior.get(v, 0) + 1
            if feasible() and route(h, todo, j + 1, i):
                return True
            for v in p[1:-1]:
                interior[v] -= 1
            used_edges.difference_update(es)
            del routes[e]
        return False

    if fixed_branch is not None:
        if set(fixed_branch) != set(H.vertices) or len(set(fixed_branch.values())) != len(H):
            raise InputError("fixed branch map must be injective on V(H)")
        if any(g not in G for g in fixed_branch.values()):
            raise InputError("fixed branch map leaves the host")
    try:
        ok = assign(0)
    except _Budget:
        return ImmersionSearch("unknown", None, state["nodes"])
    if not ok:
        return ImmersionSearch("none", None, state["nodes"])
    model = ImmersionModel(H, G, dict(branch), dict(routes), strong)
    assert verify_immersion(model).ok
    return ImmersionSearch("found", model, state["nodes"])


def _pattern_order(H: Graph) -> list[str]:
    order: list[str] = []
    rest = set(H.vertices)
    while rest:
        placed = set(order)
        v = min(rest, key=lambda u: (-sum(1 for n in H.neighbors(u) if n in placed), -H.degree(u), u))
        order.append(v)
        rest.remove(v)
    return order


# the halved Farey graph inside a wildly presented grain line

def immerse_halved_farey(gl: GrainLine, m: int) -> ImmersionModel:
    """Strong immersion of the order-m halved Farey graph in the union of gl's paths.

    Level n+1 branch vertices sit between consecutive level-n ones; every
    level n+1 pattern edge is routed along a segment of P_{n+1}.
    """
    if m < 0:
        raise InputError("order must be non-negative")
    if m > gl.m:
        raise InputError(f"level {m} needs path P_{m}, grain line stops at P_{gl.m}")
    rep = check_grain_line(gl)
    if not rep.ok:
        raise InputError(f"not a grain line:\n{rep}")
    pattern = halved_farey(m)
    rank, vd = gl.rank, gl.vertex_depth
    U = [gl.x, gl.y]
    names = {gl.x: "x", gl.y: "y"}
    routes = {("x", "y"): tuple(gl.paths[0])}
    for n in range(m):
        P = gl.paths[n + 1]
        new_U = [U[0]]
        for k in range(1, len(U)):
            a, b = U[k - 1], U[k]
            between = [v for v in gl.L if rank[a] < rank[v] < rank[b] and vd[v] <= n]
            b2 = between[0] if between else b
            if a not in P or b2 not in P:
                raise InputError(f"level {n + 1}: P_{n + 1} misses {a} or {b2}")
            seg = subpath(P, a, b2)
            cands = [v for v in seg[1:-1] if v in rank and rank[a] < rank[v] < rank[b2]]
            if not cands:
                raise InputError(f"level {n + 1}: no limit vertex of P_{n + 1} strictly between {a} and {b2}")
            v = min(cands, key=rank.__getitem__)
            names[v] = f"{n + 1}/{k - 1}.1"
            new_U.extend([v, b])
        for a, b in zip(new_U, new_U[1:]):
            if a not in P or b not in P:
                raise InputError(f"level {n + 1}: P_{n + 1} misses {a} or {b}")
            r = subpath(P, a, b)
            e = edge(names[a], names[b])
            routes[e] = r if names[a] == e[0] else tuple(reversed(r))
        U = new_U
    branch = {h: v for v, h in names.items()}
    model = ImmersionModel(pattern.graph, gl.union, branch, routes, True)
    rep = verify_immersion(model)
    if not rep.ok:
        raise InputError(f"construction failed to verify:\n{rep}")
    return model


def branch_levels(model: ImmersionModel) -> list[list[str]]:
    """U_0, U_1, ...: branch vertices of pattern vertices of level at most n."""
    def level(h):
        return 0 if h in ("x", "y") else int(h.split("/")[0])
    top = max(level(h) for h in model.pattern.vertices)
    return [sorted(model.branch[h] for h in model.pattern.vertices if level(h) <= n) for n in range(top + 1)]


# grain lines from chains of unitary separations

@dataclass
class WildExtraction:
    grain_line: GrainLine
    model: ImmersionModel
    host_paths: list
    kept_subdivisions: int


def wild_separations_to_grainline(G: Graph, S: Sequence, x: str, y: str,
                                  paths: Sequence[Sequence[str]] | None = None) -> WildExtraction:
    """Grain line with L = x, the separators in chain order, y.

    Paths come from ``paths`` or a maximum edge-disjoint x-y system.  They
    are kept greedily when they visit L in order, visit a superset of the
    previous path's L-vertices and meet earlier paths only in L.  Non-L
    vertices are then suppressed; a run whose suppression would create a
    parallel edge keeps its first interior vertex.
    """
    if x not in G or y not in G or x == y:
        raise InputError("x and y must be distinct vertices of G")
    seps = []
    for i, s in enumerate(S):
        if len(s.A & s.B) != 1:
            raise InputError(f"separation {i} is not unitary")
        if x in s.A - s.B and y in s.B - s.A:
            seps.append((s.A, s.B))
        elif x in s.B - s.A and y in s.A - s.B:
            seps.append((s.B, s.A))
        else:
            raise InputError(f"separation {i} does not separate {x} from {y}")
    seps_v = [next(iter(A & B)) for A, B in seps]
    if len(set(seps_v)) != len(seps_v):
        dup = sorted({v for v in seps_v if seps_v.count(v) > 1})
        raise InputError(f"duplicate separators {dup}")
    for i in range(len(seps) - 1):
        (A1, B1), (A2, B2) = seps[i], seps[i + 1]
        if not (A1 <= A2 and B1 >= B2):
            raise InputError(f"separations {i} and {i + 1} are not ordered")
    L = [x] + seps_v + [y]
    rank = {v: i for i, v in enumerate(L)}
    if paths is None:
        _, paths = edge_connectivity(G, x, y)
    pool = []
    for p in paths:
        p = tuple(p)
        if p[0] == y:
            p = tuple(reversed(p))
        if p[0] != x or p[-1] != y or not is_path(G, p):
            raise InputError(f"not an x-y path of G: {p}")
        pool.append(p)
    pool.sort(key=lambda p: sum(1 for v in p if v in rank))
    chosen: list = []
    seen_outside: set = set()
    used: set = set()
    prev_visit: set = set()
    for p in pool:
        visit = [v for v in p if v in rank]
        if [rank[v] for v in visit] != sorted(rank[v] for v in visit):
            continue
        if not set(visit) >= prev_visit:
            continue
        outside = {v for v in p if v not in rank}
        es = set(path_edges(p))
        if outside & seen_outside or es & used:
            continue
        chosen.append(p)
        seen_outside |= outside
        used |= es
        prev_visit = set(visit)
    if not chosen:
        raise InputError("no usable x-y path")
    missed = [v for v in seps_v if v not in prev_visit]
    if missed:
        raise InputError(f"separators {missed} lie on no kept path")
    # suppression
    new_paths = []
    routes = {}
    kept = 0
    for p in chosen:
        cut = [i for i, v in enumerate(p) if v in rank]
        q = [p[0]]
        for i, j in zip(cut, cut[1:]):
            a, b = p[i], p[j]
            if j - i > 1 and (edge(a, b) in routes or G.has_edge(a, b) and _direct_used(chosen, a, b)):
                mid = p[i + 1]
                kept += 1
                routes[edge(a, mid)] = _orient(p[i:i + 2], a, mid)
                routes[edge(mid, b)] = _orient(p[i + 1:j + 1], mid, b)
                q.extend([mid, b])
            else:
                routes[edge(a, b)] = _orient(p[i:j + 1], a, b)
                q.append(b)
        new_paths.append(tuple(q))
    pattern = Graph({v for q in new_paths for v in q}, routes)
    assert pattern.num_edges() == sum(len(q) - 1 for q in new_paths), "suppression created a parallel edge"
    gl = GrainLine(x, y, tuple(L), new_paths, host=pattern)
    rep = check_grain_line(gl)
    if not rep.ok:
        raise InputError(f"extracted paths do not form a grain line:\n{rep}")
    model = ImmersionModel(pattern, G, {v: v for v in pattern.vertices}, routes, True)
    assert verify_immersion(model).ok
    return WildExtraction(gl, model, chosen, kept)


def _direct_used(paths, a, b) -> bool:
    e = edge(a, b)
    return any(e in set(path_edges(p)) for p in paths)


def _orient(p: Sequence[str], a: str, b: str) -> Path:
    p = tuple(p)
    return p if a < b else tuple(reversed(p))


# cut bounds

@dataclass
class CutBoundRow:
    u: str
    v: str
    left: tuple
    right: tuple
    demand: int
    supply: int

    @property
    def slack(self) -> int:
        return self.supply - self.demand


@dataclass
class CutBoundReport:
    rows: list
    vacuous: bool

    @property
    def min_slack(self) -> int | None:
        return min((r.slack for r in self.rows), default=None)

    @property
    def certifies_impossible(self) -> bool:
        return any(r.slack < 0 for r in self.rows)


def cut_bound_complete(G: Graph, cyclic_order: Sequence[str], U: Iterable[str]) -> CutBoundReport:
    """Crossing-edge bound for a strong immersion of the complete graph on branch set U.

    For u, v in U splitting U along the cyclic order, every route between the
    two open arcs avoids u and v internally, so it needs its own crossing edge.
    """
    order = list(cyclic_order)
    if set(order) != set(G.vertices) or len(order) != len(G):
        raise InputError("cyclic order must list every host vertex once")
    pos = {v: i for i, v in enumerate(order)}
    U = sorted(set(U), key=pos.__getitem__)
    if any(u not in pos for u in U):
        raise InputError("branch candidates must be host vertices")
    rows = []
    n = len(order)
    for i, j in combinations(range(len(U)), 2):
        u, v = U[i], U[j]
        left, right = tuple(U[i + 1:j]), tuple(U[j + 1:] + U[:i])
        if not left or not right:
            continue
        pu, pv = pos[u], pos[v]
        arc = {order[k % n] for k in range(pu + 1, pv)}
        other = set(order) - arc - {u, v}
        supply = sum(1 for a, b in G.edges if (a in arc and b in other) or (b in arc and a in other))
        rows.append(CutBoundRow(u, v, left, right, len(left) * len(right), supply))
    return CutBoundReport(rows, not rows)


def cut_bound_farey_in_halved(host, U: Iterable[str], pattern: Graph | None = None,
                              branch: dict | None = None) -> CutBoundReport:
    """Bound at each branch vertex w of a halved Farey host.

    Routes between branch vertices in [x, w) and (w, y] avoid w, so each needs
    an edge between those intervals.  The demand is the number of pattern
    edges joining the two sides (all pairs when no pattern is given).
    """
    gl = host.grain_line() if hasattr(host, "grain_line") else host
    G = gl.host
    rank = gl.rank
    U = sorted(set(U), key=lambda v: rank[v])
    if any(u not in rank for u in U):
        raise InputError("branch candidates must be limit vertices of the host")
    if (pattern is None) != (branch is None):
        raise InputError("pattern and branch map go together")
    if branch is not None:
        pre = {g: h for h, g in branch.items()}
        if set(pre) != set(U):
            raise InputError("branch map must have image U")
    rows = []
    for w in U:
        left = tuple(u for u in U if rank[u] < rank[w])
        right = tuple(u for u in U if rank[u] > rank[w])
        if not left or not right:
            continue
        lo = {v for v in G.vertices if rank[v] < rank[w]}
        hi = {v for v in G.vertices if rank[v] > rank[w]}
        supply = sum(1 for a, b in G.edges if (a in lo and b in hi) or (b in lo and a in hi))
        if pattern is None:
            demand = len(left) * len(right)
        else:
            ls, rs = {pre[u] for u in left}, {pre[u] for u in right}
            demand = sum(1 for a, b in pattern.edges if (a in ls and b in rs) or (b in ls and a in rs))
        rows.append(CutBoundRow(w, w, left, right, demand, supply))
    return CutBoundReport(rows, not rows)
