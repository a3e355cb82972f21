"""Finite truncations of the Farey graph and its (generalised) halved variants.

Vertex naming: the two ends of the order-0 path are ``x`` and ``y`` and its
interior vertices are ``0/i``.  A vertex introduced at level ``k`` on the
replacement path of the ``i``-th blue edge of the level ``k-1`` path is
``k/i.j`` with ``j`` counting from the left end of that edge.  The second
copy of a halved Farey graph inside ``farey(n)`` carries a ``*`` suffix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .graph_core import Edge, Graph, InputError, Path, path_edges

LengthFunction = tuple[int, ...]


def validate_lengths(lengths: Sequence[int], order: int | None = None) -> LengthFunction:
    ls = tuple(int(v) for v in lengths)
    if not ls:
        raise InputError("length function needs at least the value at 0")
    if order is not None and len(ls) < order + 1:
        raise InputError(f"length function defined on 0..{len(ls) - 1}, need 0..{order}")
    if ls[0] < 1:
        raise InputError(f"l(0) = {ls[0]} must be at least 1")
    for k, v in enumerate(ls[1:], start=1):
        if v < 2:
            raise InputError(f"l({k}) = {v} must be at least 2")
    return ls


@dataclass(frozen=True)
class LeveledFareyGraph:
    """A generated graph together with its level structure.

    ``paths[k]`` is the blue path of level ``k``; it visits every vertex of
    level at most ``k`` in the order ``order``.
    """

    graph: Graph
    lengths: LengthFunction
    vertex_level: dict = field(compare=False)
    edge_level: dict = field(compare=False)
    order: tuple
    paths: tuple
    x: str = "x"
    y: str = "y"

    @property
    def n(self) -> int:
        return len(self.paths) - 1

    @cached_property
    def blue(self) -> frozenset:
        return frozenset(path_edges(self.paths[-1]))

    @cached_property
    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.order)}

    def grain_line(self):
        from .grainline import GrainLine
        return GrainLine(self.x, self.y, self.order, self.paths, host=self.graph)

    def circular_layout(self) -> list[str]:
        """Outerplanarity certificate: the vertices in outer-cycle order."""
        return list(self.order)

    def metadata_json(self) -> dict:
        return {
            "lengths": list(self.lengths),
            "x": self.x,
            "y": self.y,
            "levels": {
                "vertex": dict(sorted(self.vertex_level.items())),
                "edge": [[u, v, lv] for (u, v), lv in sorted(self.edge_level.items())],
            },
            "order": list(self.order),
            "paths": [list(p) for p in self.paths],
        }


def generalised_halved_farey(lengths: Sequence[int], n: int) -> LeveledFareyGraph:
    """The order-``n`` truncation of the generalised halved Farey graph F(l)."""
    if n < 0:
        raise InputError("order must be non-negative")
    ls = validate_lengths(lengths, n)[: n + 1]
    first = ["x"] + [f"0/{i}" for i in range(1, ls[0])] + ["y"]
    paths: list[Path] = [tuple(first)]
    vlevel = {v: 0 for v in first}
    elevel: dict[Edge, int] = {e: 0 for e in path_edges(first)}
    for k in range(1, n + 1):
        prev = paths[-1]
        cur = [prev[0]]
        for i in range(len(prev) - 1):
            inner = [f"{k}/{i}.{j}" for j in range(1, ls[k])]
            for v in inner:
                vlevel[v] = k
            cur.extend(inner)
            cur.append(prev[i + 1])
        for e in path_edges(cur):
            elevel[e] = k
        paths.append(tuple(cur))
    g = Graph(vlevel, elevel)
    return LeveledFareyGraph(g, ls, vlevel, elevel, paths[-1], tuple(paths))


def halved_farey(n: int) -> LeveledFareyGraph:
    """Halved Farey graph of order n: F(l) with l = (1, 2, 2, ...)."""
    if n < 0:
        raise InputError("order must be non-negative")
    return generalised_halved_farey((1,) + (2,) * n, n)


def _second_copy(v: str) -> str:
    return v if v in ("x", "y") else v + "*"


def farey_with_order(n: int) -> tuple[Graph, list[str]]:
    """Farey graph of order n and the cyclic order induced by its two halves."""
    h = halved_farey(n)
    other = h.graph.rename({v: _second_copy(v) for v in h.graph.vertices})
    cyclic = list(h.order) + [_second_copy(v) for v in reversed(h.order[1:-1])]
    return h.graph.union(other), cyclic


def farey(n: int) -> Graph:
    """Two copies of the halved Farey graph of order n glued along the order-0 edge."""
    return farey_with_order(n)[0]


def blue_hamilton_paths(g: LeveledFareyGraph) -> list[Path]:
    paths = getattr(g, "paths", None)
    if not paths:
        raise InputError("graph carries no level metadata")
    return list(paths)


def adversarial_length_function(families: Sequence, horizon: int) -> LengthFunction:
    """Length function beating a list of grain lines up to ``horizon``.

    l(k) is one more than the longest path Q_j of family i over
    0 <= i, j <= 2k (families beyond the list are simply absent).
    """
    if not families:
        raise InputError("need at least one grain line")
    if horizon < 0:
        raise InputError("horizon must be non-negative")
    need = 2 * horizon + 1
    for i, gl in enumerate(families):
        if len(gl.paths) < need:
            raise InputError(f"family {i} has {len(gl.paths)} paths, horizon {horizon} needs {need}")
    values = []
    for k in range(horizon + 1):
        longest = max(len(gl.paths[j]) - 1
                      for gl in families[: 2 * k + 1]
                      for j in range(2 * k + 1))
        values.append(1 + longest)
    values[0] = max(values[0], 1)
    if horizon >= 1:
        values[1] = max(values[1], 2)
    return validate_lengths(values)


def level_counts(lengths: Sequence[int], n: int) -> tuple[int, int]:
    """(|V|, |E|) of the order-n truncation of F(l), from the level recurrence."""
    ls = validate_lengths(lengths, n)
    blue = ls[0]
    nv, ne = ls[0] + 1, ls[0]
    for k in range(1, n + 1):
        nv += blue * (ls[k] - 1)
        blue *= ls[k]
        ne += blue
    return nv, ne

