"""Perfect matchings and domino tilings of snake graphs, and ways to count them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import CapExceeded, EmptyCF, NotAMatching, NotATiling
from .sequences import fibonacci
from .snakecore import (
    ChainSpec,
    ContinuedFraction,
    Edge,
    SnakeGraph,
    Vertex,
    _adjacent,
    continuant,
    cover,
    make_edge,
    snake_to_cf,
)


@dataclass(frozen=True, order=True)
class PerfectMatching:
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(sorted(make_edge(*e) for e in self.edges)))

    def to_json(self) -> list:
        return [[list(u), list(v)] for u, v in self.edges]

    @classmethod
    def from_json(cls, data: list) -> PerfectMatching:
        return cls(tuple((tuple(u), tuple(v)) for u, v in data))


@dataclass(frozen=True, order=True)
class Tiling:
    """Dominoes as pairs of square centres (each square is centred on a vertex)."""

    dominoes: tuple[tuple[Vertex, Vertex], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dominoes", tuple(sorted(make_edge(*p) for p in self.dominoes)))

    def to_json(self) -> list:
        return [[list(a), list(b)] for a, b in self.dominoes]

    @classmethod
    def from_json(cls, data: list) -> Tiling:
        return cls(tuple((tuple(a), tuple(b)) for a, b in data))


def _check_cap(cap: int) -> None:
    if cap < 1:
        raise ValueError(f"cap must be positive, got {cap}")


def _perfect_pairings(points: Sequence[Vertex], allowed, cap: int) -> list[tuple[Edge, ...]]:
    """All ways to pair up ``points`` into lattice-adjacent pairs accepted by
    ``allowed``; backtracks on the smallest unpaired point, trying E, N, W, S."""
    _check_cap(cap)
    remaining = set(points)
    order = sorted(points)
    chosen: list[Edge] = []
    found: list[tuple[Edge, ...]] = []

    def first_free(start: int) -> int:
        while start < len(order) and order[start] not in remaining:
            start += 1
        return start

    def search(start: int) -> None:
        i = first_free(start)
        if i == len(order):
            if len(found) >= cap:
                raise CapExceeded(len(found), cap)
            found.append(tuple(sorted(chosen)))
            return
        v = order[i]
        for w in _adjacent(v):
            if w in remaining and allowed(v, w):
                remaining.discard(v)
                remaining.discard(w)
                chosen.append(make_edge(v, w))
                search(i + 1)
                chosen.pop()
                remaining.add(v)
                remaining.add(w)

    search(0)
    found.sort()
    return found


def enumerate_matchings(g: SnakeGraph, cap: int) -> list[PerfectMatching]:
    pairings = _perfect_pairings(g.vertices, lambda u, v: g.has_edge(make_edge(u, v)), cap)
    return [PerfectMatching(p) for p in pairings]


def enumerate_tilings(g: SnakeGraph, cap: int) -> list[Tiling]:
    """Domino tilings of the cover, found from the square geometry alone."""
    centers = [s.center for s in cover(g).squares]
    return [Tiling(p) for p in _perfect_pairings(centers, lambda a, b: True, cap)]


def cf_numerator(cf: ContinuedFraction | Sequence[int]) -> int:
    if not isinstance(cf, ContinuedFraction):
        if len(cf) == 0:
            raise EmptyCF("continued fraction has no terms")
        cf = ContinuedFraction(tuple(cf))
    return continuant(cf.terms)


def count_matchings(g: SnakeGraph) -> int:
    return cf_numerator(snake_to_cf(g))


def count_chain_recurrence(spec: ChainSpec | Sequence[int]) -> int:
    """Matching count from chain lengths alone.

    ``m = F(l1) m(l2 - 1, ...) + F(l1 + 1) m(l2 - 2, ...)``, with
    ``m() = 1`` and ``m(l) = F(l + 2)``.  Mirrored graphs have the same
    count, so orientation is dropped.

    A leading length 1 is the first tile of the next chain:
    ``m(1, l, ...) = m(l, ...)``.  A leading length 0 is the dangling top
    edge of a spent chain; its far end is forced onto the next chain's
    second tile, so ``m(0, l, ...) = m(l - 2, ...)``.
    """
    lengths = spec.lengths if isinstance(spec, ChainSpec) else tuple(spec)
    if not isinstance(spec, ChainSpec):
        ChainSpec("h", lengths)  # validates
    return _chain_count(tuple(lengths))


@lru_cache(maxsize=None)
def _chain_count(lengths: tuple[int, ...]) -> int:
    if not lengths:
        return 1
    if len(lengths) == 1:
        return fibonacci(lengths[0] + 2)
    l1, l2, rest = lengths[0], lengths[1], lengths[2:]
    if l1 == 0:
        return _chain_count((l2 - 2,) + rest)
    if l1 == 1:
        return _chain_count((l2,) + rest)
    return fibonacci(l1) * _chain_count((l2 - 1,) + rest) + fibonacci(l1 + 1) * _chain_count((l2 - 2,) + rest)


def check_matching(g: SnakeGraph, m: PerfectMatching) -> None:
    seen: set[Vertex] = set()
    for e in m.edges:
        if not g.has_edge(e):
            raise NotAMatching(f"{e} is not an edge of the graph")
        for v in e:
            if v in seen:
                raise NotAMatching(f"vertex {v} is covered twice")
            seen.add(v)
    if len(seen) != len(g.vertices):
        missing = sorted(set(g.vertices) - seen)
        raise NotAMatching(f"uncovered vertices {missing}")


def matching_to_tiling(g: SnakeGraph, m: PerfectMatching) -> Tiling:
    check_matching(g, m)
    return Tiling(m.edges)


def tiling_to_matching(g: SnakeGraph, t: Tiling) -> PerfectMatching:
    centers = cover(g).centers
    seen: set[Vertex] = set()
    for a, b in t.dominoes:
        if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
            raise NotATiling(f"squares {a} and {b} do not share a side")
        for c in (a, b):
            if c not in centers:
                raise NotATiling(f"square {c} lies outside the cover")
            if c in seen:
                raise NotATiling(f"square {c} is covered twice")
            seen.add(c)
    if seen != centers:
        raise NotATiling(f"uncovered squares {sorted(centers - seen)}")
    m = PerfectMatching(t.dominoes)
    try:
        check_matching(g, m)
    except NotAMatching as exc:
        raise NotATiling(str(exc)) from exc
    return m
