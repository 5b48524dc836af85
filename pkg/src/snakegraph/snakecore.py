"""Snake graphs and their encodings.

A snake graph is identified by its direction word over ``{"R", "U"}``:
letter ``i`` says whether tile ``i + 2`` sits East (``R``) or North (``U``)
of tile ``i + 1``.  Everything geometric is derived from the word, with the
south-west corner of the first tile at the origin.

Vertices are integer pairs ``(x, y)``; an edge is a pair of vertices
``(u, v)`` with ``u < v`` in tuple order.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BadChainLength, BadWord, DegenerateCF, EmptyCF, NonPositiveTerm

Vertex = tuple[int, int]
Edge = tuple[Vertex, Vertex]

RIGHT = "R"
UP = "U"


def make_edge(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if u <= v else (v, u)


def vertex_parity(v: Vertex) -> int:
    return (v[0] + v[1]) % 2


@dataclass(frozen=True)
class SnakeGraph:
    word: str

    def __post_init__(self) -> None:
        if not isinstance(self.word, str):
            raise BadWord(f"word must be a string, got {type(self.word).__name__}")
        bad = set(self.word) - {RIGHT, UP}
        if bad:
            raise BadWord(f"word may only contain R and U, found {''.join(sorted(bad))!r}")

    @property
    def d(self) -> int:
        """Number of tiles."""
        return len(self.word) + 1

    @cached_property
    def cells(self) -> tuple[Vertex, ...]:
        """South-west corners of the tiles, in order."""
        x = y = 0
        out = [(0, 0)]
        for step in self.word:
            if step == RIGHT:
                x += 1
            else:
                y += 1
            out.append((x, y))
        return tuple(out)

    def tile_edges(self, i: int) -> dict[str, Edge]:
        """The N/S/E/W edges of tile ``i`` (1-based)."""
        x, y = self.cells[i - 1]
        return {
            "S": ((x, y), (x + 1, y)),
            "N": ((x, y + 1), (x + 1, y + 1)),
            "W": ((x, y), (x, y + 1)),
            "E": ((x + 1, y), (x + 1, y + 1)),
        }

    @cached_property
    def vertices(self) -> tuple[Vertex, ...]:
        vs = set()
        for x, y in self.cells:
            vs.update({(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)})
        return tuple(sorted(vs))

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        es = set()
        for i in range(1, self.d + 1):
            es.update(self.tile_edges(i).values())
        return tuple(sorted(es))

    @cached_property
    def interior_edges(self) -> tuple[Edge, ...]:
        """``e_1 .. e_{d-1}``: the edge shared by tiles ``i`` and ``i + 1``."""
        out = []
        for i, step in enumerate(self.word, start=1):
            out.append(self.tile_edges(i)["E" if step == RIGHT else "N"])
        return tuple(out)

    @cached_property
    def sign_edges(self) -> tuple[Edge, ...]:
        """``e_0 .. e_d``: south edge of the first tile, the interior edges,
        north edge of the last tile."""
        return (self.tile_edges(1)["S"], *self.interior_edges, self.tile_edges(self.d)["N"])

    @cached_property
    def boundary_edges(self) -> tuple[Edge, ...]:
        interior = set(self.interior_edges)
        return tuple(e for e in self.edges if e not in interior)

    def neighbors(self, v: Vertex) -> list[Vertex]:
        return [w for w in _adjacent(v) if make_edge(v, w) in self._edge_set]

    @cached_property
    def _edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, e: Edge) -> bool:
        return e in self._edge_set

    def to_json(self) -> dict:
        return {"word": self.word, "d": self.d}

    @classmethod
    def from_json(cls, data: dict | str) -> SnakeGraph:
        if isinstance(data, str):
            data = json.loads(data)
        g = cls(data["word"])
        if "d" in data and data["d"] != g.d:
            raise BadWord(f"tile count {data['d']} does not match word of length {len(g.word)}")
        return g

    def __str__(self) -> str:
        return f"word:{self.word}"


def _adjacent(v: Vertex) -> list[Vertex]:
    # E, N, W, S: the order backtracking tries incident edges in
    x, y = v
    return [(x + 1, y), (x, y + 1), (x - 1, y), (x, y - 1)]


def snake_from_word(word: str | Iterable[str]) -> SnakeGraph:
    return SnakeGraph("".join(word))


def reverse(g: SnakeGraph) -> SnakeGraph:
    """The graph rotated by 180 degrees: same steps, opposite order."""
    return SnakeGraph(g.word[::-1])


# ---------------------------------------------------------------------------
# signs and continued fractions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignSequence:
    signs: tuple[int, ...]  # +1 / -1 for e_0 .. e_d

    def runs(self) -> list[int]:
        out: list[int] = []
        prev = None
        for s in self.signs:
            if s == prev:
                out[-1] += 1
            else:
                out.append(1)
            prev = s
        return out

    def __str__(self) -> str:
        return "[" + ", ".join("+" if s > 0 else "-" for s in self.signs) + "]"


def sign_sequence(g: SnakeGraph) -> SignSequence:
    # Leaving a tile through the side opposite its entry flips the sign
    # (S->N, W->E); turning keeps it (S->E, W->N).
    signs = [1]
    entered_from_south = True
    for step in g.word + UP:  # the north edge of the last tile closes the sequence
        straight = (step == UP) == entered_from_south
        signs.append(-signs[-1] if straight else signs[-1])
        entered_from_south = step == UP
    return SignSequence(tuple(signs))


def continuant(terms: Sequence[int]) -> int:
    """Numerator of ``[a_1, ..., a_n]``: ``p_i = a_i p_{i-1} + p_{i-2}``."""
    p_prev, p = 0, 1  # p_{-1} = 0, p_0 = 1
    for a in terms:
        p_prev, p = p, a * p + p_prev
    return p


@dataclass(frozen=True)
class ContinuedFraction:
    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise EmptyCF("continued fraction has no terms")
        for a in terms:
            if not isinstance(a, int) or isinstance(a, bool):
                raise NonPositiveTerm(f"term {a!r} is not an integer")
            if a < 1:
                raise NonPositiveTerm(f"term {a} is not positive")

    @property
    def numerator(self) -> int:
        return continuant(self.terms)

    @property
    def value(self) -> Fraction:
        v = Fraction(self.terms[-1])
        for a in reversed(self.terms[:-1]):
            v = a + 1 / v
        return v

    def canonical(self) -> ContinuedFraction:
        """Merge a trailing 1: ``[..., a, 1] -> [..., a + 1]``."""
        if len(self.terms) >= 2 and self.terms[-1] == 1:
            return ContinuedFraction(self.terms[:-2] + (self.terms[-2] + 1,))
        return self

    def reversed(self) -> ContinuedFraction:
        return ContinuedFraction(self.terms[::-1])

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.terms)) + "]"


def snake_to_cf(g: SnakeGraph, canonical: bool = True) -> ContinuedFraction:
    cf = ContinuedFraction(tuple(sign_sequence(g).runs()))
    return cf.canonical() if canonical else cf


def snake_from_cf(cf: ContinuedFraction | Sequence[int]) -> SnakeGraph:
    if not isinstance(cf, ContinuedFraction):
        cf = ContinuedFraction(tuple(cf))
    total = sum(cf.terms)
    if total < 2:
        raise DegenerateCF(f"{cf} gives {total - 1} tiles")
    signs: list[int] = []
    s = 1
    for a in cf.terms:
        signs.extend([s] * a)
        s = -s
    # e_0 .. e_{d-1} fix every step; the sign of e_d is forced by the last tile
    word = []
    entered_from_south = True
    for prev, cur in zip(signs, signs[1 : total - 1]):
        flipped = prev != cur
        up = flipped if entered_from_south else not flipped
        word.append(UP if up else RIGHT)
        entered_from_south = up
    return SnakeGraph("".join(word))


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------

class Orientation(enum.Enum):
    HORIZONTAL = "h"
    VERTICAL = "v"

    def flipped(self) -> Orientation:
        return Orientation.VERTICAL if self is Orientation.HORIZONTAL else Orientation.HORIZONTAL

    @property
    def step(self) -> str:
        return RIGHT if self is Orientation.HORIZONTAL else UP


@dataclass(frozen=True)
class ChainSpec:
    orientation: Orientation
    lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lengths", tuple(self.lengths))
        if isinstance(self.orientation, str):
            object.__setattr__(self, "orientation", Orientation(self.orientation))
        _check_chain_lengths(self.lengths)

    @property
    def tile_count(self) -> int:
        return sum(self.lengths) - (len(self.lengths) - 1)

    def __str__(self) -> str:
        return f"{self.orientation.value}:" + ",".join(map(str, self.lengths))


def _check_chain_lengths(lengths: Sequence[int]) -> None:
    if tuple(lengths) == (1,):
        return
    if not lengths:
        raise BadChainLength("no chains given")
    for l in lengths:
        if not isinstance(l, int) or l < 2:
            raise BadChainLength(f"chain length {l!r} < 2 (only the single tile [1] may use 1)")


def chain_decomposition(g: SnakeGraph) -> ChainSpec:
    if g.d == 1:
        return ChainSpec(Orientation.HORIZONTAL, (1,))
    lengths = []
    prev = None
    for step in g.word:
        if step == prev:
            lengths[-1] += 1
        else:
            lengths.append(2)
        prev = step
    first = Orientation.HORIZONTAL if g.word[0] == RIGHT else Orientation.VERTICAL
    return ChainSpec(first, tuple(lengths))


def snake_from_chains(spec: ChainSpec) -> SnakeGraph:
    if spec.lengths == (1,):
        return SnakeGraph("")
    word = []
    orientation = spec.orientation
    for l in spec.lengths:
        word.append(orientation.step * (l - 1))
        orientation = orientation.flipped()
    return SnakeGraph("".join(word))


# ---------------------------------------------------------------------------
# cover
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Square:
    center: Vertex
    left_decorated: bool


@dataclass(frozen=True)
class Cover:
    squares: tuple[Square, ...]

    @cached_property
    def centers(self) -> frozenset[Vertex]:
        return frozenset(s.center for s in self.squares)


def cover(g: SnakeGraph) -> Cover:
    return Cover(tuple(Square(v, vertex_parity(v) == 0) for v in g.vertices))
