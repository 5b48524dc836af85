"""Path counting, path matrices and exact determinants on contracted DAGs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CapExceeded
from .trigraph import Node, Route, TriDag, path_nodes, terminals


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> ExactMatrix:
        return cls(tuple(tuple(r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return ExactMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [[str(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> ExactMatrix:
        m = cls(tuple(tuple(int(x) for x in r) for r in data["rows"]))
        if m.n != data["n"]:
            raise ValueError(f"declared n={data['n']} but {m.n} rows given")
        return m

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.rows) + "]"


def path_count(t: TriDag, u: int | Node, v: int | Node) -> int:
    u, v = t.node_id(u), t.node_id(v)
    return _counts_from(t, u)[v]


def _counts_from(t: TriDag, u: int) -> list[int]:
    # node ids are already a topological order
    counts = [0] * len(t.nodes)
    counts[u] = 1
    for w in range(u, len(t.nodes)):
        if counts[w]:
            for a in t.out_arcs[w]:
                counts[t.arcs[a].head] += counts[w]
    return counts


def path_matrix(t: TriDag) -> ExactMatrix:
    term = terminals(t)
    rows = []
    for s in term.sources:
        counts = _counts_from(t, s)
        rows.append(tuple(counts[x] for x in term.sinks))
    return ExactMatrix(tuple(rows))


def determinant(m: ExactMatrix | Sequence[Sequence[int]]) -> int:
    """Fraction-free Bareiss elimination; the empty matrix has determinant 1."""
    a = [list(r) for r in (m.rows if isinstance(m, ExactMatrix) else m)]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _paths(t: TriDag, u: int, v: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    stack: list[int] = []

    def walk(w: int) -> None:
        if w == v:
            out.append(tuple(stack))
            return
        for a in t.out_arcs[w]:
            stack.append(a)
            walk(t.arcs[a].head)
            stack.pop()

    walk(u)
    return out


def enumerate_routes(t: TriDag, cap: int) -> list[Route]:
    if cap < 1:
        raise ValueError(f"cap must be positive, got {cap}")
    term = terminals(t)
    per_pair = [
        [(p, frozenset(path_nodes(t, p))) for p in sorted(_paths(t, s, x))]
        for s, x in zip(term.sources, term.sinks)
    ]
    found: list[Route] = []
    chosen: list[tuple[int, ...]] = []

    def search(i: int, used: frozenset[int]) -> None:
        if i == len(per_pair):
            if len(found) >= cap:
                raise CapExceeded(len(found), cap)
            found.append(Route(tuple(chosen)))
            return
        for p, nodes in per_pair[i]:
            if used.isdisjoint(nodes):
                chosen.append(p)
                search(i + 1, used | nodes)
                chosen.pop()

    search(0, frozenset())
    return found
