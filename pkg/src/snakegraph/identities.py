"""Hankel and Fibonacci-type matrices and checks of their determinant identities.

Every identity is checked along at least two independent routes.  When a
snake graph stands behind the matrix, its real path matrix and matching
count are compared too.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import BadChainLength, UnknownIdentity
from .lgv import ExactMatrix, determinant, path_matrix
from .matchings import count_matchings
from .sequences import CATALAN, SequenceKind, fibonacci, pell
from .snakecore import ChainSpec, SnakeGraph, continuant, snake_from_chains, snake_from_cf
from .trigraph import Assignment, contract, hourglass_count

F = fibonacci


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"size must be a positive integer, got {k!r}")


def _build(k: int, entry) -> ExactMatrix:
    return ExactMatrix(tuple(tuple(entry(i, j) for j in range(1, k + 1)) for i in range(1, k + 1)))


def hankel(kind: SequenceKind | str, n: int, shifted: bool = False) -> ExactMatrix:
    _check_k(n)
    if isinstance(kind, str):
        kind = SequenceKind(kind)
    off = 1 if shifted else 0
    return _build(n, lambda i, j: kind[i + j - 2 + off])


def hankel_sum_matrix(k: int, even_case: bool = False) -> ExactMatrix:
    """``H_k(C) + H'_k(C)``, minus one in the corner when ``even_case``."""
    m = hankel(CATALAN, k) + hankel(CATALAN, k, shifted=True)
    if not even_case:
        return m
    rows = m.tolist()
    rows[-1][-1] -= 1
    return ExactMatrix.from_rows(rows)


def ladder_closed_form_matrix(k: int, even_case: bool = False) -> ExactMatrix:
    """Tridiagonal Fibonacci matrix of the vertical ladder ``L_{2k-1}``
    (or ``L_{2k-2}`` when ``even_case``).

    The even case at ``k = 1`` stands for the empty ladder and is ``[[F_2]]``.
    """
    _check_k(k)
    if even_case and k == 1:
        return ExactMatrix(((F(2),),))

    def entry(i: int, j: int) -> int:
        if i == j:
            if i == 1 or (even_case and i == k):
                return F(3)
            return F(4)
        return F(2) if abs(i - j) == 1 else F(0)

    return _build(k, entry)


def general_fib_matrix(lengths: Sequence[int]) -> ExactMatrix:
    lengths = tuple(lengths)
    if not lengths:
        raise BadChainLength("no chain lengths given")
    for l in lengths:
        if not isinstance(l, int) or l < 2:
            raise BadChainLength(f"chain length {l!r} < 2")

    def entry(i: int, j: int) -> int:
        if i < j:
            v = F(lengths[i - 1] + 1) * F(lengths[j - 1] + 1)
            for r in range(i + 1, j):
                v *= F(lengths[r - 1])
            return v
        if i == j:
            return F(lengths[i - 1] + 2)
        return F(2) if i == j + 1 else F(0)

    return _build(len(lengths), entry)


def general_fib_graph(lengths: Sequence[int]) -> SnakeGraph:
    """``G_h(l_1, 2, l_2, 2, ..., 2, l_k)``."""
    chains: list[int] = []
    for l in lengths:
        chains += [l, 2]
    return snake_from_chains(ChainSpec("h", tuple(chains[:-1])))


def pell_matrix(k: int, odd_case: bool = True) -> ExactMatrix:
    """``M_k`` (``odd_case``) or ``M'_k``.

    ``M'_1`` is ``[[F_3]]``: the path matrix of the single tile, the graph
    of ``[2]``.
    """
    _check_k(k)
    if odd_case:
        def entry(i: int, j: int) -> int:
            if i == j:
                return F(5) if i == 1 else F(5) + F(3)
            if i < j:
                return F(4) * F(3) if i == 1 else (F(4) + F(2)) * F(3)
            return F(2) if i == j + 1 else F(0)
    else:
        if k == 1:
            return ExactMatrix(((F(3),),))

        def entry(i: int, j: int) -> int:
            if j == k and i < k:
                return F(4) if i == 1 else F(4) + F(2)
            if i == j:
                if i == 1:
                    return F(5)
                return F(4) if i == k else F(5) + F(3)
            if i < j:
                return F(4) * F(3) if i == 1 else (F(4) + F(2)) * F(3)
            return F(2) if i == j + 1 else F(0)

    return _build(k, entry)


def vertical_ladder(n: int) -> SnakeGraph:
    return SnakeGraph("U" * (n - 1))


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityReport:
    name: str
    parameter: object
    left: int
    right: int
    holds: bool
    checks: tuple[tuple[str, object], ...] = field(default=(), compare=False)
    note: str = ""

    def to_json(self) -> str:
        param = list(self.parameter) if isinstance(self.parameter, tuple) else self.parameter
        return json.dumps(
            {
                "identity": self.name,
                "parameter": param,
                "left": str(self.left),
                "right": str(self.right),
                "holds": self.holds,
                "checks": {k: str(v) for k, v in self.checks},
                "note": self.note,
            },
            sort_keys=True,
        )

    def __str__(self) -> str:
        param = ",".join(map(str, self.parameter)) if isinstance(self.parameter, tuple) else self.parameter
        status = "holds" if self.holds else "FAILS"
        extra = f" ({self.note})" if self.note else ""
        return f"{self.name} [{param}]: {self.left} = {self.right} {status}{extra}"


def _report(name: str, param, left: int, right: int, checks: list[tuple[str, object]], note: str = "") -> IdentityReport:
    values = [left, right] + [v for _, v in checks if not isinstance(v, bool)]
    flags = [v for _, v in checks if isinstance(v, bool)]
    holds = len(set(values)) == 1 and all(flags)
    return IdentityReport(name, param, left, right, holds, tuple(checks), note)


def _det_rational(m: ExactMatrix) -> int:
    """Plain Gaussian elimination over the rationals; a second route to det."""
    a = [[Fraction(x) for x in r] for r in m.rows]
    n, det = len(a), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for j in range(c, n):
                a[r][j] -= f * a[c][j]
    assert det.denominator == 1
    return det.numerator


def _catalan_fib(k: int, even: bool) -> IdentityReport:
    name = "catalan-fib-even" if even else "catalan-fib-odd"
    left = determinant(hankel_sum_matrix(k, even))
    right = F(2 * k) if even else F(2 * k + 1)
    checks: list[tuple[str, object]] = [("ladder closed form", determinant(ladder_closed_form_matrix(k, even)))]
    n = 2 * k - 2 if even else 2 * k - 1
    if n >= 1:
        g = vertical_ladder(n)
        checks.append(("ladder path matrix", determinant(path_matrix(contract(g)))))
        checks.append(("ladder matchings", count_matchings(g)))
    return _report(name, k, left, right, checks)


def _ladder(k: int, even: bool) -> IdentityReport:
    name = "ladder-even" if even else "ladder-odd"
    m = ladder_closed_form_matrix(k, even)
    right = F(2 * k) if even else F(2 * k + 1)
    n = 2 * k - 2 if even else 2 * k - 1
    checks: list[tuple[str, object]] = []
    if n >= 1:
        g = vertical_ladder(n)
        p = path_matrix(contract(g))
        checks += [("matrix equals path matrix", p == m), ("matchings", count_matchings(g))]
    return _report(name, k, determinant(m), right, checks, "" if n >= 1 else "empty ladder")


def _hankel_shift(n: int) -> IdentityReport:
    m = hankel(CATALAN, n, shifted=True)
    return _report("hankel-shift-unit", n, determinant(m), 1, [("rational elimination", _det_rational(m))])


def _pell(k: int, odd: bool) -> IdentityReport:
    name = "pell-odd" if odd else "pell-even"
    m = pell_matrix(k, odd)
    terms = [2] * (2 * k if odd else 2 * k - 1)
    g = snake_from_cf(terms)
    checks: list[tuple[str, object]] = [
        ("continuant", continuant(terms)),
        ("matrix equals path matrix", path_matrix(contract(g)) == m),
    ]
    return _report(name, k, determinant(m), pell(2 * k + 1 if odd else 2 * k), checks)


def general_fib_report(lengths: Sequence[int]) -> IdentityReport:
    lengths = tuple(lengths)
    m = general_fib_matrix(lengths)
    g = general_fib_graph(lengths)
    k = len(lengths)
    matched = None
    for a in Assignment:
        t = contract(g, a)
        if hourglass_count(t) == k - 1:
            matched = a
            p = path_matrix(t)
            break
    if matched is None:
        return IdentityReport(
            "general-fib", lengths, determinant(m), count_matchings(g), False,
            note="no contraction assignment turns every vertical chain into an hourglass",
        )
    checks = [("matrix equals path matrix", p == m)]
    return _report("general-fib", lengths, determinant(m), count_matchings(g), checks, f"{matched.value} assignment")


def general_fib_tuples(k_max: int, l_max: int = 5) -> Iterator[tuple[int, ...]]:
    """Length tuples (``k <= min(k_max, 4)``, ``2 <= l_i <= l_max``) whose
    graph meets the hourglass hypothesis under some assignment."""
    for k in range(1, min(k_max, 4) + 1):
        for lengths in itertools.product(range(2, l_max + 1), repeat=k):
            g = general_fib_graph(lengths)
            if any(hourglass_count(contract(g, a)) == k - 1 for a in Assignment):
                yield lengths


IDENTITIES = (
    "catalan-fib-odd",
    "catalan-fib-even",
    "ladder-odd",
    "ladder-even",
    "hankel-shift-unit",
    "general-fib",
    "pell-odd",
    "pell-even",
)


def verify_identity(name: str, k_max: int) -> list[IdentityReport]:
    _check_k(k_max)
    ks = range(1, k_max + 1)
    if name == "catalan-fib-odd":
        return [_catalan_fib(k, False) for k in ks]
    if name == "catalan-fib-even":
        return [_catalan_fib(k, True) for k in ks]
    if name == "ladder-odd":
        return [_ladder(k, False) for k in ks]
    if name == "ladder-even":
        return [_ladder(k, True) for k in ks]
    if name == "hankel-shift-unit":
        return [_hankel_shift(n) for n in ks]
    if name == "general-fib":
        return [general_fib_report(ls) for ls in general_fib_tuples(k_max)]
    if name == "pell-odd":
        return [_pell(k, True) for k in ks]
    if name == "pell-even":
        return [_pell(k, False) for k in ks]
    raise UnknownIdentity(f"unknown identity {name!r}; choose from {', '.join(IDENTITIES)}")
