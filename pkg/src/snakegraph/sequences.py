"""The classical integer sequences, memoized, plus user-supplied ones."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import IndexOutOfRange

# Append-only memo tables; prefixes never change once written.
_CATALAN = [1]
_FIBONACCI = [0, 1]
_PELL = [0, 1]


def catalan(n: int) -> int:
    _check_index(n)
    while len(_CATALAN) <= n:
        m = len(_CATALAN) - 1
        _CATALAN.append(sum(_CATALAN[i] * _CATALAN[m - i] for i in range(m + 1)))
    return _CATALAN[n]


def fibonacci(n: int) -> int:
    _check_index(n)
    while len(_FIBONACCI) <= n:
        _FIBONACCI.append(_FIBONACCI[-1] + _FIBONACCI[-2])
    return _FIBONACCI[n]


def pell(n: int) -> int:
    _check_index(n)
    while len(_PELL) <= n:
        _PELL.append(2 * _PELL[-1] + _PELL[-2])
    return _PELL[n]


def _check_index(n: int) -> None:
    if n < 0:
        raise IndexOutOfRange(f"negative index {n}")


@dataclass(frozen=True)
class SequenceKind:
    """``catalan``, ``fibonacci``, ``pell`` or ``custom`` (with ``values``)."""

    kind: str
    values: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in _BUILTIN and self.kind != "custom":
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        object.__setattr__(self, "values", tuple(self.values))

    @classmethod
    def custom(cls, values) -> SequenceKind:
        return cls("custom", tuple(values))

    def __getitem__(self, n: int) -> int:
        if self.kind == "custom":
            if not 0 <= n < len(self.values):
                raise IndexOutOfRange(f"custom sequence has {len(self.values)} terms, index {n} requested")
            return self.values[n]
        return _BUILTIN[self.kind](n)

    def __str__(self) -> str:
        return self.kind


_BUILTIN: dict[str, Callable[[int], int]] = {
    "catalan": catalan,
    "fibonacci": fibonacci,
    "pell": pell,
}

CATALAN = SequenceKind("catalan")
FIBONACCI = SequenceKind("fibonacci")
PELL = SequenceKind("pell")


def sequence(kind: SequenceKind | str, n: int) -> int:
    if isinstance(kind, str):
        kind = SequenceKind(kind)
    return kind[n]
