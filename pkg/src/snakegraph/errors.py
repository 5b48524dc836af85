"""Exception hierarchy shared by every module.

The CLI reports domain errors by class name, so names are part of the
public surface.
"""

from __future__ import annotations


class SnakeGraphError(Exception):
    """Base class for all domain errors."""


class BadWord(SnakeGraphError, ValueError):
    pass


class EmptyCF(SnakeGraphError, ValueError):
    pass


class NonPositiveTerm(SnakeGraphError, ValueError):
    pass


class DegenerateCF(SnakeGraphError, ValueError):
    """A continued fraction whose terms sum to less than 2 (zero tiles)."""


class BadChainLength(SnakeGraphError, ValueError):
    pass


class CapExceeded(SnakeGraphError):
    def __init__(self, count_so_far: int, cap: int):
        super().__init__(f"more than {cap} results (stopped after {count_so_far})")
        self.count_so_far = count_so_far
        self.cap = cap


class NotAMatching(SnakeGraphError, ValueError):
    pass


class NotATiling(SnakeGraphError, ValueError):
    pass


class BrokenRoute(SnakeGraphError):
    pass


class NotARoute(SnakeGraphError, ValueError):
    pass


class AmbiguousTerminalOrder(SnakeGraphError):
    """Two sources (or two sinks) share a y-coordinate."""


class UnknownNode(SnakeGraphError, KeyError):
    pass


class UnknownIdentity(SnakeGraphError, KeyError):
    pass


class IndexOutOfRange(SnakeGraphError, IndexError):
    pass


class ParseError(SnakeGraphError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GapError(ParseError):
    pass
