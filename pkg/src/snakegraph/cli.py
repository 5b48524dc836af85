"""Command-line front end.

Graph specs: ``word:RURU``, ``cf:[2,2,2]`` (brackets optional) or
``chains:h:2,2,4``.  Exit codes: 0 success, 1 domain error, 2 usage error,
3 an identity failed to verify.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO

from .errors import GapError, ParseError, SnakeGraphError
from .identities import IDENTITIES, general_fib_report, hankel, verify_identity
from .lgv import determinant, enumerate_routes, path_matrix
from .matchings import count_matchings, enumerate_matchings, enumerate_tilings
from .sequences import SequenceKind
from .snakecore import ChainSpec, SnakeGraph, chain_decomposition, snake_from_cf, snake_from_chains, snake_to_cf
from .trigraph import Assignment, contract, terminals

DEFAULT_CAP = 10**6
GRAPH_VERBS = ("count", "cf", "chains", "matrix", "det", "routes", "matchings", "tilings", "export")
VERBS = GRAPH_VERBS + ("verify", "hankel")

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Command:
    verb: str
    graph: SnakeGraph | None = None
    identity: str | None = None  # a name, or "all"
    lengths: tuple[int, ...] | None = None
    sequence: SequenceKind | None = None
    assignment: Assignment = Assignment.STANDARD
    cap: int = DEFAULT_CAP
    fmt: str = "text"
    output: str | None = None
    verbose: bool = False
    raw: bool = False
    k_max: int = 10
    n: int = 1
    shifted: bool = False
    to: str = "dot"


def parse_graph(spec: str) -> SnakeGraph:
    kind, sep, body = spec.partition(":")
    if not sep:
        raise UsageError(f"graph spec {spec!r} needs a prefix: word:, cf: or chains:")
    try:
        if kind == "word":
            return SnakeGraph(body)
        if kind == "cf":
            return snake_from_cf(_int_list(body.strip().removeprefix("[").removesuffix("]")))
        if kind == "chains":
            orient, sep, lengths = body.partition(":")
            if not sep or orient not in ("h", "v"):
                raise UsageError(f"chain spec {body!r} must look like h:2,3 or v:2,3")
            return snake_from_chains(ChainSpec(orient, _int_list(lengths)))
    except SnakeGraphError as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from exc
    raise UsageError(f"unknown graph spec prefix {kind!r}")


def _int_list(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",")] if text.strip() else []
    if not all(re.fullmatch(r"[+-]?\d+", p) for p in parts):
        raise UsageError(f"expected comma-separated integers, got {text!r}")
    return tuple(int(p) for p in parts)


def ingest_sequence(path: str | os.PathLike) -> SequenceKind:
    """Read a plain (one integer per line) or b-file ("index value") file.

    Blank lines and ``#`` comments are skipped.  b-files may start at index
    0 or 1 and must count up by one; the result is indexed from 0.
    """
    values: list[int] = []
    fmt = None
    expected = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            fields = text.split()
            if fmt is None:
                fmt = "plain" if len(fields) == 1 else "bfile"
            if (fmt == "plain") != (len(fields) == 1) or len(fields) > 2:
                raise ParseError(f"expected {1 if fmt == 'plain' else 2} field(s), got {len(fields)}", lineno)
            try:
                nums = [int(f) for f in fields]
            except ValueError:
                raise ParseError(f"not an integer: {text!r}", lineno) from None
            if fmt == "bfile":
                index, value = nums
                if expected is None:
                    if index not in (0, 1):
                        raise ParseError(f"b-file must start at index 0 or 1, not {index}", lineno)
                elif index != expected:
                    raise GapError(f"index {index} follows {expected - 1}", lineno)
                expected = index + 1
                values.append(value)
            else:
                values.append(nums[0])
    if not values:
        raise ParseError("no terms found")
    return SequenceKind.custom(values)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would print and exit
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--assignment", choices=[a.value for a in Assignment], default="standard")
    common.add_argument("--cap", type=_positive, help=f"enumeration cap (default $SNAKE_CAP or {DEFAULT_CAP})")
    common.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--verbose", "-v", action="store_true")

    parser = _Parser(prog="snakegraph", description="Snake graphs, perfect matchings and path determinants.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    helps = {
        "count": "number of perfect matchings",
        "cf": "continued fraction of the graph",
        "chains": "chain decomposition",
        "matrix": "path matrix of the contracted graph",
        "det": "determinant of the path matrix",
        "routes": "list the non-intersecting routes",
        "matchings": "list the perfect matchings",
        "tilings": "list the domino tilings of the cover",
        "export": "write the contracted graph as DOT or JSON",
    }
    for verb in GRAPH_VERBS:
        p = sub.add_parser(verb, parents=[common], help=helps[verb])
        p.add_argument("graph", help="word:RU, cf:[2,2] or chains:h:2,3")
        if verb == "cf":
            p.add_argument("--raw", action="store_true", help="keep a trailing 1 term")
        if verb == "export":
            p.add_argument("--to", choices=["dot", "json"], default="dot")

    p = sub.add_parser("verify", parents=[common], help="check determinant identities")
    p.add_argument("identity", nargs="?", choices=IDENTITIES)
    p.add_argument("--all", action="store_true")
    p.add_argument("--k-max", type=_positive, default=10)
    p.add_argument("--lengths", help="general-fib only: a single tuple such as 2,3,2")

    p = sub.add_parser("hankel", parents=[common], help="Hankel matrix of a sequence and its determinant")
    p.add_argument("sequence", nargs="?", choices=["catalan", "fibonacci", "pell"])
    p.add_argument("--file", help="plain or b-file sequence")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--shifted", action="store_true")
    return parser


def _default_cap() -> int:
    env = os.environ.get("SNAKE_CAP")
    if env is None:
        return DEFAULT_CAP
    try:
        return _positive(env)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"SNAKE_CAP: {exc}") from None


def parse_args(argv: Sequence[str]) -> Command:
    ns = build_parser().parse_args(list(argv))
    kw = dict(
        verb=ns.verb,
        assignment=Assignment(ns.assignment),
        cap=ns.cap if ns.cap is not None else _default_cap(),
        fmt=ns.fmt,
        output=ns.output,
        verbose=ns.verbose,
    )
    if ns.verb in GRAPH_VERBS:
        kw["graph"] = parse_graph(ns.graph)
        kw["raw"] = getattr(ns, "raw", False)
        kw["to"] = getattr(ns, "to", "dot")
    elif ns.verb == "verify":
        if ns.all == (ns.identity is not None):
            raise UsageError("verify needs exactly one of an identity name or --all")
        if ns.lengths is not None:
            if ns.identity != "general-fib":
                raise UsageError("--lengths only applies to general-fib")
            kw["lengths"] = _int_list(ns.lengths)
        kw["identity"] = "all" if ns.all else ns.identity
        kw["k_max"] = ns.k_max
    else:
        if (ns.sequence is None) == (ns.file is None):
            raise UsageError("hankel needs exactly one of a sequence name or --file")
        kw["sequence"] = SequenceKind(ns.sequence) if ns.sequence else _FileSource(ns.file)
        kw["n"] = ns.n
        kw["shifted"] = ns.shifted
    return Command(**kw)


@dataclass(frozen=True)
class _FileSource:
    path: str


def _fmt_vertex(v) -> str:
    return f"({v[0]},{v[1]})"


def _matrix_text(m) -> str:
    return "\n".join(" ".join(map(str, r)) for r in m.rows)


def run(cmd: Command, out: TextIO) -> int:
    emit = lambda text: out.write(text + "\n")  # noqa: E731
    g = cmd.graph
    if cmd.verb == "count":
        c = count_matchings(g)
        emit(json.dumps({"graph": g.to_json(), "count": str(c)}) if cmd.fmt == "json" else str(c))
    elif cmd.verb == "cf":
        cf = snake_to_cf(g, canonical=not cmd.raw)
        emit(json.dumps({"terms": list(cf.terms)}) if cmd.fmt == "json" else str(cf))
    elif cmd.verb == "chains":
        spec = chain_decomposition(g)
        if cmd.fmt == "json":
            emit(json.dumps({"orientation": spec.orientation.value, "lengths": list(spec.lengths)}))
        else:
            emit(str(spec))
    elif cmd.verb in ("matrix", "det"):
        m = path_matrix(contract(g, cmd.assignment))
        if cmd.verb == "matrix":
            emit(json.dumps(m.to_json()) if cmd.fmt == "json" else _matrix_text(m))
        else:
            d = determinant(m)
            if cmd.fmt == "json":
                emit(json.dumps({"matrix": m.to_json(), "det": str(d)}))
            else:
                if cmd.verbose:
                    emit(_matrix_text(m))
                emit(str(d))
    elif cmd.verb == "routes":
        t = contract(g, cmd.assignment)
        routes = enumerate_routes(t, cmd.cap)
        if cmd.fmt == "json":
            emit(json.dumps([r.to_json(t) for r in routes]))
        else:
            term = terminals(t)
            for r in routes:
                emit(" | ".join(
                    f"s{i + 1}->t{i + 1}: " + " ".join(str(a) for a in p) for i, p in enumerate(r.paths)
                ))
            if cmd.verbose:
                emit(f"{len(routes)} routes, {term.k} source(s)")
    elif cmd.verb == "matchings":
        ms = enumerate_matchings(g, cmd.cap)
        if cmd.fmt == "json":
            emit(json.dumps([m.to_json() for m in ms]))
        else:
            for m in ms:
                emit(" ".join(f"{_fmt_vertex(u)}-{_fmt_vertex(v)}" for u, v in m.edges))
    elif cmd.verb == "tilings":
        ts = enumerate_tilings(g, cmd.cap)
        if cmd.fmt == "json":
            emit(json.dumps([t.to_json() for t in ts]))
        else:
            for t in ts:
                emit(" ".join(f"[{_fmt_vertex(a)}{_fmt_vertex(b)}]" for a, b in t.dominoes))
    elif cmd.verb == "export":
        t = contract(g, cmd.assignment)
        if cmd.to == "dot":
            text = t.to_dot()
        else:
            text = json.dumps({"graph": g.to_json(), "tridag": t.to_json()}, sort_keys=True, indent=2) + "\n"
        if cmd.output:
            Path(cmd.output).write_text(text, encoding="utf-8")
        else:
            out.write(text)
    elif cmd.verb == "verify":
        if cmd.lengths is not None:
            reports = [general_fib_report(cmd.lengths)]
        else:
            names = IDENTITIES if cmd.identity == "all" else (cmd.identity,)
            reports = [r for name in names for r in verify_identity(name, cmd.k_max)]
        for r in reports:
            emit(r.to_json() if cmd.fmt == "json" else str(r))
        return EXIT_OK if all(r.holds for r in reports) else EXIT_VERIFY
    elif cmd.verb == "hankel":
        seq = cmd.sequence
        if isinstance(seq, _FileSource):
            seq = ingest_sequence(seq.path)
        m = hankel(seq, cmd.n, cmd.shifted)
        d = determinant(m)
        if cmd.fmt == "json":
            emit(json.dumps({"matrix": m.to_json(), "det": str(d)}))
        else:
            emit(_matrix_text(m))
            emit(f"det {d}")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if cmd.output and cmd.verb != "export":
            with open(cmd.output, "w", encoding="utf-8") as fh:
                return run(cmd, fh)
        return run(cmd, sys.stdout)
    except SnakeGraphError as exc:
        msg = exc.args[0] if exc.args else ""
        print(f"{type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
