"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest -v tests/test_acceptance.py`` (lines appear in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import deque

import pytest

from snakegraph.identities import (
    general_fib_graph,
    general_fib_matrix,
    hankel,
    hankel_sum_matrix,
    ladder_closed_form_matrix,
    pell_matrix,
)
from snakegraph.lgv import determinant, enumerate_routes, path_matrix
from snakegraph.matchings import (
    count_chain_recurrence,
    count_matchings,
    enumerate_matchings,
    enumerate_tilings,
    matching_to_tiling,
    tiling_to_matching,
)
from snakegraph.sequences import CATALAN, fibonacci, pell
from snakegraph.snakecore import ContinuedFraction, SnakeGraph, chain_decomposition, continuant, snake_to_cf
from snakegraph.trigraph import (
    Assignment,
    contract,
    decontract,
    hourglass_count,
    matching_to_route,
    route_to_matching,
    terminals,
)

RESULTS: dict[int, tuple[bool, str]] = {}
CAP = 10**6


def record(n: int, title: str, passed: bool, detail: str, elapsed: float, limit: float | None) -> None:
    timing = f"{elapsed:.2f}s" + (f" (limit {limit:g}s)" if limit else "")
    if limit is not None and elapsed >= limit:
        passed = False
        detail += "; over time limit"
    RESULTS[n] = (passed, f"criterion {n} {'PASS' if passed else 'FAIL'}: {title}: {detail} [{timing}]")


def all_graphs(d_max: int):
    for d in range(1, d_max + 1):
        for w in itertools.product("RU", repeat=d - 1):
            yield SnakeGraph("".join(w))


def vertical_ladder(n: int) -> SnakeGraph:
    return SnakeGraph("U" * (n - 1))


def det_of(g: SnakeGraph, a: Assignment = Assignment.STANDARD) -> int:
    return determinant(path_matrix(contract(g, a)))


def is_acyclic(t) -> bool:
    # Kahn's algorithm, independent of the coordinate order
    indeg = [len(x) for x in t.in_arcs]
    queue = deque(i for i, x in enumerate(indeg) if x == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for a in t.out_arcs[u]:
            v = t.arcs[a].head
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return seen == len(t.nodes)


def cofactor_det(m):
    if not m:
        return 1
    return sum((-1) ** j * m[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(len(m)))


def test_criterion_1_running_example():
    start = time.perf_counter()
    g = SnakeGraph("UR")
    t = contract(g, Assignment.STANDARD)
    ms = enumerate_matchings(g, CAP)
    tilings = enumerate_tilings(g, CAP)
    m = path_matrix(t)
    routes = enumerate_routes(t, CAP)
    round_trips = (
        [route_to_matching(t, matching_to_route(t, x)) for x in ms] == ms
        and sorted(matching_to_route(t, route_to_matching(t, r)) for r in routes) == sorted(routes)
        and [tiling_to_matching(g, matching_to_tiling(g, x)) for x in ms] == ms
    )
    ok = (len(ms), len(tilings), m.tolist(), determinant(m), len(routes), round_trips) == (
        4, 4, [[2, 2], [1, 3]], 4, 4, True)
    detail = (f"{len(ms)} matchings, {len(tilings)} tilings, matrix {m}, det {determinant(m)}, "
              f"{len(routes)} routes, round trips {'exact' if round_trips else 'broken'}")
    record(1, "running example UR", ok, detail, time.perf_counter() - start, 1)
    assert RESULTS[1][0], RESULTS[1][1]


def test_criterion_2_ladders():
    start = time.perf_counter()
    bad = [n for n in range(1, 13) if count_matchings(SnakeGraph("R" * (n - 1))) != fibonacci(n + 2)]
    bad += [f"L{2 * k - 1}" for k in range(1, 9) if det_of(vertical_ladder(2 * k - 1)) != fibonacci(2 * k + 1)]
    bad += [f"L{2 * k - 2}" for k in range(2, 9) if det_of(vertical_ladder(2 * k - 2)) != fibonacci(2 * k)]
    detail = "m(L_n)=F(n+2) n<=12, odd and even vertical ladders" + (f"; mismatches {bad}" if bad else "")
    record(2, "ladder/Fibonacci", not bad, detail, time.perf_counter() - start, 5)
    assert RESULTS[2][0], RESULTS[2][1]


def test_criterion_3_catalan_hankel():
    start = time.perf_counter()
    bad = [f"H'{n}" for n in range(1, 13) if determinant(hankel(CATALAN, n, shifted=True)) != 1]
    for k in range(1, 16):
        if determinant(hankel_sum_matrix(k)) != fibonacci(2 * k + 1):
            bad.append(f"odd k={k}")
        if determinant(hankel_sum_matrix(k, even_case=True)) != fibonacci(2 * k):
            bad.append(f"even k={k}")
    if determinant([[2, 3], [3, 7]]) != 5:
        bad.append("spot value")
    record(3, "Catalan-Hankel", not bad, "det H'_n(C)=1 n<=12; H+H' and H+H'-E k<=15; det[[2,3],[3,7]]=5"
           + (f"; mismatches {bad}" if bad else ""), time.perf_counter() - start, 5)
    assert RESULTS[3][0], RESULTS[3][1]


def test_criterion_4_pell():
    start = time.perf_counter()
    bad = []
    for k in range(1, 13):
        odd, even = determinant(pell_matrix(k)), determinant(pell_matrix(k, odd_case=False))
        if not odd == pell(2 * k + 1) == continuant([2] * (2 * k)):
            bad.append(f"M_{k}")
        if not even == pell(2 * k) == continuant([2] * (2 * k - 1)):
            bad.append(f"M'_{k}")
    spot = (determinant(pell_matrix(3)), determinant(pell_matrix(3, odd_case=False)))
    ok = not bad and spot == (169, 70)
    record(4, "Pell", ok, f"k<=12 against P and all-2 continuants; k=3 gives {spot[0]} and {spot[1]}"
           + (f"; mismatches {bad}" if bad else ""), time.perf_counter() - start, 2)
    assert RESULTS[4][0], RESULTS[4][1]


def test_criterion_5_master_sweep():
    start = time.perf_counter()
    checked, bad = 0, []
    for g in all_graphs(10):
        c = continuant(snake_to_cf(g).terms)
        values = [count_chain_recurrence(chain_decomposition(g))] + [det_of(g, a) for a in Assignment]
        if g.d <= 6:
            values += [len(enumerate_matchings(g, CAP)), len(enumerate_tilings(g, CAP))]
            values += [len(enumerate_routes(contract(g, a), CAP)) for a in Assignment]
        if any(v != c for v in values):
            bad.append(g.word)
        checked += 1
    record(5, "master equivalence", not bad, f"{checked} graphs d<=10 agree on every route"
           + (f"; mismatches {bad[:5]}" if bad else ""), time.perf_counter() - start, 60)
    assert RESULTS[5][0], RESULTS[5][1]


def test_criterion_6_structure_laws():
    start = time.perf_counter()
    checked, bad = 0, []
    for g in all_graphs(10):
        for a in Assignment:
            t = contract(g, a)
            term = terminals(t)
            ok = (len(term.sources) == len(term.sinks) == hourglass_count(t) + 1
                  and is_acyclic(t) and decontract(t) == g)
            if not ok:
                bad.append((g.word, a.value))
            checked += 1
    record(6, "structure laws", not bad, f"{checked} DAGs: sources = sinks = hourglasses + 1, acyclic, decontract exact"
           + (f"; violations {bad[:5]}" if bad else ""), time.perf_counter() - start, None)
    assert RESULTS[6][0], RESULTS[6][1]


def general_fib_survey(k_max: int):
    """Classify tuples: (matrix matches, no k-terminal assignment, mismatched, det failures, total)."""
    match, no_assignment, mismatch, det_bad, total = [], [], [], [], 0
    for k in range(1, k_max + 1):
        for lengths in itertools.product(range(2, 6), repeat=k):
            total += 1
            g = general_fib_graph(lengths)
            m = general_fib_matrix(lengths)
            if determinant(m) != count_matchings(g):
                det_bad.append(lengths)
            candidates = [path_matrix(contract(g, a)) for a in Assignment]
            candidates = [p for p in candidates if p.n == k]
            if not candidates:
                no_assignment.append(lengths)
            elif m in candidates:
                match.append(lengths)
            else:
                mismatch.append(lengths)
    return match, no_assignment, mismatch, det_bad, total


@pytest.mark.xfail(strict=True, reason=(
    "tuples with an odd interior length admit no contraction assignment with k terminals, "
    "so the matrix equality has no graph to hold on"))
def test_criterion_7_general_fibonacci():
    start = time.perf_counter()
    match, no_assignment, mismatch, det_bad, total = general_fib_survey(3)
    ok = len(match) == total and not det_bad
    detail = (f"matrix = path matrix for {len(match)}/{total} tuples; {len(no_assignment)} tuples "
              f"(odd interior length, e.g. {no_assignment[0] if no_assignment else '-'}) have no assignment "
              f"with k terminals; {len(mismatch)} mismatches; det = matching count for {total - len(det_bad)}/{total}")
    record(7, "general Fibonacci path matrix", ok, detail, time.perf_counter() - start, 30)
    assert RESULTS[7][0], RESULTS[7][1]


def test_criterion_7_restricted_to_hourglass_graphs():
    match, no_assignment, mismatch, det_bad, total = general_fib_survey(3)
    assert not mismatch and not det_bad
    assert len(match) + len(no_assignment) == total
    assert all(l[1] % 2 == 1 for l in no_assignment) and all(len(l) == 3 for l in no_assignment)


def test_criterion_8_cf_reversal():
    start = time.perf_counter()
    rng = random.Random(8)
    bad = []
    for _ in range(200):
        total = rng.randint(1, 20)
        terms = []
        while total:
            a = rng.randint(1, total)
            terms.append(a)
            total -= a
        cf = ContinuedFraction(tuple(terms))
        if cf.numerator != cf.reversed().numerator:
            bad.append(terms)
    record(8, "rotation/reversal", not bad, "200 random CFs with sum <= 20" + (f"; mismatches {bad[:3]}" if bad else ""),
           time.perf_counter() - start, None)
    assert RESULTS[8][0], RESULTS[8][1]


def test_criterion_9_determinant_kernel():
    start = time.perf_counter()
    rng = random.Random(9)
    bad = 0
    for _ in range(500):
        n = rng.randint(0, 5)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        bad += determinant(m) != cofactor_det(m)
    record(9, "determinant kernel", not bad, f"Bareiss = cofactor expansion on 500 random matrices ({bad} mismatches)",
           time.perf_counter() - start, None)
    assert RESULTS[9][0], RESULTS[9][1]


def summary_lines() -> list[str]:
    return [RESULTS[n][1] for n in sorted(RESULTS)]


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_") and not name.endswith("hourglass_graphs"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(summary_lines()))
