from hypothesis import given, settings
from hypothesis import strategies as st

from snakegraph.identities import hankel
from snakegraph.lgv import ExactMatrix, determinant, enumerate_routes, path_matrix
from snakegraph.matchings import (
    count_chain_recurrence,
    count_matchings,
    enumerate_matchings,
    enumerate_tilings,
    matching_to_tiling,
    tiling_to_matching,
)
from snakegraph.snakecore import (
    ContinuedFraction,
    SnakeGraph,
    chain_decomposition,
    continuant,
    reverse,
    sign_sequence,
    snake_from_cf,
    snake_from_chains,
    snake_to_cf,
)
from snakegraph.trigraph import Assignment, contract, decontract, hourglass_count, matching_to_route, route_to_matching, terminals


def words(max_d):
    return st.text(alphabet="RU", max_size=max_d - 1).map(SnakeGraph)


assignments = st.sampled_from(list(Assignment))


def cofactor_det(m):
    if not m:
        return 1
    return sum((-1) ** j * m[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(len(m)))


@given(words(14))
def test_size_laws(g):
    assert len(g.vertices) == 2 * g.d + 2
    assert len(g.edges) == 3 * g.d + 1


@given(words(14))
def test_cf_round_trip(g):
    assert snake_from_cf(snake_to_cf(g)) == g
    assert snake_from_cf(snake_to_cf(g, canonical=False)) == g
    assert sign_sequence(g).signs[0] == 1


@given(words(14))
def test_chain_round_trip(g):
    spec = chain_decomposition(g)
    assert snake_from_chains(spec) == g
    assert spec.tile_count == g.d


@given(words(14))
def test_reverse_is_involution_and_keeps_count(g):
    assert reverse(reverse(g)) == g
    assert count_matchings(reverse(g)) == count_matchings(g)


@given(st.lists(st.integers(1, 6), min_size=1, max_size=8))
def test_continuant_reversal(terms):
    cf = ContinuedFraction(tuple(terms))
    assert cf.reversed().numerator == cf.numerator
    assert cf.value.numerator == cf.numerator


@given(words(12), assignments)
def test_count_routes_agree(g, a):
    t = contract(g, a)
    c = count_matchings(g)
    assert count_chain_recurrence(chain_decomposition(g)) == c
    assert determinant(path_matrix(t)) == c
    term = terminals(t)
    assert len(term.sources) == len(term.sinks) == hourglass_count(t) + 1
    assert decontract(t) == g


@settings(max_examples=60)
@given(words(8), assignments)
def test_bijections(g, a):
    t = contract(g, a)
    ms = enumerate_matchings(g, 10**5)
    routes = [matching_to_route(t, m) for m in ms]
    assert len(set(routes)) == len(ms)
    assert [route_to_matching(t, r) for r in routes] == ms
    assert sorted(routes, key=lambda r: r.paths) == enumerate_routes(t, 10**5)
    for m in ms:
        assert tiling_to_matching(g, matching_to_tiling(g, m)) == m
    assert len(enumerate_tilings(g, 10**5)) == len(ms)


@given(st.integers(0, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_cofactor(rows):
    assert determinant(rows) == cofactor_det(rows)


@given(st.lists(st.lists(st.integers(-10**30, 10**30), min_size=3, max_size=3), min_size=3, max_size=3))
def test_matrix_json_round_trip(rows):
    m = ExactMatrix.from_rows(rows)
    assert ExactMatrix.from_json(m.to_json()) == m


@given(st.sampled_from(["catalan", "fibonacci", "pell"]), st.integers(1, 8), st.booleans())
def test_hankel_structure(kind, n, shifted):
    m = hankel(kind, n, shifted)
    assert all(m[i, j] == m[i + 1, j - 1] for i in range(n - 1) for j in range(1, n))
