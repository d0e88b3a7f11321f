import math

import pytest
from hypothesis import given, strategies as st

from srsets.graphio import Graph, complete_graph, path_graph
from srsets.oracle import brute_solutions
from srsets.setspec import (
    INFINITE,
    DegreeSet,
    DegreeSetError,
    ProblemPair,
    TrivialPairError,
    base_constant,
    cost_value,
    inverse_state,
    max_structure,
    parse_degree_set,
    top_value,
    trivial_count,
    trivial_counts_by_size,
)


def P(s, r):
    return ProblemPair.parse(s, r)


def test_parse_finite():
    assert parse_degree_set("{0,3}") == DegreeSet.finite([0, 3])


def test_parse_at_least_is_cofinite():
    d = parse_degree_set(">=1")
    assert d.is_cofinite and d.members == (0,)


def test_parse_co_and_all():
    assert parse_degree_set("co{1,2}") == DegreeSet.cofinite([1, 2])
    assert parse_degree_set("all").is_all


def test_parse_ignores_whitespace():
    assert parse_degree_set(" { 3 , 0 } ") == DegreeSet.finite([0, 3])
    assert parse_degree_set("co { 2 }") == DegreeSet.cofinite([2])


@pytest.mark.parametrize("text", ["{0,", "co{a}", ">=", ">=x", "{1,1}", "{-1}", "most", ""])
def test_parse_rejects(text):
    with pytest.raises(DegreeSetError):
        parse_degree_set(text)


def test_empty_set_parses_but_solvers_reject_it():
    pair = P("{}", "{1}")
    assert pair.sigma.is_empty
    with pytest.raises(DegreeSetError):
        pair.require_nonempty()


def test_membership():
    d = parse_degree_set("co{0,2}")
    assert [k in d for k in range(5)] == [False, True, False, True, True]


def test_top_value():
    assert top_value(parse_degree_set("{0,3}")) == 3
    assert top_value(parse_degree_set("co{0,2}")) == 3
    assert top_value(parse_degree_set("all")) == 0


def test_top_value_of_empty_set_fails():
    with pytest.raises(DegreeSetError):
        top_value(DegreeSet.finite([]))


def test_cost_value():
    assert cost_value(parse_degree_set("co{5}")) == 1
    assert cost_value(parse_degree_set("{0,3}")) == 3
    assert cost_value(parse_degree_set("all")) == 0


def test_max_structure_examples():
    assert P("{0}", "{1}").m_max == INFINITE
    assert P("{0,3}", "{3}").m_max == 3
    assert P("{0,3}", "{3,4}").m_max == 1


def test_cofinite_side_forces_m_one():
    assert P(">=1", "{2}").m_max == 1
    assert P("{0}", "co{1}").m_max == 1


def test_base_constant_fixtures():
    assert base_constant(P("{0}", "{1}")) == 2
    assert base_constant(P("{0,3}", "{3}")) == 4
    assert base_constant(P("{0,3}", "{1,4}")) == 5
    assert base_constant(P("{1,3}", "{4}")) == 5
    assert base_constant(P("{2,4}", "{4}")) == 6


def test_base_constant_rejects_trivial_pairs():
    with pytest.raises(TrivialPairError):
        base_constant(P("{2}", "{0}"))
    with pytest.raises(TrivialPairError):
        base_constant(P("all", "all"))


def test_base_constant_ignores_spelling():
    assert base_constant(P(">=1", "{1}")) == base_constant(P("co{0}", "{1}"))


def test_parameters():
    p = P("{1,3}", "co{0,1}")
    assert (p.s_top, p.r_top, p.t_top, p.s_min, p.r_min) == (3, 2, 3, 1, 2)


def test_trivial_all_all():
    g = path_graph(5)
    assert trivial_count(g, P("all", "all")) == 2**5
    assert trivial_counts_by_size(g, P("all", "all")) == [math.comb(5, k) for k in range(6)]


def test_trivial_rho_zero_triangle_and_edge():
    assert trivial_count(complete_graph(3), P("{2}", "{0}")) == 2
    assert trivial_count(complete_graph(2), P("{2}", "{0}")) == 1


def test_trivial_counts_match_brute_force_on_mixed_components():
    g = Graph(7, [(0, 1), (1, 2), (0, 2), (3, 4), (5, 6)])
    for pair in (P("{2}", "{0}"), P("{1}", "{0}"), P("{1,2}", "{0}"), P("all", "{0}")):
        assert trivial_counts_by_size(g, pair) == brute_solutions(g, pair)


def test_inverse_state_examples():
    assert inverse_state((True, 1), P("{4}", "{1}")) == (True, 3)
    assert inverse_state((False, 0), P("{1}", "{0}")) == (False, 0)
    assert inverse_state((False, 2), P("{1}", "{3}")) == (False, 1)


def test_inverse_state_out_of_range():
    with pytest.raises(ValueError):
        inverse_state((True, 2), P("{1}", "{1}"))


finite_sets = st.sets(st.integers(0, 9), min_size=1, max_size=4).map(DegreeSet.finite)
cofinite_sets = st.sets(st.integers(0, 9), max_size=4).map(DegreeSet.cofinite)
any_sets = st.one_of(finite_sets, cofinite_sets)


@given(finite_sets, finite_sets)
def test_max_structure_matches_direct_loop(sigma, rho):
    m = max_structure(sigma, rho)
    if len(sigma.members) == len(rho.members) == 1:
        assert m == INFINITE
        return
    top = max(sigma.members[-1], rho.members[-1])
    best = max(
        k for k in range(1, top + 2)
        if len({x % k for x in sigma.members}) == 1 and len({x % k for x in rho.members}) == 1
    )
    assert m == best


@given(any_sets)
def test_cost_at_most_top(s):
    assert cost_value(s) <= top_value(s)


@given(any_sets, any_sets, st.data())
def test_inverse_is_an_involution(sigma, rho, data):
    pair = ProblemPair(sigma, rho)
    side = data.draw(st.booleans())
    top = pair.s_top if side else pair.r_top
    state = (side, data.draw(st.integers(0, top)))
    assert inverse_state(inverse_state(state, pair), pair) == state


@given(any_sets)
def test_str_round_trips(s):
    assert parse_degree_set(str(s)) == s
