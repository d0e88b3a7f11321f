import math

import pytest
from hypothesis import given, settings, strategies as st

from helpers import COFINITE_FAMILY, pairs, random_instances
from srsets.graphio import complete_graph, heuristic_decomposition, make_nice, path_graph
from srsets.oracle import brute_decide, brute_extremum, brute_representative_check
from srsets.repsets import (
    dp_decide_rep_sets,
    dp_optimize_rep_sets,
    moment_vector,
    rep_set_extremum,
    rep_set_forbidden,
    rep_set_mixed,
    signature,
)
from srsets.setspec import ProblemPair


def P(s, r):
    return ProblemPair.parse(s, r)


def nice_of(g):
    return make_nice(heuristic_decomposition(g), g)


def test_signature_detects_compatibility():
    forbidden = [{0, 2}, {1}]
    for a in [(0, 0), (1, 3), (2, 1)]:
        for b in [(0, 1), (1, 0), (2, 2)]:
            dot = sum(x * y for x, y in zip(signature(a, forbidden), moment_vector(b, forbidden)))
            compatible = all(ai + bi not in fs for ai, bi, fs in zip(a, b, forbidden))
            assert (dot != 0) == compatible


def test_single_forbidden_value():
    S = [(0,), (1,), (2,)]
    out = rep_set_forbidden(S, [{0}])
    assert len(out) <= 2
    assert brute_representative_check(S, out, [{0}])[0]


def test_empty_input():
    assert rep_set_forbidden([], [{1}]) == []


def test_no_forbidden_values_keeps_one_tuple():
    assert len(rep_set_forbidden([(0, 1), (3, 2), (1, 1)], [set(), set()])) == 1


def test_mixed_example():
    out = rep_set_mixed([(0,), (1,), (5,)], [], [{1}])
    assert sorted(out) == [(0,), (1,)]


def test_mixed_without_positive_part_delegates():
    S = [(0, 1), (2, 2), (1, 0)]
    assert rep_set_mixed(S, [{1}, {2}]) == rep_set_forbidden(S, [{1}, {2}])


def test_mixed_single_tuple():
    assert rep_set_mixed([(1, 0)], [{2}], [{0, 1}]) == [(1, 0)]


def _forbidden_sets(k):
    return st.lists(st.sets(st.integers(0, 4), max_size=2), min_size=k, max_size=k)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2).flatmap(lambda k: st.tuples(
    _forbidden_sets(k), st.lists(st.tuples(*[st.integers(0, 6)] * k), max_size=30))))
def test_output_represents_and_is_idempotent(case):
    forbidden, S = case
    out = rep_set_forbidden(S, forbidden)
    assert set(out) <= set(S)
    assert len(out) <= math.prod(len(fs) + 1 for fs in forbidden)
    assert brute_representative_check(S, out, forbidden)[0]
    assert brute_representative_check(out, rep_set_forbidden(out, forbidden), forbidden)[0]


def test_dp_decide_examples():
    assert dp_decide_rep_sets(path_graph(4), nice_of(path_graph(4)), P("all", ">=1"))
    g = complete_graph(3)
    assert dp_decide_rep_sets(g, nice_of(g), P("{0}", "{1}"))


def test_dp_optimize_examples():
    assert dp_optimize_rep_sets(path_graph(3), nice_of(path_graph(3)), P("{0}", "all"), "max", 2)
    assert dp_optimize_rep_sets(complete_graph(3), nice_of(complete_graph(3)), P("all", ">=1"), "min", 1)
    assert not dp_optimize_rep_sets(complete_graph(2), nice_of(complete_graph(2)), P("{0}", "{1}"), "min", 0)


@pytest.mark.parametrize("pair", pairs(COFINITE_FAMILY + [("all", ">=1"), ("{0}", "{1}")]), ids=str)
def test_dp_matches_brute_force(pair):
    for g, nice in random_instances(8, 12, 1, 10):
        assert dp_decide_rep_sets(g, nice, pair) == brute_decide(g, pair)
        assert rep_set_extremum(g, nice, pair, "min") == brute_extremum(g, pair, "min")
        assert rep_set_extremum(g, nice, pair, "max") == brute_extremum(g, pair, "max")
