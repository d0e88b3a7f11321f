import pytest

from helpers import COUNT_FAMILY, induced, pairs, random_instances, subtree_vertices
from srsets.dpcore import (
    DPContext,
    InvariantError,
    adjust_string,
    counts_by_size,
    finalize,
    forget_step,
    introduce_step,
    join_adjust,
    join_step,
    leaf_table,
    naive_joiner,
    run_dp,
    solve_dp,
)
from srsets.graphio import Graph, complete_graph, cycle_graph, heuristic_decomposition, make_nice, path_graph
from srsets.oracle import brute_extremum, brute_solutions, realized_language
from srsets.setspec import ProblemPair
from srsets.states import Alphabet, parse_string


def P(s, r):
    return ProblemPair.parse(s, r)


def S(text):
    return parse_string(text)


def nice_of(g):
    return make_nice(heuristic_decomposition(g), g)


def test_leaf_tables():
    assert leaf_table(DPContext.create(P("{0}", "{1}"), "decide", m=3)) == [{(): True}, {}, {}]
    assert leaf_table(DPContext.create(P("{0}", "{1}"), "count", m=1)) == [{(): {0: 1}}]


def test_forget_keeps_happy_states_only():
    ctx = DPContext.create(P("{0}", "{1}"), "decide", m=1)
    table = [{S("r1 r0"): True, S("r0 r0"): True}]
    out = forget_step(table, (0, 1), 0, ctx)
    assert out == [{S("r0"): True}]


def test_forget_saturated_cofinite_state_survives():
    ctx = DPContext.create(P("{0}", "co{0}"), "decide", m=1)
    assert ctx.alphabet.r_top == 1
    assert forget_step([{S("r1"): True}], (0,), 0, ctx) == [{(): True}]


def test_forget_sigma_moves_class_and_size():
    ctx = DPContext.create(P("{0}", "{1}"), "count", m=2)
    out = forget_step([{S("s0"): {0: 1}}, {}], (0,), 0, ctx)
    assert out == [{}, {(): {1: 1}}]


def test_introduce_isolated_vertex():
    ctx = DPContext.create(P("{0}", "{1}"), "decide", m=1)
    out = introduce_step([{(): True}], (), 0, [], ctx)
    assert set(out[0]) == {S("r0"), S("s0")}


def test_introduce_next_to_selected_vertex():
    ctx = DPContext.create(P("{0}", "{1}"), "decide", m=1)
    out = introduce_step([{S("s0"): True}], (0,), 1, [0], ctx)
    assert set(out[0]) == {S("s0 r1")}


def test_adjust_string_examples():
    a = Alphabet(3, 3)
    assert adjust_string(S("s1 s1"), [[1], [0]], a) == S("s0 s0")
    assert adjust_string(S("r2 s0"), [[1], [0]], a) == S("r1 s0")


def test_adjust_skips_saturated_positions():
    a = Alphabet(2, 2, sat_rho=True)
    assert adjust_string(S("r2 s0"), [[1], [0]], a) == S("r2 s0")


def test_adjust_underflow_is_an_invariant_error():
    with pytest.raises(InvariantError):
        adjust_string(S("r0 s0"), [[1], [0]], Alphabet(2, 2))


def test_join_adjust_on_edgeless_bag_is_identity():
    ctx = DPContext.create(P("{0}", "{1}"), "decide", m=1)
    table = [{S("r1 s0"): True}]
    assert join_adjust(table, (0, 1), Graph(2), ctx) is table


def test_join_of_all_rho_zero_tables():
    ctx = DPContext.create(P("{0}", "{1}"), "decide", m=1)
    t = [{S("r0 r0"): True}]
    assert join_step(t, t, naive_joiner, ctx) == t


def test_join_wrong_class_count():
    ctx = DPContext.create(P("{0}", "{1}"), "decide", m=2)
    with pytest.raises(InvariantError):
        join_step([{}], [{}], naive_joiner, ctx)


def test_small_counts():
    assert solve_dp(path_graph(3), nice_of(path_graph(3)), P("{0}", "all"), "count") == 5
    assert solve_dp(complete_graph(2), nice_of(complete_graph(2)), P("{0}", "{1}"), "count") == 2
    assert solve_dp(complete_graph(3), nice_of(complete_graph(3)), P("all", ">=1"), "count") == 7
    # opposite corners of C4 dominate the other two corners twice
    assert solve_dp(cycle_graph(4), nice_of(cycle_graph(4)), P("{0}", "{1}"), "count") == 0
    assert solve_dp(cycle_graph(6), nice_of(cycle_graph(6)), P("{0}", "{1}"), "count") == 3


def test_empty_graph():
    g = Graph(0)
    assert solve_dp(g, nice_of(g), P("{0}", "{1}"), "decide") is True
    assert solve_dp(g, nice_of(g), P("{0}", "{1}"), "count", k=0) == 1


def test_finalize_modes():
    assert finalize([{(): {2: 1, 3: 4}}, {}], "count") == 5
    assert finalize([{(): {2: 1, 3: 4}}], "count", 3) == 4
    assert finalize([{(): 2}, {(): 1}], "min") == 1
    assert finalize([{(): 2}, {(): 1}], "max") == 2
    assert finalize([{}], "min") is None
    assert finalize([{(): 2}], "min", 1) is False
    assert finalize([{(): {1, 4}}], "sizes") == {1, 4}


def _clean(table):
    return [{x: {s: c for s, c in v.items() if c} for x, v in lang.items() if any(v.values())} for lang in table]


@pytest.mark.parametrize("sigma,rho", COUNT_FAMILY)
def test_every_node_matches_realized_language(sigma, rho):
    pair = P(sigma, rho)
    for g, nice in random_instances(11, 12, 2, 9):
        below = subtree_vertices(nice)
        m = DPContext.create(pair).m
        bad = []

        def hook(i, nd, table):
            sub, where = induced(g, below[i])
            want = realized_language(sub, [where[v] for v in nd.bag], pair, m=m)
            if _clean(table) != _clean(want):
                bad.append((i, nd.kind))

        run_dp(g, nice, pair, "count", hook=hook)
        assert not bad


@pytest.mark.parametrize("pair", pairs(COUNT_FAMILY), ids=str)
def test_all_modes_match_brute_force(pair):
    for g, nice in random_instances(3, 15, 1, 9):
        counts = brute_solutions(g, pair)
        assert counts_by_size(run_dp(g, nice, pair, "count"), g.n) == counts
        assert solve_dp(g, nice, pair, "decide") == any(counts)
        assert solve_dp(g, nice, pair, "min") == brute_extremum(g, pair, "min")
        assert solve_dp(g, nice, pair, "max") == brute_extremum(g, pair, "max")
