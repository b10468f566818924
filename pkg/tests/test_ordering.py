import random

import pytest
from hypothesis import given, settings, strategies as st

from cfcolor.coloring import (
    respects_lists,
    uniform_lists,
    verify_conflict_free,
    verify_proper,
)
from cfcolor.errors import ListTooShort, PlanViolation
from cfcolor.graph import Graph, complete, degeneracy_ordering, path, random_gnp, random_tree, star
from cfcolor.ordering import OrderingPlan, color_by_plan, minimal_plan, plan_widths, validate_plan
from helpers import random_lists


def padded_random_plan(g, rng):
    order = list(g.vertices())
    rng.shuffle(order)
    base = minimal_plan(g, order)
    sets = []
    for i in range(g.n):
        s = set(base.sets[i])
        for u in order[:i]:
            if rng.random() < 0.15:
                s.add(u)
        sets.append(frozenset(s))
    return OrderingPlan.from_parts(order, sets)


def test_minimal_plan_widths():
    g = Graph(4)
    plan = minimal_plan(g, range(4))
    assert (plan.w1, plan.w2) == (1, 1)
    kn = complete(5)
    plan = minimal_plan(kn, range(5))
    assert (plan.w1, plan.w2) == (5, 5)
    t = random_tree(15, 2)
    order, _ = degeneracy_ordering(t)
    plan = minimal_plan(t, order)
    assert plan.w1 == 2  # each vertex has at most one earlier neighbor


def test_validate_plan_accepts_minimal_and_rejects_broken():
    g = path(4)
    plan = minimal_plan(g, [2, 0, 3, 1])
    assert validate_plan(g, plan) == (plan.w1, plan.w2)
    # drop an earlier neighbor from one set
    sets = list(plan.sets)
    i = 3
    sets[i] = frozenset({plan.order[i]})
    bad = OrderingPlan(plan.order, tuple(sets), plan.w1, plan.w2)
    with pytest.raises(PlanViolation):
        validate_plan(g, bad)
    with pytest.raises(PlanViolation):
        validate_plan(g, OrderingPlan((0, 0, 1, 2), plan.sets, 1, 1))
    # stored widths must match
    with pytest.raises(PlanViolation):
        validate_plan(g, OrderingPlan(plan.order, plan.sets, plan.w1 + 1, plan.w2))


def test_star_center_first():
    g = star(5)
    plan = minimal_plan(g, range(6))
    lists = uniform_lists(6, plan.required_list_size)
    phi, wit = color_by_plan(g, plan, lists)
    assert verify_proper(g, phi)[0]
    assert verify_conflict_free(g, phi).ok


def test_p3_three_lists():
    g = path(3)
    plan = minimal_plan(g, range(3))
    assert plan.required_list_size <= 3
    lists = uniform_lists(3, 3)
    phi, _ = color_by_plan(g, plan, lists)
    assert verify_proper(g, phi)[0] and verify_conflict_free(g, phi).ok


def test_exact_size_lists_never_fail():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 25)
        g = random_gnp(n, rng.uniform(0.05, 0.5), rng.randrange(10**9))
        plan = padded_random_plan(g, rng)
        size = plan.required_list_size
        lists = random_lists(n, size, 3 * size, rng)
        phi, wit = color_by_plan(g, plan, lists)
        assert verify_proper(g, phi)[0]
        assert verify_conflict_free(g, phi).ok
        assert respects_lists(phi, lists)
        for v, c in wit.items():
            assert sum(1 for u in g.neighbors(v) if phi[u] == c) == 1


def test_rainbow_invariant_debug_mode():
    rng = random.Random(5)
    for _ in range(20):
        g = random_gnp(12, 0.3, rng.randrange(10**9))
        plan = padded_random_plan(g, rng)
        lists = random_lists(12, plan.required_list_size, 40, rng)
        color_by_plan(g, plan, lists, debug=True)  # raises on violation


def test_blocked_set_bound():
    # |Z_i| <= (w1-1)+(w2-1), so exact-size lists always leave a choice;
    # exercised by shrinking lists to the bound and expecting success
    rng = random.Random(6)
    g = random_gnp(14, 0.4, 17)
    plan = padded_random_plan(g, rng)
    lists = uniform_lists(14, plan.required_list_size)
    color_by_plan(g, plan, lists)
    with pytest.raises(ListTooShort):
        color_by_plan(g, plan, uniform_lists(14, plan.required_list_size - 1))


def test_determinism():
    rng1, rng2 = random.Random(3), random.Random(3)
    g = random_gnp(15, 0.35, 8)
    p1, p2 = padded_random_plan(g, rng1), padded_random_plan(g, rng2)
    L = uniform_lists(15, max(p1.required_list_size, 1))
    assert color_by_plan(g, p1, L) == color_by_plan(g, p2, L)


@settings(max_examples=30)
@given(st.integers(0, 12), st.integers(0, 10**6))
def test_plan_widths_recompute(n, seed):
    g = random_gnp(n, 0.4, seed)
    plan = minimal_plan(g, range(n))
    assert (plan.w1, plan.w2) == plan_widths(plan.order, plan.sets)
    if n:
        assert plan.w1 <= plan.w2  # S_i is contained in the union over sets containing v_i
