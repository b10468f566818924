"""Greedy conflict-free list coloring driven by an ordering plan.

A plan supplies a vertex ordering v_1..v_n together with sets S_i that
sandwich each vertex's already-placed closed neighborhood:

    N[v_i] intersect {v_1..v_i}  is a subset of  S_i  is a subset of  {v_1..v_i}

With w1 = max |S_i| and w2 = max_i |union of the S_j containing v_i,
restricted to v_1..v_i|, lists of size w1 + w2 - 1 always suffice: the engine
colors vertices in order, avoiding the colors currently on that union as well
as every already-placed witness color of the members of S_i, which keeps each
partially-placed S_j rainbow and every placed vertex's witness unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

from .coloring import Coloring, ListAssignment, WitnessMap, min_list_size
from .errors import ListTooShort, PlanViolation
from .graph import Graph


@dataclass(frozen=True)
class OrderingPlan:
    order: Tuple[int, ...]
    sets: Tuple[FrozenSet[int], ...]
    w1: int
    w2: int

    @staticmethod
    def from_parts(order, sets) -> "OrderingPlan":
        order = tuple(order)
        sets = tuple(frozenset(s) for s in sets)
        w1, w2 = plan_widths(order, sets)
        return OrderingPlan(order, sets, w1, w2)

    @property
    def required_list_size(self) -> int:
        return max(self.w1 + self.w2 - 1, 1)


def plan_widths(order, sets) -> Tuple[int, int]:
    """Recompute (w1, w2) from scratch."""
    n = len(order)
    if n == 0:
        return 0, 0
    pos = {v: i for i, v in enumerate(order)}
    w1 = max(len(s) for s in sets)
    containing: Dict[int, List[int]] = {v: [] for v in order}
    for j, s in enumerate(sets):
        for u in s:
            containing[u].append(j)
    w2 = 0
    for i, v in enumerate(order):
        union = set()
        for j in containing[v]:
            union |= sets[j]
        w2 = max(w2, sum(1 for u in union if pos[u] <= i))
    return w1, w2


def minimal_plan(g: Graph, order) -> OrderingPlan:
    """Tightest legal plan for the given ordering: S_i = N[v_i] among the
    first i vertices."""
    order = tuple(order)
    pos = {v: i for i, v in enumerate(order)}
    sets = []
    for i, v in enumerate(order):
        s = {u for u in g.neighbors(v) if pos[u] <= i}
        s.add(v)
        sets.append(frozenset(s))
    return OrderingPlan.from_parts(order, sets)


def validate_plan(g: Graph, plan: OrderingPlan) -> Tuple[int, int]:
    """Check both sandwich inclusions and the stored widths; returns the
    recomputed (w1, w2)."""
    if sorted(plan.order) != list(g.vertices()):
        raise PlanViolation(-1, "order is not a permutation of the vertices")
    if len(plan.sets) != len(plan.order):
        raise PlanViolation(-1, "one set per position required")
    pos = {v: i for i, v in enumerate(plan.order)}
    for i, v in enumerate(plan.order):
        s = plan.sets[i]
        for u in s:
            if pos[u] > i:
                raise PlanViolation(i, f"set contains later vertex {u}")
        if v not in s:
            raise PlanViolation(i, f"set must contain v_{i + 1} = {v}")
        for u in g.neighbors(v):
            if pos[u] <= i and u not in s:
                raise PlanViolation(i, f"earlier neighbor {u} missing from set")
    w1, w2 = plan_widths(plan.order, plan.sets)
    if (w1, w2) != (plan.w1, plan.w2):
        raise PlanViolation(-1, f"stored widths {(plan.w1, plan.w2)} != recomputed {(w1, w2)}")
    return w1, w2


def color_by_plan(
    g: Graph,
    plan: OrderingPlan,
    lists: ListAssignment,
    debug: bool = False,
) -> Tuple[Coloring, WitnessMap]:
    """Produce a proper conflict-free coloring respecting the lists.

    Needs every list of size at least w1 + w2 - 1.  Colors are chosen
    smallest-first, so the output is a pure function of (g, plan, lists).
    ``debug`` re-checks the rainbow invariant (each partially placed S_j has
    pairwise distinct colors) after every step.
    """
    validate_plan(g, plan)
    n = g.n
    if n == 0:
        return {}, {}
    need = plan.w1 + plan.w2 - 1
    if min_list_size(lists) < need:
        short = min(lists, key=lambda v: (len(lists[v]), v))
        raise ListTooShort(short, f"lists must have size >= w1+w2-1 = {need}")

    pos = {v: i for i, v in enumerate(plan.order)}
    containing: Dict[int, List[int]] = {v: [] for v in plan.order}
    for j, s in enumerate(plan.sets):
        for u in s:
            containing[u].append(j)

    phi: Coloring = {}
    witness: WitnessMap = {}
    placed_nbrs = {v: 0 for v in g.vertices()}  # colored-neighbor count

    for i, v in enumerate(plan.order):
        blocked = set()
        for j in containing[v]:
            for u in plan.sets[j]:
                if u in phi:
                    blocked.add(phi[u])
        for u in plan.sets[i]:
            if u != v and u in phi and placed_nbrs[u] > 0:
                blocked.add(witness[u])
        choices = sorted(lists[v] - blocked)
        if not choices:
            raise ListTooShort(v, "no color left; plan preconditions violated")
        phi[v] = choices[0]

        earlier = sorted(
            (u for u in g.neighbors(v) if pos[u] < i), key=lambda u: pos[u]
        )
        for u in earlier:
            if placed_nbrs[u] == 0:
                witness[u] = phi[v]  # v is u's first (hence unique) neighbor
            placed_nbrs[u] += 1
        placed_nbrs[v] = len(earlier)
        if earlier:
            witness[v] = phi[earlier[0]]  # S_i is rainbow, so any works

        if debug:
            _assert_rainbow(plan, phi)

    return phi, witness


def _assert_rainbow(plan: OrderingPlan, phi: Coloring) -> None:
    for j, s in enumerate(plan.sets):
        seen = [phi[u] for u in s if u in phi]
        if len(seen) != len(set(seen)):
            raise AssertionError(f"rainbow invariant broken on S_{j + 1}")
