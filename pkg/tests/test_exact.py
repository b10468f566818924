import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cfcolor.coloring import CONFLICT_FREE, ODD, AchievementSpec
from cfcolor.cliquesum import ExtendRequest, check_extension, extendability_audit
from cfcolor.errors import ExtensionImpossible, InstanceTooLarge
from cfcolor.exact import (
    brute_extendable,
    count_canonical_colorings,
    exact_chromatic,
    exact_relations_check,
    list_coloring_decision,
    refute_choosability,
    verify_kind,
)
from cfcolor.graph import Graph, complete, cycle, path, random_gnp, subdivide


def test_paper_tight_values():
    assert exact_chromatic(cycle(5), "pcf").value == 5
    assert exact_chromatic(path(3), "pcf").value == 3
    for n in range(1, 9):
        assert exact_chromatic(complete(n), "pcf").value == n
    assert exact_chromatic(complete(3), "icf").value == 3


def test_icf_k4_is_two():
    # (1,1,2,2) on K4 leaves every open neighborhood with a unique color;
    # exhaustive search over 2-colorings certifies the lower bound
    res = exact_chromatic(complete(4), "icf")
    assert res.value == 2
    assert verify_kind(complete(4), {0: 1, 1: 1, 2: 2, 3: 2}, "icf")[0]


def test_exact_result_witness_and_minimality():
    res = exact_chromatic(cycle(5), "pcf")
    assert verify_kind(cycle(5), res.coloring, "pcf")[0]
    assert len(set(res.coloring.values())) <= res.value
    assert res.nodes > 0 and res.seconds >= 0


def test_relations_chain_examples():
    rep = exact_relations_check(complete(4))
    assert (rep.chi, rep.pcf, rep.icf) == (4, 4, 2)
    assert rep.chain_holds
    rep = exact_relations_check(cycle(5))
    assert rep.pcf == 5 and rep.chi == 3 and rep.chain_holds
    rep = exact_relations_check(Graph(3))
    assert (rep.chi, rep.pcf, rep.pcfc, rep.icf, rep.icfc) == (1, 1, 1, 1, 1)


def test_edge_cases():
    assert exact_chromatic(Graph(0), "pcf").value == 0
    assert exact_chromatic(Graph(1), "pcf").value == 1
    assert exact_chromatic(complete(2), "icf").value == 1
    with pytest.raises(InstanceTooLarge):
        exact_chromatic(complete(13), "proper")
    with pytest.raises(ValueError):
        exact_chromatic(complete(3), "nope")
    with pytest.raises(ValueError):
        exact_chromatic(complete(3), "s_achieved")


def test_s_achieved_kind():
    spec = AchievementSpec.from_set([2])
    # C4 colored (1,2,1,2) gives every vertex multiplicity exactly 2
    assert verify_kind(cycle(4), {0: 1, 1: 2, 2: 1, 3: 2}, "s_achieved", spec)[0]
    assert exact_chromatic(cycle(4), "s_achieved", spec=spec).value == 2


def test_odd_kind_matches_pcf_upper():
    for seed in range(5):
        g = random_gnp(7, 0.4, seed)
        assert exact_chromatic(g, "odd").value <= exact_chromatic(g, "pcf").value


def test_canonical_counts_match_naive_enumeration():
    # canonical count weighted by the number of injections of the class
    # labels into [k] equals plain k^n enumeration with the verifier
    for n in range(1, 5):
        pairs = list(itertools.combinations(range(n), 2))
        for bits in range(2 ** len(pairs)):
            g = Graph(n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])
            for kind in ("pcf", "icf", "odd"):
                for k in (1, 2, 3):
                    naive = 0
                    for assignment in itertools.product(range(1, k + 1), repeat=n):
                        ok, _ = verify_kind(g, dict(enumerate(assignment)), kind)
                        naive += ok
                    weighted = 0
                    for used in range(1, k + 1):
                        cnt = count_canonical_colorings(g, used, kind) - (
                            count_canonical_colorings(g, used - 1, kind) if used > 1 else 0
                        )
                        injections = 1
                        for j in range(used):
                            injections *= k - j
                        weighted += cnt * injections
                    assert naive == weighted, (n, bits, kind, k)


def test_decision_agrees_with_counts():
    rng = random.Random(4)
    for _ in range(30):
        g = random_gnp(rng.randint(1, 5), 0.5, rng.randrange(10**6))
        for kind in ("pcf", "icfc", "odd"):
            val = exact_chromatic(g, kind).value
            assert count_canonical_colorings(g, val, kind) > 0
            if val > 1:
                assert count_canonical_colorings(g, val - 1, kind) == 0


def test_node_counts_stable_and_parallel_matches():
    g = random_gnp(9, 0.5, 12)
    a = exact_chromatic(g, "pcf")
    b = exact_chromatic(g, "pcf")
    assert (a.value, a.nodes, a.coloring) == (b.value, b.nodes, b.coloring)
    c = exact_chromatic(g, "pcf", jobs=2)
    assert (c.value, c.coloring) == (a.value, a.coloring)


def test_subdivision_lower_bound_spot():
    sub, _ = subdivide(complete(5), 1)
    assert exact_chromatic(sub, "pcf", cap=16).value >= 5


def test_refute_choosability_examples():
    bad = refute_choosability(cycle(5), 4, universe_size=4)
    assert bad is not None
    assert all(cs == frozenset({0, 1, 2, 3}) for cs in bad.values())
    found, _ = list_coloring_decision(cycle(5), bad, spec=CONFLICT_FREE)
    assert found is None  # certified counterexample

    bad = refute_choosability(path(3), 2, universe_size=4)
    assert bad is not None

    assert refute_choosability(path(3), 3, universe_size=6) is None  # inconclusive

    bad = refute_choosability(complete(2), 1, universe_size=1)
    assert bad == {0: frozenset({0}), 1: frozenset({0})}

    with pytest.raises(InstanceTooLarge):
        refute_choosability(complete(9), 2)


def test_list_decision_respects_constraints():
    g = path(4)
    lists = {v: frozenset({0, 1, 2}) for v in range(4)}
    found, _ = list_coloring_decision(g, lists, spec=CONFLICT_FREE, fixed={0: 1})
    assert found is not None and found[0] == 1
    found, _ = list_coloring_decision(
        g, lists, spec=CONFLICT_FREE, forbidden={1: frozenset({0, 1, 2})}
    )
    assert found is None


def test_brute_extendable_hand_case():
    # K3 with one pinned vertex and a hostile forbidden color: the remaining
    # vertices must dodge phi_W, f, and keep each other conflict-free
    g = complete(3)
    lists = {v: frozenset({0, 1, 2, 3}) for v in range(3)}
    colorer = brute_extendable(g, (frozenset({0}),), lists, 1, CONFLICT_FREE)
    req = ExtendRequest(frozenset({0}), frozenset(), {0: 0}, {0: 1}, {0: 0})
    phi, wit = colorer.extend(req)
    assert check_extension(g, lists, CONFLICT_FREE, req, phi, wit) is None
    assert phi[0] == 0 and 1 not in (phi[1], phi[2])
    # hand enumeration cross-check: with lists {0,1} for everyone and f
    # covering color 1, outside vertices only have color 0 left: improper
    small = {v: frozenset({0, 1}) for v in range(3)}
    colorer = brute_extendable(g, (frozenset({0}),), small, 1, CONFLICT_FREE)
    with pytest.raises(ExtensionImpossible):
        colorer.extend(ExtendRequest(frozenset({0}), frozenset(), {0: 0}, {0: 1}, {0: 0}))


def test_brute_extendable_edgeless_and_fallback():
    g = Graph(4)
    lists = {v: frozenset(range(8)) for v in range(4)}
    fast = brute_extendable(g, (), lists, 2, CONFLICT_FREE)
    slow = brute_extendable(g, (), lists, 2, CONFLICT_FREE, enumeration_limit=1)
    req = ExtendRequest.empty()
    assert fast.extend(req) == slow.extend(req)
    with pytest.raises(InstanceTooLarge):
        brute_extendable(complete(8), (), {v: frozenset({0}) for v in range(8)}, 1)


def test_brute_fallback_matches_enumeration_on_requests():
    rng = random.Random(7)
    g = random_gnp(4, 0.6, 3)
    lists = {v: frozenset(rng.sample(range(6), 4)) for v in range(4)}
    q = frozenset({0})
    fast = brute_extendable(g, (q,), lists, 2, CONFLICT_FREE)
    slow = brute_extendable(g, (q,), lists, 2, CONFLICT_FREE, enumeration_limit=1)
    for c in sorted(lists[0]):
        req = ExtendRequest(q, frozenset(), {0: c}, {0: None}, {0: 1})
        try:
            phi_fast, _ = fast.extend(req)
        except ExtensionImpossible:
            with pytest.raises(ExtensionImpossible):
                slow.extend(req)
            continue
        phi_slow, _ = slow.extend(req)
        assert check_extension(g, lists, CONFLICT_FREE, req, phi_slow, None) is None
        assert phi_fast == phi_slow


def test_audit_negative_control():
    # a broken colorer that ignores f must be caught by the audit
    g = path(2)
    lists = {0: frozenset({0, 1, 2}), 1: frozenset({0, 1, 2})}

    def ignore_f(req):
        phi = {0: req.boundary.get(0, 0), 1: req.boundary.get(1, 1)}
        for v in (0, 1):
            if v not in req.clique:
                phi[v] = min(lists[v] - {phi[1 - v]})
        return phi, {v: phi[1 - v] for v in (0, 1)}

    from cfcolor.cliquesum import ExtendableColorer

    broken = ExtendableColorer(g, lists, (), 1, CONFLICT_FREE, ignore_f)
    rep = extendability_audit(broken)
    assert not rep.ok and rep.counterexample is not None
