import random

import pytest

from cfcolor.cliquesum import (
    CliqueSumSpec,
    ExtendRequest,
    ExtendableColorer,
    adapt_colorability,
    check_extension,
    clique_sum,
    combine_extendable,
    extendability_audit,
    fold_tree_decomposition,
)
from cfcolor.coloring import (
    CONFLICT_FREE,
    ODD,
    respects_lists,
    verify_proper,
    verify_s_achieved,
)
from cfcolor.decomp import (
    TreeDecomposition,
    path_decomposition,
    torso_and_frame,
    validate_tree_decomposition,
)
from cfcolor.errors import ListMismatch, NotAClique, SideFailure
from cfcolor.exact import brute_extendable, list_coloring_decision
from cfcolor.graph import Graph, complete, cycle, path
from helpers import random_extendable_side, random_lists, random_tree_decomposition


def brute_torso_colorers(g, td, lists, spec, threshold=None):
    xi = td.adhesion if threshold is None else threshold
    out = {}
    for x in range(td.tree.n):
        torso, remap, frame = torso_and_frame(g, td, x)
        tl = {remap[v]: lists[v] for v in td.bags[x]}
        cliques = tuple(frozenset(remap[v] for v in m) for m in frame)
        out[x] = brute_extendable(torso, cliques, tl, xi, spec, cap=max(7, torso.n))
    return out


# ---------------------------------------------------------------------------
# clique_sum


def test_two_triangles_glued_on_edge():
    spec = CliqueSumSpec(complete(3), complete(3), frozenset({0, 1}), frozenset({0, 1}), {0: 0, 1: 1})
    g, e1, e2, _ = clique_sum(spec)
    assert (g.n, g.m) == (4, 5)
    assert e1 == {0: 0, 1: 1, 2: 2}
    assert e2[2] == 3


def test_zero_sum_is_disjoint_union():
    spec = CliqueSumSpec(path(2), path(3), frozenset(), frozenset(), {})
    g, _, e2, _ = clique_sum(spec)
    assert (g.n, g.m) == (5, 3)
    assert e2 == {0: 2, 1: 3, 2: 4}


def test_dropping_the_shared_edge():
    spec = CliqueSumSpec(
        complete(3), complete(3), frozenset({0, 1}), frozenset({0, 1}), {0: 0, 1: 1},
        frozenset({frozenset({0, 1})}),
    )
    g, _, _, _ = clique_sum(spec)
    assert not g.has_edge(0, 1) and g.m == 4


def test_clique_sum_validation():
    with pytest.raises(NotAClique):
        CliqueSumSpec(path(3), path(3), frozenset({0, 2}), frozenset({0, 1}), {0: 0, 2: 1})
    lists1 = {v: frozenset({1, 2}) for v in range(3)}
    lists2 = {v: frozenset({3, 4}) for v in range(3)}
    spec = CliqueSumSpec(complete(3), complete(3), frozenset({0}), frozenset({0}), {0: 0})
    with pytest.raises(ListMismatch):
        clique_sum(spec, lists1, lists2)


# ---------------------------------------------------------------------------
# combine_extendable


def test_combine_small_sums_audit_exhaustively():
    rng = random.Random(100)
    for i in range(6):
        s_spec = CONFLICT_FREE if i % 2 == 0 else ODD
        t = rng.randint(0, 2)
        n1 = rng.randint(max(t, 1), 3)
        n2 = rng.randint(max(t, 1), max(t, 1) + 1)
        g1, l1, q1, left = random_extendable_side(rng, s_spec, n1, t)
        iota_src = sorted(q1)
        while True:
            g2, l2, q2, right = random_extendable_side(rng, s_spec, n2, t)
            iota = dict(zip(iota_src, sorted(q2)))
            override = {y: l1[x] for x, y in iota.items()}
            l2 = {**l2, **override}
            right = brute_extendable(g2, (q2,), l2, max(t, 2), s_spec)
            if extendability_audit(right).ok:
                break
        dropped = frozenset()
        if t == 2 and rng.random() < 0.5:
            dropped = frozenset({frozenset(q1)})
        comb, emb1, emb2 = combine_extendable(
            left, right, CliqueSumSpec(g1, g2, q1, q2, iota, dropped)
        )
        rep = extendability_audit(comb, clique_cap=2)
        assert rep.ok, rep.reason


def test_combine_routes_to_the_right_side():
    # W living strictly inside the second factor exercises the symmetric case
    rng = random.Random(200)
    g1 = Graph(2, [(0, 1)])
    g2 = Graph(3, [(0, 1), (1, 2)])
    l1 = random_lists(2, 3, 6, rng)
    l2 = random_lists(3, 3, 6, rng)
    l2[0] = l1[1]
    q1, q2 = frozenset({1}), frozenset({0})
    left = brute_extendable(g1, (q1,), l1, 2, CONFLICT_FREE)
    right = brute_extendable(g2, (q2,), l2, 2, CONFLICT_FREE)
    assert extendability_audit(left).ok and extendability_audit(right).ok
    comb, emb1, emb2 = combine_extendable(left, right, CliqueSumSpec(g1, g2, q1, q2, {1: 0}))
    w = frozenset({emb2[2]})  # only in the right image
    req = ExtendRequest(w, frozenset(), {emb2[2]: min(l2[2])}, {emb2[2]: None}, {emb2[2]: 1})
    phi, wit = comb.extend(req)
    assert check_extension(comb.graph, comb.lists, CONFLICT_FREE, req, phi, wit) is None


def test_combine_disjoint_union():
    rng = random.Random(300)
    g1, l1, q1, left = random_extendable_side(rng, CONFLICT_FREE, 2, 0)
    g2, l2, q2, right = random_extendable_side(rng, CONFLICT_FREE, 2, 0)
    comb, _, _ = combine_extendable(left, right, CliqueSumSpec(g1, g2, frozenset(), frozenset(), {}))
    phi, wit = comb.extend(ExtendRequest.empty())
    assert check_extension(comb.graph, comb.lists, CONFLICT_FREE, ExtendRequest.empty(), phi, wit) is None


def test_combine_requires_governed_cliques():
    g1 = complete(2)
    lists = {v: frozenset({0, 1, 2}) for v in range(2)}
    left = brute_extendable(g1, (), lists, 2, CONFLICT_FREE)
    right = brute_extendable(g1, (frozenset({0}),), lists, 2, CONFLICT_FREE)
    with pytest.raises(ValueError):
        combine_extendable(left, right, CliqueSumSpec(g1, g1, frozenset({0}), frozenset({0}), {0: 0}))


def test_side_failures_carry_provenance():
    g = complete(2)
    lists = {v: frozenset({0, 1}) for v in range(2)}

    def broken(req):
        raise RuntimeError("boom")

    left = ExtendableColorer(g, lists, (frozenset({0}),), 2, CONFLICT_FREE, broken)
    right = brute_extendable(g, (frozenset({0}),), lists, 2, CONFLICT_FREE)
    comb, _, _ = combine_extendable(left, right, CliqueSumSpec(g, g, frozenset({0}), frozenset({0}), {0: 0}))
    with pytest.raises(SideFailure) as err:
        comb.extend(ExtendRequest.empty())
    assert err.value.side == "left"


# ---------------------------------------------------------------------------
# fold_tree_decomposition


def test_fold_p6_with_3_lists():
    # forests are conflict-free 3-choosable; the fold reproduces that here
    rng = random.Random(400)
    g = path(6)
    td = path_decomposition(6)
    lists = random_lists(6, 3, 8, rng)
    folded = fold_tree_decomposition(g, td, brute_torso_colorers(g, td, lists, CONFLICT_FREE), lists, CONFLICT_FREE)
    phi, wit = folded.extend(ExtendRequest.empty())
    assert verify_proper(g, phi)[0]
    assert verify_s_achieved(g, phi, CONFLICT_FREE).ok
    assert respects_lists(phi, lists)


def test_fold_single_bag_identity():
    g = complete(3)
    td = TreeDecomposition(Graph(1), (frozenset(range(3)),))
    lists = {v: frozenset({0, 1, 2, 3, 4}) for v in range(3)}
    folded = fold_tree_decomposition(g, td, brute_torso_colorers(g, td, lists, CONFLICT_FREE), lists, CONFLICT_FREE)
    phi, _ = folded.extend(ExtendRequest.empty())
    assert verify_proper(g, phi)[0] and verify_s_achieved(g, phi, CONFLICT_FREE).ok


def test_fold_two_triangles_sharing_a_vertex():
    g = Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    td = TreeDecomposition(Graph(2, [(0, 1)]), (frozenset({0, 1, 2}), frozenset({2, 3, 4})))
    assert validate_tree_decomposition(g, td).ok
    lists = {v: frozenset(range(5)) for v in range(5)}
    folded = fold_tree_decomposition(g, td, brute_torso_colorers(g, td, lists, CONFLICT_FREE), lists, CONFLICT_FREE)
    rep = extendability_audit(folded, clique_cap=1, max_h_subsets=2)
    assert rep.ok, rep.reason


def test_fold_with_fill_edges_audits():
    rng = random.Random(500)
    g = cycle(4)
    td = TreeDecomposition(Graph(2, [(0, 1)]), (frozenset({0, 1, 3}), frozenset({1, 2, 3})))
    lists = random_lists(4, 3 + 2 * td.adhesion, 12, rng)
    for s_spec in (CONFLICT_FREE, ODD):
        folded = fold_tree_decomposition(g, td, brute_torso_colorers(g, td, lists, s_spec), lists, s_spec)
        rep = extendability_audit(folded, clique_cap=2)
        assert rep.ok, (s_spec.name, rep.reason)


def test_fold_order_insensitive_in_effect():
    # different roots give possibly different colorings, both valid
    rng = random.Random(600)
    g, td = random_tree_decomposition(rng, 4, 6)
    if not validate_tree_decomposition(g, td).ok:
        pytest.skip("random decomposition degenerated")
    t = max(len(b) for b in td.bags)
    lists = random_lists(g.n, t + 2 * td.adhesion, t + 2 * td.adhesion + 4, rng)
    for root in range(td.tree.n):
        td_r = TreeDecomposition(td.tree, td.bags, root)
        folded = fold_tree_decomposition(
            g, td_r, brute_torso_colorers(g, td_r, lists, CONFLICT_FREE), lists, CONFLICT_FREE
        )
        phi, _ = folded.extend(ExtendRequest.empty())
        assert verify_proper(g, phi)[0]
        assert verify_s_achieved(g, phi, CONFLICT_FREE).ok
        assert respects_lists(phi, lists)


# ---------------------------------------------------------------------------
# adapt_colorability


def exact_inner(spec):
    def inner(g, dropped, lists):
        found, _ = list_coloring_decision(g, lists, spec=spec, deleted_edges=dropped)
        if found is None:
            raise RuntimeError("inner cannot color")
        return found

    return inner


def test_adapter_reduces_to_inner_on_empty_request():
    g = path(4)
    lists = {v: frozenset({0, 1, 2}) for v in range(4)}
    ad = adapt_colorability(g, (), lists, 0, exact_inner(CONFLICT_FREE), CONFLICT_FREE)
    phi, _ = ad.extend(ExtendRequest.empty())
    direct = exact_inner(CONFLICT_FREE)(g, frozenset(), lists)
    assert phi == direct


def test_adapter_passes_audit():
    rng = random.Random(700)
    for i in range(4):
        n = rng.randint(3, 5)
        g = Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.5])
        cliques = []
        for v in range(n):
            for u in g.neighbors(v):
                if u > v:
                    cliques.append(frozenset({u, v}))
                    break
            if cliques:
                break
        lists = random_lists(n, n + 4, 3 * n + 8, rng)
        ad = adapt_colorability(g, tuple(cliques), lists, 2, exact_inner(CONFLICT_FREE), CONFLICT_FREE)
        rep = extendability_audit(ad, clique_cap=2, max_h_subsets=4, sample=800, seed=i)
        assert rep.ok, rep.reason


def test_adapter_arithmetic_t_plus_2xi():
    # any graph on <= t vertices colors from t-lists even after stripping 2*xi
    rng = random.Random(800)
    t, xi = 4, 2
    g = complete(4)
    lists = random_lists(4, t + 2 * xi, 20, rng)

    def rainbow_inner(h, dropped, hl):
        phi, used = {}, set()
        for v in h.vertices():
            phi[v] = min(hl[v] - used)
            used.add(phi[v])
        return phi

    ad = adapt_colorability(g, (frozenset({0, 1}),), lists, xi, rainbow_inner, CONFLICT_FREE)
    rep = extendability_audit(ad, clique_cap=2, max_h_subsets=2, sample=800, seed=3)
    assert rep.ok, rep.reason
