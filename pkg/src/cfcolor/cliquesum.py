"""Composable extendable colorers and clique-sum machinery.

An *extendable colorer* for (graph, lists, C, t) can, for every clique W of
size at most t, every subgraph H whose edges lie inside members of the
collection C, every proper boundary coloring of W from the lists, every
forbidden-color function f on W and every mode function g: W -> {0, 1},
produce a proper list coloring of the full graph that

  (1) extends the boundary, and for mode-0 boundary vertices puts f(w) on no
      neighbor outside W, and
  (2) gives every other vertex (and every mode-1 boundary vertex) with a
      nonempty neighborhood in G - E(H) a witness color whose multiplicity
      there lies in S.

The deleted subgraph H weakens only the multiplicity requirement, never
properness: when two colorers are glued along an identified clique, the
second one receives the first one's clique colors as its boundary, and that
boundary must stay rainbow even when clique pairs belong to H (erased sum
edges, torso fill-in).  Composition would be unsound otherwise.

Two such colorers glued along identified cliques combine into one for the
clique-sum; folding the combination over a tree-decomposition whose torsos
carry extendable colorers yields one for the whole graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Dict, FrozenSet, Mapping, Optional, Tuple

from .coloring import (
    AchievementSpec,
    Coloring,
    ListAssignment,
    WitnessMap,
    find_witness,
    respects_lists,
    verify_proper,
    verify_s_achieved,
)
from .errors import (
    InnerFailure,
    InvalidDecomposition,
    ListMismatch,
    NotAClique,
    SideFailure,
)
from .graph import Edge, Graph, edge
from .decomp import TreeDecomposition, bfs_tree_order, torso_and_frame, validate_tree_decomposition


@dataclass(frozen=True)
class ExtendRequest:
    """One extension task: clique W, compatible deleted subgraph H, boundary
    coloring, forbidden colors f (None = no constraint) and modes g."""

    clique: FrozenSet[int]
    deleted_edges: FrozenSet[Edge]
    boundary: Mapping[int, int]
    forbidden: Mapping[int, Optional[int]]
    mode: Mapping[int, int]

    @staticmethod
    def empty() -> "ExtendRequest":
        return ExtendRequest(frozenset(), frozenset(), {}, {}, {})


def bullet_two_vertices(g: Graph, req: ExtendRequest):
    """Vertices the multiplicity condition applies to: everything outside W
    plus the mode-1 boundary vertices."""
    return [v for v in g.vertices() if v not in req.clique or req.mode[v] == 1]


class ExtendableColorer:
    """Capability value: bound graph/lists/C/t/S plus a solve function."""

    __slots__ = ("graph", "lists", "cliques", "threshold", "spec", "_solve")

    def __init__(self, graph, lists, cliques, threshold, spec, solve):
        self.graph = graph
        self.lists = dict(lists)
        self.cliques = tuple(frozenset(c) for c in cliques)
        self.threshold = int(threshold)
        self.spec = spec
        self._solve = solve

    def extend(self, req: ExtendRequest) -> Tuple[Coloring, WitnessMap]:
        self.validate_request(req)
        return self._solve(req)

    def validate_request(self, req: ExtendRequest) -> None:
        g = self.graph
        w = req.clique
        if len(w) > self.threshold:
            raise ValueError(f"|W| = {len(w)} exceeds threshold {self.threshold}")
        if not w.issubset(set(g.vertices())) or not g.is_clique(w):
            raise NotAClique(f"W = {sorted(w)} is not a clique of the graph")
        for e in req.deleted_edges:
            ne = edge(*e)
            if ne not in g.edge_set:
                raise ValueError(f"deleted edge {e} is not an edge")
            if not any(ne[0] in c and ne[1] in c for c in self.cliques):
                raise ValueError(f"deleted edge {e} lies in no governing clique")
        for m, label in ((req.boundary, "boundary"), (req.forbidden, "forbidden"), (req.mode, "mode")):
            if set(m) != set(w):
                raise ValueError(f"{label} domain must be exactly W")
        for v in w:
            if req.boundary[v] not in self.lists[v]:
                raise ValueError(f"boundary color of {v} outside its list")
            if req.mode[v] not in (0, 1):
                raise ValueError("modes must be 0 or 1")
        ws = sorted(w)
        for i, a in enumerate(ws):
            for b in ws[i + 1:]:
                if req.boundary[a] == req.boundary[b]:
                    raise ValueError("boundary coloring is not proper on W")


def check_extension(
    g: Graph,
    lists: ListAssignment,
    spec: AchievementSpec,
    req: ExtendRequest,
    phi: Coloring,
    witness: Optional[WitnessMap] = None,
) -> Optional[str]:
    """Independent re-verification of both extendability conditions.

    Returns None when the coloring satisfies the request, otherwise a short
    reason.  When a witness map is supplied it must cover exactly the
    vertices the multiplicity condition applies to (with nonempty relevant
    neighborhood) and every entry must recount into S.
    """
    if set(phi) != set(g.vertices()):
        return "coloring is not total"
    if not respects_lists(phi, lists):
        return "coloring leaves the lists"
    ok, bad = verify_proper(g, phi)
    if not ok:
        return f"monochromatic edge {bad}"
    for v in req.clique:
        if phi[v] != req.boundary[v]:
            return f"boundary not extended at {v}"
        if req.mode[v] == 0 and req.forbidden[v] is not None:
            for u in g.neighbors(v):
                if u not in req.clique and phi[u] == req.forbidden[v]:
                    return f"forbidden color of {v} appears on neighbor {u}"
    dropped = frozenset(edge(*e) for e in req.deleted_edges)
    required = set()
    for v in bullet_two_vertices(g, req):
        nbrs = [u for u in g.neighbors(v) if edge(u, v) not in dropped]
        if not nbrs:
            continue
        required.add(v)
        if find_witness(g, phi, spec, v, deleted_edges=dropped) is None:
            return f"no achieving color in the pruned neighborhood of {v}"
    if witness is not None:
        if set(witness) != required:
            return "witness map domain mismatch"
        for v, c in witness.items():
            nbrs = [u for u in g.neighbors(v) if edge(u, v) not in dropped]
            mult = sum(1 for u in nbrs if phi[u] == c)
            if not spec.allows(mult):
                return f"stored witness of {v} has multiplicity {mult}"
    return None


# ---------------------------------------------------------------------------
# clique-sums


@dataclass(frozen=True)
class CliqueSumSpec:
    left: Graph
    right: Graph
    q1: FrozenSet[int]
    q2: FrozenSet[int]
    iota: Mapping[int, int]                  # bijection q1 -> q2
    dropped: FrozenSet[FrozenSet[int]] = frozenset()  # pairs within q1

    def __post_init__(self):
        if len(self.q1) != len(self.q2):
            raise NotAClique("identified cliques must have equal size")
        if not self.left.is_clique(self.q1):
            raise NotAClique("q1 is not a clique of the left graph")
        if not self.right.is_clique(self.q2):
            raise NotAClique("q2 is not a clique of the right graph")
        if set(self.iota) != set(self.q1) or set(self.iota.values()) != set(self.q2):
            raise ValueError("iota must be a bijection q1 -> q2")
        for pair in self.dropped:
            if len(pair) != 2 or not pair.issubset(self.q1):
                raise ValueError("dropped edges must be pairs inside the identified clique")


def clique_sum(
    spec: CliqueSumSpec,
    lists1: Optional[ListAssignment] = None,
    lists2: Optional[ListAssignment] = None,
):
    """Glue the two graphs along the identified clique, then delete the
    requested clique edges.

    Left vertices keep their ids; fresh right vertices follow in id order.
    Returns (graph, emb1, emb2, merged_lists) where emb_i embeds side i and
    merged_lists is None unless both list assignments were supplied (they
    must agree across iota).
    """
    n1 = spec.left.n
    emb1 = {v: v for v in spec.left.vertices()}
    emb2 = {}
    for x, y in spec.iota.items():
        emb2[y] = x
    nxt = n1
    for v in spec.right.vertices():
        if v not in emb2:
            emb2[v] = nxt
            nxt += 1
    es = set(spec.left.edge_set)
    for u, v in spec.right.edges:
        es.add(edge(emb2[u], emb2[v]))
    for pair in spec.dropped:
        a, b = sorted(pair)
        es.discard(edge(emb1[a], emb1[b]))
    g = Graph(nxt, es)
    merged = None
    if lists1 is not None and lists2 is not None:
        for x, y in spec.iota.items():
            if lists1[x] != lists2[y]:
                raise ListMismatch(f"lists differ on identified vertex {x}/{y}")
        merged = {emb1[v]: lists1[v] for v in spec.left.vertices()}
        for v in spec.right.vertices():
            merged.setdefault(emb2[v], lists2[v])
    return g, emb1, emb2, merged


def _revalidate_witness(g, phi, spec, dropped, v, color):
    nbrs = [u for u in g.neighbors(v) if edge(u, v) not in dropped]
    mult = sum(1 for u in nbrs if phi[u] == color)
    if not spec.allows(mult):
        raise AssertionError(f"side witness of {v} failed revalidation")


def combine_extendable(
    left: ExtendableColorer,
    right: ExtendableColorer,
    spec: CliqueSumSpec,
):
    """Extendable colorer for the clique-sum of two extendable sides.

    Requires the glued cliques to belong to the sides' governing collections
    and the thresholds to be at least the clique size.  Returns
    (colorer, emb1, emb2).
    """
    if left.spec is not right.spec and left.spec != right.spec:
        raise ValueError("sides must share the multiplicity spec")
    t = len(spec.q1)
    if left.threshold < t or right.threshold < t:
        raise ValueError("side thresholds must be at least the glued clique size")
    if spec.q1 not in left.cliques:
        raise ValueError("q1 must belong to the left governing collection")
    if spec.q2 not in right.cliques:
        raise ValueError("q2 must belong to the right governing collection")
    g, emb1, emb2, merged = clique_sum(spec, left.lists, right.lists)
    if merged is None:
        raise ListMismatch("both sides must carry lists")
    cliques = {frozenset(emb1[v] for v in c) for c in left.cliques}
    cliques |= {frozenset(emb2[v] for v in c) for c in right.cliques}
    threshold = min(left.threshold, right.threshold)
    s_spec = left.spec
    q_sum = frozenset(emb1[x] for x in spec.q1)
    image1 = frozenset(emb1.values())
    image2 = frozenset(emb2.values())
    inv1 = {w: v for v, w in emb1.items()}
    inv2 = {w: v for v, w in emb2.items()}
    # pairs of the identified clique that are absent from the sum (dropped)
    missing_q_pairs = [
        (a, b)
        for a, b in combinations(sorted(q_sum), 2)
        if not g.has_edge(a, b)
    ]

    def side_request_edges(req_deleted, image, inv):
        es = {
            edge(inv[a], inv[b])
            for a, b in req_deleted
            if a in image and b in image
        }
        es |= {edge(inv[a], inv[b]) for a, b in missing_q_pairs}
        return frozenset(es)

    def solve(req: ExtendRequest):
        if req.clique <= image1:
            primary, p_emb, p_inv = left, emb1, inv1
            secondary, s_emb, s_inv = right, emb2, inv2
            p_name, s_name = "left", "right"
        elif req.clique <= image2:
            primary, p_emb, p_inv = right, emb2, inv2
            secondary, s_emb, s_inv = left, emb1, inv1
            p_name, s_name = "right", "left"
        else:  # a clique of the sum always sits inside one side
            raise AssertionError("request clique straddles the sum")

        h_p = side_request_edges(req.deleted_edges, frozenset(p_inv), p_inv)
        req_p = ExtendRequest(
            clique=frozenset(p_inv[v] for v in req.clique),
            deleted_edges=h_p,
            boundary={p_inv[v]: req.boundary[v] for v in req.clique},
            forbidden={p_inv[v]: req.forbidden[v] for v in req.clique},
            mode={p_inv[v]: req.mode[v] for v in req.clique},
        )
        try:
            phi_p, wit_p = primary.extend(req_p)
        except Exception as exc:  # noqa: BLE001 - provenance matters here
            raise SideFailure(p_name, exc) from exc

        p_pruned_deg = {}
        for x in q_sum:
            xp = p_inv[x]
            p_pruned_deg[x] = sum(
                1 for u in primary.graph.neighbors(xp) if edge(u, xp) not in h_p
            )

        # forbidden/mode handoff on the glued clique, one case per vertex:
        # re-used (still under the caller's regime), frozen witness, or free.
        boundary_s, f_s, g_s = {}, {}, {}
        for x in sorted(q_sum):
            xp, xs = p_inv[x], s_inv[x]
            boundary_s[xs] = phi_p[xp]
            in_w = x in req.clique
            busy = p_pruned_deg[x] > 0
            if in_w and (not busy or req.mode[x] == 0):
                g_s[xs] = req.mode[x]
                f_s[xs] = req.forbidden[x]
            elif in_w:  # busy and mode 1
                _revalidate_witness(primary.graph, phi_p, s_spec, h_p, xp, wit_p[xp])
                g_s[xs] = 0
                f_s[xs] = wit_p[xp]
            elif not busy:
                g_s[xs] = 1
                f_s[xs] = None  # sentinel: nothing to protect yet
            else:
                _revalidate_witness(primary.graph, phi_p, s_spec, h_p, xp, wit_p[xp])
                g_s[xs] = 0
                f_s[xs] = wit_p[xp]

        h_s = side_request_edges(req.deleted_edges, frozenset(s_inv), s_inv)
        req_s = ExtendRequest(
            clique=frozenset(s_inv[x] for x in q_sum),
            deleted_edges=h_s,
            boundary=boundary_s,
            forbidden=f_s,
            mode=g_s,
        )
        try:
            phi_s, wit_s = secondary.extend(req_s)
        except Exception as exc:  # noqa: BLE001
            raise SideFailure(s_name, exc) from exc

        phi: Coloring = {}
        for w, v in p_inv.items():
            phi[w] = phi_p[v]
        for w, v in s_inv.items():
            if w in phi and phi[w] != phi_s[v]:
                raise AssertionError("sides disagree on the glued clique")
            phi[w] = phi_s[v]

        dropped = frozenset(edge(*e) for e in req.deleted_edges)
        witness: WitnessMap = {}
        for v in bullet_two_vertices(g, req):
            if not any(edge(u, v) not in dropped for u in g.neighbors(v)):
                continue
            if v in q_sum:
                witness[v] = wit_p[p_inv[v]] if p_pruned_deg[v] > 0 else wit_s[s_inv[v]]
            elif v in frozenset(p_inv):
                witness[v] = wit_p[p_inv[v]]
            else:
                witness[v] = wit_s[s_inv[v]]
        return phi, witness

    colorer = ExtendableColorer(g, merged, sorted(cliques, key=sorted), threshold, s_spec, solve)
    return colorer, emb1, emb2


def fold_tree_decomposition(
    g: Graph,
    td: TreeDecomposition,
    torso_colorers: Mapping[int, ExtendableColorer],
    lists: ListAssignment,
    spec: AchievementSpec,
) -> ExtendableColorer:
    """Fold extendable torso colorers over a tree-decomposition.

    Combines torsos in breadth-first order from the root, each glued onto the
    accumulated graph along its adhesion set, and finally hides the torso
    fill-in edges by routing them through the deleted-subgraph mechanism:
    the result is an extendable colorer for g itself with an empty governing
    collection (only edgeless deletions are accepted at threshold = adhesion).
    """
    report = validate_tree_decomposition(g, td)
    if not report.ok:
        raise InvalidDecomposition(report.violations)
    xi = td.adhesion
    order = bfs_tree_order(td.tree, td.root)
    parents: Dict[int, int] = {}
    for x in order:
        for y in sorted(td.tree.neighbors(x)):
            if y not in parents and y != order[0]:
                parents[y] = x

    torsos = {x: torso_and_frame(g, td, x) for x in order}
    for x in order:
        torso, remap, frame = torsos[x]
        colorer = torso_colorers[x]
        if colorer.graph != torso:
            raise InvalidDecomposition(f"colorer at node {x} is not over the torso")
        if colorer.threshold < xi:
            raise InvalidDecomposition(f"colorer at node {x} has threshold below the adhesion")
        for member in frame:
            if frozenset(remap[v] for v in member) not in colorer.cliques:
                raise InvalidDecomposition(f"colorer at node {x} does not govern its frame")
        for v in td.bags[x]:
            if colorer.lists[remap[v]] != lists[v]:
                raise ListMismatch(f"torso lists at node {x} disagree with the global lists")

    first = order[0]
    acc = torso_colorers[first]
    acc_map: Dict[int, int] = {v: torsos[first][1][v] for v in td.bags[first]}
    for x in order[1:]:
        torso, remap, _frame = torsos[x]
        shared = sorted(td.bags[x] & td.bags[parents[x]])
        q1 = frozenset(acc_map[v] for v in shared)
        q2 = frozenset(remap[v] for v in shared)
        iota = {acc_map[v]: remap[v] for v in shared}
        sum_spec = CliqueSumSpec(acc.graph, torso, q1, q2, iota)
        acc, emb1, emb2 = combine_extendable(acc, torso_colorers[x], sum_spec)
        acc_map = {v: emb1[i] for v, i in acc_map.items()}
        for v in td.bags[x]:
            acc_map.setdefault(v, emb2[remap[v]])

    if set(acc_map) != set(g.vertices()):
        raise InvalidDecomposition("bags do not cover the graph")
    inv = {w: v for v, w in acc_map.items()}
    fill = frozenset(
        e for e in acc.graph.edge_set if edge(inv[e[0]], inv[e[1]]) not in g.edge_set
    )
    acc_edges_in_g = {edge(inv[a], inv[b]) for a, b in acc.graph.edge_set} - {
        edge(inv[a], inv[b]) for a, b in fill
    }
    if acc_edges_in_g != set(g.edge_set):
        raise InvalidDecomposition("folded graph does not match the input graph")

    def solve(req: ExtendRequest):
        inner = ExtendRequest(
            clique=frozenset(acc_map[v] for v in req.clique),
            deleted_edges=fill,
            boundary={acc_map[v]: req.boundary[v] for v in req.clique},
            forbidden={acc_map[v]: req.forbidden[v] for v in req.clique},
            mode={acc_map[v]: req.mode[v] for v in req.clique},
        )
        phi_acc, wit_acc = acc.extend(inner)
        phi = {v: phi_acc[w] for v, w in acc_map.items()}
        witness = {}
        for v in bullet_two_vertices(g, req):
            if g.neighbors(v):
                witness[v] = wit_acc[acc_map[v]]
        return phi, witness

    return ExtendableColorer(g, lists, (), xi, spec, solve)


def adapt_colorability(
    g: Graph,
    cliques,
    lists: ListAssignment,
    xi: int,
    inner: Callable[[Graph, FrozenSet[Edge], ListAssignment], Coloring],
    spec: AchievementSpec,
) -> ExtendableColorer:
    """Turn plain colorability into extendability.

    ``inner(graph, deleted_edges, lists)`` must return a coloring from the
    given lists that is proper on the full graph and S-achieved on the graph
    minus the deleted edges.  (Properness merely off the deleted edges would
    not do: a composed colorer hands this one's clique colors to its partner
    as a boundary, which must be rainbow even across deleted clique pairs.)
    The adapter strips the boundary and forbidden colors from every list
    before delegating; the disjoint palettes make the overlay proper and
    every boundary neighbor uniquely witnessed.
    """
    if not spec.contains_one:
        raise ValueError("the multiplicity spec must contain 1")
    cliques = tuple(frozenset(c) for c in cliques)

    def solve(req: ExtendRequest):
        z = set(req.boundary.values())
        z |= {c for c in req.forbidden.values() if c is not None}
        dropped_req = frozenset(edge(*e) for e in req.deleted_edges)
        stripped = {v: lists[v] - z for v in lists}
        phi_inner = inner(g, dropped_req, stripped)
        fail = None
        if set(phi_inner) != set(g.vertices()):
            fail = "inner coloring is not total"
        elif not respects_lists(phi_inner, stripped):
            fail = "inner coloring leaves the stripped lists"
        else:
            ok, bad = verify_proper(g, phi_inner)
            if not ok:
                fail = f"inner coloring has monochromatic edge {bad}"
            else:
                rep = verify_s_achieved(g, phi_inner, spec, deleted_edges=dropped_req)
                if not rep.ok:
                    fail = f"inner coloring not achieved at {rep.violator}"
        if fail:
            raise InnerFailure(fail)

        phi = dict(phi_inner)
        phi.update(req.boundary)
        dropped = dropped_req
        witness: WitnessMap = {}
        for v in bullet_two_vertices(g, req):
            nbrs = sorted(u for u in g.neighbors(v) if edge(u, v) not in dropped)
            if not nbrs:
                continue
            in_w = [u for u in nbrs if u in req.clique]
            if in_w:
                c = phi[in_w[0]]
            else:
                c = find_witness(g, phi, spec, v, deleted_edges=dropped)
            if c is None:
                raise AssertionError(f"adapter lost the witness of {v}")
            witness[v] = c
        reason = check_extension(g, lists, spec, req, phi, witness)
        if reason:
            raise AssertionError(f"adapter produced an invalid extension: {reason}")
        return phi, witness

    return ExtendableColorer(g, lists, cliques, xi, spec, solve)


# ---------------------------------------------------------------------------
# auditing


@dataclass(frozen=True)
class AuditReport:
    ok: bool
    requests_checked: int
    counterexample: Optional[ExtendRequest] = None
    reason: str = ""


def _cliques_up_to(g: Graph, size: int):
    out = [frozenset()]
    for s in range(1, size + 1):
        for combo in combinations(g.vertices(), s):
            if g.is_clique(combo):
                out.append(frozenset(combo))
    return out


def _relevant_f_pool(g: Graph, lists: ListAssignment, w, clique):
    pool = set()
    for u in g.neighbors(w):
        if u not in clique:
            pool |= lists[u]
    return sorted(pool) + [None]


def extendability_audit(
    colorer: ExtendableColorer,
    clique_cap: Optional[int] = None,
    max_h_subsets: int = 64,
    sample: Optional[int] = None,
    seed: int = 0,
) -> AuditReport:
    """Check the two extendability conditions over enumerated requests.

    The enumeration is exhaustive over cliques (up to ``clique_cap``),
    compatible deleted subgraphs, boundary colorings, modes, and forbidden
    colors drawn from the semantically complete pool (colors occurring on the
    lists of the clique vertex's outside neighbors, plus one inert sentinel;
    any other value constrains nothing).  When ``sample`` is given, that many
    requests are drawn seeded-randomly from the same space instead.
    """
    g, lists, spec = colorer.graph, colorer.lists, colorer.spec
    cap = colorer.threshold if clique_cap is None else min(clique_cap, colorer.threshold)
    compatible_pool = sorted(
        e for e in g.edge_set if any(e[0] in c and e[1] in c for c in colorer.cliques)
    )
    rng = random.Random(seed)

    def h_choices():
        if len(compatible_pool) <= 12 and 2 ** len(compatible_pool) <= max_h_subsets:
            subsets = []
            for r in range(len(compatible_pool) + 1):
                subsets.extend(frozenset(c) for c in combinations(compatible_pool, r))
            return subsets
        picks = {frozenset(), frozenset(compatible_pool)}
        while len(picks) < max_h_subsets:
            picks.add(frozenset(e for e in compatible_pool if rng.random() < 0.5))
        return sorted(picks, key=sorted)

    def requests_for(w):
        ws = sorted(w)
        pools = [_relevant_f_pool(g, lists, v, w) for v in ws]
        boundaries = []
        for colors in product(*(sorted(lists[v]) for v in ws)):
            if len(set(colors)) == len(colors):
                boundaries.append(dict(zip(ws, colors)))
        for h in h_choices():
            for bnd in boundaries:
                for fs in product(*pools):
                    for modes in product((0, 1), repeat=len(ws)):
                        yield ExtendRequest(
                            clique=w,
                            deleted_edges=h,
                            boundary=bnd,
                            forbidden=dict(zip(ws, fs)),
                            mode=dict(zip(ws, modes)),
                        )

    def all_requests():
        for w in _cliques_up_to(g, cap):
            yield from requests_for(w)

    def sampled_requests(budget):
        cliques = _cliques_up_to(g, cap)
        produced = 0
        while produced < budget:
            w = cliques[rng.randrange(len(cliques))]
            ws = sorted(w)
            h = frozenset(e for e in compatible_pool if rng.random() < 0.5)
            colors = []
            ok = True
            for v in ws:
                avail = sorted(lists[v] - set(colors))
                if not avail:
                    ok = False
                    break
                colors.append(avail[rng.randrange(len(avail))])
            if not ok:
                continue
            fs = [
                (pool[rng.randrange(len(pool))])
                for pool in (_relevant_f_pool(g, lists, v, w) for v in ws)
            ]
            modes = [rng.randrange(2) for _ in ws]
            produced += 1
            yield ExtendRequest(
                clique=w,
                deleted_edges=h,
                boundary=dict(zip(ws, colors)),
                forbidden=dict(zip(ws, fs)),
                mode=dict(zip(ws, modes)),
            )

    stream = all_requests() if sample is None else sampled_requests(sample)

    checked = 0
    for req in stream:
        checked += 1
        try:
            phi, witness = colorer.extend(req)
        except Exception as exc:  # noqa: BLE001 - any failure is a counterexample
            return AuditReport(False, checked, req, f"extend raised {exc!r}")
        reason = check_extension(g, lists, spec, req, phi, witness)
        if reason:
            return AuditReport(False, checked, req, reason)
    return AuditReport(True, checked)
