"""Exact search at desk scale: chromatic parameters, list-coloring decisions,
choosability refutation, and brute-force extendable colorers.

The chromatic searches enumerate canonical colorings (color classes indexed
in first-use order) with two safe prunings only: properness along the way
(for the kinds that demand it) and a doomed-vertex test, which abandons a
branch as soon as some vertex's relevant neighborhood is fully colored with
no multiplicity in S.  Multiplicity feasibility is not monotone, so nothing
stronger is attempted.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, Iterable, Optional, Tuple

from .coloring import (
    CONFLICT_FREE,
    ODD,
    AchievementSpec,
    Coloring,
    ListAssignment,
    find_witness,
    verify_proper,
    verify_s_achieved,
)
from .cliquesum import ExtendableColorer, ExtendRequest, bullet_two_vertices
from .errors import ExtensionImpossible, InstanceTooLarge
from .graph import Graph, edge

DEFAULT_CHROMATIC_CAP = 12
DEFAULT_EXTEND_CAP = 7

# kind -> (require_proper, spec, closed_neighborhoods)
_KINDS = {
    "proper": (True, None, False),
    "pcf": (True, CONFLICT_FREE, False),
    "pcfc": (True, CONFLICT_FREE, True),
    "icf": (False, CONFLICT_FREE, False),
    "icfc": (False, CONFLICT_FREE, True),
    "odd": (True, ODD, False),
}


def kind_params(kind: str, spec: Optional[AchievementSpec] = None):
    if kind == "s_achieved":
        if spec is None:
            raise ValueError("kind 's_achieved' needs an explicit spec")
        return True, spec, False
    try:
        params = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}") from None
    return params


def verify_kind(g: Graph, phi: Coloring, kind: str, spec=None) -> Tuple[bool, str]:
    """Dispatch to the verifiers for one of the named coloring kinds."""
    require_proper, s_spec, closed = kind_params(kind, spec)
    if require_proper:
        ok, bad = verify_proper(g, phi)
        if not ok:
            return False, f"monochromatic edge {bad}"
    if s_spec is not None:
        rep = verify_s_achieved(g, phi, s_spec, closed=closed)
        if not rep.ok:
            return False, f"vertex {rep.violator} has no achieving color"
    return True, "ok"


@dataclass(frozen=True)
class ExactResult:
    kind: str
    value: int
    coloring: Coloring
    nodes: int
    seconds: float


class _Aborted(Exception):
    pass


def _build_arrays(g: Graph, closed: bool):
    adj = [tuple(sorted(g.neighbors(v))) for v in g.vertices()]
    pred = [tuple(u for u in adj[v] if u < v) for v in g.vertices()]
    rel = [adj[v] + ((v,) if closed else ()) for v in g.vertices()]
    complete_at = [[] for _ in range(g.n)]
    for v in g.vertices():
        if closed:
            complete_at[max(rel[v])].append(v)
        elif adj[v]:
            complete_at[max(adj[v])].append(v)
    return adj, pred, rel, complete_at


def _canonical_decision(g, k, require_proper, spec, closed, pin=None, abort=None):
    """First canonical valid k-coloring in DFS order, or None.

    ``pin`` optionally forces colors at given positions (used to split the
    search for parallel runs); ``abort`` is polled periodically.
    """
    n = g.n
    if n == 0:
        return {}, 0
    _adj, pred, rel, complete_at = _build_arrays(g, closed)
    allows = spec.allows if spec is not None else None
    colors = [0] * n
    pin = pin or {}
    state = {"nodes": 0, "found": None}

    def dfs(i, used):
        if i == n:
            state["found"] = colors.copy()
            return True
        if abort is not None and state["nodes"] & 1023 == 0 and abort():
            raise _Aborted
        if i in pin:
            choices = (pin[i],)
        else:
            choices = range(1, min(k, used + 1) + 1)
        for c in choices:
            if require_proper and any(colors[p] == c for p in pred[i]):
                continue
            colors[i] = c
            state["nodes"] += 1
            doomed = False
            if allows is not None:
                for u in complete_at[i]:
                    counts: Dict[int, int] = {}
                    for x in rel[u]:
                        cx = colors[x]
                        counts[cx] = counts.get(cx, 0) + 1
                    if not any(allows(m) for m in counts.values()):
                        doomed = True
                        break
            if not doomed and dfs(i + 1, max(used, c)):
                return True
        colors[i] = 0
        return False

    dfs(0, 0)
    found = state["found"]
    return (dict(enumerate(found)) if found is not None else None), state["nodes"]


def _decide_k(g, k, require_proper, spec, closed, jobs):
    if jobs <= 1 or g.n < 2 or k < 2:
        return _canonical_decision(g, k, require_proper, spec, closed)
    # split on the canonical color choices of the second vertex; results are
    # merged in branch order, so the answer matches the sequential run (node
    # counts may differ once a later branch is aborted early)
    branches = [1, 2]
    state = {"winner": None}

    def run(idx, b):
        def abort():
            w = state["winner"]
            return w is not None and w < idx

        try:
            found, nodes = _canonical_decision(
                g, k, require_proper, spec, closed, pin={1: b}, abort=abort
            )
        except _Aborted:
            return None, 0
        if found is not None and (state["winner"] is None or idx < state["winner"]):
            state["winner"] = idx
        return found, nodes

    with ThreadPoolExecutor(max_workers=min(jobs, len(branches))) as pool:
        futures = [pool.submit(run, i, b) for i, b in enumerate(branches)]
        results = [f.result() for f in futures]
    nodes = sum(r[1] for r in results)
    for found, _ in results:
        if found is not None:
            return found, nodes
    return None, nodes


def exact_chromatic(
    g: Graph,
    kind: str,
    spec: Optional[AchievementSpec] = None,
    cap: int = DEFAULT_CHROMATIC_CAP,
    jobs: int = 1,
) -> ExactResult:
    """Smallest k admitting a valid k-coloring of the requested kind, with a
    witness; k-1 is infeasible by exhausted search."""
    if g.n > cap:
        raise InstanceTooLarge(f"{g.n} vertices exceeds the cap {cap}")
    require_proper, s_spec, closed = kind_params(kind, spec)
    start = time.perf_counter()
    if g.n == 0:
        return ExactResult(kind, 0, {}, 0, time.perf_counter() - start)
    total_nodes = 0
    for k in range(1, g.n + 1):
        found, nodes = _decide_k(g, k, require_proper, s_spec, closed, jobs)
        total_nodes += nodes
        if found is not None:
            ok, msg = verify_kind(g, found, kind, spec)
            if not ok:
                raise AssertionError(f"search returned an invalid witness: {msg}")
            return ExactResult(kind, k, found, total_nodes, time.perf_counter() - start)
    raise AssertionError("rainbow coloring should always succeed")  # pragma: no cover


def count_canonical_colorings(g: Graph, k: int, kind: str, spec=None, cap: int = 10) -> int:
    """Number of valid canonical k-colorings, by unpruned enumeration plus a
    leaf verifier (cross-check oracle for the pruned search)."""
    if g.n > cap:
        raise InstanceTooLarge(f"{g.n} vertices exceeds the cap {cap}")
    n = g.n
    if n == 0:
        return 1
    count = 0
    colors = [0] * n

    def dfs(i, used):
        nonlocal count
        if i == n:
            ok, _ = verify_kind(g, dict(enumerate(colors)), kind, spec)
            count += ok
            return
        for c in range(1, min(k, used + 1) + 1):
            colors[i] = c
            dfs(i + 1, max(used, c))

    dfs(0, 0)
    return count


@dataclass(frozen=True)
class RelationsReport:
    chi: int
    pcf: int
    pcfc: int
    icf: int
    icfc: int

    @property
    def chain_holds(self) -> bool:
        return (
            self.icf <= self.pcf >= self.chi
            and self.pcfc == self.chi
            and self.icfc <= 2 * self.icf
        )


def exact_relations_check(g: Graph, cap: int = DEFAULT_CHROMATIC_CAP) -> RelationsReport:
    """All five parameters on one small graph."""
    vals = {kind: exact_chromatic(g, kind, cap=cap).value
            for kind in ("proper", "pcf", "pcfc", "icf", "icfc")}
    return RelationsReport(vals["proper"], vals["pcf"], vals["pcfc"], vals["icf"], vals["icfc"])


# ---------------------------------------------------------------------------
# list-coloring decisions


def list_coloring_decision(
    g: Graph,
    lists: ListAssignment,
    spec: Optional[AchievementSpec] = None,
    require_proper: bool = True,
    closed: bool = False,
    fixed: Optional[Coloring] = None,
    forbidden: Optional[Dict[int, frozenset]] = None,
    achieve_exempt: Iterable[int] = (),
    deleted_edges=None,
) -> Tuple[Optional[Coloring], int]:
    """Backtracking decision for a proper(/improper) S-achieved list coloring.

    ``fixed`` pins colors, ``forbidden`` blocks per-vertex colors, vertices in
    ``achieve_exempt`` skip the multiplicity requirement, and ``deleted_edges``
    are ignored when forming the multiplicity neighborhoods (properness is
    still checked on the full graph).
    """
    n = g.n
    fixed = dict(fixed or {})
    forbidden = forbidden or {}
    exempt = set(achieve_exempt)
    dropped = frozenset(edge(*e) for e in deleted_edges) if deleted_edges else frozenset()
    colors: list = [None] * n
    for v, c in fixed.items():
        colors[v] = c
    adj = [tuple(sorted(g.neighbors(v))) for v in g.vertices()]
    rel = []
    for v in g.vertices():
        r = [u for u in adj[v] if edge(u, v) not in dropped]
        if closed:
            r.append(v)
        rel.append(tuple(r))
    allows = spec.allows if spec is not None else None

    if require_proper:
        for u, v in g.edges:
            if colors[u] is not None and colors[u] == colors[v]:
                return None, 0

    free = [v for v in g.vertices() if v not in fixed]
    free_pos = {v: i for i, v in enumerate(free)}
    complete_at = [[] for _ in range(len(free))]
    if allows is not None:
        for u in g.vertices():
            if u in exempt or not rel[u]:
                continue
            free_rel = [x for x in rel[u] if x in free_pos]
            if not free_rel:
                counts: Dict[int, int] = {}
                for x in rel[u]:
                    counts[colors[x]] = counts.get(colors[x], 0) + 1
                if not any(allows(m) for m in counts.values()):
                    return None, 0
            else:
                complete_at[max(free_pos[x] for x in free_rel)].append(u)

    nodes = 0
    choices = [sorted(lists[v] - frozenset(forbidden.get(v, ()))) for v in free]

    def dfs(i):
        nonlocal nodes
        if i == len(free):
            return True
        v = free[i]
        for c in choices[i]:
            if require_proper and any(colors[u] == c for u in adj[v]):
                continue
            colors[v] = c
            nodes += 1
            doomed = False
            if allows is not None:
                for u in complete_at[i]:
                    counts: Dict[int, int] = {}
                    for x in rel[u]:
                        cx = colors[x]
                        counts[cx] = counts.get(cx, 0) + 1
                    if not any(allows(m) for m in counts.values()):
                        doomed = True
                        break
            if not doomed and dfs(i + 1):
                return True
        colors[v] = None
        return False

    if dfs(0):
        return dict(enumerate(colors)), nodes
    return None, nodes


def refute_choosability(
    g: Graph,
    k: int,
    universe_size: Optional[int] = None,
    kind: str = "pcf",
    spec: Optional[AchievementSpec] = None,
    cap: int = 8,
) -> Optional[ListAssignment]:
    """Search for a k-list-assignment (colors drawn from a bounded universe,
    default 2k) admitting no valid coloring of the given kind.

    Sound for refutation only: a returned assignment is a certified
    counterexample, while None means the bounded enumeration found nothing
    and is inconclusive (no finite universe is known to be complete).
    """
    if g.n > cap:
        raise InstanceTooLarge(f"{g.n} vertices exceeds the cap {cap}")
    universe = 2 * k if universe_size is None else universe_size
    require_proper, s_spec, closed = kind_params(kind, spec)
    per_vertex = list(combinations(range(universe), k))
    for combo in product(per_vertex, repeat=g.n):
        lists = {v: frozenset(combo[v]) for v in g.vertices()}
        found, _ = list_coloring_decision(
            g, lists, spec=s_spec, require_proper=require_proper, closed=closed
        )
        if found is None:
            return lists
    return None


# ---------------------------------------------------------------------------
# brute-force extendable colorers


class _EnumeratedExtender:
    """All proper list colorings of a small graph, pre-indexed so that each
    extension request reduces to scanning the colorings that already agree
    with the boundary (the deleted subgraph only reshapes the multiplicity
    neighborhoods, never properness)."""

    def __init__(self, g: Graph, lists: ListAssignment, spec: AchievementSpec):
        self.g = g
        self.lists = lists
        self.spec = spec
        self.adj = [tuple(sorted(g.neighbors(v))) for v in g.vertices()]
        self.colorings = self._enumerate()
        self._per_h: Dict[frozenset, tuple] = {}
        self._boundary_index: Dict[frozenset, Dict[tuple, list]] = {}

    def _enumerate(self):
        n = self.g.n
        out = []
        colors = [None] * n
        choice = [sorted(self.lists[v]) for v in range(n)]

        def dfs(i):
            if i == n:
                out.append(tuple(colors))
                return
            for c in choice[i]:
                if any(colors[u] == c for u in self.adj[i] if u < i):
                    continue
                colors[i] = c
                dfs(i + 1)
            colors[i] = None

        dfs(0)
        return out

    def _h_tables(self, dropped: frozenset):
        cached = self._per_h.get(dropped)
        if cached is not None:
            return cached
        n = self.g.n
        rel = [
            tuple(u for u in self.adj[v] if edge(u, v) not in dropped)
            for v in range(n)
        ]
        allows = self.spec.allows
        missing = []
        witcolors = []
        for colors in self.colorings:
            miss = set()
            wit = {}
            for v in range(n):
                if not rel[v]:
                    continue
                counts: Dict[int, int] = {}
                for u in rel[v]:
                    cu = colors[u]
                    counts[cu] = counts.get(cu, 0) + 1
                hits = sorted(c for c, m in counts.items() if allows(m))
                if hits:
                    wit[v] = hits[0]
                else:
                    miss.add(v)
            missing.append(frozenset(miss))
            witcolors.append(wit)
        cached = (rel, missing, witcolors)
        self._per_h[dropped] = cached
        return cached

    def _candidates(self, clique: frozenset, key: tuple):
        index = self._boundary_index.get(clique)
        if index is None:
            ws = sorted(clique)
            index = {}
            for i, colors in enumerate(self.colorings):
                index.setdefault(tuple(colors[w] for w in ws), []).append(i)
            self._boundary_index[clique] = index
        return index.get(key, ())

    def solve(self, req: ExtendRequest):
        ws = sorted(req.clique)
        dropped = frozenset(edge(*e) for e in req.deleted_edges)
        rel, missing, witcolors = self._h_tables(dropped)
        key = tuple(req.boundary[w] for w in ws)
        mode0 = [w for w in ws if req.mode[w] == 0 and req.forbidden[w] is not None]
        may_miss = frozenset(w for w in ws if req.mode[w] == 0)
        for idx in self._candidates(req.clique, key):
            if not missing[idx] <= may_miss:
                continue
            colors = self.colorings[idx]
            bad = False
            for w in mode0:
                f = req.forbidden[w]
                if any(colors[u] == f for u in self.adj[w] if u not in req.clique):
                    bad = True
                    break
            if bad:
                continue
            phi = dict(enumerate(colors))
            witness = {
                v: witcolors[idx][v]
                for v in bullet_two_vertices(self.g, req)
                if rel[v]
            }
            return phi, witness
        raise ExtensionImpossible(req)


def brute_extendable(
    g: Graph,
    cliques,
    lists: ListAssignment,
    threshold: int,
    spec: AchievementSpec = CONFLICT_FREE,
    cap: int = DEFAULT_EXTEND_CAP,
    enumeration_limit: int = 200_000,
) -> ExtendableColorer:
    """Ground-truth extendable colorer by exhaustive search.

    Every request is answered by the lexicographically first proper list
    coloring meeting both conditions, or ExtensionImpossible with the request
    as certificate.  Small instances pre-enumerate all proper colorings once;
    larger ones fall back to a per-request backtracking search.
    """
    if g.n > cap:
        raise InstanceTooLarge(f"{g.n} vertices exceeds the cap {cap}")
    space = 1
    for v in g.vertices():
        space *= max(len(lists[v]), 1)

    if space <= enumeration_limit:
        engine = _EnumeratedExtender(g, lists, spec)
        solve = engine.solve
    else:
        def solve(req: ExtendRequest):
            per_vertex_forbidden = {}
            for u in g.vertices():
                if u in req.clique:
                    continue
                hot = {
                    req.forbidden[w]
                    for w in g.neighbors(u)
                    if w in req.clique and req.mode[w] == 0 and req.forbidden[w] is not None
                }
                if hot:
                    per_vertex_forbidden[u] = frozenset(hot)
            exempt = {w for w in req.clique if req.mode[w] == 0}
            found, _ = list_coloring_decision(
                g,
                lists,
                spec=spec,
                fixed=dict(req.boundary),
                forbidden=per_vertex_forbidden,
                achieve_exempt=exempt,
                deleted_edges=req.deleted_edges,
            )
            if found is None:
                raise ExtensionImpossible(req)
            dropped = frozenset(edge(*e) for e in req.deleted_edges)
            witness = {}
            for v in bullet_two_vertices(g, req):
                if any(edge(u, v) not in dropped for u in g.neighbors(v)):
                    witness[v] = find_witness(g, found, spec, v, deleted_edges=dropped)
            return found, witness

    return ExtendableColorer(g, lists, cliques, threshold, spec, solve)
