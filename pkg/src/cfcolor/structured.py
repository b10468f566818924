"""Constructive colorers for structured graph classes.

* conflict-free list coloring of degenerate minor-closed inputs by
  low-degree deletion and edge contraction;
* surface parameter profiles from the Euler-formula degeneracy bound;
* reduction that pre-colors a few deletable vertices and their partners
  rainbow, then delegates the rest;
* near-bounded-degree coloring via a greedy proper coloring of the square;
* ordering-plan builders for bounded layered width and for strong products
  of a bounded-treewidth factor with a bounded-degree factor;
* extraction of a high-chromatic certificate from a subdivision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Optional, Tuple

from .coloring import (
    CONFLICT_FREE,
    AchievementSpec,
    Coloring,
    ListAssignment,
    WitnessMap,
    min_list_size,
    respects_lists,
    verify_proper,
    verify_s_achieved,
)
from .decomp import (
    Layering,
    TreeDecomposition,
    bfs_tree_order,
    layered_width,
    validate_tree_decomposition,
)
from .errors import (
    DegeneracyViolated,
    HypothesisViolated,
    InnerFailure,
    InvalidDecomposition,
    ListTooShort,
    TooManyHighDegreeVertices,
)
from .exact import exact_chromatic
from .graph import (
    Graph,
    SubdivisionMap,
    contract_edge,
    edge,
    induced_subgraph,
    remove_vertex,
    square,
    strong_product,
)
from .ordering import OrderingPlan, validate_plan


@dataclass(frozen=True)
class DegeneracyProfile:
    """(q, d): every subgraph on more than q vertices has a vertex of degree
    at most d."""

    q: int
    d: float

    def __post_init__(self):
        if self.q < 1 or self.d < 1:
            raise ValueError("profile needs q >= 1 and d >= 1")

    @property
    def degree_bound(self) -> int:
        return math.floor(self.d)

    @property
    def base_size(self) -> int:
        return min(2 * self.degree_bound + 1, self.q)

    @property
    def required_list_size(self) -> int:
        # the contraction step excludes up to 2*floor(d) colors, so lists of
        # size 2*floor(d)+1 are what the recursion actually consumes
        return 2 * self.degree_bound + 1


@dataclass(frozen=True)
class MinorColorRequest:
    graph: Graph
    lists: ListAssignment
    profile: DegeneracyProfile
    deleted_subgraph_edges: FrozenSet = frozenset()


def color_minor_degenerate(req: MinorColorRequest) -> Tuple[Coloring, WitnessMap]:
    """Proper conflict-free list coloring for graphs from a degenerate
    minor-closed family, also unique-achieving every neighborhood of the
    graph minus the supplied deleted subgraph.

    Recursive scheme: graphs no bigger than min(2*floor(d)+1, q) are rainbow
    colored; otherwise a minimum-degree vertex v (degree must be at most
    floor(d), else DegeneracyViolated carries the offending graph) is either
    deleted (when all its edges are deleted-subgraph edges) or merged into a
    kept neighbor by contraction, with the deleted subgraph rewritten so the
    pruned neighborhoods of the smaller instance match the original ones.
    Unwinding re-colors v avoiding both the colors and the witness colors of
    its neighbors, which preserves every witness.
    """
    g, lists, profile = req.graph, req.lists, req.profile
    h_edges = frozenset(edge(*e) for e in req.deleted_subgraph_edges)
    for e in h_edges:
        if e not in g.edge_set:
            raise ValueError(f"deleted edge {e} is not an edge of the graph")
    if g.n and min_list_size(lists) < profile.required_list_size:
        short = min(lists, key=lambda v: (len(lists[v]), v))
        raise ListTooShort(
            short, f"lists must have size >= {profile.required_list_size}"
        )
    phi = _minor_rec(g, h_edges, lists, profile.degree_bound, profile.base_size)
    ok, bad = verify_proper(g, phi)
    report = verify_s_achieved(g, phi, CONFLICT_FREE, deleted_edges=h_edges)
    if not ok or not report.ok or not respects_lists(phi, lists):
        raise AssertionError("recursion produced an invalid coloring")
    return phi, report.witness


def _rainbow(vertices, lists):
    phi = {}
    used = set()
    for v in sorted(vertices):
        avail = sorted(lists[v] - used)
        if not avail:
            raise ListTooShort(v)
        phi[v] = avail[0]
        used.add(avail[0])
    return phi


def _minor_rec(g: Graph, h_edges, lists, dbound: int, base: int) -> Coloring:
    if g.n <= base:
        return _rainbow(g.vertices(), lists)
    v = min(g.vertices(), key=lambda x: (g.degree(x), x))
    if g.degree(v) > dbound:
        raise DegeneracyViolated(g)

    kept_nbrs = sorted(u for u in g.neighbors(v) if edge(u, v) not in h_edges)
    if not kept_nbrs:
        g1, remap = remove_vertex(g, v)
        h1 = frozenset(
            edge(remap[a], remap[b]) for a, b in h_edges if v not in (a, b)
        )
        lists1 = {remap[x]: lists[x] for x in g.vertices() if x != v}
        phi1 = _minor_rec(g1, h1, lists1, dbound, base)
        phi = {x: phi1[remap[x]] for x in g.vertices() if x != v}
        avail = sorted(lists[v] - {phi[y] for y in g.neighbors(v)})
        if not avail:
            raise ListTooShort(v)
        phi[v] = avail[0]
        return phi

    u = kept_nbrs[0]
    g2, remap, w = contract_edge(g, u, v)
    # the deleted subgraph of the contracted instance, in three parts: edges
    # untouched by the contraction, old deleted edges at u, and brand-new
    # edges that only exist because v's neighbors got attached to u
    class1 = {
        edge(remap[a], remap[b])
        for a, b in h_edges
        if u not in (a, b) and v not in (a, b)
    }
    class2 = {
        edge(w, remap[z])
        for z in g.vertices()
        if z not in (u, v) and edge(u, z) in h_edges
    }
    class3 = {
        edge(w, remap[z])
        for z in g.neighbors(v)
        if z != u and not g.has_edge(u, z)
    }
    assert class2.isdisjoint(class3)
    h2 = frozenset(class1 | class2 | class3)
    lists2 = {remap[x]: lists[x] for x in g.vertices() if x not in (u, v)}
    lists2[w] = lists[u]

    phi2 = _minor_rec(g2, h2, lists2, dbound, base)
    report2 = verify_s_achieved(g2, phi2, CONFLICT_FREE, deleted_edges=h2)
    if not report2.ok:
        raise AssertionError("inductive coloring lost its witnesses")

    phi = {x: phi2[remap[x]] for x in g.vertices() if x not in (u, v)}
    phi[u] = phi2[w]
    blocked = set()
    for y in g.neighbors(v):
        ry = remap[y]
        blocked.add(phi2[ry])
        if ry in report2.witness:
            blocked.add(report2.witness[ry])
    avail = sorted(lists[v] - blocked)
    if not avail:
        raise ListTooShort(v)
    phi[v] = avail[0]
    return phi


# ---------------------------------------------------------------------------
# surfaces


@dataclass(frozen=True)
class SurfaceProfile:
    euler_genus: int
    profile: DegeneracyProfile
    list_size: int
    choosability_bound: float


def surface_profile(euler_genus: int) -> SurfaceProfile:
    """Degeneracy profile and list size for graphs embeddable in a surface.

    Sphere and projective plane (genus 0, 1) are 5-degenerate, so 11 colors
    suffice.  Beyond that, Euler's formula bounds the average degree of an
    n-vertex embeddable graph by 6 - (12 - 6*genus)/n, which makes the class
    (floor(b), (b-1)/2)-degenerate for b = (13 + sqrt(73 + 48*genus))/2; any
    integer list size of at least b works (and exactly b when b is integral).
    """
    if euler_genus < 0:
        raise ValueError("Euler genus must be nonnegative")
    if euler_genus <= 1:
        return SurfaceProfile(euler_genus, DegeneracyProfile(1, 5.0), 11, 11.0)
    disc = 73 + 48 * euler_genus
    root = math.isqrt(disc)
    if root * root == disc and (13 + root) % 2 == 0:
        b = (13 + root) // 2
        return SurfaceProfile(
            euler_genus, DegeneracyProfile(b, (b - 1) / 2), b, float(b)
        )
    bound = (13 + math.sqrt(disc)) / 2
    return SurfaceProfile(
        euler_genus,
        DegeneracyProfile(math.floor(bound), (bound - 1) / 2),
        math.ceil(bound),
        bound,
    )


# ---------------------------------------------------------------------------
# deletion reduction and near-bounded degree


def color_with_deletion(
    g: Graph,
    lists: ListAssignment,
    delete_set,
    inner: Callable[[Graph, ListAssignment], Coloring],
    spec: AchievementSpec = CONFLICT_FREE,
) -> Coloring:
    """Color around a small set Y of problem vertices.

    Pairs every non-isolated y in Y with a neighbor, rainbow-colors the pair
    set X from its own lists, strips those colors from all other lists, and
    delegates the rest to ``inner`` (which must return a proper S-achieved
    coloring of the graph it is given).  Isolated vertices are colored first
    and independently.  The disjoint palettes make the concatenation proper,
    and every vertex is witnessed either by an X-neighbor's globally unique
    color or by its inner witness.
    """
    if not spec.contains_one:
        raise ValueError("the multiplicity spec must contain 1")
    phi: Coloring = {}
    isolated = {v for v in g.vertices() if g.degree(v) == 0}
    for v in sorted(isolated):
        phi[v] = min(lists[v])
    y_set = set(delete_set) - isolated
    if not y_set.issubset(set(g.vertices())):
        raise ValueError("delete set must be a subset of the vertices")
    x_set = set()
    for y in sorted(y_set):
        x_set.add(y)
        x_set.add(min(g.neighbors(y)))
    phi.update(_rainbow(x_set, lists))
    z = frozenset(phi[v] for v in x_set)

    keep = [v for v in g.vertices() if v not in x_set and v not in isolated]
    sub, remap = induced_subgraph(g, keep)
    sub_lists = {remap[v]: lists[v] - z for v in keep}
    phi_inner = inner(sub, sub_lists)

    if set(phi_inner) != set(sub.vertices()) or not respects_lists(phi_inner, sub_lists):
        raise InnerFailure("inner coloring is not a total coloring from the stripped lists")
    ok, bad = verify_proper(sub, phi_inner)
    if not ok:
        raise InnerFailure(f"inner coloring has monochromatic edge {bad}")
    rep = verify_s_achieved(sub, phi_inner, spec)
    if not rep.ok:
        raise InnerFailure(f"inner coloring not achieved at vertex {rep.violator}")

    for v in keep:
        phi[v] = phi_inner[remap[v]]
    ok, _ = verify_proper(g, phi)
    if not ok or not verify_s_achieved(g, phi, spec).ok or not respects_lists(phi, lists):
        raise AssertionError("deletion reduction produced an invalid coloring")
    return phi


def square_greedy(g: Graph, lists: ListAssignment) -> Coloring:
    """Greedy proper list coloring of the square of g (so every neighborhood
    of g ends up rainbow, hence conflict-free)."""
    sq = square(g)
    phi: Coloring = {}
    for v in sq.vertices():
        taken = {phi[u] for u in sq.neighbors(v) if u in phi}
        avail = sorted(lists[v] - taken)
        if not avail:
            raise ListTooShort(v, "square-greedy ran out of colors")
        phi[v] = avail[0]
    return phi


def near_bounded_degree_list_size(d: float) -> int:
    """Sufficient list size: (d-1)^2 + 1 for the square of the low-degree
    part, plus two fresh colors per deleted vertex."""
    return math.ceil((d - 1) ** 2) + 1 + 2 * math.ceil(d)


def color_near_bounded_degree(g: Graph, lists: ListAssignment, d: float) -> Coloring:
    """Conflict-free list coloring of graphs with at most d vertices of
    degree at least d, via the deletion reduction around those hubs with the
    square-greedy as the inner colorer."""
    if d < 1:
        raise ValueError("d must be at least 1")
    hubs = {v for v in g.vertices() if g.degree(v) >= d}
    if len(hubs) > d:
        raise TooManyHighDegreeVertices(
            f"{len(hubs)} vertices of degree >= {d}, allowed at most {d}"
        )
    return color_with_deletion(g, lists, hubs, square_greedy)


# ---------------------------------------------------------------------------
# ordering-plan builders


def _home_nodes(g, td, order_nodes):
    bfs_pos = {x: i for i, x in enumerate(order_nodes)}
    trace = {v: [] for v in g.vertices()}
    for x, bag in enumerate(td.bags):
        for v in bag:
            trace[v].append(x)
    # the trace is a connected subtree, so its BFS-earliest node is the one
    # closest to the root
    return {v: min(trace[v], key=bfs_pos.get) for v in g.vertices()}, bfs_pos


def build_layered_plan(
    g: Graph, td: TreeDecomposition, lay: Layering
) -> Tuple[OrderingPlan, int]:
    """Ordering plan from a tree-decomposition plus layering.

    Vertices are sorted by (BFS position of their closest-to-root bag node,
    layer, id); S_i collects the already-placed vertices of v_i's home bag
    within one layer of v_i.  With layered width w this yields w1 <= 3w and
    w2 <= 5w, so lists of size 8w-1 always suffice.
    """
    w = layered_width(g, td, lay)
    if g.n == 0:
        return OrderingPlan.from_parts((), ()), w
    order_nodes = bfs_tree_order(td.tree, td.root)
    home, bfs_pos = _home_nodes(g, td, order_nodes)
    order = sorted(g.vertices(), key=lambda v: (bfs_pos[home[v]], lay.layers[v], v))
    pos = {v: i for i, v in enumerate(order)}
    sets = []
    for i, v in enumerate(order):
        bag = td.bags[home[v]]
        lv = lay.layers[v]
        sets.append(
            frozenset(
                u for u in bag if abs(lay.layers[u] - lv) <= 1 and pos[u] <= i
            )
        )
    plan = OrderingPlan.from_parts(order, sets)
    validate_plan(g, plan)
    return plan, w


@dataclass(frozen=True)
class ProductPlan:
    graph: Graph
    coordinates: Tuple[Tuple[int, int], ...]
    plan: OrderingPlan
    list_size: int


def build_product_plan(h: Graph, td_h: TreeDecomposition, q: Graph) -> ProductPlan:
    """Ordering plan for the strong product of h (treewidth factor) with q
    (bounded-degree factor).

    Product vertices are sorted by (BFS position of the h-coordinate's home
    bag, q-coordinate id, h-coordinate id); S_i is the already-placed part of
    home-bag x N_q[q_i].  With width w and max degree d this gives
    w1 <= (w+1)(d+1) and w2 <= (w+1)(d^2+1), so (w+1)(d^2+d+2)-1 colors do.
    """
    report = validate_tree_decomposition(h, td_h)
    if not report.ok:
        raise InvalidDecomposition(report.violations)
    prod, coords = strong_product(h, q)
    w = td_h.width
    d = q.max_degree()
    list_size = (w + 1) * (d * d + d + 2) - 1
    if prod.n == 0:
        return ProductPlan(prod, coords, OrderingPlan.from_parts((), ()), list_size)
    order_nodes = bfs_tree_order(td_h.tree, td_h.root)
    home, bfs_pos = _home_nodes(h, td_h, order_nodes)
    order = sorted(
        prod.vertices(),
        key=lambda v: (bfs_pos[home[coords[v][0]]], coords[v][1], coords[v][0]),
    )
    pos = {v: i for i, v in enumerate(order)}
    qn = q.n
    sets = []
    for i, v in enumerate(order):
        hv, qv = coords[v]
        bag = td_h.bags[home[hv]]
        around = sorted(q.neighbors(qv) | {qv})
        members = set()
        for hb in bag:
            for qb in around:
                u = hb * qn + qb
                if pos[u] <= i:
                    members.add(u)
        sets.append(frozenset(members))
    plan = OrderingPlan.from_parts(order, sets)
    validate_plan(prod, plan)
    return ProductPlan(prod, coords, plan, list_size)


# ---------------------------------------------------------------------------
# subdivision certificates


@dataclass(frozen=True)
class SubdivisionWitness:
    kind: str                 # "high_chromatic" | "one_subdivision"
    vertices: frozenset       # vertex set in g inducing the certificate
    chromatic: int            # certified chromatic number (of G' resp. H')
    underlying: Optional[Graph] = None  # H' when kind == "one_subdivision"


def _check_subdivision_map(g: Graph, h: Graph, sub_map: SubdivisionMap):
    vm = sub_map.vertex_map
    if set(vm) != set(h.vertices()) or len(set(vm.values())) != h.n:
        raise ValueError("vertex map must inject the small graph into the big one")
    if set(sub_map.edge_map) != set(h.edges):
        raise ValueError("edge map must cover exactly the edges")
    if sub_map.max_times() > 1:
        raise ValueError("only subdivisions with at most one split per edge")
    expected = set()
    division = []
    for (a, b), path in sub_map.edge_map.items():
        chain = [vm[a], *path, vm[b]]
        division.extend(path)
        expected.update(edge(chain[i], chain[i + 1]) for i in range(len(chain) - 1))
    all_vertices = set(vm.values()) | set(division)
    if len(division) != len(set(division)) or len(all_vertices) != g.n:
        raise ValueError("division vertices must be fresh and cover the rest")
    if expected != set(g.edge_set):
        raise ValueError("the map does not describe the given graph")


def extract_subdivision_witness(
    g: Graph,
    h: Graph,
    sub_map: SubdivisionMap,
    k: int,
    cap: int = 12,
) -> SubdivisionWitness:
    """From a declared at-most-1-subdivision of a graph with chromatic number
    at least (k-1)^2 + 1, extract an induced subgraph that either has
    chromatic number at least k itself, or is the 1-subdivision of a graph
    that does.

    Split the small graph's edges into unsubdivided/subdivided.  If the
    unsubdivided part already needs k colors it sits induced on the branch
    vertices; otherwise its color classes are independent there, so each
    class induces a 1-subdivision inside g, and the largest-chromatic class
    is forced up to ceil(chi/(k-1)) >= k.
    """
    _check_subdivision_map(g, h, sub_map)
    chi_h = exact_chromatic(h, "proper", cap=cap).value
    if chi_h < (k - 1) ** 2 + 1:
        raise HypothesisViolated(
            f"need chromatic number >= {(k - 1) ** 2 + 1}, got {chi_h}"
        )
    vm = sub_map.vertex_map
    if k <= 1:
        v0 = min(vm.values()) if vm else 0
        return SubdivisionWitness("high_chromatic", frozenset({v0}), max(1, k))

    unsub = [e for e, path in sub_map.edge_map.items() if not path]
    h1 = Graph(h.n, unsub)
    res1 = exact_chromatic(h1, "proper", cap=cap)
    if res1.value >= k:
        return SubdivisionWitness(
            "high_chromatic", frozenset(vm.values()), res1.value
        )

    parts: Dict[int, list] = {}
    for v, c in res1.coloring.items():
        parts.setdefault(c, []).append(v)
    best_class, best_chi, best_graph = None, -1, None
    for c in sorted(parts):
        cls, _ = induced_subgraph(h, parts[c])
        chi_c = exact_chromatic(cls, "proper", cap=cap).value
        if chi_c > best_chi:
            best_class, best_chi, best_graph = parts[c], chi_c, cls
    if best_chi < k:
        raise AssertionError("pigeonhole bound failed")  # pragma: no cover
    in_class = set(best_class)
    vertices = {vm[v] for v in best_class}
    for (a, b), path in sub_map.edge_map.items():
        if a in in_class and b in in_class:
            vertices.update(path)
    return SubdivisionWitness(
        "one_subdivision", frozenset(vertices), best_chi, best_graph
    )
