"""Simple undirected graphs: representation, transformations, and generators.

Vertices are dense integers ``0..n-1``.  Every transformation that renumbers
vertices returns an explicit remapping instead of trying to preserve ids.
Graphs are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import EdgeAbsent, InvalidPartition

Edge = Tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Normalized edge representation: (min, max)."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph on vertices ``0..n-1`` (no loops, no parallels)."""

    __slots__ = ("n", "_edges", "_adj")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        adj: List[set] = [set() for _ in range(n)]
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            e = edge(u, v)
            if e in es:
                continue
            es.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self._edges = frozenset(es)
        self._adj = tuple(frozenset(a) for a in adj)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        """Edges as a sorted tuple, for deterministic iteration."""
        return tuple(sorted(self._edges))

    @property
    def edge_set(self) -> frozenset:
        return self._edges

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def closed_neighbors(self, v: int) -> frozenset:
        return self._adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self._edges

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = sorted(set(vs))
        return all(self.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._edges == other._edges
        )

    def __hash__(self):
        return hash((self.n, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# structural helpers


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """Induced subgraph on ``keep``; returns (graph, old->new id map)."""
    keep = sorted(set(keep))
    remap = {v: i for i, v in enumerate(keep)}
    es = [
        (remap[u], remap[v])
        for u, v in g.edges
        if u in remap and v in remap
    ]
    return Graph(len(keep), es), remap


def remove_vertex(g: Graph, v: int) -> Tuple[Graph, Dict[int, int]]:
    return induced_subgraph(g, (u for u in g.vertices() if u != v))


def remove_edges(g: Graph, drop: Iterable[Edge]) -> Graph:
    drop = {edge(u, v) for u, v in drop}
    return Graph(g.n, (e for e in g.edge_set if e not in drop))


def square(g: Graph) -> Graph:
    """Graph on the same vertices joining pairs at distance at most 2."""
    es = set(g.edge_set)
    for v in g.vertices():
        nbrs = sorted(g.neighbors(v))
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                es.add(edge(a, b))
    return Graph(g.n, es)


def connected_components(g: Graph) -> List[List[int]]:
    seen = [False] * g.n
    comps = []
    for s in g.vertices():
        if seen[s]:
            continue
        comp = []
        queue = deque([s])
        seen[s] = True
        while queue:
            v = queue.popleft()
            comp.append(v)
            for u in sorted(g.neighbors(v)):
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
        comps.append(sorted(comp))
    return comps


def bfs_distances(g: Graph, roots: Iterable[int]) -> List[Optional[int]]:
    """Distance from the nearest root; None for unreachable vertices."""
    dist: List[Optional[int]] = [None] * g.n
    queue = deque()
    for r in sorted(set(roots)):
        dist[r] = 0
        queue.append(r)
    while queue:
        v = queue.popleft()
        for u in sorted(g.neighbors(v)):
            if dist[u] is None:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def bipartition(g: Graph) -> Optional[Tuple[List[int], List[int]]]:
    """2-coloring by BFS; None when an odd cycle exists."""
    side = [-1] * g.n
    for s in g.vertices():
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if side[u] == -1:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return None
    return (
        [v for v in g.vertices() if side[v] == 0],
        [v for v in g.vertices() if side[v] == 1],
    )


def is_tree(g: Graph) -> bool:
    return g.n > 0 and g.m == g.n - 1 and len(connected_components(g)) == 1


# ---------------------------------------------------------------------------
# transformations


def contract_edge(g: Graph, u: int, v: int) -> Tuple[Graph, Dict[int, int], int]:
    """Contract the edge uv into a new vertex, deleting parallel edges.

    Returns (graph, remapping, w).  Vertices other than u, v keep their
    relative order and occupy ids 0..n-3; the merged vertex w gets id n-2.
    The remapping covers every old vertex (u and v both map to w).
    """
    if not g.has_edge(u, v):
        raise EdgeAbsent(f"({u},{v}) is not an edge")
    rest = [x for x in g.vertices() if x != u and x != v]
    remap = {x: i for i, x in enumerate(rest)}
    w = len(rest)
    remap[u] = w
    remap[v] = w
    es = set()
    for a, b in g.edges:
        na, nb = remap[a], remap[b]
        if na != nb:
            es.add(edge(na, nb))
    return Graph(g.n - 1, es), remap, w


def odd_contract(g: Graph, part_a: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """Contract every component of the A/B crossing subgraph to a point.

    ``part_a`` and its complement must both be nonempty.  Components of the
    spanning subgraph of A-B edges collapse to single vertices (singleton
    components, i.e. vertices with no crossing edge, stay as themselves).
    Returns (graph, old vertex -> new vertex map).
    """
    a = set(part_a)
    if not a or not a.issubset(set(g.vertices())):
        raise InvalidPartition("part_a must be a nonempty subset of the vertices")
    if len(a) == g.n:
        raise InvalidPartition("part_a must not contain every vertex")
    crossing = [e for e in g.edges if (e[0] in a) != (e[1] in a)]
    gx = Graph(g.n, crossing)
    comps = connected_components(gx)
    comps.sort(key=min)
    remap = {}
    for i, comp in enumerate(comps):
        for v in comp:
            remap[v] = i
    es = set()
    for u, v in g.edges:
        nu, nv = remap[u], remap[v]
        if nu != nv:
            es.add(edge(nu, nv))
    return Graph(len(comps), es), remap


class SubdivisionMap:
    """Records how a subdivision was produced.

    ``vertex_map`` sends each original (branch) vertex to its id in the new
    graph; ``edge_map`` sends each original edge to the tuple of internal
    path vertices that replaced it (empty tuple = edge kept as-is).
    """

    __slots__ = ("vertex_map", "edge_map")

    def __init__(self, vertex_map: Dict[int, int], edge_map: Dict[Edge, Tuple[int, ...]]):
        self.vertex_map = dict(vertex_map)
        self.edge_map = {edge(*e): tuple(p) for e, p in edge_map.items()}

    def max_times(self) -> int:
        return max((len(p) for p in self.edge_map.values()), default=0)


def subdivide(g: Graph, times) -> Tuple[Graph, SubdivisionMap]:
    """Replace each edge e by a path with ``times[e]`` internal vertices.

    ``times`` may be a single nonnegative int (uniform) or a map from edges
    to counts (missing edges default to 0).  Branch vertices keep their ids;
    internal vertices are appended in sorted edge order.
    """
    if isinstance(times, int):
        per = {e: times for e in g.edges}
    else:
        per = {}
        for e, s in times.items():
            ne = edge(*e)
            if ne not in g.edge_set:
                raise EdgeAbsent(f"{e} is not an edge of the graph")
            if s < 0:
                raise ValueError("subdivision counts must be nonnegative")
            per[ne] = s
        for e in g.edges:
            per.setdefault(e, 0)
    nxt = g.n
    es = []
    edge_map = {}
    for u, v in g.edges:
        s = per[(u, v)]
        path = tuple(range(nxt, nxt + s))
        nxt += s
        edge_map[(u, v)] = path
        chain = [u, *path, v]
        es.extend((chain[i], chain[i + 1]) for i in range(len(chain) - 1))
    return Graph(nxt, es), SubdivisionMap({v: v for v in g.vertices()}, edge_map)


def strong_product(a: Graph, b: Graph) -> Tuple[Graph, Tuple[Tuple[int, int], ...]]:
    """Strong product: (x1,y1)~(x2,y2) iff each coordinate is equal or
    adjacent, and the pairs differ.  Product vertex (x, y) gets id x*b.n + y;
    the returned coordinate table inverts that."""
    coords = tuple((x, y) for x in a.vertices() for y in b.vertices())
    vid = lambda x, y: x * b.n + y
    es = []
    for x1, y1 in coords:
        v1 = vid(x1, y1)
        for x2 in a.neighbors(x1):
            es.append((v1, vid(x2, y1)))          # x adjacent, y equal
            for y2 in b.neighbors(y1):
                es.append((v1, vid(x2, y2)))      # both adjacent
        for y2 in b.neighbors(y1):
            es.append((v1, vid(x1, y2)))          # x equal, y adjacent
    return Graph(a.n * b.n, ((u, v) for u, v in es if u != v)), coords


def degeneracy_ordering(g: Graph) -> Tuple[List[int], int]:
    """Smallest-last ordering and the degeneracy.

    Repeatedly deletes a minimum-degree vertex (ties broken by smallest id);
    the returned ordering is that removal sequence reversed, so each v_i has
    at most ``degeneracy`` neighbors among v_1..v_{i-1}.
    """
    deg = [g.degree(v) for v in g.vertices()]
    alive = set(g.vertices())
    removal = []
    degeneracy = 0
    for _ in range(g.n):
        v = min(alive, key=lambda x: (deg[x], x))
        degeneracy = max(degeneracy, deg[v])
        removal.append(v)
        alive.remove(v)
        for u in g.neighbors(v):
            if u in alive:
                deg[u] -= 1
    removal.reverse()
    return removal, degeneracy


# ---------------------------------------------------------------------------
# generators


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def star(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def grid(rows: int, cols: int) -> Graph:
    """Grid graph; vertex (i, j) has id i*cols + j."""
    es = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                es.append((v, v + 1))
            if i + 1 < rows:
                es.append((v, v + cols))
    return Graph(rows * cols, es)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def random_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p).  Deterministic per seed: pairs are visited in
    lexicographic order and kept when the next draw of ``random.Random(seed)``
    (Mersenne Twister) falls below p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    es = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return Graph(n, es)


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labeled tree via a random Pruefer sequence."""
    if n <= 1:
        return Graph(max(n, 0))
    if n == 2:
        return Graph(2, [(0, 1)])
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    deg = [1] * n
    for x in seq:
        deg[x] += 1
    es = []
    import heapq

    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        es.append((leaf, x))
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    es.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Graph(n, es)


def random_maximal_outerplanar(n: int, seed: int) -> Graph:
    """Random triangulation of a convex polygon (maximal outerplanar)."""
    if n < 3:
        raise ValueError("need at least 3 vertices")
    rng = random.Random(seed)
    es = [(i, (i + 1) % n) for i in range(n)]

    def tri(lo, hi):
        if hi - lo < 2:
            return
        mid = rng.randrange(lo + 1, hi)
        if mid - lo >= 2:
            es.append((lo, mid))
        if hi - mid >= 2:
            es.append((mid, hi))
        tri(lo, mid)
        tri(mid, hi)

    tri(0, n - 1)
    return Graph(n, es)


def random_planar_triangulation(n: int, seed: int) -> Graph:
    """Random stacked (Apollonian) triangulation: repeatedly pick a face and
    insert a new vertex joined to its three corners.  Planar for every n."""
    if n < 3:
        raise ValueError("need at least 3 vertices")
    rng = random.Random(seed)
    es = [(0, 1), (1, 2), (0, 2)]
    faces = [(0, 1, 2)]
    for v in range(3, n):
        i = rng.randrange(len(faces))
        a, b, c = faces.pop(i)
        es.extend([(a, v), (b, v), (c, v)])
        faces.extend([(a, b, v), (a, c, v), (b, c, v)])
    return Graph(n, es)
