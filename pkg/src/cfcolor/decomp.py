"""Tree-decompositions and layerings: validation, widths, torsos, fixtures."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import InvalidDecomposition, InvalidLayering, NodeAbsent
from .graph import Graph, bfs_distances, grid, induced_subgraph, is_tree

VertexSet = frozenset


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: Tuple[VertexSet, ...]
    root: int = 0

    def __post_init__(self):
        if len(self.bags) != self.tree.n:
            raise InvalidDecomposition("one bag per tree node required")
        if self.tree.n and not (0 <= self.root < self.tree.n):
            raise InvalidDecomposition("root is not a tree node")

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def adhesion(self) -> int:
        return max(
            (len(self.bags[x] & self.bags[y]) for x, y in self.tree.edges),
            default=0,
        )


@dataclass(frozen=True)
class Layering:
    layers: Tuple[int, ...]  # layer index per vertex

    def layer_of(self, v: int) -> int:
        return self.layers[v]

    def classes(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for v, l in enumerate(self.layers):
            out.setdefault(l, []).append(v)
        return out


@dataclass(frozen=True)
class TDViolation:
    kind: str  # NotATree | MissingVertex | MissingEdge | DisconnectedTrace
    detail: tuple


@dataclass(frozen=True)
class TDReport:
    ok: bool
    violations: Tuple[TDViolation, ...]
    width: int
    adhesion: int


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> TDReport:
    """Structured check of the three tree-decomposition axioms.

    Reports vertex coverage, edge coverage, and connectivity of each vertex's
    bag trace, together with the width and adhesion.
    """
    violations: List[TDViolation] = []
    if not is_tree(td.tree):
        violations.append(TDViolation("NotATree", ()))
        return TDReport(False, tuple(violations), td.width, td.adhesion)
    trace = {v: [] for v in g.vertices()}
    for x, bag in enumerate(td.bags):
        for v in bag:
            if v in trace:
                trace[v].append(x)
    for v in g.vertices():
        if not trace[v]:
            violations.append(TDViolation("MissingVertex", (v,)))
    for u, v in g.edges:
        if not any(u in bag and v in bag for bag in td.bags):
            violations.append(TDViolation("MissingEdge", (u, v)))
    for v in g.vertices():
        nodes = set(trace[v])
        if len(nodes) <= 1:
            continue
        start = min(nodes)
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in td.tree.neighbors(x):
                if y in nodes and y not in seen:
                    seen.add(y)
                    queue.append(y)
        if seen != nodes:
            violations.append(TDViolation("DisconnectedTrace", (v,)))
    return TDReport(not violations, tuple(violations), td.width, td.adhesion)


def validate_layering(g: Graph, lay: Layering) -> Optional[Tuple[int, int]]:
    """None when valid; otherwise the first edge spanning more than one layer."""
    if len(lay.layers) != g.n:
        raise InvalidLayering("one layer index per vertex required")
    if any(l < 0 for l in lay.layers):
        raise InvalidLayering("layer indices must be nonnegative")
    for u, v in g.edges:
        if abs(lay.layers[u] - lay.layers[v]) > 1:
            return (u, v)
    return None


def layered_width(g: Graph, td: TreeDecomposition, lay: Layering) -> int:
    """max over bags B and layers V of |B intersect V| for a valid pair."""
    report = validate_tree_decomposition(g, td)
    if not report.ok:
        raise InvalidDecomposition(report.violations)
    bad = validate_layering(g, lay)
    if bad is not None:
        raise InvalidLayering(f"edge {bad} spans more than one layer")
    classes = lay.classes()
    w = 0
    for bag in td.bags:
        for members in classes.values():
            w = max(w, len(bag & frozenset(members)))
    return w


def torso_and_frame(
    g: Graph, td: TreeDecomposition, x: int
) -> Tuple[Graph, Dict[int, int], Tuple[VertexSet, ...]]:
    """Torso at node x (bag-induced subgraph plus a clique on each adjacent
    bag-intersection) and the frame (those intersections, in original ids).

    Returns (torso, original->torso id map, frame).
    """
    if not (0 <= x < td.tree.n):
        raise NodeAbsent(f"tree node {x} does not exist")
    bag = td.bags[x]
    sub, remap = induced_subgraph(g, bag)
    es = set(sub.edge_set)
    frame = []
    for y in sorted(td.tree.neighbors(x)):
        inter = bag & td.bags[y]
        frame.append(inter)
        members = sorted(remap[v] for v in inter)
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                es.add((a, b))
    return Graph(sub.n, es), remap, tuple(frame)


def bfs_layering(g: Graph, roots) -> Layering:
    """Layer = BFS distance from the nearest root; components without a root
    are augmented with their smallest vertex."""
    roots = set(roots)
    dist = bfs_distances(g, roots) if roots else [None] * g.n
    while any(d is None for d in dist):
        extra = min(v for v in g.vertices() if dist[v] is None)
        roots.add(extra)
        dist = bfs_distances(g, roots)
    return Layering(tuple(dist))


def bfs_tree_order(tree: Graph, root: int) -> List[int]:
    """Breadth-first node order from the root, children visited by id."""
    order = []
    seen = {root}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in sorted(tree.neighbors(x)):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return order


# ---------------------------------------------------------------------------
# fixture decompositions for standard families


def path_decomposition(n: int) -> TreeDecomposition:
    """Width-1 decomposition of the path on n vertices (bags {i, i+1})."""
    if n <= 1:
        return TreeDecomposition(Graph(max(n, 1)), (frozenset(range(n)),))
    bags = tuple(frozenset({i, i + 1}) for i in range(n - 1))
    tree = Graph(n - 1, ((i, i + 1) for i in range(n - 2)))
    return TreeDecomposition(tree, bags)


def cycle_decomposition(n: int) -> TreeDecomposition:
    """Width-2 decomposition of the cycle: bags {0, i, i+1} on a path."""
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    bags = tuple(frozenset({0, i, i + 1}) for i in range(1, n - 1))
    tree = Graph(n - 2, ((i, i + 1) for i in range(n - 3)))
    return TreeDecomposition(tree, bags)


def tree_decomposition_of_tree(g: Graph) -> TreeDecomposition:
    """Width-1 decomposition of a tree: one node per vertex with bag
    {v, parent(v)} (root bag is a singleton); the decomposition tree mirrors g."""
    if not is_tree(g):
        raise InvalidDecomposition("input is not a tree")
    parent: Dict[int, Optional[int]] = {0: None}
    order = [0]
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u in sorted(g.neighbors(v)):
            if u not in parent:
                parent[u] = v
                order.append(u)
                queue.append(u)
    bags = tuple(
        frozenset({v}) if parent[v] is None else frozenset({v, parent[v]})
        for v in range(g.n)
    )
    return TreeDecomposition(Graph(g.n, g.edges), bags)


def grid_decomposition(rows: int, cols: int) -> TreeDecomposition:
    """Sliding-window decomposition of the grid with width min(rows, cols).

    With r = min dimension, bags are r+1 consecutive vertices in column-major
    order (transposed when cols < rows), arranged along a path.
    """
    n = rows * cols

    def cm_index(i, j):
        if rows <= cols:
            return j * rows + i
        return i * cols + j

    order = [0] * n
    for i in range(rows):
        for j in range(cols):
            order[cm_index(i, j)] = i * cols + j
    r = min(rows, cols)
    if n <= r + 1:
        return TreeDecomposition(Graph(1), (frozenset(range(n)),))
    bags = tuple(frozenset(order[t: t + r + 1]) for t in range(n - r))
    tree = Graph(len(bags), ((i, i + 1) for i in range(len(bags) - 1)))
    return TreeDecomposition(tree, bags)


def grid_column_pair_decomposition(rows: int, cols: int) -> TreeDecomposition:
    """Bags = two consecutive columns of the grid (path-shaped tree)."""
    if cols == 1:
        return TreeDecomposition(Graph(1), (frozenset(range(rows)),))
    bags = []
    for j in range(cols - 1):
        bags.append(frozenset(i * cols + j2 for i in range(rows) for j2 in (j, j + 1)))
    tree = Graph(len(bags), ((i, i + 1) for i in range(len(bags) - 1)))
    return TreeDecomposition(tree, tuple(bags))


def grid_fixture(rows: int, cols: int, layering_by: str = "row"):
    """(graph, decomposition, layering) for a grid; layering by row or column."""
    g = grid(rows, cols)
    td = grid_column_pair_decomposition(rows, cols)
    if layering_by == "row":
        lay = Layering(tuple(v // cols for v in range(rows * cols)))
    elif layering_by == "column":
        lay = Layering(tuple(v % cols for v in range(rows * cols)))
    else:
        raise ValueError("layering_by must be 'row' or 'column'")
    return g, td, lay
