"""Colorings, list assignments, multiplicity specs, and verifiers.

A coloring is a dict ``vertex -> color`` (colors are opaque ints), a list
assignment a dict ``vertex -> frozenset of colors``.  ``AchievementSpec``
captures the set S of acceptable neighborhood multiplicities: a vertex is
satisfied when some color appears exactly s times in its (relevant)
neighborhood for some s in S.  S = {1} is conflict-free, S = odd integers
is odd coloring.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, Optional, Tuple

from .errors import PartialColoring
from .graph import Edge, Graph, edge

Coloring = Dict[int, int]
ListAssignment = Dict[int, FrozenSet[int]]
WitnessMap = Dict[int, int]


@dataclass(frozen=True)
class AchievementSpec:
    """Decidable predicate on positive multiplicities, with 1-membership cached.

    The predicate is total over all positive integers; callers that need a
    finite table use :meth:`allowed_multiplicities`.
    """

    name: str
    predicate: Callable[[int], bool] = field(compare=False)
    contains_one: bool = field(default=False)

    def allows(self, s: int) -> bool:
        return s >= 1 and self.predicate(s)

    def allowed_multiplicities(self, cap: int) -> frozenset:
        return frozenset(s for s in range(1, cap + 1) if self.predicate(s))

    @staticmethod
    def from_set(values: Iterable[int], name: str = "") -> "AchievementSpec":
        vals = frozenset(int(v) for v in values)
        if not vals or min(vals) < 1:
            raise ValueError("S must be a nonempty set of positive integers")
        label = name or "{" + ",".join(str(v) for v in sorted(vals)) + "}"
        return AchievementSpec(label, vals.__contains__, 1 in vals)


CONFLICT_FREE = AchievementSpec("conflict-free", lambda s: s == 1, True)
ODD = AchievementSpec("odd", lambda s: s % 2 == 1, True)


def make_lists(colors_per_vertex) -> ListAssignment:
    """Normalize an iterable/dict of per-vertex color collections."""
    if isinstance(colors_per_vertex, dict):
        items = colors_per_vertex.items()
    else:
        items = enumerate(colors_per_vertex)
    return {v: frozenset(cs) for v, cs in items}


def uniform_lists(n: int, k: int) -> ListAssignment:
    pal = frozenset(range(k))
    return {v: pal for v in range(n)}


def is_k_assignment(lists: ListAssignment, k: int) -> bool:
    return all(len(cs) >= k for cs in lists.values())


def min_list_size(lists: ListAssignment) -> int:
    return min((len(cs) for cs in lists.values()), default=0)


def _require_total(g: Graph, phi: Coloring) -> None:
    for v in g.vertices():
        if v not in phi:
            raise PartialColoring(f"vertex {v} is uncolored")


def verify_proper(g: Graph, phi: Coloring) -> Tuple[bool, Optional[Edge]]:
    """True iff no edge is monochromatic; returns the first violating edge
    (smallest under the sorted-edge order) otherwise."""
    _require_total(g, phi)
    for u, v in g.edges:
        if phi[u] == phi[v]:
            return False, (u, v)
    return True, None


@dataclass(frozen=True)
class SAchievedReport:
    ok: bool
    witness: Optional[WitnessMap]
    violator: Optional[int]


def _relevant_neighborhood(g, v, closed, dropped):
    nbrs = g.neighbors(v)
    if dropped:
        nbrs = {u for u in nbrs if edge(u, v) not in dropped}
    if closed:
        return set(nbrs) | {v}
    return set(nbrs)


def find_witness(
    g: Graph,
    phi: Coloring,
    spec: AchievementSpec,
    v: int,
    deleted_edges=None,
    closed: bool = False,
) -> Optional[int]:
    """Smallest color whose multiplicity in v's relevant neighborhood lies in
    S, or None.  The relevant neighborhood is taken in G - deleted_edges."""
    dropped = {edge(*e) for e in deleted_edges} if deleted_edges else None
    nbrs = _relevant_neighborhood(g, v, closed, dropped)
    counts = Counter(phi[u] for u in nbrs)
    hits = sorted(c for c, mult in counts.items() if spec.allows(mult))
    return hits[0] if hits else None


def verify_s_achieved(
    g: Graph,
    phi: Coloring,
    spec: AchievementSpec,
    deleted_edges=None,
    closed: bool = False,
) -> SAchievedReport:
    """Check that every vertex with a nonempty relevant neighborhood has a
    color of multiplicity in S there.  Neighborhoods are taken in
    G - deleted_edges (open by default, closed includes the vertex itself).
    On success the witness map records, for each such vertex, the smallest
    achieving color; on failure the smallest violating vertex is reported.
    """
    _require_total(g, phi)
    dropped = {edge(*e) for e in deleted_edges} if deleted_edges else None
    witness: WitnessMap = {}
    for v in g.vertices():
        nbrs = _relevant_neighborhood(g, v, closed, dropped)
        if not nbrs:
            continue
        counts = Counter(phi[u] for u in nbrs)
        hits = sorted(c for c, mult in counts.items() if spec.allows(mult))
        if not hits:
            return SAchievedReport(False, None, v)
        witness[v] = hits[0]
    return SAchievedReport(True, witness, None)


def verify_conflict_free(g: Graph, phi: Coloring) -> SAchievedReport:
    return verify_s_achieved(g, phi, CONFLICT_FREE)


def verify_conflict_free_closed(g: Graph, phi: Coloring) -> SAchievedReport:
    return verify_s_achieved(g, phi, CONFLICT_FREE, closed=True)


def verify_odd(g: Graph, phi: Coloring) -> SAchievedReport:
    return verify_s_achieved(g, phi, ODD)


def respects_lists(phi: Coloring, lists: ListAssignment) -> bool:
    return all(phi[v] in lists[v] for v in lists)


def remove_colors(lists: ListAssignment, colors) -> Tuple[ListAssignment, int]:
    """Pointwise removal of ``colors``; also reports the minimum resulting
    list size."""
    z = frozenset(colors)
    out = {v: cs - z for v, cs in lists.items()}
    return out, min_list_size(out)


def colors_used(phi: Coloring) -> int:
    return len(set(phi.values()))
