"""File formats: edge-list text, JSON mirrors, and per-type JSON codecs.

The text format is bit-exact: line 1 is ``p <n> <m>``, followed by m lines
``e <u> <v>`` with 0-based ids, single spaces, LF endings.  All JSON output
is emitted with sorted keys and a trailing newline so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import json
from typing import Dict

from .coloring import Coloring, ListAssignment
from .decomp import Layering, TreeDecomposition
from .errors import ParseError
from .graph import Graph
from .ordering import OrderingPlan


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": ")) + "\n"


# ---------------------------------------------------------------------------
# graphs


def graph_to_text(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty graph file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "p":
        raise ParseError(f"bad header line: {lines[0]!r}")
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError as exc:
        raise ParseError(f"bad header counts: {lines[0]!r}") from exc
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "e":
            raise ParseError(f"bad edge line: {ln!r}")
        try:
            edges.append((int(parts[1]), int(parts[2])))
        except ValueError as exc:
            raise ParseError(f"bad edge line: {ln!r}") from exc
    if len(edges) != m:
        raise ParseError(f"header promises {m} edges, found {len(edges)}")
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges]}


def graph_from_json(obj: dict) -> Graph:
    try:
        return Graph(int(obj["n"]), [tuple(e) for e in obj["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph JSON: {exc}") from exc


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            return graph_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON in {path}: {exc}") from exc
    return graph_from_text(text)


def save_graph(g: Graph, path: str, fmt: str = "text") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if fmt == "text":
            fh.write(graph_to_text(g))
        elif fmt == "json":
            fh.write(dumps_canonical(graph_to_json(g)))
        else:
            raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# colorings and lists


def coloring_to_json(phi: Coloring, n: int) -> dict:
    return {"colors": [phi[v] for v in range(n)]}


def coloring_from_json(obj: dict) -> Coloring:
    try:
        return {v: int(c) for v, c in enumerate(obj["colors"])}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad coloring JSON: {exc}") from exc


def lists_to_json(lists: ListAssignment) -> dict:
    return {"lists": [sorted(lists[v]) for v in range(len(lists))]}


def lists_from_json(obj: dict) -> ListAssignment:
    try:
        return {v: frozenset(int(c) for c in cs) for v, cs in enumerate(obj["lists"])}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad list-assignment JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# decompositions, layerings, plans


def tree_decomposition_to_json(td: TreeDecomposition) -> dict:
    return {
        "tree_edges": [[x, y] for x, y in td.tree.edges],
        "bags": [sorted(b) for b in td.bags],
        "root": td.root,
    }


def tree_decomposition_from_json(obj: dict) -> TreeDecomposition:
    try:
        bags = tuple(frozenset(int(v) for v in bag) for bag in obj["bags"])
        tree = Graph(len(bags), [tuple(e) for e in obj["tree_edges"]])
        return TreeDecomposition(tree, bags, int(obj.get("root", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad tree-decomposition JSON: {exc}") from exc


def layering_to_json(lay: Layering) -> dict:
    return {"layers": list(lay.layers)}


def layering_from_json(obj: dict) -> Layering:
    try:
        return Layering(tuple(int(l) for l in obj["layers"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad layering JSON: {exc}") from exc


def plan_to_json(plan: OrderingPlan) -> dict:
    return {
        "order": list(plan.order),
        "sets": [sorted(s) for s in plan.sets],
    }


def plan_from_json(obj: dict) -> OrderingPlan:
    try:
        return OrderingPlan.from_parts(
            tuple(int(v) for v in obj["order"]),
            tuple(frozenset(int(v) for v in s) for s in obj["sets"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad plan JSON: {exc}") from exc


def load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON in {path}: {exc}") from exc


def save_json(obj: Dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(obj))
