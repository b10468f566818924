"""Shared corpus builders and oracles for the test suite."""

from __future__ import annotations

import hashlib
import itertools
import json
import random

from cfcolor.cliquesum import extendability_audit
from cfcolor.exact import brute_extendable
from cfcolor.graph import Graph


def random_lists(n, size, palette, rng):
    """Per-vertex random color lists of exactly the given size."""
    return {v: frozenset(rng.sample(range(palette), size)) for v in range(n)}


def digest(obj) -> str:
    return hashlib.sha256(
        json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()


def naive_contract(g: Graph, u, v):
    """Independent contraction oracle: plain set unions on an adjacency dict."""
    adj = {x: set(g.neighbors(x)) for x in g.vertices()}
    merged = (adj[u] | adj[v]) - {u, v}
    vertices = [x for x in g.vertices() if x not in (u, v)]
    n = len(vertices) + 1
    edges = {(a, b) for a, b in g.edge_set if u not in (a, b) and v not in (a, b)}
    return n, len(edges) + len(merged)


def all_graphs_up_to_iso(max_n):
    """Every isomorphism class of graphs on 1..max_n vertices, by canonical
    minimum edge-bitmask over all vertex permutations (brute force)."""
    out = []
    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        index = {p: i for i, p in enumerate(pairs)}
        seen = set()
        for bits in range(2 ** len(pairs)):
            canon = bits
            for perm in itertools.permutations(range(n)):
                mapped = 0
                for i, (a, b) in enumerate(pairs):
                    if bits >> i & 1:
                        pa, pb = perm[a], perm[b]
                        mapped |= 1 << index[(pa, pb) if pa < pb else (pb, pa)]
                canon = min(canon, mapped)
            if canon in seen:
                continue
            seen.add(canon)
            out.append(Graph(n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1]))
    return out


def random_side_graph(rng, n, palette=5, list_size=3, p=0.45):
    es = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    g = Graph(n, es)
    lists = random_lists(n, list_size, palette, rng)
    return g, lists


def random_extendable_side(rng, spec, n, glue_size, lists_override=None):
    """Sample (graph, lists, glue clique, colorer) until the brute colorer
    passes a full extendability audit; the audit is the admission check, so
    every returned side is certified."""
    while True:
        g, lists = random_side_graph(rng, n)
        if lists_override:
            lists.update(lists_override)
        cliques = [
            frozenset(c)
            for c in itertools.combinations(range(n), glue_size)
            if g.is_clique(c)
        ]
        if not cliques:
            continue
        q = cliques[rng.randrange(len(cliques))]
        colorer = brute_extendable(g, (q,), lists, max(glue_size, 2), spec)
        if extendability_audit(colorer).ok:
            return g, lists, q, colorer


def random_tree_decomposition(rng, n_nodes, n_vertices):
    """Random valid tree-decomposition instance: a random tree, a random
    connected node-subtree per vertex, and a random graph drawn from the
    pairs that share a bag.  Returns (graph, decomposition)."""
    from cfcolor.decomp import TreeDecomposition
    from cfcolor.graph import random_tree

    tree = random_tree(n_nodes, rng.randrange(10**9))
    bags = [set() for _ in range(n_nodes)]
    for v in range(n_vertices):
        start = rng.randrange(n_nodes)
        nodes = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for y in sorted(tree.neighbors(x)):
                if y not in nodes and rng.random() < 0.35:
                    nodes.add(y)
                    frontier.append(y)
        for x in nodes:
            bags[x].add(v)
    pool = sorted(
        {
            (a, b)
            for bag in bags
            for a, b in itertools.combinations(sorted(bag), 2)
        }
    )
    edges = [e for e in pool if rng.random() < 0.5]
    g = Graph(n_vertices, edges)
    td = TreeDecomposition(tree, tuple(frozenset(b) for b in bags))
    return g, td
