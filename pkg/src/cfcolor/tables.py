"""Regression table suites for the CLI, with a rendered figure per table.

Each suite produces a deterministic CSV (fixed seed in, identical bytes out)
plus a matplotlib PNG drawn next to the delimited output.
"""

from __future__ import annotations

import csv
import io as _io
import random
from typing import List, Tuple

from . import graph as G
from .coloring import uniform_lists, verify_conflict_free, verify_proper
from .errors import UnknownSuite
from .exact import exact_chromatic
from .graph import subdivide
from .ordering import color_by_plan, minimal_plan

SUITES = ("paper-tight", "random-audit")


def _tight_rows() -> Tuple[List[str], List[list]]:
    header = ["instance", "kind", "relation", "expected", "computed", "ok"]
    rows = []

    def add(name, g, kind, relation, expected, cap=12):
        value = exact_chromatic(g, kind, cap=cap).value
        ok = value == expected if relation == "==" else value >= expected
        rows.append([name, kind, relation, expected, value, int(ok)])

    add("C5", G.cycle(5), "pcf", "==", 5)
    add("P3", G.path(3), "pcf", "==", 3)
    for n in range(3, 9):
        add(f"K{n}", G.complete(n), "pcf", "==", n)
    add("K3", G.complete(3), "icf", "==", 3)
    sub_k4, _ = subdivide(G.complete(4), 1)
    add("subdiv1_K4", sub_k4, "pcf", ">=", 4)   # forced by the branch vertices
    add("subdiv1_K4", sub_k4, "pcfc", "==", 2)  # bipartite, so equals chi
    return header, rows


def _random_audit_rows(seed: int) -> Tuple[List[str], List[list]]:
    header = ["instance", "n", "m", "w1", "w2", "bound", "colors_used", "gap", "verified"]
    rows = []
    rng = random.Random(seed)
    for i in range(25):
        n = rng.randint(4, 16)
        g = G.random_gnp(n, rng.uniform(0.15, 0.6), rng.randrange(10**9))
        order = list(g.vertices())
        rng.shuffle(order)
        plan = minimal_plan(g, order)
        size = plan.required_list_size
        lists = uniform_lists(n, size)
        phi, _ = color_by_plan(g, plan, lists)
        used = len(set(phi.values()))
        ok = verify_proper(g, phi)[0] and verify_conflict_free(g, phi).ok
        rows.append([i, n, g.m, plan.w1, plan.w2, size, used, size - used, int(ok)])
    return header, rows


def run_suite(name: str, seed: int) -> Tuple[List[str], List[list]]:
    if name == "paper-tight":
        return _tight_rows()
    if name == "random-audit":
        return _random_audit_rows(seed)
    raise UnknownSuite(f"unknown suite {name!r} (choose from {', '.join(SUITES)})")


def rows_to_csv(header: List[str], rows: List[list]) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def render_figure(name: str, header: List[str], rows: List[list], png_path: str) -> None:
    """Bar chart of the target value vs the computed value per table row."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if name == "paper-tight":
        labels = [f"{r[0]}:{r[1]}" for r in rows]
        target = [r[3] for r in rows]
        actual = [r[4] for r in rows]
        target_label, actual_label = "expected", "computed"
    else:
        labels = [str(r[0]) for r in rows]
        target = [r[5] for r in rows]
        actual = [r[6] for r in rows]
        target_label, actual_label = "list size bound", "colors used"

    xs = range(len(rows))
    fig, ax = plt.subplots(figsize=(max(6.0, 0.45 * len(rows)), 3.5))
    ax.bar([x - 0.2 for x in xs], target, width=0.4, label=target_label, color="#4878d0")
    ax.bar([x + 0.2 for x in xs], actual, width=0.4, label=actual_label, color="#ee854a")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("colors")
    ax.set_title(f"suite {name}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
