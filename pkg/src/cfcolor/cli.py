"""Command-line front end.

Subcommands: gen, verify, color, exact, compose, table.  Every emitted
coloring is re-verified in-process first, and all output is byte-stable for
identical invocations (sorted JSON keys, no timestamps, all randomness routed
through --seed).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import graph as G
from . import io as gio
from . import tables
from .cliquesum import ExtendRequest, fold_tree_decomposition
from .coloring import (
    CONFLICT_FREE,
    ODD,
    AchievementSpec,
    respects_lists,
    uniform_lists,
    verify_proper,
    verify_s_achieved,
)
from .decomp import torso_and_frame, validate_tree_decomposition
from .errors import CfcolorError, ParseError
from .exact import brute_extendable, exact_chromatic, kind_params, verify_kind
from .ordering import color_by_plan
from .structured import (
    DegeneracyProfile,
    MinorColorRequest,
    build_layered_plan,
    build_product_plan,
    color_minor_degenerate,
    color_near_bounded_degree,
    near_bounded_degree_list_size,
    surface_profile,
)

KINDS = ("proper", "pcf", "pcfc", "icf", "icfc", "odd", "s-achieved")
STRATEGIES = ("minor-degenerate", "surface", "near-bounded", "layered", "product", "plan")


def _spec_from_arg(arg):
    if arg in (None, "cf"):
        return CONFLICT_FREE
    if arg == "odd":
        return ODD
    try:
        values = [int(x) for x in arg.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"bad S selector {arg!r}: use cf, odd, or a comma list") from None
    return AchievementSpec.from_set(values)


def _emit(text: str, output):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _build_parser():
    top = argparse.ArgumentParser(prog="cfcolor", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph from a standard family")
    gen.add_argument("--family", required=True,
                     choices=("path", "cycle", "complete", "complete-bipartite",
                              "grid", "gnp", "tree", "outerplanar", "triangulation",
                              "petersen"))
    gen.add_argument("--n", type=int, default=0)
    gen.add_argument("--a", type=int, default=0)
    gen.add_argument("--b", type=int, default=0)
    gen.add_argument("--rows", type=int, default=0)
    gen.add_argument("--cols", type=int, default=0)
    gen.add_argument("--p", type=float, default=0.5)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--format", choices=("text", "json"), default="text")
    gen.add_argument("--output")

    ver = sub.add_parser("verify", help="verify a coloring file against a graph")
    ver.add_argument("--input", required=True)
    ver.add_argument("--coloring", required=True)
    ver.add_argument("--kind", choices=KINDS, default="pcf")
    ver.add_argument("--S", dest="s_spec")
    ver.add_argument("--lists")

    exa = sub.add_parser("exact", help="exact chromatic parameter by brute force")
    exa.add_argument("--input", required=True)
    exa.add_argument("--kind", choices=KINDS, default="pcf")
    exa.add_argument("--S", dest="s_spec")
    exa.add_argument("--cap", type=int, default=12)
    exa.add_argument("--jobs", type=int, default=1)
    exa.add_argument("--output")

    col = sub.add_parser("color", help="run a constructive coloring strategy")
    col.add_argument("--input", required=True)
    col.add_argument("--strategy", choices=STRATEGIES, required=True)
    col.add_argument("--d", type=float)
    col.add_argument("--q", type=int, default=1)
    col.add_argument("--genus", type=int)
    col.add_argument("--td")
    col.add_argument("--lay")
    col.add_argument("--plan")
    col.add_argument("--factor")
    col.add_argument("--lists")
    col.add_argument("--list-size", dest="list_size", type=int)
    col.add_argument("--seed", type=int, default=0)
    col.add_argument("--output")

    comp = sub.add_parser("compose", help="fold brute-force torso colorers over a tree-decomposition")
    comp.add_argument("--input", required=True)
    comp.add_argument("--td", required=True)
    comp.add_argument("--S", dest="s_spec", default="cf")
    comp.add_argument("--lists")
    comp.add_argument("--list-size", dest="list_size", type=int)
    comp.add_argument("--output")

    tab = sub.add_parser("table", help="emit a regression table (CSV + PNG figure)")
    tab.add_argument("--suite", required=True)
    tab.add_argument("--seed", type=int, default=1)
    tab.add_argument("--output", required=True)
    return top


def _cmd_gen(args) -> int:
    fam = args.family
    if fam == "path":
        g = G.path(args.n)
    elif fam == "cycle":
        g = G.cycle(args.n)
    elif fam == "complete":
        g = G.complete(args.n)
    elif fam == "complete-bipartite":
        g = G.complete_bipartite(args.a, args.b)
    elif fam == "grid":
        g = G.grid(args.rows, args.cols)
    elif fam == "gnp":
        g = G.random_gnp(args.n, args.p, args.seed)
    elif fam == "tree":
        g = G.random_tree(args.n, args.seed)
    elif fam == "outerplanar":
        g = G.random_maximal_outerplanar(args.n, args.seed)
    elif fam == "triangulation":
        g = G.random_planar_triangulation(args.n, args.seed)
    else:
        g = G.petersen()
    text = gio.graph_to_text(g) if args.format == "text" else gio.dumps_canonical(gio.graph_to_json(g))
    _emit(text, args.output)
    return 0


def _cmd_verify(args) -> int:
    g = gio.load_graph(args.input)
    phi = gio.coloring_from_json(gio.load_json(args.coloring))
    if len(phi) != g.n:
        raise ParseError(f"coloring has {len(phi)} entries for {g.n} vertices")
    kind = args.kind.replace("-", "_")
    spec = _spec_from_arg(args.s_spec) if kind == "s_achieved" else None
    ok, msg = verify_kind(g, phi, kind, spec)
    if ok and args.lists:
        lists = gio.lists_from_json(gio.load_json(args.lists))
        if not respects_lists(phi, lists):
            ok, msg = False, "coloring leaves its lists"
    print(("VALID " if ok else "INVALID ") + msg)
    return 0 if ok else 1


def _cmd_exact(args) -> int:
    g = gio.load_graph(args.input)
    kind = args.kind.replace("-", "_")
    spec = _spec_from_arg(args.s_spec) if kind == "s_achieved" else None
    result = exact_chromatic(g, kind, spec=spec, cap=args.cap, jobs=args.jobs)
    # wall time is deliberately omitted: identical runs must emit identical bytes
    payload = {
        "kind": result.kind,
        "value": result.value,
        "colors": [result.coloring[v] for v in range(g.n)],
        "nodes": result.nodes,
    }
    _emit(gio.dumps_canonical(payload), args.output)
    return 0


def _resolve_lists(args, g, default_size):
    if args.lists:
        lists = gio.lists_from_json(gio.load_json(args.lists))
        if len(lists) != g.n:
            raise ParseError("list assignment does not match the graph")
        return lists
    size = args.list_size if args.list_size else default_size
    return uniform_lists(g.n, size)


def _cmd_color(args) -> int:
    g = gio.load_graph(args.input)
    strategy = args.strategy
    extra = {}
    if strategy == "minor-degenerate":
        if args.d is None:
            raise ParseError("--strategy minor-degenerate needs --d")
        profile = DegeneracyProfile(args.q, args.d)
        lists = _resolve_lists(args, g, profile.required_list_size)
        phi, _ = color_minor_degenerate(MinorColorRequest(g, lists, profile))
    elif strategy == "surface":
        if args.genus is None:
            raise ParseError("--strategy surface needs --genus")
        prof = surface_profile(args.genus)
        lists = _resolve_lists(args, g, prof.list_size)
        phi, _ = color_minor_degenerate(MinorColorRequest(g, lists, prof.profile))
        extra["list_size"] = prof.list_size
    elif strategy == "near-bounded":
        if args.d is None:
            raise ParseError("--strategy near-bounded needs --d")
        lists = _resolve_lists(args, g, near_bounded_degree_list_size(args.d))
        phi = color_near_bounded_degree(g, lists, args.d)
    elif strategy == "layered":
        if not args.td or not args.lay:
            raise ParseError("--strategy layered needs --td and --lay")
        td = gio.tree_decomposition_from_json(gio.load_json(args.td))
        lay = gio.layering_from_json(gio.load_json(args.lay))
        plan, w = build_layered_plan(g, td, lay)
        lists = _resolve_lists(args, g, max(8 * w - 1, 1))
        phi, _ = color_by_plan(g, plan, lists)
        extra["layered_width"] = w
    elif strategy == "product":
        if not args.td or not args.factor:
            raise ParseError("--strategy product needs --td (of the input) and --factor")
        td = gio.tree_decomposition_from_json(gio.load_json(args.td))
        q = gio.load_graph(args.factor)
        built = build_product_plan(g, td, q)
        g = built.graph
        lists = _resolve_lists(args, g, built.list_size)
        phi, _ = color_by_plan(g, built.plan, lists)
        extra["coordinates"] = [list(c) for c in built.coordinates]
        extra["list_size"] = built.list_size
    else:  # plan
        if not args.plan:
            raise ParseError("--strategy plan needs --plan")
        plan = gio.plan_from_json(gio.load_json(args.plan))
        lists = _resolve_lists(args, g, plan.required_list_size)
        phi, _ = color_by_plan(g, plan, lists)

    ok_p, bad = verify_proper(g, phi)
    rep = verify_s_achieved(g, phi, CONFLICT_FREE)
    if not ok_p or not rep.ok or not respects_lists(phi, lists):
        raise CfcolorError("internal: strategy output failed self-verification")
    payload = {
        "strategy": strategy,
        "n": g.n,
        "colors": [phi[v] for v in range(g.n)],
        "colors_used": len(set(phi.values())),
        "witness": [[v, rep.witness[v]] for v in sorted(rep.witness)],
    }
    payload.update(extra)
    _emit(gio.dumps_canonical(payload), args.output)
    return 0


def _cmd_compose(args) -> int:
    g = gio.load_graph(args.input)
    td = gio.tree_decomposition_from_json(gio.load_json(args.td))
    report = validate_tree_decomposition(g, td)
    if not report.ok:
        raise CfcolorError(f"invalid tree-decomposition: {report.violations}")
    spec = _spec_from_arg(args.s_spec)
    xi = td.adhesion
    default_size = max(len(b) for b in td.bags) + 2 * xi
    lists = _resolve_lists(args, g, default_size)
    colorers = {}
    for x in range(td.tree.n):
        torso, remap, frame = torso_and_frame(g, td, x)
        torso_lists = {remap[v]: lists[v] for v in td.bags[x]}
        torso_cliques = tuple(frozenset(remap[v] for v in member) for member in frame)
        colorers[x] = brute_extendable(
            torso, torso_cliques, torso_lists, xi, spec, cap=max(7, torso.n)
        )
    colorer = fold_tree_decomposition(g, td, colorers, lists, spec)
    phi, witness = colorer.extend(ExtendRequest.empty())
    ok_p, _ = verify_proper(g, phi)
    rep = verify_s_achieved(g, phi, spec)
    if not ok_p or not rep.ok or not respects_lists(phi, lists):
        raise CfcolorError("internal: composed output failed self-verification")
    payload = {
        "S": spec.name,
        "adhesion": xi,
        "colors": [phi[v] for v in range(g.n)],
        "colors_used": len(set(phi.values())),
        "witness": [[v, witness[v]] for v in sorted(witness)],
    }
    _emit(gio.dumps_canonical(payload), args.output)
    return 0


def _cmd_table(args) -> int:
    header, rows = tables.run_suite(args.suite, args.seed)
    csv_text = tables.rows_to_csv(header, rows)
    out = Path(args.output)
    out.write_text(csv_text, encoding="utf-8")
    png = out.with_suffix(".png")
    tables.render_figure(args.suite, header, rows, str(png))
    print(f"wrote {out} and {png}")
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "verify": _cmd_verify,
    "exact": _cmd_exact,
    "color": _cmd_color,
    "compose": _cmd_compose,
    "table": _cmd_table,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CfcolorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
