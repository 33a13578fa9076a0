"""Command line entry point: ``kfox <subcommand> ...``.

Payloads go to stdout (JSON or graph6); diagnostics go to stderr. Exit status
is 0 on success, 1 when ``verify`` finds a violation or cannot conclude, and
2 on usage or input errors (including a tree enumeration that exceeds --cap).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from kfox import constructions
from kfox.bits import members
from kfox.connectivity import (
    PreconditionError,
    contractible_edges,
    smallest_separating_sets,
    vertex_connectivity,
)
from kfox.formats import FormatError, from_edge_list, from_graph6, parse_edge_pairs, to_dot, to_edge_list, to_graph6
from kfox.fragment_systems import (
    build_r_family,
    classify_fragment,
    color_tree_edges,
    s_atoms,
    s_ends,
    s_fragments,
    tree_edge_family,
)
from kfox.graph import Graph, GraphError, complete_graph, cycle_graph
from kfox.harness import THEOREMS, default_jobs, verify
from kfox.trees import (
    DEFAULT_TREE_CAP,
    RootedTree,
    TruncatedEnumeration,
    dfs_tree_masks,
    find_fox_certificate,
    min_contractible_over,
    spanning_tree_masks,
)


class UsageError(Exception):
    pass


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _read_source(args: argparse.Namespace) -> str:
    graph = getattr(args, "graph", None)
    path = getattr(args, "file", None)
    if graph not in (None, "-") and path:
        raise UsageError("give either a graph argument or --file, not both")
    if path:
        with open(path) as fh:
            return fh.read()
    if graph not in (None, "-"):
        return graph
    return sys.stdin.read()


def _first_line(text: str) -> str:
    for line in text.splitlines():
        if line.strip():
            return line.strip()
    raise FormatError("no graph on input", 0)


def _load_graph(args: argparse.Namespace) -> Graph:
    text = _read_source(args)
    fmt = getattr(args, "from_format", "g6")
    if fmt == "edges":
        return from_edge_list(text)
    return from_graph6(_first_line(text))


def _k_or_kappa(g: Graph, k: Optional[int]) -> int:
    return vertex_connectivity(g) if k is None else k


def parse_k_range(text: str) -> list[int]:
    """``"4"``, ``"3,5"`` or ``"3..5"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad k range {text!r}") from None


def _edges_json(edges) -> list:
    return [list(e) for e in edges]


# subcommands


def cmd_analyze(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    kappa = vertex_connectivity(g)
    k = _k_or_kappa(g, args.k)
    good = contractible_edges(g, k)
    bad = [e for e in g.edges if e not in set(good)]
    _emit({
        "graph6": to_graph6(g),
        "order": g.n,
        "size": g.size,
        "kappa": kappa,
        "complete": g.is_complete(),
        "separator_count": len(smallest_separating_sets(g)),
        "separators": [members(t) for t in smallest_separating_sets(g)],
        "k": k,
        "contractible": _edges_json(good),
        "non_contractible": _edges_json(bad),
    })
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    fam, params = args.family, args.params

    def ints(count: int) -> list[int]:
        if len(params) != count:
            raise UsageError(f"gen {fam} takes {count} integer argument(s)")
        try:
            return [int(p) for p in params]
        except ValueError:
            raise UsageError(f"gen {fam} takes integer arguments") from None

    if fam == "wheel":
        g = constructions.wheel(*ints(1))
    elif fam == "prism":
        ints(0)
        g = constructions.prism()
    elif fam == "prism-plus":
        ints(0)
        g = constructions.prism_plus()
    elif fam == "lex-apex":
        g = constructions.cycle_lex_apex(*ints(2))
    elif fam == "complete":
        g = complete_graph(*ints(1))
    elif fam == "cycle":
        g = cycle_graph(*ints(1))
    elif fam == "expand":
        if len(params) > 1:
            raise UsageError("gen expand takes one graph6 argument (or stdin)")
        src = params[0] if params and params[0] != "-" else sys.stdin.read()
        g = constructions.triangle_expand(from_graph6(_first_line(src))).graph
    else:
        raise UsageError(f"unknown family {fam!r}")
    sys.stdout.write(to_graph6(g) + "\n")
    return 0


def cmd_fox(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    cert = find_fox_certificate(g, args.k)
    if cert is None:
        _emit({"graph6": to_graph6(g), "k": args.k, "fox": False, "message": "not a fox"})
    else:
        _emit({
            "graph6": to_graph6(g),
            "k": args.k,
            "fox": True,
            "tree": _edges_json(cert.tree.edges),
            "contractible_count": cert.contractible_count,
        })
    return 0


def cmd_trees(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    mode = "dfs-only" if args.mode == "dfs" else "all-spanning"
    if args.min:
        k = _k_or_kappa(g, args.k)
        count, tree = min_contractible_over(g, k, mode, cap=args.cap)
        _emit({"graph6": to_graph6(g), "k": k, "mode": args.mode, "min": count, **tree.as_dict()})
        return 0
    if mode == "dfs-only":
        n = sum(1 for _ in dfs_tree_masks(g, args.cap))
    else:
        n = sum(1 for _ in spanning_tree_masks(g, args.cap))
    _emit({"graph6": to_graph6(g), "mode": args.mode, "count": n})
    return 0


def cmd_fragments(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    with open(args.tree) as fh:
        q = RootedTree.make(g.n, parse_edge_pairs(fh.read()), args.root)
    k = _k_or_kappa(g, args.k)
    emask = q.mask(g)
    fam = tree_edge_family(g, emask)

    def sfrag(sf) -> dict:
        return {**sf.fragment.as_dict(), "witness": members(sf.witness)}

    frs = s_fragments(g, fam)
    classes = []
    for sf in frs:
        c = classify_fragment(g, emask, sf.fragment, k)
        classes.append({
            "body": members(sf.fragment.body),
            "size_class": c.size_class,
            "quality": c.quality,
            "very_good": c.very_good,
        })
    colors = color_tree_edges(g, emask, k)
    _emit({
        "graph6": to_graph6(g),
        "k": k,
        "tree": _edges_json(q.edges),
        "root": q.root,
        "s_fragments": [sfrag(sf) for sf in frs],
        "s_ends": [sfrag(sf) for sf in s_ends(g, fam)],
        "s_atoms": [sfrag(sf) for sf in s_atoms(g, fam)],
        "r_family": [members(s) for s in build_r_family(g, emask, k).sets],
        "colors": [{"edge": list(e), "color": c} for e, c in colors.items()],
        "classifications": classes,
    })
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    corpus = None
    if args.corpus:
        with open(args.corpus) as fh:
            corpus = [from_graph6(line) for line in fh if line.strip()]
    report = verify(
        args.theorem,
        corpus=corpus,
        ks=args.k,
        max_n=args.max_n,
        cap=args.cap,
        jobs=args.jobs,
        weaken=args.negative_control,
    )
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for g6, note in report.inconclusive_graphs:
        print(f"inconclusive: {g6}: {note}", file=sys.stderr)
    print(
        f"{args.theorem}: {report.checked} checked, {report.skipped} skipped, "
        f"{report.inconclusive} inconclusive, {len(report.violations)} violations",
        file=sys.stderr,
    )
    return 0 if report.ok else 1


def cmd_convert(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    if args.to_format == "g6":
        sys.stdout.write(to_graph6(g) + "\n")
    elif args.to_format == "edges":
        sys.stdout.write(to_edge_list(g))
    else:
        k = args.k
        dashed = contractible_edges(g, k) if k is not None else ()
        sys.stdout.write(to_dot(g, contractible=dashed))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kfox", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def graph_input(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("graph", nargs="?", help="graph6 string; '-' or omitted reads stdin")
        sp.add_argument("--file", help="read the graph from this file instead")

    sp = sub.add_parser("analyze", help="connectivity, separators and contractible edges")
    graph_input(sp)
    sp.add_argument("--k", type=int, help="contractibility parameter (default: kappa)")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("gen", help="emit a construction as graph6")
    sp.add_argument("family", choices=["wheel", "prism", "prism-plus", "lex-apex", "complete", "cycle", "expand"])
    sp.add_argument("params", nargs="*")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("fox", help="find a spanning tree without k-contractible edges")
    graph_input(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_fox)

    sp = sub.add_parser("trees", help="count trees or minimise contractible tree edges")
    graph_input(sp)
    sp.add_argument("--mode", choices=["all", "dfs"], default="all")
    sp.add_argument("--k", type=int)
    sp.add_argument("--min", action="store_true", help="report the minimum and a witness tree")
    sp.add_argument("--cap", type=int, default=DEFAULT_TREE_CAP)
    sp.set_defaults(func=cmd_trees)

    sp = sub.add_parser("fragments", help="S-fragments, ends, atoms and colours for a tree")
    graph_input(sp)
    sp.add_argument("--tree", required=True, help="edge-list file of a spanning tree")
    sp.add_argument("--root", type=int)
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_fragments)

    sp = sub.add_parser("verify", help="exhaustive theorem sweep")
    sp.add_argument("--theorem", required=True, choices=THEOREMS)
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--corpus", help="graph6 file, one graph per line")
    sp.add_argument("--k", type=parse_k_range, help="e.g. 4, 3,5 or 3..5")
    sp.add_argument("--out", help="write the JSON report here instead of stdout")
    sp.add_argument("--cap", type=int, default=DEFAULT_TREE_CAP)
    sp.add_argument("--jobs", type=int, default=default_jobs())
    sp.add_argument("--negative-control", action="store_true", help="drop the hypothesis filter")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("convert", help="convert between graph6, edge lists and DOT")
    graph_input(sp)
    sp.add_argument("--from", dest="from_format", choices=["g6", "edges"], default="g6")
    sp.add_argument("--to", dest="to_format", choices=["g6", "edges", "dot"], required=True)
    sp.add_argument("--k", type=int, help="mark k-contractible edges dashed in DOT output")
    sp.set_defaults(func=cmd_convert)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"kfox: malformed input: {exc}", file=sys.stderr)
        return 2
    except (UsageError, PreconditionError, GraphError, OSError, TruncatedEnumeration) as exc:
        print(f"kfox: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
