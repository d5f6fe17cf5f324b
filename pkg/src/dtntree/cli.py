"""Command line front end: ``dtntree <command> ...``.

Exit status is 0 on success, 1 on a computation or input error (or a failed
comparison), 2 on a usage error.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

import numpy as np

from .errors import DtnError
from .fixtures import ambiguity_examples
from .forward import dtn_matrix, partial_dtn
from .formats import (
    DEFAULT_PRECISION,
    format_graph,
    format_matrix,
    format_number,
    parse_graph,
    parse_matrix,
)
from .graph import DEFAULT_TOL, MetricGraph, equal_up_to_degree_two, suppress_degree_two, tree_distances
from .inverse import boundary_distances, invert_dtn


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _labels(arg: Optional[str]) -> Optional[list[str]]:
    if arg is None:
        return None
    return [x for x in arg.split(",") if x]


def describe_difference(g1: MetricGraph, g2: MetricGraph, precision: int = 6) -> list[str]:
    """Human-readable reasons why two trees are not equal up to degree-two vertices."""
    h1, h2 = suppress_degree_two(g1), suppress_degree_two(g2)
    lines = [
        f"vertices after suppression: {len(h1.vertices)} vs {len(h2.vertices)}",
        f"boundary vertices: {len(h1.boundary)} vs {len(h2.boundary)}",
    ]
    l1 = sorted(e.length for e in h1.edges)
    l2 = sorted(e.length for e in h2.edges)
    if len(l1) == len(l2):
        gap = max(abs(a - b) for a, b in zip(l1, l2))
        lines.append(f"largest gap between sorted edge lengths: {format_number(gap, precision)}")
    else:
        lines.append(f"edge counts differ: {len(l1)} vs {len(l2)}")
    if sorted(h1.boundary) == sorted(h2.boundary):
        labels = sorted(h1.boundary)
        d1, d2 = tree_distances(h1, labels), tree_distances(h2, labels)
        i, j = np.unravel_index(np.argmax(np.abs(d1 - d2)), d1.shape)
        lines.append(
            f"largest boundary distance gap: d({labels[i]},{labels[j]}) = "
            f"{format_number(d1[i, j], precision)} vs {format_number(d2[i, j], precision)}"
        )
    else:
        only1 = sorted(set(h1.boundary) - set(h2.boundary))
        only2 = sorted(set(h2.boundary) - set(h1.boundary))
        lines.append(f"boundary labels only in first: {only1}; only in second: {only2}")
    return lines


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tolerance")
    common.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")
    common.add_argument("--order", help="comma-separated boundary order")
    common.add_argument(
        "--precision", type=int, default=DEFAULT_PRECISION, help="significant digits in output"
    )

    parser = argparse.ArgumentParser(
        prog="dtntree",
        description="Dirichlet-to-Neumann matrices of metric graphs and tree reconstruction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forward", parents=[common], help="DtN matrix of a graph")
    p.add_argument("graph")
    p = sub.add_parser("partial-forward", parents=[common], help="DtN matrix on some leaves")
    p.add_argument("graph")
    p.add_argument("--keep", required=True, help="comma-separated boundary labels to keep")
    p = sub.add_parser("invert", parents=[common], help="reconstruct a tree from a DtN matrix")
    p.add_argument("matrix")
    p.add_argument("--check", action="store_true", help="reject inputs failing the four-point test")
    p = sub.add_parser("distances", parents=[common], help="boundary distances from a DtN matrix")
    p.add_argument("matrix")
    p = sub.add_parser("canonicalize", parents=[common], help="suppress degree-two vertices")
    p.add_argument("graph")
    p = sub.add_parser("compare", parents=[common], help="compare two trees")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--respect-labels", action="store_true", help="boundary labels must match")
    p = sub.add_parser("roundtrip", parents=[common], help="forward, invert and compare")
    p.add_argument("graph")
    sub.add_parser("examples", parents=[common], help="reproduce the three ambiguity examples")
    return parser


def _run(args: argparse.Namespace) -> int:
    out = sys.stdout
    if args.command == "forward":
        M = dtn_matrix(parse_graph(_read(args.graph)), _labels(args.order))
        out.write(format_matrix(M, args.precision, args.fmt))
    elif args.command == "partial-forward":
        M = partial_dtn(parse_graph(_read(args.graph)), _labels(args.keep))
        out.write(format_matrix(M, args.precision, args.fmt))
    elif args.command == "invert":
        M = parse_matrix(_read(args.matrix), "dtn")
        if args.order:
            M = M.permuted(_labels(args.order))
        tree = invert_dtn(M, tol=args.tol, check=args.check)
        out.write(format_graph(tree.to_graph(), args.precision, args.fmt))
    elif args.command == "distances":
        M = parse_matrix(_read(args.matrix), "dtn")
        if args.order:
            M = M.permuted(_labels(args.order))
        out.write(format_matrix(boundary_distances(M), args.precision, args.fmt))
    elif args.command == "canonicalize":
        g = suppress_degree_two(parse_graph(_read(args.graph)))
        out.write(format_graph(g, args.precision, args.fmt))
    elif args.command == "compare":
        g1, g2 = parse_graph(_read(args.graph1)), parse_graph(_read(args.graph2))
        if equal_up_to_degree_two(g1, g2, args.tol, args.respect_labels):
            out.write("equal up to degree-two vertices\n")
            return 0
        out.write("different\n")
        for line in describe_difference(g1, g2):
            out.write(f"  {line}\n")
        return 1
    elif args.command == "roundtrip":
        g = parse_graph(_read(args.graph))
        tree = invert_dtn(dtn_matrix(g, _labels(args.order)), tol=args.tol).to_graph()
        if equal_up_to_degree_two(tree, g, args.tol, respect_boundary_labels=True):
            out.write(
                f"roundtrip ok: {len(g.boundary)} boundary vertices, "
                f"{len(tree.vertices)} vertices after reconstruction\n"
            )
            return 0
        out.write("roundtrip mismatch\n")
        for line in describe_difference(tree, g):
            out.write(f"  {line}\n")
        return 1
    elif args.command == "examples":
        results = ambiguity_examples()
        for r in results:
            out.write(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}\n")
        return 0 if all(r.passed for r in results) else 1
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args)
    except (DtnError, OSError) as exc:
        print(f"dtntree {args.command}: error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
