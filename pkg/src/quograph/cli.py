"""Command-line interface.

Subcommands: example (write a built-in bundle to disk), quotient (build a
quotient graph from files), spectrum (eigenvalue scan to CSV), verify
(isospectrality check between two graph files), rep (induce / restrict /
check-iso / character).  Exit codes: 0 success, 1 verification failure,
2 input or validation error, 3 solver diagnostic failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Dict, Optional

import numpy as np

from .actions import validate_action
from .examples import bundle as example_bundle
from .examples import theta_rep
from .fileio import (
    dumps_canonical,
    graph_to_obj,
    load_action,
    load_graph,
    load_rep,
    quotient_provenance_obj,
    save_action,
    save_graph,
    save_group,
    save_json,
    save_rep,
    save_spectrum_csv,
    spectrum_settings_obj,
)
from .groups import parent_of
from .quotient import build_quotient, classify, make_recipe, split_vertices
from .reps import character, induce, is_isomorphic, restrict
from .groups import SubgroupRef
from .spectral import SolverOptions, compare_spectra, find_spectrum

__all__ = ["main"]


def _fmt_complex(z: complex) -> str:
    if abs(z.imag) < 1e-14:
        return f"{z.real:.10g}"
    return f"{z.real:.10g}{z.imag:+.10g}i"


def cmd_example(args: argparse.Namespace) -> int:
    params: Dict[str, float] = {}
    for key in ("a", "b", "c", "theta", "l", "l1", "l2", "l3"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    try:
        ex = example_bundle(args.name, **params)
    except TypeError:
        print(
            f"error: parameters {sorted(params)} do not fit example {args.name!r}",
            file=sys.stderr,
        )
        return 2
    os.makedirs(args.out, exist_ok=True)
    save_group(parent_of(ex.action.group), os.path.join(args.out, "group.json"))
    save_graph(ex.graph, os.path.join(args.out, "graph.json"))
    save_action(
        ex.action,
        os.path.join(args.out, "action.json"),
        group_ref="group.json",
        graph_ref="graph.json",
    )
    for name, rep in ex.reps.items():
        save_rep(rep, os.path.join(args.out, f"rep-{name}.json"), group_ref="group.json")
    save_json(ex.params, os.path.join(args.out, "params.json"))
    print(
        f"{ex.name}: {len(ex.graph.vertices)} vertices, {len(ex.graph.edges)} edges, "
        f"{len(ex.reps)} representations -> {args.out}"
    )
    return 0


def cmd_quotient(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    action = load_action(args.action)
    if dumps_canonical(graph_to_obj(graph)) != dumps_canonical(graph_to_obj(action.graph)):
        print("error: --graph does not match the graph the action acts on", file=sys.stderr)
        return 2
    report = validate_action(action)
    if not report.ok:
        print("error: action is not valid:", file=sys.stderr)
        for f in report.failures[:20]:
            print(f"  {f}", file=sys.stderr)
        return 2
    if (args.rep is None) == (args.theta is None):
        print("error: pass exactly one of --rep or --theta", file=sys.stderr)
        return 2
    if args.rep is not None:
        rep = load_rep(args.rep)
    else:
        rep = theta_rep(args.theta, parent_of(action.group))
    result = build_quotient(make_recipe(action, rep))
    out_graph = result.graph
    if args.split_vertices:
        out_graph = split_vertices(out_graph)
    cls = classify(result)
    os.makedirs(args.out, exist_ok=True)
    save_graph(out_graph, os.path.join(args.out, "quotient-graph.json"))
    save_json(quotient_provenance_obj(result), os.path.join(args.out, "provenance.json"))
    print(
        f"quotient: {len(out_graph.vertices)} vertices, {len(out_graph.edges)} edges; "
        f"classification: {cls.verdict}"
    )
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    opts = SolverOptions(scan_step=args.scan_step, accept_tol=args.tol)
    try:
        spec = find_spectrum(graph, args.kmax, opts)
    except ValueError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 3
    save_spectrum_csv(spec, args.out)
    base = args.out[:-4] if args.out.endswith(".csv") else args.out
    save_json(spectrum_settings_obj(spec), base + ".settings.json")
    zero = f" + zero mode x{spec.zero_mode_multiplicity}" if spec.has_zero_mode else ""
    print(f"{spec.count()} eigenvalues up to k = {args.kmax:g}{zero} -> {args.out}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    ga = load_graph(args.graph_a)
    gb = load_graph(args.graph_b)
    opts = SolverOptions(scan_step=args.scan_step)
    try:
        sa = find_spectrum(ga, args.kmax, opts)
        sb = find_spectrum(gb, args.kmax, opts)
    except ValueError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 3
    report = compare_spectra(sa, sb, args.tol)
    print(f"matched {len(report.matched)} eigenvalue pairs, max deviation {report.max_deviation:.3e}")
    if report.unmatched_a:
        print(f"only in {args.graph_a}: {[round(k, 9) for k in report.unmatched_a]}")
    if report.unmatched_b:
        print(f"only in {args.graph_b}: {[round(k, 9) for k in report.unmatched_b]}")
    if report.zero_mode_mismatch:
        print(
            f"note: zero-mode multiplicities differ "
            f"({sa.zero_mode_multiplicity} vs {sb.zero_mode_multiplicity})"
        )
    print("verdict: " + ("isospectral" if report.passed else "NOT isospectral") + f" at {args.tol:g}")
    return 0 if report.passed else 1


def cmd_rep(args: argparse.Namespace) -> int:
    rep = load_rep(args.rep if args.action != "check-iso" else args.rep_a)
    if args.action == "induce":
        out = induce(rep, parent_of(rep.group))
        save_rep(out, args.out)
        print(f"induced representation of dimension {out.dim} -> {args.out}")
        return 0
    if args.action == "restrict":
        elems = tuple(int(x) for x in args.elements.split(","))
        H = SubgroupRef(parent_of(rep.group), elems)
        out = restrict(rep, H)
        save_rep(out, args.out)
        print(f"restriction to a subgroup of order {H.order} -> {args.out}")
        return 0
    if args.action == "check-iso":
        other = load_rep(args.rep_b)
        same = is_isomorphic(rep, other)
        print("isomorphic" if same else "not isomorphic")
        return 0 if same else 1
    chi = character(rep)
    for g, val in zip(rep.group.elements(), chi.values):
        print(f"{rep.group.name(g)}: {_fmt_complex(val)}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quograph",
        description="Quotient quantum graphs and their spectra.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("example", help="write a built-in example bundle")
    ex.add_argument("name", choices=["square-d4", "interval-z2", "ygraph"])
    for key in ("a", "b", "c", "theta", "l", "l1", "l2", "l3"):
        ex.add_argument(f"--{key}", type=float, default=None)
    ex.add_argument("--out", required=True)
    ex.set_defaults(func=cmd_example)

    q = sub.add_parser("quotient", help="build a quotient graph")
    q.add_argument("--graph", required=True)
    q.add_argument("--action", required=True)
    q.add_argument("--rep", default=None)
    q.add_argument("--theta", type=float, default=None)
    q.add_argument("--split-vertices", action="store_true")
    q.add_argument("--out", required=True)
    q.set_defaults(func=cmd_quotient)

    s = sub.add_parser("spectrum", help="compute a spectrum to CSV")
    s.add_argument("--graph", required=True)
    s.add_argument("--kmax", type=float, required=True)
    s.add_argument("--scan-step", type=float, default=None)
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_spectrum)

    v = sub.add_parser("verify", help="compare the spectra of two graphs")
    v.add_argument("--graph-a", required=True)
    v.add_argument("--graph-b", required=True)
    v.add_argument("--kmax", type=float, required=True)
    v.add_argument("--tol", type=float, default=1e-7)
    v.add_argument("--scan-step", type=float, default=None)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("rep", help="representation utilities")
    rsub = r.add_subparsers(dest="action", required=True)
    ri = rsub.add_parser("induce")
    ri.add_argument("--rep", required=True)
    ri.add_argument("--out", required=True)
    ri.set_defaults(func=cmd_rep)
    rr = rsub.add_parser("restrict")
    rr.add_argument("--rep", required=True)
    rr.add_argument("--elements", required=True, help="comma-separated element indices")
    rr.add_argument("--out", required=True)
    rr.set_defaults(func=cmd_rep)
    rc = rsub.add_parser("check-iso")
    rc.add_argument("--rep-a", required=True)
    rc.add_argument("--rep-b", required=True)
    rc.set_defaults(func=cmd_rep)
    rch = rsub.add_parser("character")
    rch.add_argument("--rep", required=True)
    rch.set_defaults(func=cmd_rep)
    return p


def main(argv: Optional[list] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
