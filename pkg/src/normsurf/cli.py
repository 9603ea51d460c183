"""Command-line front end.

Exit status: 0 success, 1 verification failure, 2 input error, 3 budget
saturation.  Output depends only on the inputs and budgets.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .boundary import curve_issues, pattern_issues
from .cone_enum import (
    DEFAULT_BUDGET,
    DEFAULT_MAX_NODES,
    brute_force_fundamentals,
    decompose,
    hilbert_basis,
)
from .errors import BudgetExceeded, NormalSurfaceError, VerificationError
from .normal_system import boundary_restrictions, boundary_trace, matching_equations
from .seifert import classify, theorem_check
from .subdivision import reduce_curve, subdivide
from .surface_geom import haken_sum, surface_report
from .triangulation import skeleton, validate

OK, VERIFY_FAILED, INPUT_ERROR, BUDGET = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _existing(text):
    if not Path(text).is_file():
        raise argparse.ArgumentTypeError(f"no such file: {text}")
    return text


def _emit(args, text, record):
    if args.format == "record":
        sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _system(args, tri):
    if args.pattern:
        pattern = formats.read("pattern", args.pattern)
        return boundary_restrictions(tri, pattern), pattern
    return matching_equations(tri), None


def _basis(args, sys_):
    return hilbert_basis(sys_, budget=args.budget, parallelism=args.orthant_parallelism)


def _vector(path, tri):
    return formats.read("vector", path, tet_count=tri.tet_count)


def _trace_record(trace):
    return {f"{t}.{f}": list(c) for (t, f), c in trace.items()}


def cmd_validate(args, tri):
    skel = skeleton(tri)
    issues = validate(tri)
    lines = [f"tetrahedra: {tri.tet_count}", f"edges: {skel.num_edges}", f"vertices: {skel.num_vertices}",
             f"boundary_faces: {len(skel.boundary_faces)}"]
    record = {"tetrahedra": tri.tet_count, "edges": skel.num_edges, "vertices": skel.num_vertices,
              "boundary_faces": [f"{t}.{f}" for t, f in skel.boundary_faces], "issues": []}
    if args.pattern:
        pattern = formats.read("pattern", args.pattern)
        issues = issues + pattern_issues(tri, pattern, skel)
    record["issues"] = [str(i) for i in issues]
    lines += [f"issue: {i}" for i in issues]
    lines.append("valid" if not issues else "invalid")
    _emit(args, "\n".join(lines) + "\n", record)
    return OK if not issues else INPUT_ERROR


def cmd_enumerate(args, tri):
    sys_, pattern = _system(args, tri)
    fs = _basis(args, sys_)
    if args.format == "record":
        record = {"system": sys_.digest(), "count": len(fs), "basis": [list(v) for v in fs]}
        if pattern is not None:
            record["classified"] = classify(tri, pattern, fs).as_record()
        _emit(args, "", record)
    else:
        sys.stdout.write(formats.format_fundamental_set(fs))
    return OK


def cmd_surface_info(args, tri):
    v = _vector(args.vector, tri)
    rep = surface_report(tri, v)
    record = dict(rep.as_record(), boundary_trace=_trace_record(boundary_trace(tri, v)))
    _emit(args, rep.as_text(), record)
    return OK


def cmd_sum(args, tri):
    u, v = _vector(args.first, tri), _vector(args.second, tri)
    sys_, _ = _system(args, tri)
    w = haken_sum(tri, sys_, u, v)
    _emit(args, formats.format_vector(w), {"sum": list(w)})
    return OK


def cmd_decompose(args, tri):
    sys_, _ = _system(args, tri)
    v = _vector(args.vector, tri)
    dec = decompose(sys_, _basis(args, sys_), v, tri)
    text = "".join(f"{k} x {' '.join(map(str, vec))}\n" for vec, k in dec)
    _emit(args, text, {"vector": list(v), "summands": [{"vector": list(vec), "multiplicity": k}
                                                        for vec, k in dec]})
    return OK


def cmd_subdivide(args, tri):
    curve = formats.read("curve", args.curve)
    issues = curve_issues(tri, curve)
    if issues:
        raise _Fail(INPUT_ERROR, "boundary curve is not normal: " + "; ".join(map(str, issues)))
    before = curve.max_arcs()
    if args.until_pattern:
        stages = list(reduce_curve(tri, curve))
        new_tri, new_curve = stages[-1]
        steps = len(stages) - 1
    else:
        new_tri, new_curve = subdivide(tri, curve)
        steps = 1
    after = new_curve.max_arcs()
    prefix = Path(args.output) if args.output else Path(args.triangulation).with_suffix("")
    prefix = prefix.with_name(prefix.name + ("-reduced" if args.until_pattern else "-sub"))
    tri_path, out_path = prefix.with_suffix(".tri"), prefix.with_suffix(".crv")
    tri_path.write_text(formats.format_triangulation(new_tri))
    if args.until_pattern:
        out_path = prefix.with_suffix(".pat")
        out_path.write_text(formats.format_pattern(new_curve.to_pattern(new_tri)))
    else:
        out_path.write_text(formats.format_curve(new_curve))
    text = (f"subdivisions: {steps}\ntetrahedra: {new_tri.tet_count}\n"
            f"max_arcs_per_face: {before} -> {after}\n"
            f"wrote: {tri_path}\nwrote: {out_path}\n")
    _emit(args, text, {"subdivisions": steps, "tetrahedra": new_tri.tet_count,
                       "max_arcs_before": before, "max_arcs_after": after,
                       "files": [str(tri_path), str(out_path)]})
    return OK


def cmd_theorem_check(args, tri):
    if not args.pattern:
        raise _Fail(INPUT_ERROR, "theorem-check needs --pattern")
    pattern = formats.read("pattern", args.pattern)
    v = _vector(args.vector, tri)
    sys_ = boundary_restrictions(tri, pattern)
    try:
        verdict = theorem_check(tri, pattern, v, basis=_basis(args, sys_), strict=True)
    except VerificationError as exc:
        verdict = exc.verdict
        _emit(args, verdict.as_text(), verdict.as_record())
        return VERIFY_FAILED
    _emit(args, verdict.as_text(), verdict.as_record())
    return OK


def cmd_oracle_check(args, tri):
    sys_, _ = _system(args, tri)
    main = _basis(args, sys_)
    oracle = brute_force_fundamentals(sys_, args.bound, max_nodes=args.max_nodes)
    mine, theirs = set(map(tuple, main.bounded(args.bound))), oracle.as_set()
    missing = sorted(theirs - mine)
    extra = sorted(mine - theirs)
    lines = [f"system: {sys_.digest()}", f"bound: {args.bound}",
             f"hilbert_basis: {len(main)} ({len(mine)} within bound)", f"brute_force: {len(theirs)}"]
    lines += [f"missing: {' '.join(map(str, v))}" for v in missing]
    lines += [f"extra: {' '.join(map(str, v))}" for v in extra]
    agree = not missing and not extra
    lines.append("agree" if agree else "DISAGREE")
    _emit(args, "\n".join(lines) + "\n", {
        "system": sys_.digest(), "bound": args.bound, "hilbert_basis": len(main), "within_bound": len(mine),
        "brute_force": len(theirs), "missing": [list(v) for v in missing], "extra": [list(v) for v in extra],
        "agree": agree})
    return OK if agree else VERIFY_FAILED


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "record"), default="text",
                        help="plain text or one JSON record")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="cap on completion candidates per block")
    common.add_argument("--orthant-parallelism", type=_positive, default=1, metavar="N",
                        help="worker processes for independent blocks")
    pattern = argparse.ArgumentParser(add_help=False)
    pattern.add_argument("--pattern", type=_existing, help="boundary pattern (.pat)")

    parser = argparse.ArgumentParser(prog="normsurf", description="Normal surface enumeration and checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, parents, help_):
        p = sub.add_parser(name, parents=parents, help=help_)
        p.add_argument("triangulation", type=_existing, help="triangulation (.tri)")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, [common, pattern], "check a triangulation (and pattern)")
    add("enumerate", cmd_enumerate, [common, pattern], "list the fundamental solutions")
    add("surface-info", cmd_surface_info, [common], "topology of one normal surface").add_argument(
        "vector", type=_existing)
    p = add("sum", cmd_sum, [common, pattern], "Haken sum of two compatible surfaces")
    p.add_argument("first", type=_existing)
    p.add_argument("second", type=_existing)
    add("decompose", cmd_decompose, [common, pattern], "write a solution over the fundamentals").add_argument(
        "vector", type=_existing)
    p = add("subdivide", cmd_subdivide, [common], "subdivide, carrying a boundary curve along")
    p.add_argument("curve", type=_existing, help="boundary curve (.crv)")
    p.add_argument("--until-pattern", action="store_true",
                   help="repeat until every face has at most one arc; writes a .pat")
    p.add_argument("-o", "--output", help="output path prefix")
    add("theorem-check", cmd_theorem_check, [common, pattern],
        "check how a one-circle solution decomposes").add_argument("vector", type=_existing)
    p = add("oracle-check", cmd_oracle_check, [common, pattern], "compare against brute force")
    p.add_argument("--bound", type=_positive, default=2, help="coordinate bound for brute force")
    p.add_argument("--max-nodes", type=_positive, default=DEFAULT_MAX_NODES, help="brute-force node cap")
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        tri = formats.read("triangulation", args.triangulation)
        return args.func(args, tri)
    except _Fail as exc:
        print(f"normsurf: {exc}", file=sys.stderr)
        return exc.code
    except BudgetExceeded as exc:
        print(f"normsurf: budget exhausted, no result: {exc}", file=sys.stderr)
        return BUDGET
    except VerificationError as exc:
        print(f"normsurf: {exc}", file=sys.stderr)
        return VERIFY_FAILED
    except NormalSurfaceError as exc:
        print(f"normsurf: {exc}", file=sys.stderr)
        return INPUT_ERROR


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
