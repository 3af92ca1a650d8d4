"""Command-line front end.

Exit codes: 0 success, 1 mathematical negative (e.g. no copula in the
interval, not an imprecise pair, a failed reproduction check), 2 bad input.
Grid arguments are file paths (text or JSON) or ``fixtures:NAME``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import fixtures as fx
from . import gridio
from .axioms import validate_function, validate_imprecise_pair
from .defects import corner_defects, drop_O, iterate_pair, lift_M
from .feasibility import (
    EmptyInterval,
    OrderViolated,
    check_extremality,
    negative_witness,
    p_main,
    p_opposite,
    sandwich_greedy,
    sandwich_lp_oracle,
)
from .grid import GridError, GridFunction, cell_volume_matrix, uniform_mesh
from .gridio import fmt
from .heatmap import write_heatmap
from .transform import extend, reflect_sigma, restrict

EXIT_OK, EXIT_NEGATIVE, EXIT_BAD_INPUT = 0, 1, 2


class BadInput(Exception):
    pass


def load_grid(spec: str) -> GridFunction:
    if spec.startswith("fixtures:"):
        try:
            return fx.get(spec.split(":", 1)[1])
        except (KeyError, ValueError) as exc:
            raise BadInput(str(exc)) from None
    path = Path(spec)
    if not path.exists():
        raise BadInput(f"no such file: {spec}")
    return gridio.load(path)


def parse_point(text: str) -> tuple[int, int]:
    try:
        i, j = (int(t) for t in text.split(","))
    except ValueError:
        raise BadInput(f"point must be 'i,j', got {text!r}") from None
    return i, j


def check_point(F: GridFunction, pt) -> None:
    if not (0 <= pt[0] <= F.mesh.p and 0 <= pt[1] <= F.mesh.q):
        raise BadInput(f"point {pt} outside the {F.mesh.p}x{F.mesh.q}-cell mesh")


def _pval(v):
    return fmt(v) if isinstance(v, Fraction) else ("inf" if v > 0 else "-inf")


class Out:
    def __init__(self, args):
        self.fmt = args.format
        self.denom = getattr(args, "denom", None)
        self.heatmap = getattr(args, "heatmap", None)

    def grid(self, F: GridFunction, label: str = ""):
        if self.heatmap:
            write_heatmap(F, self.heatmap)
        if self.fmt == "json":
            print(json.dumps(gridio.to_json_obj(F, self.denom)))
        else:
            if label:
                print(f"# {label}")
            sys.stdout.write(gridio.to_text(F, self.denom))

    def obj(self, d: dict):
        if self.fmt == "json":
            print(json.dumps(d, indent=2))
        else:
            for k, v in d.items():
                print(f"{k}: {v if not isinstance(v, (dict, list)) else json.dumps(v)}")


def cmd_validate(args, out):
    F = load_grid(args.grid)
    rep = validate_function(F, args.cap)
    d = rep.as_dict()
    if out.fmt == "text":
        print(f"quasi-copula: {'yes' if rep.is_discrete_quasi_copula else 'no'}")
        print(f"copula: {'yes' if rep.is_discrete_copula else 'no'}")
        for w in rep.witnesses:
            print(f"  {w.tag} at {w.where}: {fmt(w.value)}")
    else:
        out.obj(d)
    return EXIT_OK if rep.is_discrete_quasi_copula else EXIT_NEGATIVE


def cmd_pair_validate(args, out):
    rep = validate_imprecise_pair(load_grid(args.A), load_grid(args.B), args.cap)
    out.obj(rep.as_dict())
    return EXIT_OK if rep.is_imprecise_copula else EXIT_NEGATIVE


def cmd_extend(args, out):
    F = load_grid(args.grid)
    try:
        x, y = (Fraction(t) for t in args.at.split(","))
    except ValueError:
        raise BadInput(f"--at must be 'x,y', got {args.at!r}") from None
    v = extend(F)(x, y)
    out.obj({"x": fmt(x), "y": fmt(y), "value": fmt(v)})
    return EXIT_OK


def cmd_restrict(args, out):
    F = load_grid(args.grid)
    mesh = uniform_mesh(int(args.mesh)) if args.mesh.isdigit() else gridio.load_mesh(args.mesh)
    out.grid(restrict(extend(F), mesh))
    return EXIT_OK


def cmd_reflect(args, out):
    out.grid(reflect_sigma(load_grid(args.grid), args.axis))
    return EXIT_OK


def cmd_defect(args, out):
    F = load_grid(args.grid)
    b = corner_defects(F)
    fields = {"M": b.d_M, "O": b.d_O, "ne": b.d_ne, "sw": b.d_sw, "nw": b.d_nw, "se": b.d_se}
    if args.field != "all":
        out.grid(fields[args.field], f"d_{args.field}")
    elif out.fmt == "json":
        out.obj({k: gridio.to_json_obj(v, out.denom) for k, v in fields.items()})
    else:
        for k, v in fields.items():
            out.grid(v, f"d_{k}")
    return EXIT_OK


def cmd_transform(args, out):
    F = load_grid(args.grid)
    out.grid(lift_M(F) if args.op == "M" else drop_O(F))
    return EXIT_OK


def cmd_iterate(args, out):
    A, B = load_grid(args.A), load_grid(args.B)
    if not validate_imprecise_pair(A, B, cap=0).is_imprecise_copula:
        print("error: input is not a discrete imprecise copula", file=sys.stderr)
        return EXIT_BAD_INPUT
    tr = iterate_pair(A, B, args.max_steps, check=False)
    if args.dump_trace:
        d = Path(args.dump_trace)
        d.mkdir(parents=True, exist_ok=True)
        for n, (a, b) in enumerate(tr.pairs):
            (d / f"A{n:03d}.txt").write_text(gridio.to_text(a, out.denom))
            (d / f"B{n:03d}.txt").write_text(gridio.to_text(b, out.denom))
    a, b = tr.limit
    out.obj({
        "converged": tr.converged,
        "steps": tr.steps,
        "collapsed": tr.collapsed,
        "stalled": tr.stalled,
        "limit_A": gridio.to_json_obj(a, out.denom),
        "limit_B": gridio.to_json_obj(b, out.denom),
    })
    return EXIT_OK


def cmd_sandwich(args, out):
    A, B = load_grid(args.A), load_grid(args.B)
    res = sandwich_greedy(A, B) if args.method == "greedy" else sandwich_lp_oracle(A, B)
    if out.fmt == "text":
        if res.feasible:
            print(f"copula found ({res.method})")
            out.grid(res.copula)
        else:
            print(f"no copula between A and B ({res.method}); L = {fmt(res.witness.l_value)}")
            for r, n in res.witness.union:
                print(f"  {n} x [{r.i1},{r.i2}]x[{r.j1},{r.j2}]")
    else:
        out.obj(res.as_dict())
    return EXIT_OK if res.feasible else EXIT_NEGATIVE


def cmd_witness(args, out):
    w = negative_witness(load_grid(args.A), load_grid(args.B))
    out.obj({"witness": w.as_dict() if w else None})
    return EXIT_NEGATIVE if w else EXIT_OK


def cmd_pvalues(args, out):
    A, B = load_grid(args.A), load_grid(args.B)
    pts = [parse_point(args.point)] if args.point else list(A.mesh.points())
    for pt in pts:
        check_point(A, pt)
    fn = p_main if args.anchor == "M" else p_opposite
    rows = [{"point": list(pt), "value": _pval(fn(A, B, pt)), "gap": fmt(B[pt] - A[pt])}
            for pt in pts]
    out.obj({"anchor": args.anchor, "values": rows})
    return EXIT_OK


def cmd_extremal(args, out):
    A, B = load_grid(args.A), load_grid(args.B)
    try:
        rep = check_extremality(A, B)
    except EmptyInterval as exc:
        out.obj({"error": str(exc)})
        return EXIT_NEGATIVE
    out.obj(rep.as_dict())
    return EXIT_OK if rep.upper_extremal and rep.lower_extremal else EXIT_NEGATIVE


def cmd_fixtures(args, out):
    if not args.name:
        for n in fx.names():
            print(n)
        return EXIT_OK
    if args.name == "ex10-V":
        vols = cell_volume_matrix(fx.ex10_A())
        if out.fmt == "json":
            print(json.dumps({"denom": 50, "values": [[int(v * 50) for v in r] for r in vols]}))
        else:
            for r in vols:
                print(" ".join(str(int(v * 50)).rjust(3) for v in r))
        return EXIT_OK
    try:
        F = fx.get(args.name)
    except (KeyError, ValueError) as exc:
        raise BadInput(str(exc)) from None
    if out.denom is None:
        out.denom = fx.DENOMS.get(args.name)
    out.grid(F)
    return EXIT_OK


def cmd_reproduce(args, out):
    from .reproduce import checks

    results = checks()
    for c in results:
        status = "PASS" if c.passed else "FAIL"
        extra = f"  ({c.detail})" if c.detail else ""
        print(f"[{status}] {c.name}{extra}  [{c.seconds:.2f}s]")
    ok = all(c.passed for c in results)
    print(f"{sum(c.passed for c in results)}/{len(results)} checks passed")
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="impcop", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--denom", type=int, default=None,
                        help="print values as integers over this denominator")
    common.add_argument("--heatmap", metavar="PATH",
                        help="also write a heatmap (.pgm node values, .ppm cell volumes)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, *grids, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        for g in grids:
            p.add_argument(g)
        p.set_defaults(func=fn)
        return p

    p = add("validate", cmd_validate, "grid", help="axiom report for one grid function")
    p.add_argument("--cap", type=int, default=16)
    p = add("pair-validate", cmd_pair_validate, "A", "B", help="(IC1)-(IC4) report")
    p.add_argument("--cap", type=int, default=16)
    p = add("extend", cmd_extend, "grid", help="evaluate the bilinear extension")
    p.add_argument("--at", required=True, metavar="X,Y")
    p = add("restrict", cmd_restrict, "grid", help="resample the bilinear extension")
    p.add_argument("--mesh", required=True, help="mesh file or n for the uniform n-cell mesh")
    p = add("reflect", cmd_reflect, "grid", help="sigma reflection")
    p.add_argument("--axis", choices=("x", "y"), default="x")
    p = add("defect", cmd_defect, "grid", help="corner defect fields")
    p.add_argument("--field", choices=("M", "O", "ne", "sw", "nw", "se", "all"), default="M")
    p = add("transform", cmd_transform, "grid", help="F_M = F - d_M or F_O = F + d_O")
    p.add_argument("--op", choices=("M", "O"), required=True)
    p = add("iterate", cmd_iterate, "A", "B", help="alternate B'=A_M, A'=B'_O")
    p.add_argument("--max-steps", type=int, default=64)
    p.add_argument("--dump-trace", metavar="DIR")
    p = add("sandwich", cmd_sandwich, "A", "B", help="find a copula C with A <= C <= B")
    p.add_argument("--method", choices=("greedy", "lp"), default="greedy")
    add("witness", cmd_witness, "A", "B", help="rectangle multiset with L < 0, if any")
    p = add("pvalues", cmd_pvalues, "A", "B", help="P_M / P_O at grid points")
    p.add_argument("--point", metavar="I,J")
    p.add_argument("--anchor", choices=("M", "O"), default="O")
    add("extremal", cmd_extremal, "A", "B", help="is B the sup / A the inf of the copulas in [A,B]")
    p = add("fixtures", cmd_fixtures, help="list or print embedded fixtures")
    p.add_argument("name", nargs="?")
    add("reproduce-paper", cmd_reproduce, help="recompute the published examples")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code else EXIT_OK
    out = Out(args)
    try:
        return args.func(args, out)
    except (BadInput, GridError, OrderViolated, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
