"""Command-line entry point: ``gkp-laws <subcommand> --params a,b,g,a',b',g' ...``.

Exit status: 0 on success, 2 on usage errors, 1 on computation errors (the
error class name is printed on stderr).
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import serialize as ser
from .bgf import closed_form, consistency_check, pde_residual
from .classifier import RegimeTag, asymptotic_law, classify, singularity_data
from .errors import GkpError
from .params import GkpParams, parse_rational
from .saddle import SaddleContext, quasi_power_moments
from .triangle import Backend, build_triangle, exact_moments, pmf_at
from .verifier import check_report, convergence_report

DEFAULT_XS = "1/3,1/2,1,2"


class VerificationFailed(GkpError):
    pass


def _params(text: str) -> GkpParams:
    try:
        return GkpParams.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rationals(text: str) -> list[Fraction]:
    try:
        return [parse_rational(t) for t in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid(text: str) -> list[int]:
    try:
        grid = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be comma-separated integers: {text!r}") from None
    if any(b <= a for a, b in zip(grid, grid[1:])) or min(grid) < 0:
        raise argparse.ArgumentTypeError("grid must be strictly increasing and nonnegative")
    return grid


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("n must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gkp-laws", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, n_default: Optional[int] = None, grid: bool = False,
            x: Optional[str] = None, backend: bool = False, tol: bool = False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--params", type=_params, required=True,
                       help="six rationals alpha,beta,gamma,alpha',beta',gamma'")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write to PATH instead of stdout")
        if n_default is not None or name in ("triangle", "pmf", "moments"):
            p.add_argument("--n", type=_nonneg, default=n_default, required=n_default is None)
        if grid:
            p.add_argument("--grid", type=_grid, required=True, help="n1,n2,... strictly increasing")
        if x is not None:
            p.add_argument("--x", type=_rationals, default=_rationals(x))
        if backend:
            p.add_argument("--backend", choices=("exact", "float"), default=None)
        if tol:
            p.add_argument("--tol", type=float, default=None)
        return p

    add("triangle", "rows 0..n of the triangle", backend=True)
    add("pmf", "law of X_n", backend=True)
    add("moments", "exact mean and variance of X_n", backend=True)
    add("classify", "limit-law regime and its constants")
    add("bgf-check", "closed-form BGF vs triangle, exactly", n_default=20, x=DEFAULT_XS)
    add("pde-check", "PDE residual of the triangle-built BGF", n_default=20, x=DEFAULT_XS)
    sp = add("saddle", "saddle point and quasi-power moments", n_default=1000, x="1")
    sp.add_argument("--grid", type=_grid, default=None, help="several n at once")
    add("report", "convergence table along a grid", grid=True, backend=True)
    add("verify", "convergence table plus pass/fail checks", grid=True, backend=True, tol=True)
    return parser


# -- subcommand bodies: each returns (json_doc, csv_rows) -----------------------


def cmd_triangle(args):
    backend = args.backend or "exact"
    table = build_triangle(args.params, args.n, backend)
    doc = ser.triangle_doc(table)
    rows = [{"n": n, "k": k, "value": ser.rat(v) if table.backend is Backend.EXACT else repr(float(v)),
             "log2_scale": table.log2_scale(n)}
            for n in table.indices for k, v in enumerate(table.row(n))]
    return doc, rows


def cmd_pmf(args):
    backend = args.backend or "exact"
    dist = pmf_at(build_triangle(args.params, args.n, backend, keep=[args.n]), args.n)
    doc = ser.header("pmf", args.params, backend)
    doc["n"] = args.n
    doc["p"] = [ser.rat(p) for p in dist.probabilities]
    doc["p_f64"] = [float(p) for p in dist.probabilities]
    rows = [{"k": k, "p": ser.rat(p), "p_f64": repr(float(p))} for k, p in enumerate(dist.probabilities)]
    return doc, rows


def cmd_moments(args):
    backend = args.backend or "exact"
    dist = pmf_at(build_triangle(args.params, args.n, backend, keep=[args.n]), args.n)
    mom = exact_moments(dist)
    doc = ser.header("moments", args.params, backend)
    doc.update(n=args.n, mean=ser.rat(mom.mean), mean_f64=mom.mean_f64,
               variance=ser.rat(mom.variance), variance_f64=mom.variance_f64)
    row = {k: doc[k] for k in ("n", "mean", "mean_f64", "variance", "variance_f64")}
    return doc, [row]


def cmd_classify(args):
    regime = classify(args.params)
    doc = ser.header("classify", args.params)
    doc["regime"] = regime.label
    doc["constants"] = {k: ser.rat(v) for k, v in regime.constants.items()}
    if regime.tag is RegimeTag.GAUSSIAN_LINEAR:
        sd = singularity_data(args.params)
        doc["singularity"] = {"case": sd.case, "rho1": ser.rat(sd.rho1), "rho1_f64": float(sd.rho1),
                              "m": ser.rat(sd.m), "m_f64": float(sd.m), "v": ser.rat(sd.v),
                              "v_f64": float(sd.v), "kappa": ser.rat(sd.kappa),
                              "variability_witness": sd.variability_witness}
    if regime.tag is not RegimeTag.UNSUPPORTED:
        law = asymptotic_law(args.params)
        doc["law"] = {"centering": law.centering_formula, "scaling": law.scaling_formula,
                      "limit": law.limit.describe(), "exact": law.exact,
                      "complement": law.complement, "n0": law.n0}
        doc["bgf"] = {"variant": closed_form(args.params).variant.value,
                      "formula": closed_form(args.params).describe()}
    rows = [{"key": "regime", "value": regime.label}]
    for section in ("constants", "singularity", "law", "bgf"):
        for k, v in doc.get(section, {}).items():
            rows.append({"key": f"{section}.{k}", "value": v})
    return doc, rows


def _check_doc(command: str, args, report, key: str):
    doc = ser.header(command, args.params)
    doc["n_max"] = args.n
    doc["variant"] = closed_form(args.params).variant.value if args.params.classifiable else None
    doc["per_x"] = {str(x): ser.rat(v) for x, v in report.per_x.items()}
    doc[key] = ser.rat(report.max_discrepancy)
    doc["exact_zero"] = report.exact_zero
    rows = [{"x": str(x), key: ser.rat(v)} for x, v in report.per_x.items()]
    return doc, rows


def cmd_bgf_check(args):
    return _check_doc("bgf-check", args, consistency_check(args.params, args.n, args.x), "max_discrepancy")


def cmd_pde_check(args):
    return _check_doc("pde-check", args, pde_residual(args.params, args.n, args.x), "max_residual")


def cmd_saddle(args):
    ctx = SaddleContext(args.params)
    grid = args.grid or [args.n]
    if min(grid) < 1:
        raise ValueError("saddle needs n >= 1")
    law = asymptotic_law(args.params)
    rows = []
    for n in grid:
        for x in args.x:
            sp = ctx.solve(x, n)
            row = {"n": n, "x": str(x), "r": sp.r, "one_minus_alpha_r": sp.u, "residual": sp.residual,
                   "h1": None, "h2": None, "mean": None, "variance": None}
            if x == 1:
                q = quasi_power_moments(args.params, n, ctx)
                row.update(h1=q.h1, h2=q.h2, mean=q.mean, variance=q.variance)
            rows.append(row)
    doc = ser.header("saddle", args.params)
    doc["centering"] = law.centering_formula
    doc["scaling"] = law.scaling_formula
    doc["points"] = rows
    return doc, rows


def _report_rows(report):
    return [{"n": r.n, "mean": ser.rat(r.mean), "variance": ser.rat(r.variance),
             "predicted_mean": ser.f64(r.predicted_mean), "predicted_variance": ser.f64(r.predicted_variance),
             "ks": ser.f64(r.ks), "tv": ser.rat(r.tv), "mean_ratio": ser.f64(r.mean_ratio)}
            for r in report.rows]


def _report_doc(command: str, report):
    doc = ser.header(command, report.params, report.backend)
    doc["regime"] = report.regime.label
    doc["rows"] = _report_rows(report)
    for row, r in zip(doc["rows"], report.rows):
        row["mean_f64"] = float(r.mean)
        row["variance_f64"] = float(r.variance)
    return doc


def cmd_report(args):
    doc = _report_doc("report", convergence_report(args.params, args.grid, args.backend))
    return doc, doc["rows"]


def cmd_verify(args):
    report = convergence_report(args.params, args.grid, args.backend)
    doc = _report_doc("verify", report)
    kwargs = {} if args.tol is None else {"ks_tol": args.tol}
    checks = check_report(report, **kwargs)
    doc["checks"] = [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
    doc["passed"] = all(c.passed for c in checks)
    return doc, doc["checks"]


COMMANDS = {"triangle": cmd_triangle, "pmf": cmd_pmf, "moments": cmd_moments,
            "classify": cmd_classify, "bgf-check": cmd_bgf_check, "pde-check": cmd_pde_check,
            "saddle": cmd_saddle, "report": cmd_report, "verify": cmd_verify}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc, rows = COMMANDS[args.command](args)
    except (GkpError, ArithmeticError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=stderr)
        return 1
    text = ser.dumps_json(doc) if args.format == "json" else ser.dumps_csv(args.command, rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if args.command == "verify" and not doc["passed"]:
        failed = [c["check"] for c in doc["checks"] if not c["passed"]]
        print(f"{VerificationFailed.__name__}: {', '.join(failed)}", file=stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
