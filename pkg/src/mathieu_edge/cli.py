"""Command-line front end: spectra, edge comparisons, sweeps, Hermite samples, regime checks."""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .comparison import compare_edge, sweep_accuracy_counts
from .edge import validate_regime
from .eigensolver import (
    dense_eig_small,
    eigenpairs_tridiagonal,
    eigenvalues_bisection,
    extreme_eigs_lanczos,
)
from .errors import MathieuEdgeError, ParameterError, SolverError
from .hermite import coefficients, sample_periodic, sign_changes
from .operators import OperatorParams, build_finite, build_periodic
from .svgplot import dat_table, line_plot

EXIT_OK, EXIT_REGIME, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3

_PI_EXPR = re.compile(r"^([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?$")


def parse_alpha(text: str, n: int | None = None):
    """``"p/q"`` -> exact Fraction, decimal -> float; ``"r/n"`` substitutes ``n``."""
    s = text.strip().replace(" ", "")
    if n is not None:
        s = s.replace("n", str(n))
    if "/" in s:
        p, _, q = s.partition("/")
        try:
            return Fraction(int(p), int(q))
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"bad rational alpha {text!r}") from None
    try:
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad alpha {text!r}") from None


def parse_theta(text: str) -> float:
    """Float, or a multiple of pi such as ``pi/3``, ``2*pi/3``, ``-pi``."""
    s = text.strip().lower()
    try:
        return float(s)
    except ValueError:
        pass
    m = _PI_EXPR.match(s)
    if not m:
        raise argparse.ArgumentTypeError(f"bad theta {text!r}")
    coef = m.group(1)
    c = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
    d = float(m.group(2)) if m.group(2) else 1.0
    return c * math.pi / d


def _alpha_arg(text):
    return text  # resolved later, after n is known (sweeps use "r/n")


def _epsilon(text):
    v = float(text)
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError("epsilon must lie in (0, 1)")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _sweep_list(text):
    try:
        ns = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad sweep list {text!r}") from None
    if len(ns) < 2:
        raise argparse.ArgumentTypeError("a sweep needs at least two values of n")
    return ns


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mathieu-edge",
        description="Edge spectra of the almost Mathieu operator and their Hermite approximations.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=64, help="matrix size (even)")
    common.add_argument("--alpha", type=_alpha_arg, default="1/n", help="p/q, decimal, or r/n")
    common.add_argument("--beta", type=_positive_float, default=1.0)
    common.add_argument("--theta", type=parse_theta, default=0.0, help="radians; pi/3 style accepted")
    common.add_argument("--tol", type=_positive_float, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--csv", type=Path, help="write CSV here instead of stdout")

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues of H or P")
    p.add_argument("--operator", choices=("finite", "periodic", "infinite"), default="finite")
    p.add_argument("--method", choices=("bisection", "lanczos", "dense"))
    p.add_argument("--top", type=int, help="number of eigenvalues (default: all, or 10 for lanczos)")
    p.add_argument("--edge", choices=("positive", "negative"), default="positive")
    p.add_argument("--vectors", type=Path, help="also write eigenvectors to this CSV")

    p = sub.add_parser("compare", parents=[common], help="true vs approximate edge eigenvalues")
    p.add_argument("--operator", choices=("finite", "periodic", "infinite"), default="periodic")
    p.add_argument("--top", type=int, default=6)
    p.add_argument("--edge", choices=("positive", "negative"), default="positive")
    p.add_argument("--svg", type=Path)

    p = sub.add_parser("sweep", parents=[common], help="accuracy counts across n")
    p.add_argument("--sweep", type=_sweep_list, required=True, help='comma list, e.g. "1000,2000,4000"')
    p.add_argument("--operator", choices=("finite", "periodic", "infinite"), default="periodic")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--svg", type=Path)

    p = sub.add_parser("hermite", parents=[common], help="sampled scaled Hermite function")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--gamma", type=_positive_float, help="default: pi*alpha*sqrt(beta)")
    p.add_argument("--shift", type=float, default=0.0)
    p.add_argument("--modulated", action="store_true")

    p = sub.add_parser("validate", parents=[common], help="check regime hypotheses")
    p.add_argument("--epsilon", type=_epsilon, default=0.5)
    p.add_argument("--m-max", type=int, default=5)
    return ap


def _params(args, n=None) -> OperatorParams:
    n = args.n if n is None else n
    alpha = parse_alpha(args.alpha, n)
    return OperatorParams(alpha, args.beta, args.theta, n)


def _config(args) -> dict:
    skip = {"csv", "svg", "vectors"}
    cfg = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        cfg[k] = v
    try:
        a = parse_alpha(args.alpha, args.n)
        cfg["alpha_exact"] = isinstance(a, Fraction)
    except argparse.ArgumentTypeError:
        pass
    return cfg


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % float(v)


def format_csv(args, header, rows, extra_meta: dict | None = None) -> str:
    meta = {"version": __version__, "seed": args.seed, "config": _config(args)}
    if extra_meta:
        meta.update(extra_meta)
    lines = ["# mathieu_edge " + json.dumps(meta, sort_keys=True, default=str)]
    lines.append(",".join(header))
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _emit(args, text: str, out) -> None:
    if args.csv:
        args.csv.write_text(text)
    else:
        out.write(text)


def _color(text: str, ok: bool, stream) -> str:
    if os.environ.get("NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def _write_plot(svg: Path, x, series, **kw) -> None:
    svg.write_text(line_plot(x, series, **kw))
    svg.with_suffix(".dat").write_text(dat_table(x, series, kw.get("xlabel", "x")))


def cmd_spectrum(args, out) -> int:
    if args.operator == "infinite":
        raise ParameterError("the operator on Z has no finite spectrum; use finite or periodic")
    params = _params(args)
    n = params.n
    method = args.method or ("bisection" if args.operator == "finite" else "lanczos")
    top = args.top
    if top is not None and not 1 <= top <= n:
        raise ParameterError(f"--top must lie in 1..{n}")
    op = build_finite(params) if args.operator == "finite" else build_periodic(params)

    if method == "dense":
        spec = dense_eig_small(op.to_dense())
        pairs = list(spec.pairs)
        if args.edge == "negative":
            pairs = pairs[::-1]
        pairs = pairs[: top or n]
        rows = [(p.index_from_top, p.value, p.residual_l2) for p in pairs]
        vecs = [p.vector for p in pairs]
        header = ["rank", "value", "residual_l2"]
    elif method == "lanczos":
        k = top or min(10, n)
        spec = extreme_eigs_lanczos(op, k, "top" if args.edge == "positive" else "bottom",
                                    tol=args.tol, seed=args.seed)
        pairs = list(spec.pairs) if args.edge == "positive" else list(spec.pairs)[::-1]
        rows = [(p.index_from_top, p.value, p.residual_l2) for p in pairs]
        vecs = [p.vector for p in pairs]
        header = ["rank", "value", "residual_l2"]
    else:
        if args.operator != "finite":
            raise ParameterError("bisection needs the tridiagonal (finite) operator")
        k = top or n
        lo, hi = (0, k - 1) if args.edge == "positive" else (n - k, n - 1)
        if args.vectors:
            spec = eigenpairs_tridiagonal(op, lo, hi, seed=args.seed)
            pairs = list(spec.pairs)
            if args.edge == "negative":
                pairs = pairs[::-1]
            rows = [(p.index_from_top, p.value, p.residual_l2) for p in pairs]
            vecs = [p.vector for p in pairs]
            header = ["rank", "value", "residual_l2"]
        else:
            spec = eigenvalues_bisection(op, lo, hi)
            ranks = list(range(lo, hi + 1))
            vals = list(spec.values)
            if args.edge == "negative":
                ranks, vals = ranks[::-1], vals[::-1]
            rows = list(zip(ranks, vals))
            vecs = None
            header = ["rank", "value"]

    _emit(args, format_csv(args, header, rows, {"method": method}), out)
    if args.vectors and vecs is not None:
        x = params.sites()
        vrows = [(int(x[i]),) + tuple(v[i] for v in vecs) for i in range(n)]
        vh = ["x"] + [f"rank{r[0]}" for r in rows]
        args.vectors.write_text(format_csv(args, vh, vrows, {"method": method}))
    return EXIT_OK


def cmd_compare(args, out) -> int:
    if args.operator == "infinite":
        raise ParameterError("compare needs a finite or periodic operator")
    params = _params(args)
    rep = compare_edge(params, args.top, operator=args.operator, edge=args.edge,
                       tol=args.tol, seed=args.seed)
    header = ["m", "true_value", "approx_value", "abs_err", "residual_sup", "residual_l2",
              "sign_changes_true", "sign_changes_approx"]
    meta = dict(rep.metadata)
    meta.update(gamma=rep.gamma, within_gamma=rep.within_gamma.count,
                within_gamma_sq=rep.within_gamma_sq.count)
    _emit(args, format_csv(args, header, [r.as_row() for r in rep.records], meta), out)
    if args.svg:
        m = [r.m for r in rep.records]
        _write_plot(args.svg, m, {"true": rep.true_values, "approximation": rep.approx_values},
                    title=f"edge eigenvalues, n={params.n}", xlabel="m", ylabel="eigenvalue")
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    if args.operator == "infinite":
        raise ParameterError("sweep needs a finite or periodic operator")
    for n in args.sweep:
        _params(args, n)  # validate every point before any compute
    rows = sweep_accuracy_counts(
        args.sweep, lambda n: _params(args, n), operator=args.operator, tol=args.tol,
        seed=args.seed, workers=args.workers,
    )
    header = ["n", "gamma", "count_within_gamma", "count_within_gamma_sq", "sqrt_inv_gamma"]
    meta = {"count_rule": "first m starting 3 consecutive exceedances",
            "saturated": [r.n for r in rows if r.saturated]}
    _emit(args, format_csv(args, header, [r.as_row() for r in rows], meta), out)
    if args.svg:
        ns = [r.n for r in rows]
        _write_plot(args.svg, ns, {
            "count within gamma": [r.count_within_gamma for r in rows],
            "count within gamma^2": [r.count_within_gamma_sq for r in rows],
            "sqrt(1/gamma)": [r.sqrt_inv_gamma for r in rows],
        }, title="accuracy counts", xlabel="n", ylabel="count")
    return EXIT_OK


def _coefficient_text(m: int) -> str:
    exact = coefficients(m, exact=True).values
    body = ",".join(str(c) for c in exact)
    return body if m % 2 == 0 else f"2*sqrt(2)*[{body}]"


def cmd_hermite(args, out, err) -> int:
    if args.gamma is not None:
        gamma = args.gamma
    else:
        gamma = _params(args).gamma
        if gamma <= 0:
            raise ParameterError("gamma must be positive; pass --gamma or a positive alpha")
    vec = sample_periodic(args.m, gamma, args.n, shift=args.shift, modulated=args.modulated)
    rows = list(zip(vec.x, vec.samples))
    _emit(args, format_csv(args, ["x", "value"], rows, {"gamma": gamma}), out)
    err.write(f"coefficients={_coefficient_text(args.m)}\n")
    err.write(f"sign_changes={sign_changes(vec.samples)}\n")
    return EXIT_OK


def cmd_validate(args, out) -> int:
    params = _params(args)
    d = validate_regime(params, args.epsilon, args.m_max)
    n, eps = params.n, args.epsilon
    checks = [
        (f"gamma in [4/n^2, 1): {4 / n**2:.3g} <= {d.gamma:.6g} < 1", d.gamma_range_ok),
        (f"gamma in (4/n^(2-eps), n^-eps): {4 / n ** (2 - eps):.3g} < {d.gamma:.6g} < {n ** -eps:.3g}",
         d.epsilon_window_ok),
        (f"m_max < n^eps - 1: {d.m_max} < {n**eps - 1:.6g}", d.sign_change_ok),
    ]
    for label, ok in checks:
        out.write(f"{_color('PASS' if ok else 'FAIL', ok, out)}  {label}\n")
    out.write(f"high-accuracy m range (error ~ gamma^2): 0..{d.high_accuracy_range[1]}\n")
    out.write(f"extended m range (error ~ gamma): 0..{d.extended_range[1]}\n")
    for k, v in d.as_dict().items():
        out.write(f"{k}={_fmt(v) if not isinstance(v, bool) else str(v).lower()}\n")
    return EXIT_OK if d.all_ok else EXIT_REGIME


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "spectrum":
            return cmd_spectrum(args, out)
        if args.command == "compare":
            return cmd_compare(args, out)
        if args.command == "sweep":
            return cmd_sweep(args, out)
        if args.command == "hermite":
            return cmd_hermite(args, out, err)
        return cmd_validate(args, out)
    except argparse.ArgumentTypeError as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except SolverError as e:
        err.write(f"solver failure: {e}\n")
        return EXIT_SOLVER
    except (MathieuEdgeError, ValueError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
