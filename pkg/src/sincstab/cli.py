"""Command-line front end.

Subcommands: oseen | bounds | table | gram | reconstruct.  Output is
human-readable (6 significant digits), JSON, or CSV; JSON and CSV carry full
double precision.  Exit status is 0 only when every requested computation
converged and no domain error occurred.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__
from . import bounds as bounds_mod
from . import framekit, grids, reconstruct, specfun

OK = 0
FAILURE = 1


def _parse_float_list(text: str) -> list[float]:
    """Comma-separated values; 'lo:hi:step' tokens expand to inclusive ranges."""
    values: list[float] = []
    try:
        for tok in text.split(","):
            tok = tok.strip()
            if not tok:
                continue
            if ":" in tok:
                lo, hi, step = (float(v) for v in tok.split(":"))
                if step <= 0 or hi < lo:
                    raise ValueError
                count = int(round((hi - lo) / step)) + 1
                values.extend(lo + i * step for i in range(count)
                              if lo + i * step <= hi + 1e-12)
            else:
                values.append(float(tok))
    except ValueError:
        raise ValueError(
            f"expected numbers or lo:hi:step ranges, got {text!r}") from None
    return values


def _parse_signal(text: str) -> reconstruct.BandlimitedSignal:
    """Parse 'mu' or 'mu:c,mu:c,...' into a sinc-translate combination."""
    shifts, weights = [], []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if ":" in tok:
            mu, c = tok.split(":", 1)
            shifts.append(float(mu))
            weights.append(float(c))
        else:
            shifts.append(float(tok))
            weights.append(1.0)
    if not shifts:
        raise ValueError(f"empty signal specification {text!r}")
    return reconstruct.BandlimitedSignal(shifts=np.array(shifts),
                                         weights=np.array(weights))


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("human", "json", "csv"), default="human")
    p.add_argument("--out", metavar="PATH", default=None,
                   help="write the report to PATH instead of stdout")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the norm estimator's start vector")


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--power-law", action="store_true",
                      help="lambda_n = n + A/n^alpha for n = 1..N")
    kind.add_argument("--uniform-offset", type=float, metavar="F",
                      help="lambda_n = n + F (+ i*IMAG) over -N..N")
    kind.add_argument("--ingham", action="store_true",
                      help="lambda_n = n +/- 1/4 over -N..N")
    kind.add_argument("--grid-file", metavar="PATH",
                      help="explicit grid: 'index re [im]' per line")
    p.add_argument("--A", type=float, help="power-law amplitude")
    p.add_argument("--alpha", type=float, help="power-law exponent")
    p.add_argument("--N", type=int, help="index radius / count")
    p.add_argument("--extend-nonpositive", action="store_true",
                   help="extend a power-law grid by lambda_n = n for n <= 0")
    p.add_argument("--imag", type=float, default=0.0,
                   help="imaginary part for --uniform-offset")


def _add_window_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--window", type=int, default=None, metavar="INT",
                   help="symmetric truncation radius (default: grid-derived)")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="iterative-estimator tolerance")
    p.add_argument("--max-iter", type=int, default=10_000,
                   help="iteration cap for the estimators")


def _resolve_grid(args) -> grids.PerturbedGrid:
    if args.power_law:
        if args.A is None or args.alpha is None or args.N is None:
            raise ValueError("--power-law requires --A, --alpha and --N")
        return grids.power_law_grid(args.A, args.alpha, args.N,
                                    extend_nonpositive=args.extend_nonpositive)
    if args.uniform_offset is not None:
        if args.N is None:
            raise ValueError("--uniform-offset requires --N")
        offset = args.uniform_offset + 1j * args.imag if args.imag else args.uniform_offset
        n = 2 * args.N + 1
        return grids.uniform_offset_grid([offset] * n, (-args.N, args.N))
    if args.ingham:
        if args.N is None:
            raise ValueError("--ingham requires --N")
        return grids.ingham_grid(args.N)
    return grids.grid_from_file(args.grid_file)


def _resolve_window(args, grid) -> framekit.TruncationWindow:
    kwargs = {"norm_tolerance": args.tol, "max_iterations": args.max_iter}
    if args.window is not None:
        lo = min(-args.window, int(grid.indices[0]))
        hi = max(args.window, int(grid.indices[-1]))
        return framekit.TruncationWindow(row_range=(lo, hi), col_range=(lo, hi),
                                         **kwargs)
    return framekit.TruncationWindow.for_grid(grid, **kwargs)


def _grid_params(args) -> dict:
    keys = ("power_law", "uniform_offset", "ingham", "grid_file", "A", "alpha",
            "N", "extend_nonpositive", "imag")
    out = {}
    for key in keys:
        value = getattr(args, key, None)
        if value is None or value is False:
            continue
        out[key] = value
    return out


# ---------------------------------------------------------------------------
# subcommands

def _run_oseen(args):
    oseen = specfun.lamb_oseen_alpha()
    a = oseen.alpha
    arg = -0.5 * math.exp(-0.5)
    results = {
        "alpha": a,
        "residual": math.exp(a) - 2.0 * a - 1.0,
        "w0": specfun.lambert_w0(arg).value,
        "wm1": specfun.lambert_wm1(arg).value,
        "complex_bound": bounds_mod.complex_bound_L(),
    }
    return {}, results, True


def _report_dict(report: bounds_mod.BoundReport) -> dict:
    d = {
        "bound_name": report.bound_name,
        "lambda": report.lambda_value,
        "threshold": report.threshold,
        "satisfies_pw": report.satisfies_pw,
    }
    if report.components:
        d.update(report.components)
    return d


def _run_bounds(args):
    if args.complex:
        if args.L is None:
            raise ValueError("--complex requires --L")
        report = bounds_mod.complex_master(args.L)
        params = {"regime": "complex", "L": args.L}
    elif args.kadec:
        if args.L is None:
            raise ValueError("--kadec requires --L")
        report = bounds_mod.kadec_transfer_lambda(args.L)
        params = {"regime": "kadec", "L": args.L}
    elif args.power_law:
        if args.A is None or args.alpha is None:
            raise ValueError("--power-law requires --A and --alpha")
        report = bounds_mod.power_law_certificate(args.A, args.alpha)
        params = {"regime": "power_law", "A": args.A, "alpha": args.alpha}
    else:
        raise ValueError("select a regime: --kadec, --complex or --power-law")
    results = _report_dict(report)
    results["verdict"] = "pass" if report.satisfies_pw else "fail"
    return params, results, True


def _run_table(args):
    alphas = _parse_float_list(args.alpha)
    amps = _parse_float_list(args.A) if args.A else []
    if not alphas:
        raise ValueError("--alpha must list at least one exponent")
    if not amps and not args.critical:
        raise ValueError("provide --A values and/or --critical")
    rows = []
    for alpha in alphas:
        for A in amps:
            rep = bounds_mod.table_lambda(A, alpha)
            rows.append({"alpha": alpha, "A": A,
                         "lambda1": rep.components["lambda1"],
                         "lambda2": rep.components["lambda2"],
                         "lambda": rep.lambda_value})
        if args.critical:
            a_star = bounds_mod.critical_A(alpha)
            rep = bounds_mod.table_lambda(a_star, alpha)
            rows.append({"alpha": alpha, "A": a_star,
                         "lambda1": rep.components["lambda1"],
                         "lambda2": rep.components["lambda2"],
                         "lambda": rep.lambda_value,
                         "critical": True})
    params = {"alpha": alphas, "A": amps, "critical": bool(args.critical)}
    return params, {"rows": rows}, True


def _run_gram(args):
    grid = _resolve_grid(args)
    window = _resolve_window(args, grid)
    summary = framekit.riesz_bounds_estimate(grid, window, seed=args.seed)
    if args.dump_matrix:
        G = framekit.gram_matrix(grid, window)
        framekit.dump_matrix(G, args.dump_matrix,
                             row_offset=int(grid.indices[0]),
                             col_offset=int(grid.indices[0]))
    params = _grid_params(args)
    params["window_rows"] = [int(window.row_range[0]), int(window.row_range[1])]
    results = {
        "gram_method": "s_h_s" if grid.is_complex else "analytic_sinc",
        "perturbation_norm": summary.perturbation_norm,
        "min_eigenvalue": summary.min_eigenvalue,
        "max_eigenvalue": summary.max_eigenvalue,
        "implied_riesz_lower": summary.implied_riesz_lower,
        "implied_riesz_upper": summary.implied_riesz_upper,
        "iterations_used": summary.iterations_used,
        "converged": summary.converged,
    }
    return params, results, summary.converged


def _run_reconstruct(args):
    grid = _resolve_grid(args)
    window = _resolve_window(args, grid)
    signal = _parse_signal(args.signal)
    samples = reconstruct.sample_signal(signal, grid)
    result = reconstruct.solve_coefficients(samples, grid, window)
    error = reconstruct.reconstruction_error(
        signal, result, grid, (args.eval_lo, args.eval_hi), args.eval_points)
    if args.csv:
        t = np.linspace(args.eval_lo, args.eval_hi, args.eval_points)
        reconstruct.write_csv(args.csv, result, signal, grid, t)
    params = _grid_params(args)
    params.update({"signal": args.signal,
                   "eval_window": [args.eval_lo, args.eval_hi],
                   "eval_points": args.eval_points})
    results = {
        "relative_l2_error": error,
        "residual_norm": result.residual_norm,
        "solver_iterations": result.solver_iterations,
        "coefficients_head": result.coefficients[:8].tolist(),
    }
    return params, results, True


# ---------------------------------------------------------------------------
# rendering

def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _render_human(command: str, results: dict) -> str:
    lines = []
    if command == "table":
        header = ("alpha", "A", "lambda1", "lambda2", "lambda")
        lines.append("  ".join(f"{h:>10s}" for h in header))
        for row in results["rows"]:
            cells = [f"{_fmt(row[h]):>10s}" for h in header]
            if row.get("critical"):
                cells.append("(critical)")
            lines.append("  ".join(cells))
    else:
        for key, value in results.items():
            lines.append(f"{key} = {_fmt(value)}")
    return "\n".join(lines) + "\n"


def _render_csv(command: str, results: dict) -> str:
    lines = []
    if command == "table":
        lines.append("alpha,A,lambda1,lambda2,lambda")
        for row in results["rows"]:
            lines.append(",".join(repr(float(row[h]))
                                  for h in ("alpha", "A", "lambda1", "lambda2", "lambda")))
    else:
        lines.append("key,value")
        for key, value in results.items():
            lines.append(f"{key},{value!r}" if isinstance(value, float)
                         else f"{key},{value}")
    return "\n".join(lines) + "\n"


def _emit(args, command: str, params: dict, results: dict, runtime_ms: float) -> None:
    if args.format == "json":
        payload = {
            "command": command,
            "params": params,
            "results": results,
            "meta": {"version": __version__, "seed": args.seed,
                     "runtime_ms": runtime_ms},
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        text = _render_csv(command, results)
    else:
        text = _render_human(command, results)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sincstab",
        description="Stability bounds and numerical probes for perturbed sinc bases.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oseen", help="the Lamb-Oseen constant and the complex threshold")
    _add_common_flags(p)

    p = sub.add_parser("bounds", help="closed-form stability verdicts")
    _add_common_flags(p)
    p.add_argument("--kadec", action="store_true", help="real constant-offset regime")
    p.add_argument("--complex", action="store_true", help="complex-offset regime")
    p.add_argument("--power-law", action="store_true", help="power-law certificate")
    p.add_argument("--L", type=float, help="deviation bound for --kadec/--complex")
    p.add_argument("--A", type=float, help="power-law amplitude")
    p.add_argument("--alpha", type=float, help="power-law exponent")

    p = sub.add_parser("table", help="lambda = lambda1 + lambda2 over parameter lists")
    _add_common_flags(p)
    p.add_argument("--alpha", required=True, help="comma-separated exponents")
    p.add_argument("--A", default=None, help="comma-separated amplitudes")
    p.add_argument("--critical", action="store_true",
                   help="append the root of lambda = 1 per exponent")

    p = sub.add_parser("gram", help="truncated-system diagnostics")
    _add_common_flags(p)
    _add_grid_flags(p)
    _add_window_flags(p)
    p.add_argument("--dump-matrix", metavar="PATH", default=None,
                   help="dump the Gram matrix as 'k n re im' text")

    p = sub.add_parser("reconstruct", help="reconstruct a bandlimited signal")
    _add_common_flags(p)
    _add_grid_flags(p)
    _add_window_flags(p)
    p.add_argument("--signal", required=True,
                   help="sinc-translate combination, e.g. '0.3' or '0.3:1,2.5:-0.7'")
    p.add_argument("--eval-lo", type=float, default=-20.0)
    p.add_argument("--eval-hi", type=float, default=20.0)
    p.add_argument("--eval-points", type=int, default=2001)
    p.add_argument("--csv", metavar="PATH", default=None,
                   help="write t,f_ref,f_hat,abs_err rows to PATH")
    return parser


_HANDLERS = {
    "oseen": _run_oseen,
    "bounds": _run_bounds,
    "table": _run_table,
    "gram": _run_gram,
    "reconstruct": _run_reconstruct,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        params, results, converged = _HANDLERS[args.command](args)
    except (ValueError, reconstruct.ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE
    runtime_ms = (time.perf_counter() - start) * 1e3
    _emit(args, args.command, params, results, runtime_ms)
    return OK if converged else FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
