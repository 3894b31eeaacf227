"""Command-line interface for building rules and reproducing the sweeps.

Every command writes a table (CSV by default, JSON on request) to stdout
or to --out, with deterministic row order and shortest round-trip float
formatting, so repeated runs are byte-identical.  Exit codes: 0 on
success, 2 on validation errors, 3 on numerical failure.
"""

import argparse
import json
import math
import sys

import numpy as np

from .approx import approx_rule, machine_truncation, qr_weights, scaled_nodes
from .errors import NumericalFailureError
from .exact import exact_weights
from .gauss_hermite import N_MAX, QuadratureRule, gh_rule
from .mercer import ALPHA_DEFAULT, basis_from
from .tensor import gaussian_poly_integrand, tensor_integrate, tensor_rule
from .wce import multivariate_constants, theoretical_constants, worst_case_error

__all__ = ["main"]

# Display cutoff used by the sweep commands: square root of the
# floating-point relative accuracy.
WCE_CUTOFF = math.sqrt(float(np.finfo(float).eps))

# Weight-symmetry breakdown proxy threshold for weights-compare.
SYMMETRY_TOL = 1e-6

# Condition estimate above which a solve-based comparator is flagged
# unreliable even when the factorization succeeded.
CONDITION_FLAG = 1e15


def _parse_floats(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty value list")
    return sorted(set(values))


def _parse_ns(text: str) -> list[int]:
    try:
        if ":" in text:
            lo, hi = text.split(":")
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an int list or a:b range: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty size list")
    return sorted(set(values))


def _parse_ints(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty value list")
    return values


def _parse_float_list(text: str) -> list[float]:
    """Order-preserving float list, for per-dimension parameters."""
    try:
        values = [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty value list")
    return values


def _format_cell(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _emit(columns: list[str], rows: list[list], args) -> None:
    if args.format == "json":
        payload = [dict(zip(columns, row)) for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [",".join(columns)]
        lines.extend(",".join(_format_cell(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    if getattr(args, "plot_script", False):
        _emit_plot_script(columns, args)


def _emit_plot_script(columns: list[str], args) -> None:
    if args.out is None:
        raise ValueError("--plot-script needs --out so the script can name the CSV")
    if args.format != "csv":
        raise ValueError("--plot-script only accompanies CSV output")
    stem = args.out[: -len(".csv")] if args.out.endswith(".csv") else args.out
    xcol = "n" if "n" in columns else columns[0]
    ycols = [c for c in columns if c not in (xcol, "ell") and not c.endswith("_flag")
             and c != "cutoff"]
    lines = [
        f"# line plot over the columns of {args.out}",
        "set datafile separator ','",
        "set key autotitle columnhead outside",
        "set logscale y",
        "plot " + ", ".join(
            f"'{args.out}' using '{xcol}':'{y}' with linespoints" for y in ycols
        ),
    ]
    with open(stem + ".gp", "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines) + "\n")


def _cmd_rule(args):
    basis = basis_from(args.ell, args.alpha)
    approx = approx_rule(basis, args.n)
    gh = approx.gh_source
    columns = ["n", "node", "approx_weight", "gh_node", "gh_weight"]
    rows = [
        [i + 1, approx.rule.nodes[i], approx.rule.weights[i], gh.nodes[i], gh.weights[i]]
        for i in range(args.n)
    ]
    return columns, rows


def _cmd_weights_compare(args):
    columns = ["ell", "n", "rel_err", "cutoff"]
    rows = []
    for ell in args.ells:
        basis = basis_from(ell, args.alpha)
        for n in args.ns:
            nodes = scaled_nodes(basis, n)
            w_approx = approx_rule(basis, n).rule.weights
            w_ref = qr_weights(basis, nodes, machine_truncation(basis, n))
            with np.errstate(divide="ignore", invalid="ignore"):
                proxy = float(abs(1.0 - np.float64(w_ref[-1]) / np.float64(w_ref[0])))
                rel_err = float(np.sqrt(np.sum(((w_ref - w_approx) / w_ref) ** 2)))
            broke = not math.isfinite(proxy) or proxy > SYMMETRY_TOL
            rows.append([ell, n, rel_err, int(broke)])
            if broke:
                break
    return columns, rows


def _cmd_positivity_sweep(args):
    columns = ["ell", "n", "min_weight", "abs_weight_sum", "weight_sum_error"]
    rows = []
    for ell in args.ells:
        basis = basis_from(ell, args.alpha)
        for n in args.ns:
            w = approx_rule(basis, n).rule.weights
            total = math.fsum(w)
            rows.append(
                [ell, n, float(w.min()), math.fsum(np.abs(w)), abs(total - 1.0)]
            )
    return columns, rows


def _wce_of_solved(nodes: np.ndarray, ell: float) -> tuple[float, int]:
    """WCE of the exact kernel rule at the given nodes, with a reliability flag."""
    try:
        weights, cond = exact_weights(nodes, ell)
        report = worst_case_error(QuadratureRule(nodes, weights), ell)
    except NumericalFailureError:
        return float("nan"), 1
    return report.wce, int(cond > CONDITION_FLAG)


def _cmd_wce_sweep(args):
    columns = ["ell", "n", "wce_sghkq", "wce_ukq", "wce_gh", "ukq_flag"]
    rows = []
    for ell in args.ells:
        basis = basis_from(ell, args.alpha)
        for n in args.ns:
            approx = approx_rule(basis, n)
            wce_main = worst_case_error(approx.rule, ell).wce
            uniform = np.linspace(approx.rule.nodes[0], approx.rule.nodes[-1], n)
            wce_ukq, flag = _wce_of_solved(uniform, ell)
            wce_gh = worst_case_error(gh_rule(n), ell).wce
            rows.append([ell, n, wce_main, wce_ukq, wce_gh, flag])
            if wce_main < WCE_CUTOFF:
                break
    return columns, rows


def _integration_errors(args, dims: int):
    f, exact = gaussian_poly_integrand(dims, args.m, args.c, args.ell)
    basis = basis_from(args.ell, args.alpha)
    columns = ["n", "err_sghkq", "err_kq", "err_ukq", "err_gh", "kq_flag", "ukq_flag"]
    rows = []
    for n in args.ns:
        approx = approx_rule(basis, n)
        gh = gh_rule(n)

        def grid_error(rule_1d: QuadratureRule) -> float:
            grid = tensor_rule([rule_1d] * dims)
            return abs(tensor_integrate(grid, f) - exact)

        err_sghkq = grid_error(approx.rule)
        err_gh = grid_error(gh)

        def solved_error(nodes: np.ndarray) -> tuple[float, int]:
            try:
                weights, cond = exact_weights(nodes, args.ell)
            except NumericalFailureError:
                return float("nan"), 1
            return grid_error(QuadratureRule(nodes, weights)), int(cond > CONDITION_FLAG)

        err_kq, kq_flag = solved_error(approx.rule.nodes)
        uniform = np.linspace(approx.rule.nodes[0], approx.rule.nodes[-1], n)
        err_ukq, ukq_flag = solved_error(uniform)
        rows.append([n, err_sghkq, err_kq, err_ukq, err_gh, kq_flag, ukq_flag])
    return columns, rows


def _cmd_integrate(args):
    if len(args.m) != 1 or len(args.c) != 1:
        raise ValueError("integrate is one-dimensional; pass single --m and --c values")
    return _integration_errors(args, 1)


def _cmd_tensor_integrate(args):
    if len(args.m) != args.dims or len(args.c) != args.dims:
        raise ValueError("--m and --c must list one value per dimension")
    return _integration_errors(args, args.dims)


def _cmd_constants(args):
    basis = basis_from(args.ell, args.alpha)
    consts = theoretical_constants(basis)
    columns = [
        "ell", "epsilon", "beta", "delta_sq", "gamma",
        "tau", "lambda", "eta", "c_theory", "c1", "c2",
    ]
    row = [
        args.ell, basis.epsilon, basis.beta, basis.delta_sq, basis.gamma,
        consts.tau, consts.lam, consts.eta, consts.rate, consts.c1, consts.c2,
    ]
    if args.dims is not None:
        big_c, eta = multivariate_constants(basis, args.dims)
        columns += ["dims", "multi_c", "multi_eta"]
        row += [args.dims, big_c, eta]
    return columns, [row]


def _add_common(sub, ells=False, ns=False, single_n=False):
    sub.add_argument("--alpha", type=float, default=ALPHA_DEFAULT,
                     help="measure shape parameter (default 1/sqrt(2))")
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--plot-script", action="store_true",
                     help="write a companion plain-text plot script next to --out")
    if ells:
        group = sub.add_mutually_exclusive_group(required=True)
        group.add_argument("--ell", type=float, dest="single_ell")
        group.add_argument("--ells", type=_parse_floats)
    if ns:
        group = sub.add_mutually_exclusive_group(required=True)
        group.add_argument("--n", type=int, dest="single_n")
        group.add_argument("--ns", type=_parse_ns)
    if single_n:
        sub.add_argument("--n", type=int, required=True, dest="n")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkquad",
        description="Gaussian kernel quadrature rules and experiment sweeps",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("rule", help="one rule: nodes and weights")
    p.add_argument("--ell", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_rule)

    p = subs.add_parser("weights-compare",
                        help="closed-form weights vs converged reference weights")
    _add_common(p, ells=True, ns=True)
    p.set_defaults(handler=_cmd_weights_compare)

    p = subs.add_parser("positivity-sweep",
                        help="minimum weight and weight-sum error over rule sizes")
    _add_common(p, ells=True, ns=True)
    p.set_defaults(handler=_cmd_positivity_sweep)

    p = subs.add_parser("wce-sweep",
                        help="worst-case error of the scaled rule and comparators")
    _add_common(p, ells=True, ns=True)
    p.set_defaults(handler=_cmd_wce_sweep)

    p = subs.add_parser("integrate",
                        help="one-dimensional test integrand errors per rule size")
    p.add_argument("--ell", type=float, default=1.2)
    p.add_argument("--m", type=_parse_ints, default=[6])
    p.add_argument("--c", type=_parse_float_list, default=[1.5])
    group = p.add_mutually_exclusive_group()
    group.add_argument("--n", type=int, dest="single_n")
    group.add_argument("--ns", type=_parse_ns, default=list(range(1, 31)))
    _add_common(p)
    p.set_defaults(handler=_cmd_integrate)

    p = subs.add_parser("tensor-integrate",
                        help="tensor-grid test integrand errors per rule size")
    p.add_argument("--ell", type=float, default=1.2)
    p.add_argument("--dims", type=int, default=3)
    p.add_argument("--m", type=_parse_ints, default=[6, 4, 2])
    p.add_argument("--c", type=_parse_float_list, default=[1.5, 3.0, 0.5])
    group = p.add_mutually_exclusive_group()
    group.add_argument("--n", type=int, dest="single_n")
    group.add_argument("--ns", type=_parse_ns, default=list(range(2, 13)))
    _add_common(p)
    p.set_defaults(handler=_cmd_tensor_integrate)

    p = subs.add_parser("constants",
                        help="eigendecomposition and convergence constants")
    p.add_argument("--ell", type=float, required=True)
    p.add_argument("--dims", type=int, default=None)
    _add_common(p)
    p.set_defaults(handler=_cmd_constants)

    return parser


def _normalize(args) -> None:
    if getattr(args, "single_ell", None) is not None:
        args.ells = [args.single_ell]
    if getattr(args, "single_n", None) is not None:
        args.ns = [args.single_n]


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    _normalize(args)
    try:
        columns, rows = args.handler(args)
        _emit(columns, rows, args)
    except NumericalFailureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0
