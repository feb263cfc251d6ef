"""Command line front end.

Exit codes: 0 success, 2 a theorem monitor's hypothesis is unmet,
64 usage errors (with help text), 1 anything else that went wrong.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import FunctionSpec, as_assignment
from .distance import distance_sq
from .dirichlet import l_y_derivative, l_window_values, lambda_k_table
from .errors import HypothesisUnmetError, PretlabError, UsageError
from .harness import ExperimentConfig, run_scenario
from .sieve import prime_count, rough_mask_range, segments
from .sieve_weights import build_beta_sieve, main_term_ratio, sandwich_scan
from .sums import SumRequest, partial_sum


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; route through UsageError for 64
    def error(self, message):
        raise UsageError(f"{message}\n\n{self.format_help()}")


def _function_arg(text: str) -> FunctionSpec:
    """Bare catalog name, or a JSON object {"name": ..., "params": ...}."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return FunctionSpec.from_obj(json.loads(text))
        except (json.JSONDecodeError, PretlabError) as exc:
            raise UsageError(f"bad function spec: {exc}") from exc
    return FunctionSpec(text)


def _complex_arg(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise UsageError(f"cannot parse point s = {text!r}") from exc


def _grid_arg(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse grid {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="pretlab", description=__doc__)
    sub = top.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("sieve", parents=[], help="prime and rough counts")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--y", type=float, default=None, help="also count y-rough n <= limit")

    p = sub.add_parser("sum", help="partial sums S_k(x; f)")
    p.add_argument("--function", type=_function_arg, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--y", type=float, default=None)
    p.add_argument("--weight", default="unit")

    p = sub.add_parser("distance", help="squared pretentious distance")
    p.add_argument("--f", type=_function_arg, required=True)
    p.add_argument("--g", type=_function_arg, required=True)
    p.add_argument("--y", type=float, default=1.0)
    p.add_argument("--x", type=float, required=True)

    p = sub.add_parser("lseries", help="truncated L_y(s, f) and derivatives")
    p.add_argument("--function", type=_function_arg, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--s", type=_complex_arg, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--truncation", type=int, default=10**6)
    p.add_argument("--window", action="store_true",
                   help="window mode at real s (sigma <= 1 allowed)")

    p = sub.add_parser("lambda", help="generalized von Mangoldt values")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="print one value instead of a summary")

    p = sub.add_parser("weights", help="beta-sieve weight diagnostics")
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--scan", type=int, default=None, help="sandwich scan up to this x")

    p = sub.add_parser("verify", help="run a scenario from config or flags")
    p.add_argument("--config", default=None, help="JSON config path")
    p.add_argument("--scenario", default=None)
    p.add_argument("--function", type=_function_arg, default=None)
    p.add_argument("--Q", type=float, default=None)
    p.add_argument("--A", type=float, default=None)
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--t0", type=float, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--x-grid", type=_grid_arg, default=None, dest="x_grid")
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--truncation", type=int, default=None)
    p.add_argument("--c-window", type=float, default=None, dest="c_window")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", default=None, dest="out_dir")
    return top


def _cmd_sieve(args) -> int:
    print(f"pi({args.limit}) = {prime_count(args.limit)}")
    if args.y is not None:
        count = 0
        for a, b in segments(1, args.limit + 1, 1 << 20):
            count += int(rough_mask_range(a, b, args.y).sum())
        print(f"rough(y={args.y:g}) count = {count}")
    return 0


def _fmt_value(value: complex) -> str:
    if abs(value.imag) < 1e-12 * max(abs(value.real), 1.0):
        return format(value.real, ".17g")
    return f"{value.real:.17g}{value.imag:+.17g}j"


def _cmd_sum(args) -> int:
    req = SumRequest(f=args.function, x=args.x, k=args.k, y=args.y, weight=args.weight)
    res = partial_sum(req)
    print(f"S_{args.k}({args.x}) = {_fmt_value(res.value)}")
    return 0


def _cmd_distance(args) -> int:
    res = distance_sq(args.f, args.g, args.y, args.x)
    print(f"D^2 = {res.value:.17g}  (primes used: {res.primes_used})")
    return 0


def _cmd_lseries(args) -> int:
    fn = as_assignment(args.function)
    if args.window:
        if args.s.imag != 0.0:
            raise UsageError("window mode takes real s")
        vals, scales = l_window_values(fn, args.y, [args.s.real], args.truncation)
        print(f"L_y(s) = {vals[0]:.17g}  resolution {scales[0]:.3g}")
        return 0
    ev = l_y_derivative(fn, args.y, args.s, args.k, args.truncation)
    print(f"L_y^({args.k})(s) = {_fmt_value(ev.value)}  tail_bound {ev.tail_bound:.3g}")
    return 0


def _cmd_lambda(args) -> int:
    table = lambda_k_table(args.k, args.limit)
    if args.n is not None:
        if not 1 <= args.n <= args.limit:
            raise UsageError("n must lie in [1, limit]")
        print(f"Lambda_{args.k}({args.n}) = {table.values[args.n]:.17g}")
        return 0
    nz = (table.values != 0.0).sum()
    print(f"Lambda_{args.k} on [1, {args.limit}]: {nz} nonzero sites, "
          f"max {table.values.max():.6g}")
    return 0


def _cmd_weights(args) -> int:
    w = build_beta_sieve(args.y, args.u)
    print(f"D = y^u = {w.D:.6g}; |lambda+| = {len(w.lambda_plus)}, "
          f"|lambda-| = {len(w.lambda_minus)}")
    from .catalog import power_omega

    mt = main_term_ratio(w, power_omega(1.0))
    print(f"main-term ratios (g=1): plus {mt.ratio_plus:.6f}, minus {mt.ratio_minus:.6f} "
          f"(envelope {mt.envelope:.4f}: {'ok' if mt.within_envelope else 'OUT'})")
    if args.scan:
        rep = sandwich_scan(w, args.scan)
        print(f"sandwich scan to {args.scan}: {rep.violations} violations "
              f"over {rep.checked} checked")
        return 0 if rep.clean else 1
    return 0


def _cmd_verify(args) -> int:
    if args.config:
        cfg = ExperimentConfig.from_file(args.config)
    else:
        if args.scenario is None:
            raise UsageError("verify needs --scenario or --config")
        cfg = ExperimentConfig(scenario=args.scenario)
    for name in ("scenario", "function", "Q", "A", "T", "t0", "k", "x_grid",
                 "threshold", "truncation", "c_window", "seed", "threads", "out_dir"):
        val = getattr(args, name, None)
        if val is not None:
            setattr(cfg, name, val)
    cfg.validate()
    result = run_scenario(cfg)
    report = result["report"]
    summary = {
        "scenario": cfg.scenario,
        "verdict": report.verdict,
        "max_ratio": report.max_ratio,
        "rows": len(report.rows),
        "paths": result["paths"],
    }
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


_COMMANDS = {
    "sieve": _cmd_sieve,
    "sum": _cmd_sum,
    "distance": _cmd_distance,
    "lseries": _cmd_lseries,
    "lambda": _cmd_lambda,
    "weights": _cmd_weights,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_help())
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        text = str(exc)
        print(text, file=sys.stderr)
        if "usage:" not in text:
            print(f"\n{parser.format_usage()}", file=sys.stderr, end="")
        return 64
    except HypothesisUnmetError as exc:
        print(f"hypothesis unmet: {exc}", file=sys.stderr)
        return 2
    except PretlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports, not raises
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
