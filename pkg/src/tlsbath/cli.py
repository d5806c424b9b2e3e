"""Command-line front end.

Exit codes: 0 success, 1 configuration error, 2 numerical failure,
3 validation failures present.  Every subcommand accepts `--config
<ini-file>` plus repeatable `--set section.key=value` overrides; sweep
output goes to `--out` (or the config's output path, or stdout).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .bath import saturation, transverse_rate
from .config import ConfigError, load_config
from .oracle import DimensionCapError
from .rates import BelowThresholdError
from .sweeps import (
    SCENARIOS,
    SweepResult,
    _rates_at,
    _timestamp,
    render_csv,
    render_json,
    run_scenario,
)
from .validation import report_rows, validate_all
from .config import resolved_items

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_VALIDATION = 3


class _Parser(argparse.ArgumentParser):
    # usage mistakes are configuration errors (exit 1), not argparse's 2
    def error(self, message):
        raise ConfigError(message)


def _add_common(sub):
    sub.add_argument("--config", metavar="PATH", help="INI config file")
    sub.add_argument(
        "--set",
        metavar="SECTION.KEY=VALUE",
        action="append",
        default=[],
        dest="overrides",
        help="override one config value (repeatable)",
    )
    sub.add_argument("--out", metavar="PATH", help="output file (default: config/stdout)")
    sub.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes")
    sub.add_argument("--format", choices=("csv", "json"), help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="tlsbath",
        description=(
            "Effective quantum dynamics of bosonic modes coupled to a "
            "coherently driven bath of lossy two-level systems"
        ),
    )
    parser.add_argument("--version", action="version", version=f"tlsbath {__version__}")
    subs = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = subs.add_parser("rates", help="master-equation rates at a single point")
    _add_common(p)
    p.set_defaults(func=_cmd_rates)

    p = subs.add_parser("sweep", help="run a named sweep scenario")
    p.add_argument("scenario", choices=SCENARIOS)
    _add_common(p)
    p.set_defaults(func=_cmd_sweep)

    for name, help_text in (
        ("steady-state", "stationary moments and squeezing along a sweep"),
        ("stability-map", "2-D stability grid over [sweep] x [sweep2]"),
        ("squeezing", "squeezing parameter along a sweep"),
        ("coherence", "first-order coherence g1(tau)"),
        ("oracle-validate", "effective model vs exact solver at small N"),
    ):
        p = subs.add_parser(name, help=help_text)
        _add_common(p)
        p.set_defaults(func=_cmd_sweep, scenario=name)

    p = subs.add_parser("validate-all", help="run the acceptance criteria suite")
    _add_common(p)
    p.set_defaults(func=_cmd_validate)

    return parser


def _emit(result: SweepResult, cfg, args) -> None:
    fmt = args.format or cfg.out_format
    path = args.out or cfg.out_path
    text = render_csv(result) if fmt == "csv" else render_json(result)
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"wrote {path} ({len(result.rows)} rows)")
    else:
        sys.stdout.write(text)


def _cmd_rates(args) -> int:
    cfg = load_config(args.config, args.overrides)
    r = _rates_at(cfg)
    tls = cfg.tls_params()
    env = cfg.environment()
    columns = (
        "kappa_t",
        "saturation",
        "Omega_prime_re",
        "Omega_prime_im",
        "delta",
        "g_re",
        "g_im",
        "Gamma_re",
        "Gamma_im",
        "gamma_plus",
        "gamma_minus",
        "gamma",
    )
    row = (
        transverse_rate(tls, env),
        saturation(tls, env),
        r.Omega_prime.real,
        r.Omega_prime.imag,
        r.delta,
        r.g.real,
        r.g.imag,
        r.Gamma.real,
        r.Gamma.imag,
        r.gamma_plus,
        r.gamma_minus,
        r.gamma,
    )
    result = SweepResult(
        scenario="rates",
        columns=columns,
        rows=(tuple(float(v) for v in row),),
        meta=tuple(resolved_items(cfg)),
        generated=_timestamp(),
    )
    if args.out or cfg.out_path or args.format == "json":
        _emit(result, cfg, args)
    else:
        for name, value in zip(columns, result.rows[0]):
            print(f"{name} = {value!r}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config, args.overrides)
    result = run_scenario(args.scenario, cfg, jobs=args.jobs)
    _emit(result, cfg, args)
    return EXIT_OK


def _cmd_validate(args) -> int:
    cfg = load_config(args.config, args.overrides)
    report = validate_all(cfg)
    for line in report.lines():
        print(line)
    if args.out:
        columns, rows = report_rows(report)
        result = SweepResult(
            scenario="validate-all",
            columns=columns,
            rows=rows,
            meta=tuple(resolved_items(cfg)),
            generated=_timestamp(),
        )
        fmt = args.format or cfg.out_format
        text = render_csv(result) if fmt == "csv" else render_json(result)
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    if report.all_passed:
        print("all criteria passed")
        return EXIT_OK
    print("validation failures present", file=sys.stderr)
    return EXIT_VALIDATION


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (
        DimensionCapError,
        BelowThresholdError,
        ArithmeticError,
        np.linalg.LinAlgError,
    ) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
