"""Command-line entry point: ``qpostulates <subcommand>``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import ConfigError, InsufficientData
from ..variance_analysis import DELTA_FORM, EXACT_FORM
from . import config as config_io
from .aggregate import aggregate_runs
from .experiment import run_campaign
from .io import artifact_version, dumps_json, summary_document, write_json, write_records_csv
from .oracle import squeezed_monte_carlo_sweep, variance_oracle_table
from .selftest import run_selftest
from .sweeps import SWEEP_PARAMETERS, imperfection_sweep, squeezing_sweep, squeezing_sweep_table

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_INSUFFICIENT = 3


def _grid(start: float, stop: float, points: int) -> list[float]:
    if points < 2:
        return [start]
    # k / (points - 1) keeps round grid values such as 0.85 exact
    return [start + (stop - start) * (k / (points - 1)) for k in range(points)]


def _load_config(args) -> config_io.ExperimentConfig:
    cfg = config_io.load(args.config) if args.config else config_io.ExperimentConfig()
    overrides = dict(config_io.parse_assignment(item) for item in args.set)
    for flag, name in (("seed", "seed"), ("runs", "runs"), ("samples", "samples_per_config")):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[name] = value
    return config_io.with_overrides(cfg, overrides)


def _emit(document: dict, out: str | None) -> None:
    if out:
        write_json(out, document)
    else:
        sys.stdout.write(dumps_json(document))


def cmd_simulate(args) -> int:
    if args.seed is None:
        raise ConfigError("simulate requires --seed")
    cfg = _load_config(args)
    records = run_campaign(cfg, workers=args.workers)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        summary = aggregate_runs(records, cfg.filter_policy())
    except InsufficientData:
        write_records_csv(out_dir / "runs.csv", records)
        raise
    write_records_csv(out_dir / "runs.csv", records, summary)
    write_json(out_dir / "summary.json", summary_document(cfg, summary))
    for name, stat in summary.statistics.items():
        print(f"{name:6s} mean={stat.mean:+.6g} std={stat.std:.6g} se={stat.standard_error:.3g} kept={stat.count}/{stat.count_before}")
    return EXIT_OK


def cmd_sweep_homodyne(args) -> int:
    cfg = _load_config(args)
    if args.parameter == "t":
        grid = _grid(args.start if args.start is not None else 0.68, args.stop if args.stop is not None else 0.73, args.points)
    else:
        grid = _grid(args.start if args.start is not None else 0.9, args.stop if args.stop is not None else 1.1, args.points)
    points = imperfection_sweep(cfg, args.parameter, grid, beta_ratios=tuple(args.beta_ratio), alpha=args.alpha)
    document = {
        "artifact": {"name": "qpostulates", "version": artifact_version()},
        "config": cfg.to_dict(),
        "sweep": {
            "parameter": args.parameter,
            "alpha": args.alpha,
            "rows": [{"value": p.value, "beta_ratio": p.beta_ratio, "kappa": p.kappa} for p in points],
        },
    }
    _emit(document, args.out)
    return EXIT_OK


def cmd_sweep_squeezing(args) -> int:
    grid = _grid(0.0, 1.0, args.points)
    sweep = squeezing_sweep(args.n_total, args.probability, grid, args.samples, alpha_form=args.alpha_form)
    table = squeezing_sweep_table(sweep)
    table.update(n_total=args.n_total, probability=args.probability, samples=args.samples)
    if args.monte_carlo:
        mc = squeezed_monte_carlo_sweep(args.n_total, args.probability, grid, N=args.samples, repetitions=args.monte_carlo, seed=args.seed)
        table["monte_carlo"] = [{"f": m.f, "mse_times_N": m.mse_combined, "v_combined_times_N": m.v_combined} for m in mc]
    _emit({"artifact": {"name": "qpostulates", "version": artifact_version()}, "sweep": table}, args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    rows = variance_oracle_table(args.samples, args.seed)
    print(f"{'quantity':28s} {'closed form':>14s} {'empirical':>14s} {'rel err':>9s} {'tol':>6s}")
    for row in rows:
        status = "ok" if row.passed else "FAIL"
        print(f"{row.name:28s} {row.closed_form:14.8f} {row.empirical:14.8f} {row.relative_error:9.4f} {row.tolerance:6.2f} {status}")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAILURE


def cmd_selftest(args) -> int:
    results = run_selftest(args.seed)
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
    return EXIT_OK if all(passed for _, passed, _ in results) else EXIT_FAILURE


def cmd_init_config(args) -> int:
    text = config_io.dumps(config_io.ExperimentConfig())
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpostulates", description="Simulated interferometric tests of Born's rule and complex amplitudes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {artifact_version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    def config_args(p):
        p.add_argument("--config", help="INI config file; flags and --set override it")
        p.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE", help="override one config field")

    p = sub.add_parser("simulate", help="run a full simulated campaign")
    config_args(p)
    p.add_argument("--seed", type=int, help="campaign seed (required)")
    p.add_argument("--runs", type=int)
    p.add_argument("--samples", type=int, help="samples per configuration")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out-dir", default=".", help="directory for runs.csv and summary.json")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep-homodyne", help="apparent kappa versus detector imperfection")
    config_args(p)
    p.add_argument("--parameter", choices=SWEEP_PARAMETERS, default="t")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--points", type=int, default=51)
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--beta-ratio", type=float, action="append", help="LO amplitude over source amplitude (repeatable)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep_homodyne)

    p = sub.add_parser("sweep-squeezing", help="MSE versus displacement/squeezing split")
    p.add_argument("--n-total", type=float, default=1.0)
    p.add_argument("--probability", type=float, default=4 / 9)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--alpha-form", choices=(DELTA_FORM, EXACT_FORM), default=DELTA_FORM)
    p.add_argument("--monte-carlo", type=int, default=0, metavar="REPS", help="also run a Monte Carlo check with REPS repetitions")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep_squeezing)

    p = sub.add_parser("oracle", help="closed-form vs Monte Carlo variance table")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("selftest", help="exact-algebra checks")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("init-config", help="write the default config")
    p.add_argument("--out")
    p.set_defaults(func=cmd_init_config)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "beta_ratio", False) is None:
        args.beta_ratio = [1e3, 1e4]
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InsufficientData as exc:
        print(f"insufficient data: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT


if __name__ == "__main__":
    sys.exit(main())
