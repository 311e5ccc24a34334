"""Command line interface.

Exit codes: 0 PASS, 1 FAIL, 2 INCONCLUSIVE, 3 configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .config import ExperimentConfig, load_config_file
from .errors import ConfigError
from .experiments import FAIL, INCONCLUSIVE, PASS, emit, run

_EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ergolab",
        description="Ergodic-theory experiments: joinings, spectra, weighted averages.",
    )
    ap.add_argument("--seed", type=int, default=1, help="RNG seed (reproducibility)")
    ap.add_argument("--out", default=None, help="report output path")
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--tolerance", type=float, default=1e-2)
    sub = ap.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an experiment from a config file")
    run_p.add_argument("config", help="flat key=value or JSON config file")

    sweep = sub.add_parser("sweep-joinings", help="exhaustive finite-rotation sweep")
    sweep.add_argument("--max-order", type=int, default=12)

    spec = sub.add_parser("spectrum", help="point-mass scan against the known spectrum")
    spec.add_argument("--system", required=True, help='system spec, e.g. "skew:SQRT2"')
    spec.add_argument("--candidates", type=int, default=8, help="lattice coefficient bound")
    spec.add_argument("--denominators", type=int, default=64)
    spec.add_argument("--n", type=int, default=8192)

    temp = sub.add_parser("tempered", help="exact temperedness certificate")
    temp.add_argument("--folner", default="intervals", help='"intervals" or "boxes:d"')
    temp.add_argument("--max-n", type=int, default=10000)
    return ap


def _config_from_args(args) -> ExperimentConfig:
    if args.command == "run":
        d = load_config_file(args.config)
        cfg = ExperimentConfig.from_dict(d)
        if args.out is not None:
            cfg.out = args.out
        return cfg
    common = {
        "seed": args.seed,
        "tolerance": args.tolerance,
        "out": args.out,
        "format": args.format,
    }
    if args.command == "sweep-joinings":
        return ExperimentConfig.from_dict(
            {
                "experiment": {"kind": "JOININGS_SWEEP", **common},
                "params": {"max_order": args.max_order},
            }
        )
    if args.command == "spectrum":
        return ExperimentConfig.from_dict(
            {
                "experiment": {"kind": "SPECTRUM_SCAN", **common},
                "schedule": {"start": args.n, "doublings": 0},
                "params": {
                    "system": args.system,
                    "lattice_bound": args.candidates,
                    "denominator_bound": args.denominators,
                },
            }
        )
    if args.command == "tempered":
        return ExperimentConfig.from_dict(
            {
                "experiment": {"kind": "TEMPERED_CHECK", **common},
                "params": {"folner": args.folner, "max_n": args.max_n},
            }
        )
    raise ConfigError("command", f"unknown command {args.command!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        report = run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    print(f"{report.experiment}: {report.verdict}")
    for note in report.notes:
        print(f"  {note}")
    if cfg.out:
        print(f"  report written to {cfg.out}")
    return _EXIT[report.verdict]


if __name__ == "__main__":
    sys.exit(main())
