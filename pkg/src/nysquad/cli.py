"""Command line entry point for the benchmark harness.

Exit codes: 0 on success, 2 on configuration problems (including argument
parsing), 3 when a numerical consistency check trips mid-run.
"""

import argparse
import json
import sys

from .exceptions import ConfigError, NumericalConsistencyError
from .experiment import (
    ALL_METHODS,
    FIGURE_PRESETS,
    ExperimentConfig,
    run_experiment,
    write_csv,
)

_CONFIG_KEYS = {
    "figure", "d", "r", "n_list", "n_rule", "trials", "methods", "seed",
    "enforce_inequality", "rtol",
}


def _load_config_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "n_list" in raw:
        if not isinstance(raw["n_list"], list):
            raise ConfigError("n_list must be a JSON array")
        raw["n_list"] = tuple(raw["n_list"])
    if "methods" in raw:
        if not isinstance(raw["methods"], list):
            raise ConfigError("methods must be a JSON array")
        raw["methods"] = tuple(raw["methods"])
    return raw


def _build_config(args):
    """Merge preset, config file and explicit flags (in increasing priority)."""
    overrides = {}
    figure = args.figure
    if args.config is not None:
        overrides = _load_config_file(args.config)
        if figure is None:
            figure = overrides.pop("figure", None)
        else:
            overrides.pop("figure", None)
    if figure is None:
        raise ConfigError("no figure selected: pass --figure or a config file with one")

    rtol_set = "rtol" in overrides
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.methods is not None:
        overrides["methods"] = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    if args.no_inequality:
        overrides["enforce_inequality"] = False
    if args.rtol is not None:
        overrides["rtol"] = args.rtol
        rtol_set = True

    try:
        cfg = ExperimentConfig.from_figure(figure, **overrides)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg, rtol_set


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="nysquad",
        description="Quadrature error benchmark; writes one CSV row per "
                    "(method, n, trial).",
    )
    parser.add_argument("--figure", choices=sorted(FIGURE_PRESETS) + ["custom"],
                        help="named experiment preset")
    parser.add_argument("--config", metavar="PATH",
                        help="JSON file overriding preset fields")
    parser.add_argument("--out", default="results.csv", metavar="PATH",
                        help="output CSV path (default: results.csv)")
    parser.add_argument("--seed", type=int, help="master seed (unsigned 64-bit)")
    parser.add_argument("--trials", type=int, help="trials per (method, n) cell")
    parser.add_argument("--no-inequality", action="store_true",
                        help="drop the one-sided residual constraint in the reduction")
    parser.add_argument("--rtol", type=float,
                        help="relative eigenvalue cutoff for all rank decisions")
    parser.add_argument("--methods", metavar="A,B,C",
                        help=f"comma-separated subset of: {', '.join(ALL_METHODS)}")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        cfg, rtol_set = _build_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    try:
        rows = run_experiment(cfg)
    except NumericalConsistencyError as exc:
        print(f"numerical consistency error: {exc}", file=sys.stderr)
        return 3

    write_csv(rows, args.out, rtol_comment=cfg.rtol if rtol_set else None)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
