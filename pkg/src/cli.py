"""
Command-line front end.

    measure    evaluate measures from a JSON config, JSON on stdout
    curve      dynamic measure curve CSV
    sweep      crir / cpir ratio sweep CSV
    verify     proposition harness (canonical bindings + seeded sweeps)
    reproduce  worked examples and figure data

Exit codes: 0 ok, 1 verification failure, 2 config error, 3 divergence under
--strict or an unexpected failure (logged with its traceback).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from src.data import RunConfig, load_config
from src.errors import ConfigError, InfoMeasureError, RegistryError
from src.pipeline import MeasureRunner
from src.reporting import to_json_line, write_csv, write_jsonl

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_DIVERGED = 3

EXAMPLES = ("example1", "example2.1", "example3.1", "fig1", "fig2", "fig3")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="JSON run configuration")
    parser.add_argument("--out", type=Path, help="output file or directory")
    parser.add_argument("--seed", type=int, help="seed for randomized sweeps")
    parser.add_argument("--strict", action="store_true", help="exit 3 when any measure diverges")
    parser.add_argument("--tol", type=float, help="check tolerance; also overrides quadrature rel_tol")
    parser.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infomeasures", description=__doc__.split("\n")[1].strip())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="evaluate measures")
    _common(p)
    p.add_argument("--measure", action="append", dest="measures", help="measure name (repeatable)")

    p = sub.add_parser("curve", help="dynamic measure curve")
    _common(p)
    p.add_argument("--measure", action="append", dest="measures")

    p = sub.add_parser("sweep", help="crir/cpir ratio sweep")
    _common(p)

    p = sub.add_parser("verify", help="run the proposition harness")
    _common(p)
    p.add_argument("ids", nargs="*", help="proposition ids, or 'all'")
    p.add_argument("--trials", type=int)
    p.add_argument("--window-sweep", action="store_true", help="also write the interval measure window sweep")

    p = sub.add_parser("reproduce", help="worked examples and figure data")
    _common(p)
    p.add_argument("example", choices=EXAMPLES)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _resolve(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config)
    overrides = {
        "command": args.command,
        "seed": args.seed,
        "tol": args.tol,
        "strict": args.strict,
        "out": args.out,
        "measures": getattr(args, "measures", None),
        "trials": getattr(args, "trials", None),
        "propositions": getattr(args, "ids", None) or None,
        "example": getattr(args, "example", None),
    }
    return cfg.with_overrides(**overrides)


def cmd_measure(cfg: RunConfig) -> int:
    values = MeasureRunner(cfg).run_measure()
    diverged = False
    for mv in values:
        print(to_json_line({
            "measure": mv.name,
            "inputs": list(mv.inputs),
            "value": mv.value,
            "error_estimate": mv.error_estimate,
            "diverged": mv.diverged,
        }))
        diverged = diverged or mv.diverged
    if cfg.out is not None:
        write_jsonl((mv.to_dict() for mv in values), cfg.out)
    return EXIT_DIVERGED if diverged and cfg.strict else EXIT_OK


def cmd_curve(cfg: RunConfig) -> int:
    runner = MeasureRunner(cfg)
    curves = runner.run_curve()
    out = cfg.out or Path("results")
    paths = runner.export_curves(curves, out)
    for kind, path in paths.items():
        print(f"{kind}: {len(curves[kind].t_grid)} points -> {path}")
    diverged = any(c.diverged_at for c in curves.values())
    return EXIT_DIVERGED if diverged and cfg.strict else EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    frame = MeasureRunner(cfg).run_sweep()
    path = write_csv(frame, cfg.out or Path("results/ratio_sweep.csv"))
    print(f"{len(frame)} rows -> {path}")
    diverged = bool(frame["diverged"].astype(bool).any())
    return EXIT_DIVERGED if diverged and cfg.strict else EXIT_OK


def cmd_verify(cfg: RunConfig, window_sweep: bool = False) -> int:
    runner = MeasureRunner(cfg)
    outcome = runner.run_verify(window_sweep=window_sweep)
    paths = runner.export_verify(outcome, cfg.out or Path("results/verify"))
    print(outcome.summary().to_string(index=False))
    for name, path in paths.items():
        print(f"{name} -> {path}")
    failures = outcome.failures()
    for report in failures:
        print(to_json_line(report.to_dict()))
    if failures:
        print(f"{len(failures)} failing report(s)")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_reproduce(cfg: RunConfig) -> int:
    out = cfg.out or Path("results") / cfg.example.replace(".", "_")
    paths = MeasureRunner(cfg).run_reproduce(cfg.example, out)
    for name, path in paths.items():
        print(f"{name} -> {path}")
    if cfg.example == "example1":
        print(json.dumps(json.loads(paths["example1"].read_text()), indent=2))
    elif cfg.example != "fig1":
        verdicts = next(p for k, p in paths.items() if k.endswith("_verdicts"))
        print(verdicts.read_text().strip())
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        cfg = _resolve(args)
        if args.command == "measure":
            return cmd_measure(cfg)
        if args.command == "curve":
            return cmd_curve(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, window_sweep=args.window_sweep)
        return cmd_reproduce(cfg)
    except (ConfigError, RegistryError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfoMeasureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception:
        logger.exception("unexpected failure in %s", args.command)
        return EXIT_DIVERGED


if __name__ == "__main__":
    sys.exit(main())
