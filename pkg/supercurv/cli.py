"""Command-line front end: ``supercurv <command> [options]``.

Exit codes: 0 when every positive check passes and every negative control
fails as required, 1 on a verification failure or exhausted resampling, 2 on
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from loguru import logger
from pydantic import ValidationError

from supercurv.config import COMMANDS, DEFAULT_SAMPLES, RunConfig, Tolerances, default_log_level, resolve_seed
from supercurv.errors import ConfigError, ResampleExhaustedError, SupercurvError, TruncationError
from supercurv.report import RunReport
from supercurv.verify import plan_jobs, run_jobs

LOG_FORMAT = "{level} - {time} - {name} - {message}"
SUITE_N = [2, 3, 4, 5]


# ─────────────────────────────────────────────
# Argument grammar
# ─────────────────────────────────────────────

def parse_n(text: str) -> list[int]:
    """``3``, ``2..5`` or ``2,3,4``."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",") if part.strip()]


def parse_k(text: str) -> list[int] | None:
    """``all`` or a comma-separated list; None means every k."""
    if text.strip().lower() == "all":
        return None
    return parse_n(text)


def parse_complex(text: str) -> complex:
    """Complex literal in the ``a+bi`` form (``j`` is accepted too)."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise ConfigError(f"not a complex number: {text!r}") from None


def parse_complex_list(text: str) -> list[complex]:
    """Polynomial coefficients ``c0,c1,...``."""
    return [parse_complex(part) for part in text.split(",") if part.strip()]


def parse_orders(text: str) -> tuple[int, int] | str:
    text = text.strip().lower()
    if text == "auto":
        return "auto"
    parts = [int(p) for p in text.split(",")]
    if len(parts) == 1:
        return (parts[0], parts[0])
    if len(parts) != 2:
        raise ConfigError(f"jet orders must be 'auto', 'd' or 'd+,d-', got {text!r}")
    return (parts[0], parts[1])


def parse_tolerances(items: list[str] | None) -> Tolerances:
    overrides = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"tolerance override must look like name=value, got {item!r}")
        if key not in Tolerances.model_fields:
            raise ConfigError(f"unknown tolerance {key!r}; choose from {', '.join(Tolerances.model_fields)}")
        overrides[key] = float(value)
    return Tolerances(**overrides)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supercurv",
        description="Verify identities and theorems of the supersymmetric CP^{N-1} sigma model",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", help="N value(s): 3, 2..5 or 2,3,4")
    parser.add_argument("--n-max", type=int, help="Run every N from 2 to this value")
    parser.add_argument("--k", default="all", help="Tower index k: 'all' or a list")
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="Sample points per check")
    parser.add_argument("--seed", type=int, default=None, help="Seed (default: $SUPERCURV_SEED or 42)")
    parser.add_argument("--jet-order", default="auto", help="'auto' (N+3), 'd' or 'd+,d-'")
    parser.add_argument("--tol", action="append", metavar="NAME=VALUE", help="Tolerance override, repeatable")
    parser.add_argument("--curve", choices=["veronese", "gsv", "random"], default="veronese")
    parser.add_argument("--xi", default="1", help="Odd polynomial coefficients c0,c1,... (a+bi literals)")
    parser.add_argument("--format", choices=["json", "csv", "table"], default="table")
    parser.add_argument("--output", "-o", help="Output file path (optional)")
    parser.add_argument("--workers", type=int, default=1, help="Concurrent checker jobs")
    parser.add_argument("--timing", action="store_true", help="Record wall times (breaks byte-identical output)")
    parser.add_argument("--log-level", default=None, help="Log level (default: $SUPERCURV_LOG_LEVEL or INFO)")
    return parser


def configure_logging(level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level.upper(), format=LOG_FORMAT)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.n is not None and args.n_max is not None:
        raise ConfigError("use either --n or --n-max, not both")
    if args.n_max is not None:
        n_values = list(range(2, args.n_max + 1))
    elif args.n is not None:
        n_values = parse_n(args.n)
    else:
        n_values = SUITE_N if args.command == "suite" else [3]
    return RunConfig(
        command=args.command,
        n_values=n_values,
        k_values=parse_k(args.k),
        curve=args.curve,
        xi=parse_complex_list(args.xi),
        samples=args.samples,
        seed=resolve_seed(args.seed),
        jet_orders=parse_orders(args.jet_order),
        tolerances=parse_tolerances(args.tol),
        output_format=args.format,
        output_path=args.output,
        workers=args.workers,
        timing=args.timing,
    )


def render(report: RunReport, fmt: str, output: str | None) -> str:
    if fmt == "json":
        return report.to_json(output)
    if fmt == "csv":
        return report.to_csv(output)
    return report.to_markdown(output)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    configure_logging(args.log_level or default_log_level())

    try:
        config = config_from_args(args)
    except (ValidationError, ConfigError, ValueError) as exc:
        print(f"supercurv: error: {exc}", file=sys.stderr)
        return 2

    jobs = plan_jobs(config)
    logger.info("running {} checks for N={} with seed {}", len(jobs), config.n_values, config.seed)
    try:
        checks = run_jobs(jobs, workers=config.workers, timing=config.timing)
    except ResampleExhaustedError as exc:
        logger.error("aborting: {}", exc)
        return 1
    except TruncationError as exc:
        print(f"supercurv: error: jet order too small: {exc}", file=sys.stderr)
        return 2
    except SupercurvError as exc:
        logger.error("verification failed with an error: {}", exc)
        return 1

    report = RunReport(config=config.model_dump(mode="python", exclude={"output_path"}), checks=checks)
    text = render(report, config.output_format, config.output_path)
    if config.output_path:
        logger.info("report written to {}", Path(config.output_path).resolve())
    else:
        print(text)

    failed = [c for c in checks if not c.expectation_met]
    for c in failed:
        logger.error("{} {} did not meet expectation {}", c.name, c.params.get("N"), c.expect)
    logger.info("{} of {} checks met expectation", len(checks) - len(failed), len(checks))
    return 0 if report.ok else 1


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    raise SystemExit(main())
