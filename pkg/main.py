"""
mzlab command line.

    python main.py mz --config experiments/circle.ini --out reports
    python main.py verify-all --skip-slow

Exit status: 0 on success, 1 on a usage or config error, 2 when a checked invariant fails.
"""

import argparse
import logging
import sys
from pathlib import Path

from commands import COMMANDS, RunContext, apply_overrides, load_config
from models.errors import InvariantViolation, UsageError
from src.config import settings

logger = logging.getLogger("mzlab")

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2
GLOBAL_OPTIONS = {"command", "handler", "config", "out", "relax_d", "threads", "seed_override"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mzlab", description=__doc__.splitlines()[1])
    parser.add_argument("--config", type=Path, help="experiment config (INI)")
    parser.add_argument("--out", help=f"report directory (default: [experiment] out or {settings.out_dir})")
    parser.add_argument("--relax-d", action="store_true", help="allow partition scales above 1/81")
    parser.add_argument("--threads", type=int, help="worker threads (default: MZLAB_THREADS)")
    parser.add_argument("--seed-override", type=int, help="replace [experiment] seed")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def _out_dir(args, config) -> Path:
    if args.out:
        return Path(args.out)
    if config is not None and config.experiment.out:
        return Path(config.experiment.out)
    return Path(settings.out_dir)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=settings.log_level, format="%(levelname)s %(name)s: %(message)s")

    if args.threads is not None:
        if args.threads < 1:
            logger.error("❌ --threads must be >= 1")
            return EXIT_USAGE
        settings.threads = args.threads

    context = RunContext(config=None, out_dir=_out_dir(args, None))
    try:
        if args.config is not None:
            context.config = apply_overrides(load_config(args.config), seed_override=args.seed_override,
                                             relax_d=args.relax_d)
            context.out_dir = _out_dir(args, context.config)
        context.out_dir.mkdir(parents=True, exist_ok=True)
        options = {k: v for k, v in vars(args).items() if k not in GLOBAL_OPTIONS}
        args.handler(context, **options)
    except UsageError as e:
        logger.error("❌ %s", e)
        _flush_failure(context, args.command, e)
        return EXIT_USAGE
    except InvariantViolation as e:
        logger.error("❌ %s", e)
        _flush_failure(context, args.command, e)
        return EXIT_INVARIANT
    except OSError as e:
        logger.error("❌ %s", e)
        return EXIT_USAGE

    logger.info("✅ %s finished, %d files written", args.command, len(context.written))
    return EXIT_OK


def _flush_failure(context: RunContext, command: str, error: Exception) -> None:
    try:
        context.emit(f"{command.replace('-', '_')}_failed", None, status="failed",
                     error=f"{type(error).__name__}: {error}")
    except UsageError:
        logger.warning("⚠️ Could not write the failure report to %s", context.out_dir)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
