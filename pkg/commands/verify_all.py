"""
verify-all: the acceptance battery; exit 2 when any check fails.
"""

import logging

from models.errors import InvariantViolation
from models.pydantic_models import VerifyAllReport

from .acceptance import CHECKS, run_check
from .context import RunContext

logger = logging.getLogger(__name__)

NAME = "verify-all"


def register(subparsers):
    parser = subparsers.add_parser(NAME, help="run the acceptance battery")
    parser.add_argument("--skip-slow", action="store_true", help="skip the sphere-scale partition check")
    parser.set_defaults(handler=run)
    return parser


def run(context: RunContext, skip_slow: bool = False) -> None:
    results = [run_check(check) for check in CHECKS if not (skip_slow and check.slow)]
    failed = [r.name for r in results if not r.passed]
    report = VerifyAllReport(checks=results, passed=len(results) - len(failed), failed=len(failed))
    rows = [{"name": r.name, "passed": r.passed, "seconds": round(r.seconds, 3)} for r in results]
    context.emit("verify_all", report, status="failed" if failed else "ok", rows=rows)
    logger.info("📊 %d/%d checks passed", report.passed, len(results))
    if failed:
        raise InvariantViolation(f"acceptance checks failed: {', '.join(failed)}")
