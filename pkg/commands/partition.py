"""
partition: build, audit and dump the partition of the configured measure.
"""

import logging

from models.errors import InvariantViolation
from pointsets import audit_partition, dump_partition

from .context import RunContext
from .inputs import build_measure, build_partition

logger = logging.getLogger(__name__)

NAME = "partition"


def register(subparsers):
    parser = subparsers.add_parser(NAME, help="build and audit a partition of the measure")
    parser.set_defaults(handler=run)
    return parser


def run(context: RunContext) -> None:
    config = context.require_config(NAME)
    nu = build_measure(config)
    partition = build_partition(config, nu)
    audit = audit_partition(partition, nu)

    stem = f"partition_{nu.manifold.kind.value}"
    dump_partition(partition, context.out_dir / f"{stem}_cells.json")
    context.written.append(context.out_dir / f"{stem}_cells.json")
    if not audit.ok:
        context.emit(stem, audit, status="failed", error="partition invariants violated")
        raise InvariantViolation(f"partition audit failed: {audit.model_dump()}")
    context.emit(stem, audit)
    logger.info("✅ %d cells at d=%.4g, band ratio %.3g", audit.n_cells, partition.d, audit.b_hi / audit.b_lo)
