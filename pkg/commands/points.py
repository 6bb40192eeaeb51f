"""
points: maximal eps-separated subset of a point set, with its mesh norm, separation and
overlap count.
"""

import logging

from manifolds import get_manifold, probe_grid
from models.errors import ConfigError
from models.pydantic_models import PointSetReport
from pointsets import (
    PointSet,
    dump_point_set,
    load_point_set,
    max_separated_subset,
    mesh_norm,
    min_separation,
    overlap_count,
)

from .context import RunContext
from .inputs import build_measure

logger = logging.getLogger(__name__)

NAME = "points"
GRID_DIVISIONS = 2048


def register(subparsers):
    parser = subparsers.add_parser(NAME, help="maximal separated subset and its geometry")
    parser.set_defaults(handler=run)
    return parser


def run(context: RunContext) -> None:
    config = context.require_config(NAME)
    if config.points is None:
        raise ConfigError("'points' needs a [points] section with eps")
    spec = config.points
    m = get_manifold(config.experiment.manifold)

    if spec.path:
        source = load_point_set(spec.path)
        if source.manifold.kind is not m.kind:
            raise ConfigError(f"[points] file lives on {source.manifold.kind.value}")
    else:
        source = PointSet(m, build_measure(config).support)

    subset = max_separated_subset(source, spec.eps)
    grid = probe_grid(m, m.diameter / GRID_DIVISIONS)
    radius = spec.overlap_radius or 2.0 * spec.eps
    report = PointSetReport(
        n_points=len(source),
        eps=spec.eps,
        n_selected=len(subset),
        mesh_norm=mesh_norm(subset, grid),
        separation=min_separation(subset),
        overlap_radius=radius,
        overlap_count=overlap_count(subset, radius, grid),
    )
    stem = f"points_{m.kind.value}"
    dump_point_set(subset, context.out_dir / f"{stem}.txt")
    context.emit(stem, report)
    logger.info("✅ %d of %d points kept at eps=%g", report.n_selected, report.n_points, spec.eps)
