"""
Point-set text files and partition dumps.

Point-set file:

    manifold: sphere2
    # colatitude longitude
    0.5 1.0
    1.2 3.0
"""

import logging
from pathlib import Path
from typing import List

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from manifolds import get_manifold, probe_grid
from models.errors import UsageError
from models.pydantic_models import ManifoldKind
from src.config import SCHEMA_VERSION

from .partition import Partition
from .point_set import PointSet

logger = logging.getLogger(__name__)


def parse_point_set(text: str) -> PointSet:
    """Parse the point-set text format; the `manifold:` header is required."""
    kind = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("manifold:"):
            name = line.split(":", 1)[1].strip()
            try:
                kind = ManifoldKind(name)
            except ValueError:
                raise UsageError(f"line {lineno}: unknown manifold '{name}'")
            continue
        if kind is None:
            raise UsageError(f"line {lineno}: point before the 'manifold:' header")
        try:
            rows.append([float(v) for v in line.split()])
        except ValueError:
            raise UsageError(f"line {lineno}: not a list of numbers: {raw!r}")

    if kind is None:
        raise UsageError("point-set file has no 'manifold:' header")
    m = get_manifold(kind)
    if any(len(r) != m.coord_dim for r in rows):
        raise UsageError(f"{kind.value} points need {m.coord_dim} coordinates per line")
    return PointSet(m, np.asarray(rows, dtype=float).reshape(-1, m.coord_dim))


def load_point_set(path) -> PointSet:
    path = Path(path)
    if not path.exists():
        raise UsageError(f"Point-set file not found: {path}")
    return parse_point_set(path.read_text())


def format_point_set(C: PointSet) -> str:
    lines = [f"manifold: {C.manifold.kind.value}"]
    lines += [" ".join(f"{v:.17g}" for v in row) for row in C.points]
    return "\n".join(lines) + "\n"


def dump_point_set(C: PointSet, path) -> None:
    Path(path).write_text(format_point_set(C))
    logger.info("💾 Wrote %d points to %s", len(C), path)


class PartitionDump(BaseModel):
    """Serialized partition: stages, merge maps, final centers and per-cell stats."""

    schema_version: str = SCHEMA_VERSION
    manifold: ManifoldKind
    d: float = Field(gt=0)
    base_rule: str = Field(description="first_ball or nearest")
    base_centers: List[List[float]]
    base_radius: float = Field(gt=0)
    merge_maps: List[List[int]] = Field(description="phi of each merge")
    stage_members: List[List[int]] = Field(description="kept positions of each merge")
    final_centers: List[List[float]]
    grid_resolution: float = Field(gt=0, description="mu-grid is rebuilt as probe_grid at this resolution")
    cell_mu: List[float]
    cell_nu: List[float]


def partition_to_dump(partition: Partition) -> PartitionDump:
    return PartitionDump(
        manifold=partition.manifold.kind,
        d=partition.d,
        base_rule=partition.base_rule,
        base_centers=partition.base_centers.points.tolist(),
        base_radius=partition.base_radius,
        merge_maps=[phi.tolist() for phi in partition.merge_maps],
        stage_members=[kept.tolist() for kept in partition.stage_members],
        final_centers=partition.final_centers.points.tolist(),
        grid_resolution=partition.mu_grid.resolution,
        cell_mu=partition.cell_mu.tolist(),
        cell_nu=partition.cell_nu.tolist(),
    )


def partition_from_dump(dump: PartitionDump) -> Partition:
    if len(dump.merge_maps) != len(dump.stage_members):
        raise UsageError("partition dump: merge_maps and stage_members differ in length")
    m = get_manifold(dump.manifold)
    return Partition(
        manifold=m,
        d=dump.d,
        base_rule=dump.base_rule,
        base_centers=PointSet(m, np.asarray(dump.base_centers, dtype=float)),
        base_radius=dump.base_radius,
        merge_maps=tuple(np.asarray(phi, dtype=np.int64) for phi in dump.merge_maps),
        stage_members=tuple(np.asarray(kept, dtype=np.int64) for kept in dump.stage_members),
        final_centers=PointSet(m, np.asarray(dump.final_centers, dtype=float)),
        mu_grid=probe_grid(m, dump.grid_resolution),
        cell_mu=np.asarray(dump.cell_mu, dtype=float),
        cell_nu=np.asarray(dump.cell_nu, dtype=float),
    )


def dump_partition(partition: Partition, path) -> None:
    Path(path).write_text(partition_to_dump(partition).model_dump_json(indent=2))
    logger.info("💾 Wrote partition with %d cells to %s", partition.n_cells, path)


def load_partition(path) -> Partition:
    path = Path(path)
    if not path.exists():
        raise UsageError(f"Partition file not found: {path}")
    try:
        dump = PartitionDump.model_validate_json(path.read_text())
    except ValidationError as e:
        raise UsageError(f"Invalid partition file {path}: {e}")
    return partition_from_dump(dump)
