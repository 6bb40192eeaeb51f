from .point_set import PointSet, grid_points
from .max_separated_subset import max_separated_subset
from .mesh_norm import mesh_norm
from .min_separation import min_separation
from .overlap_count import overlap_count
from .cells import CellPredicate, FirstBallCells, MergedCells, NearestCells
from .base_partition import base_partition
from .merge_partition import MergeResult, merge_partition
from .partition import Partition, assert_partition, audit_partition, nu_cell_masses
from .build_mz_partition import MAX_SCALE, build_mz_partition
from .trivial_partition import trivial_partition
from .circle_points import arc_circle, equispaced_circle, jittered_circle
from .random_cloud import random_cloud
from .io import (
    PartitionDump,
    dump_partition,
    dump_point_set,
    format_point_set,
    load_partition,
    load_point_set,
    parse_point_set,
)
"""pointsets package exports."""


__all__ = [
    "PointSet",
    "grid_points",
    "max_separated_subset",
    "mesh_norm",
    "min_separation",
    "overlap_count",
    "CellPredicate",
    "FirstBallCells",
    "MergedCells",
    "NearestCells",
    "base_partition",
    "MergeResult",
    "merge_partition",
    "Partition",
    "assert_partition",
    "audit_partition",
    "nu_cell_masses",
    "MAX_SCALE",
    "build_mz_partition",
    "trivial_partition",
    "arc_circle",
    "equispaced_circle",
    "jittered_circle",
    "random_cloud",
    "PartitionDump",
    "dump_partition",
    "dump_point_set",
    "format_point_set",
    "load_partition",
    "load_point_set",
    "parse_point_set",
]
