"""
Measure files: JSON documents describing an atomic, density or ball-average measure.

    {"type": "atomic", "manifold": "circle", "atoms": [[theta, weight], ...]}
    {"type": "density", "manifold": "circle", "weight": "sin_abs", "level": 1024}
    {"type": "density", "manifold": "circle", "table": [[theta, value], ...]}
    {"type": "ball_average", "manifold": "sphere2", "balls": [[theta, phi, radius, weight], ...]}
"""

import json
from pathlib import Path
from typing import List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, Field, TypeAdapter, ValidationError

from manifolds import get_manifold, reference_quadrature
from models.errors import UsageError
from models.pydantic_models import ManifoldKind
from src.config import DENSITY_LEVELS

from .examples import weighted_density_measure
from .signed_measure import AtomicMeasure, BallAverageMeasure, SignedMeasure


class AtomicSpec(BaseModel):
    type: Literal["atomic"]
    manifold: ManifoldKind
    atoms: List[List[float]] = Field(description="Rows [coords..., weight]")
    name: Optional[str] = None


class DensitySpec(BaseModel):
    type: Literal["density"]
    manifold: ManifoldKind
    weight: str = "const"
    level: Optional[float] = Field(default=None, gt=0)
    table: Optional[List[List[float]]] = None
    name: Optional[str] = None


class BallAverageSpec(BaseModel):
    type: Literal["ball_average"]
    manifold: ManifoldKind
    balls: List[List[float]] = Field(description="Rows [coords..., radius, weight]")
    level: Optional[float] = Field(default=None, gt=0)
    name: Optional[str] = None


MeasureSpec = Union[AtomicSpec, DensitySpec, BallAverageSpec]
_spec_adapter = TypeAdapter(MeasureSpec)


def _rows(rows, width: int, what: str) -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != width:
        raise UsageError(f"{what} rows need {width} numbers each")
    return arr


def measure_from_spec(spec: MeasureSpec) -> SignedMeasure:
    """Instantiate the measure described by a validated spec."""
    m = get_manifold(spec.manifold)
    if isinstance(spec, AtomicSpec):
        rows = _rows(spec.atoms, m.coord_dim + 1, "Atom")
        return AtomicMeasure(manifold=m, points=rows[:, :-1], weights=rows[:, -1],
                             name=spec.name or "atomic")
    if isinstance(spec, DensitySpec):
        return weighted_density_measure(m, spec.weight, spec.level, table=spec.table, name=spec.name)
    rows = _rows(spec.balls, m.coord_dim + 2, "Ball")
    rule = reference_quadrature(m, spec.level or DENSITY_LEVELS[m.kind.value])
    return BallAverageMeasure.build(rule, rows[:, :m.coord_dim], rows[:, -2], rows[:, -1],
                                    name=spec.name or "ball_average")


def parse_measure(document) -> SignedMeasure:
    """Build a measure from a JSON string or an already decoded dict."""
    try:
        data = json.loads(document) if isinstance(document, str) else document
        spec = _spec_adapter.validate_python(data)
    except json.JSONDecodeError as e:
        raise UsageError(f"Measure document is not valid JSON: {e}")
    except ValidationError as e:
        raise UsageError(f"Invalid measure document: {e}")
    return measure_from_spec(spec)


def load_measure(path) -> SignedMeasure:
    path = Path(path)
    if not path.exists():
        raise UsageError(f"Measure file not found: {path}")
    return parse_measure(path.read_text())


def dump_measure(nu: SignedMeasure, path) -> None:
    """
    Write nu as a measure file. Atomic measures are written as atoms; sampled measures
    are written as atoms at their sample nodes carrying the node masses.
    """
    rows = np.column_stack([nu.nodes, nu.masses]).tolist()
    document = {"type": "atomic", "manifold": nu.manifold.kind.value, "atoms": rows, "name": nu.name}
    Path(path).write_text(json.dumps(document, indent=2))
