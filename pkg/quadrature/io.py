"""
Rule files.

    # comment
    manifold: circle
    L: 8
    kind: PointEvaluation
    mode: LP_maximin
    0 0.0000000000000000 0.0588235294117647
    1 0.3695991357044040 0.0588235294117647

Each row is the cell id, the coordinates of x_k and W_k.
"""

from pathlib import Path

import numpy as np

from manifolds import get_manifold
from models.errors import UsageError

from .functionals import FunctionalKind
from .rule import QuadratureMode, QuadratureRule

HEADER_KEYS = ("manifold", "L", "kind", "mode")


def format_rule(rule: QuadratureRule) -> str:
    lines = [
        f"manifold: {rule.manifold.kind.value}",
        f"L: {rule.L:g}",
        f"kind: {rule.kind.value}",
        f"mode: {rule.mode.value}",
        f"residual: {rule.residual:.6e}",
    ]
    for k, (point, weight) in enumerate(zip(rule.points, rule.weights)):
        coords = " ".join(f"{c:.16f}" for c in point)
        lines.append(f"{k} {coords} {weight:.17g}")
    return "\n".join(lines) + "\n"


def parse_rule(text: str) -> QuadratureRule:
    """
    Raises:
        UsageError: missing header, malformed row or negative weight
    """
    header, rows = {}, []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            key, value = (part.strip() for part in line.split(":", 1))
            header[key] = value
            continue
        try:
            rows.append([float(tok) for tok in line.split()])
        except ValueError:
            raise UsageError(f"rule file line {number}: cannot parse '{raw.strip()}'")

    missing = [key for key in HEADER_KEYS if key not in header]
    if missing:
        raise UsageError(f"rule file misses header fields {missing}")
    m = get_manifold(header["manifold"])
    width = m.coord_dim + 2
    if any(len(row) != width for row in rows):
        raise UsageError(f"rule rows on {m.kind.value} need {width} columns: id, coordinates, weight")
    table = np.array(rows, dtype=float).reshape(-1, width)
    weights = table[:, -1]
    if np.any(weights < 0):
        raise UsageError("rule file has negative weights")
    order = np.argsort(table[:, 0], kind="stable")
    return QuadratureRule(
        manifold=m,
        L=float(header["L"]),
        kind=FunctionalKind(header["kind"]),
        mode=QuadratureMode(header["mode"]),
        points=table[order, 1:-1],
        weights=weights[order],
        cell_mu=np.zeros(len(weights)),
        residual=float(header.get("residual", "nan")),
    )


def dump_rule(rule: QuadratureRule, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_rule(rule))
    return path


def load_rule(path) -> QuadratureRule:
    return parse_rule(Path(path).read_text())


def load_rule_measure(path, name: str = None):
    """Rule file as an atomic SignedMeasure (W_k at x_k)."""
    rule = load_rule(path)
    return rule.as_measure(name or Path(path).stem)
