"""
Polynomial text files.

    manifold: circle
    L: 8
    # label  coefficient
    0 1  0.5
    3 c  -1.25
"""

import logging
from pathlib import Path

from manifolds import get_manifold
from models.errors import UsageError
from models.pydantic_models import ManifoldKind

from .polynomial import DiffusionPolynomial, basis_for, from_labels

logger = logging.getLogger(__name__)


def _label_tokens(kind: ManifoldKind, label) -> str:
    if kind is ManifoldKind.TORUS2:
        (k1, t1), (k2, t2) = label
        return f"{k1} {t1} {k2} {t2}"
    return f"{label[0]} {label[1]}"


def _parse_label(kind: ManifoldKind, tokens):
    if kind is ManifoldKind.CIRCLE:
        return int(tokens[0]), tokens[1]
    if kind is ManifoldKind.SPHERE2:
        return int(tokens[0]), int(tokens[1])
    return (int(tokens[0]), tokens[1]), (int(tokens[2]), tokens[3])


def format_polynomial(P: DiffusionPolynomial) -> str:
    kind = P.manifold.kind
    lines = [f"manifold: {kind.value}", f"L: {P.L!r}"]
    for label, a in zip(P.basis.labels, P.coefficients):
        if a != 0.0:
            lines.append(f"{_label_tokens(kind, label)} {a:.17g}")
    return "\n".join(lines) + "\n"


def parse_polynomial(text: str) -> DiffusionPolynomial:
    header, terms = {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if sep and key.strip() in ("manifold", "L"):
            header[key.strip()] = value.strip()
            continue
        if "manifold" not in header or "L" not in header:
            raise UsageError(f"line {lineno}: coefficient before the manifold/L header")
        kind = get_manifold(header["manifold"]).kind
        width = 4 if kind is ManifoldKind.TORUS2 else 2
        tokens = line.split()
        if len(tokens) != width + 1:
            raise UsageError(f"line {lineno}: expected {width} label tokens and a coefficient")
        try:
            terms[_parse_label(kind, tokens[:width])] = float(tokens[-1])
        except ValueError:
            raise UsageError(f"line {lineno}: malformed term {raw!r}")

    if "manifold" not in header or "L" not in header:
        raise UsageError("polynomial file needs 'manifold:' and 'L:' headers")
    m = get_manifold(header["manifold"])
    L = float(header["L"])
    if not terms:
        basis = basis_for(m, L)
        return DiffusionPolynomial(basis, [0.0] * basis.dim, L)
    return from_labels(m, L, terms)


def dump_polynomial(P: DiffusionPolynomial, path) -> None:
    Path(path).write_text(format_polynomial(P))
    logger.info("💾 Wrote degree-%s polynomial to %s", P.L, path)


def load_polynomial(path) -> DiffusionPolynomial:
    path = Path(path)
    if not path.exists():
        raise UsageError(f"Polynomial file not found: {path}")
    return parse_polynomial(path.read_text())
