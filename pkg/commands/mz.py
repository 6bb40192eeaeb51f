"""
mz: MZ constants of the configured measure for every (L, p), plus optional strong-MZ,
round-trip and sup-norm-gap reports.
"""

import logging

import numpy as np

from manifolds import eigen_system
from mzanalysis import (
    characterization_roundtrip,
    mz_constants_p2,
    mz_ratio_bounds,
    sup_norm_gap,
    verify_strong_mz,
)

from .context import RunContext
from .inputs import build_measure, build_partition
from .report import report_name

logger = logging.getLogger(__name__)

NAME = "mz"


def register(subparsers):
    parser = subparsers.add_parser(NAME, help="MZ constants of the measure")
    parser.set_defaults(handler=run)
    return parser


def run(context: RunContext) -> None:
    config = context.require_config(NAME)
    exp, spec = config.experiment, config.mz
    nu = build_measure(config)
    kind = nu.manifold.kind
    basis = eigen_system(nu.manifold, max(exp.L))
    partition = build_partition(config, nu) if spec.strong else None

    for L in exp.L:
        for p in exp.p:
            if p == 2.0 and spec.method == "auto":
                report = mz_constants_p2(nu, basis, L)
            else:
                report = mz_ratio_bounds(nu, basis, L, p, trials=exp.trials, seed=exp.seed)
            context.emit(report_name("mz", kind, L, p), report)

            if spec.strong and not np.isinf(p):
                strong = verify_strong_mz(nu, partition, basis, L, p, trials=exp.trials, seed=exp.seed,
                                          pointwise=spec.pointwise)
                context.emit(report_name("strongmz", kind, L, p), strong)
            if spec.roundtrip and not np.isinf(p):
                roundtrip = characterization_roundtrip(nu, basis, L, p, trials=exp.trials, seed=exp.seed)
                context.emit(report_name("roundtrip", kind, L, p), roundtrip)

        if spec.sup_gap:
            gap = sup_norm_gap(nu, basis, L, trials=exp.trials, seed=exp.seed)
            context.emit(report_name("supgap", kind, L), gap)
    logger.info("✅ MZ reports for %s written to %s", nu.name, context.out_dir)
