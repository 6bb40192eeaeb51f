"""
kernel: localization and heat-kernel probes; one CSV row per L.
"""

import logging

from kernels import localization_report, sigma_norm_constant

from .context import RunContext
from .report import report_name

logger = logging.getLogger(__name__)

NAME = "kernel"


def register(subparsers):
    parser = subparsers.add_parser(NAME, help="localization constants of Phi_L and the heat kernel")
    parser.set_defaults(handler=run)
    return parser


def run(context: RunContext) -> None:
    config = context.require_config(NAME)
    exp, spec = config.experiment, config.kernel
    report = localization_report(exp.manifold, exp.L, S=spec.S, probes=spec.probes,
                                 heat_times=tuple(spec.heat_times), seed=exp.seed)
    if spec.sigma_norm:
        report.sigma_norm = sigma_norm_constant(exp.manifold, exp.L, ps=exp.p, seed=exp.seed)
    rows = []
    for row in report.rows:
        flat = {"L": row.L, "sup_l1": row.sup_l1, "christoffel_lo": row.christoffel_lo,
                "christoffel_hi": row.christoffel_hi, "beta_hat": row.beta_hat}
        flat.update({f"c_S{S}": value for S, value in row.c_by_S.items()})
        rows.append(flat)
    context.emit(report_name("kernel", exp.manifold), report, rows=rows)
    logger.info("📊 kappa2=%.4g kappa3=%.4g kappa4=%.4g", report.kappa2, report.kappa3, report.kappa4)
