from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List

import numpy as np

from .cramer_rao import crb
from .design import ExperimentDesign, sample_counts
from .likelihood import EstimationReport, mle
from ..core.bloch_state import BlochState
from ..core.constants import DEFAULT_MLE_GRID, DEFAULT_MLE_TOL, DEFAULT_REPLICATES, MIN_REPLICATES
from ..utils.parallel import parallel_map
from ..utils.validations import Validations

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Replicate:
    index: int
    estimate: BlochState
    report: EstimationReport


def monte_carlo(true_state: BlochState,
                design: ExperimentDesign,
                replicates: int = DEFAULT_REPLICATES,
                grid_resolution: int = DEFAULT_MLE_GRID,
                refine_tol: float = DEFAULT_MLE_TOL,
                workers: int = None) -> EstimationReport:
    """
        Repeats sample_counts -> mle `replicates` times and compares the
        covariance of the estimates (beta folded into [0, pi]) with the
        Cramer-Rao bound. Replicate r samples placement l from the stream
        keyed by (seed, r, l), so results do not depend on thread scheduling.
    """
    replicates = Validations.validate_int(replicates, min_value=MIN_REPLICATES, label="replicates")

    def one(index: int) -> Replicate:
        report = mle(sample_counts(true_state, design, index), grid_resolution, refine_tol)
        return Replicate(index, report.mle_primary.folded, report)

    log.info(f"Monte Carlo: {replicates} replicates of {design.total_trials} walks at {true_state}")
    results: List[Replicate] = parallel_map(one, range(replicates), workers)
    estimates = np.array([[r.estimate.alpha, r.estimate.beta] for r in results], dtype=np.float64)
    empirical = np.cov(estimates, rowvar=False, ddof=1)
    bound = crb(true_state, design)
    first = results[0].report
    return EstimationReport(mle_primary=first.mle_primary,
                            mle_mirror=first.mle_mirror,
                            log_likelihood_at_max=first.log_likelihood_at_max,
                            crb_covariance=bound.covariance,
                            empirical_covariance=empirical,
                            n_replicates=replicates,
                            rank_deficient=any(r.report.rank_deficient for r in results) or bound.rank < 2,
                            boundary_solution=any(r.report.boundary_solution for r in results),
                            degenerate=any(r.report.degenerate for r in results) or bound.rank == 0,
                            seed=design.seed,
                            crb=bound,
                            extras={"true_state": true_state.as_dict(),
                                    "design": design.as_dict(),
                                    "empirical_mean": estimates.mean(axis=0)})
