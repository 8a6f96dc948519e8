from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import minimize_scalar
from scipy.special import xlogy

from .cramer_rao import CramerRaoBound
from .design import CountRecord, RNG_ALGORITHM
from ..core.bloch_state import BlochState, canonicalize
from ..core.constants import DEFAULT_MLE_GRID, DEFAULT_MLE_TOL
from ..fisher.fisher_info import fisher_total
from ..spectral.escape_prob import escape_closed_array
from ..utils.errors import EstimationError
from ..utils.validations import Validations

log = logging.getLogger(__name__)

MAX_SWEEPS = 200
FLOOR = -1e30  # stands in for -inf inside the optimizer


def log_likelihood_array(counts: CountRecord, alpha: ArrayLike, beta: ArrayLike) -> NDArray[np.float64]:
    """
        sum over placements of k ln P_E + (N - k) ln(1 - P_E), with 0 ln 0 = 0
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    beta = np.asarray(beta, dtype=np.float64)
    total = np.zeros(np.broadcast(alpha, beta).shape, dtype=np.float64)
    for m, k, n in zip(counts.placements, counts.escapes, counts.trials):
        p_e = np.clip(escape_closed_array(alpha, beta, m), 0.0, 1.0)
        total = total + xlogy(k, p_e) + xlogy(n - k, 1.0 - p_e)
    return total


def log_likelihood(counts: CountRecord, state: BlochState) -> float:
    return float(log_likelihood_array(counts, state.alpha, state.beta))


@dataclass(frozen=True, eq=False)
class EstimationReport:
    mle_primary: BlochState
    mle_mirror: BlochState
    log_likelihood_at_max: float
    crb_covariance: NDArray[np.float64] | None = None
    empirical_covariance: NDArray[np.float64] | None = None
    n_replicates: int = 1
    rank_deficient: bool = False
    boundary_solution: bool = False
    degenerate: bool = False
    rng: str = RNG_ALGORITHM
    seed: int | None = None
    crb: CramerRaoBound | None = None
    extras: dict = field(default_factory=dict)

    @property
    def variance_ratios(self) -> Tuple[float, float] | None:
        """
            Empirical variance over the Cramer-Rao diagonal, per angle
        """
        if self.empirical_covariance is None or self.crb is None:
            return None
        bound = self.crb.diagonal
        return tuple(float(self.empirical_covariance[i, i] / bound[i]) if math.isfinite(bound[i]) else math.nan
                     for i in range(2))

    def as_dict(self) -> dict:
        report = {"mle_primary": self.mle_primary.as_dict(),
                  "mle_mirror": self.mle_mirror.as_dict(),
                  "log_likelihood_at_max": self.log_likelihood_at_max,
                  "crb_covariance": self.crb_covariance,
                  "empirical_covariance": self.empirical_covariance,
                  "n_replicates": self.n_replicates,
                  "flags": {"rank_deficient": self.rank_deficient,
                            "boundary_solution": self.boundary_solution,
                            "degenerate": self.degenerate},
                  "rng": self.rng,
                  "seed": self.seed}
        if self.crb is not None:
            report["crb"] = self.crb.as_dict()
            report["variance_ratios"] = self.variance_ratios
        report.update(self.extras)
        return report


def _objective(counts: CountRecord):
    def negative(alpha: float, beta: float) -> float:
        value = float(log_likelihood_array(counts, alpha, beta))
        return -max(value, FLOOR)
    return negative


def mle(counts: CountRecord,
        grid_resolution: int = DEFAULT_MLE_GRID,
        refine_tol: float = DEFAULT_MLE_TOL) -> EstimationReport:
    """
        Maximum-likelihood (alpha, beta) with beta restricted to [0, pi]: a
        grid search over [0, pi]^2 followed by coordinate-wise bounded
        golden-section passes inside +-1 grid cell of the iterate. The
        beta -> 2 pi - beta partner is reported alongside.
    """
    n = Validations.validate_int(grid_resolution, min_value=3, label="grid_resolution")
    refine_tol = Validations.validate_float(refine_tol, min_value=1e-12, label="refine_tol")
    axis = np.linspace(0.0, math.pi, n)
    alpha, beta = np.meshgrid(axis, axis, indexing="ij")
    surface = log_likelihood_array(counts, alpha, beta)
    finite = surface[np.isfinite(surface)]
    if finite.size == 0 or np.ptp(finite) <= 1e-12 * (1.0 + abs(float(np.max(finite)))):
        raise EstimationError("Likelihood is flat over the Bloch sphere; the counts carry no information")
    i, j = np.unravel_index(int(np.argmax(np.where(np.isfinite(surface), surface, -np.inf))), surface.shape)
    a, b = float(axis[i]), float(axis[j])
    cell = math.pi / (n - 1)
    negative = _objective(counts)
    for sweep in range(MAX_SWEEPS):
        start = (a, b)
        a = float(minimize_scalar(lambda x: negative(x, b),
                                  bounds=(max(0.0, a - cell), min(math.pi, a + cell)),
                                  method="bounded",
                                  options={"xatol": refine_tol}).x)
        b = float(minimize_scalar(lambda y: negative(a, y),
                                  bounds=(max(0.0, b - cell), min(math.pi, b + cell)),
                                  method="bounded",
                                  options={"xatol": refine_tol}).x)
        if max(abs(a - start[0]), abs(b - start[1])) < refine_tol:
            break
    else:
        log.info(f"MLE refinement stopped after {MAX_SWEEPS} sweeps at ({a:.9g}, {b:.9g})")
    # the bounded search never lands exactly on the window edges
    best_value = -negative(a, b)
    grid_value = float(surface[i, j])
    if grid_value > best_value:
        a, b, best_value = float(axis[i]), float(axis[j]), grid_value
    primary = canonicalize(a, b)
    information = fisher_total(primary, counts.placements)
    return EstimationReport(mle_primary=primary,
                            mle_mirror=primary.mirror,
                            log_likelihood_at_max=float(log_likelihood(counts, primary)),
                            rank_deficient=len(set(counts.placements)) < 2 or information.rank() < 2,
                            boundary_solution=counts.at_boundary,
                            degenerate=information.rank() == 0)
