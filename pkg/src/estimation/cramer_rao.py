from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import NDArray

from .design import ExperimentDesign
from ..core.bloch_state import BlochState
from ..core.constants import FisherTag, placement_label
from ..fisher.fisher_info import FisherMatrix, fisher_total


@dataclass(frozen=True, eq=False)
class CramerRaoBound:
    """
        Lower bound on the estimator covariance from N trials at each placement.
        covariance is [N F_tot]^-1 when F_tot has full rank; otherwise only the
        per-parameter bounds 1/(N F_theta) are available.
    """
    information: FisherMatrix
    trials_per_placement: int
    covariance: NDArray[np.float64] | None
    scalar_bounds: Tuple[float, float]
    rank: int
    tag: FisherTag = FisherTag.REGULAR

    @property
    def is_matrix_bound(self) -> bool:
        return self.covariance is not None

    @property
    def diagonal(self) -> Tuple[float, float]:
        if self.covariance is not None:
            return float(self.covariance[0, 0]), float(self.covariance[1, 1])
        return self.scalar_bounds

    def as_dict(self) -> dict:
        return {"covariance": self.covariance,
                "scalar_bounds": list(self.scalar_bounds),
                "rank": self.rank,
                "matrix_bound": self.is_matrix_bound,
                "tag": self.tag.label,
                "placements": [placement_label(m) for m in self.information.placements],
                "skipped": [placement_label(m) for m in self.information.skipped],
                "trials_per_placement": self.trials_per_placement}


def crb(state: BlochState, design: ExperimentDesign) -> CramerRaoBound:
    information = fisher_total(state, design.placements)
    n = design.trials_per_placement
    if not information.tag.is_finite or information.rank() == 0:
        return CramerRaoBound(information, n, None, (math.inf, math.inf), 0, FisherTag.SINGULAR)
    scalar = tuple(1.0 / (n * f) if f > 0.0 else math.inf for f in (information.f_aa, information.f_bb))
    rank = information.rank()
    if rank < 2:
        return CramerRaoBound(information, n, None, scalar, rank)
    return CramerRaoBound(information, n, np.linalg.inv(n * information.matrix), scalar, rank)
