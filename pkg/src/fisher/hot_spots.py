from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.ndimage import maximum_filter
from scipy.optimize import minimize_scalar

from .fisher_info import fisher_beta
from .grid import grid_scan
from ..core.bloch_state import BlochState, canonicalize
from ..core.constants import DEFAULT_HOT_SPOT_RES, DEFAULT_HOT_SPOT_TOL, TWO_PI, Quantity, placement_label
from ..spectral.escape_prob import escape_prob_closed, xi_table
from ..utils.validations import Validations

log = logging.getLogger(__name__)

MAX_SWEEPS = 100
DEDUPE_TOL = 1e-4


@dataclass(frozen=True)
class HotSpot:
    alpha: float
    beta: float
    f_beta: float
    p_e: float

    @property
    def state(self) -> BlochState:
        return BlochState(self.alpha, self.beta)

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "F_beta": self.f_beta, "P_E": self.p_e}


def _f_beta(m, alpha: float, beta: float) -> float:
    value = fisher_beta(canonicalize(alpha, beta), m)
    return value.value if value.is_finite else 0.0


def _refine(m, alpha: float, beta: float, cell: Tuple[float, float], tol: float) -> Tuple[float, float]:
    """
        Coordinate ascent on F_beta inside windows of +-2 cells that follow the
        iterate; beta stays in [0, pi] and a move is kept only if F_beta grows
    """
    width_a, width_b = 2.0 * cell[0], 2.0 * cell[1]
    best = _f_beta(m, alpha, beta)
    for sweep in range(MAX_SWEEPS):
        start = (alpha, beta)
        result = minimize_scalar(lambda a: -_f_beta(m, a, beta),
                                 bounds=(max(0.0, alpha - width_a), min(math.pi, alpha + width_a)),
                                 method="bounded",
                                 options={"xatol": tol})
        if -result.fun > best:
            alpha, best = float(result.x), float(-result.fun)
        result = minimize_scalar(lambda b: -_f_beta(m, alpha, b),
                                 bounds=(max(0.0, beta - width_b), min(math.pi, beta + width_b)),
                                 method="bounded",
                                 options={"xatol": tol})
        if -result.fun > best:
            beta, best = float(result.x), float(-result.fun)
        if max(abs(alpha - start[0]), abs(beta - start[1])) < tol:
            log.debug(f"hot spot M={placement_label(m)} converged after {sweep + 1} sweeps")
            break
    return alpha, beta


def hot_spots(m: int | float | str,
              resolution: int = DEFAULT_HOT_SPOT_RES,
              tol: float = DEFAULT_HOT_SPOT_TOL) -> List[HotSpot]:
    """
        Local maxima of F_beta over the Bloch sphere, sorted by F_beta. Each
        maximum found with beta in [0, pi] is reported with its 2 pi - beta mirror.
    """
    m = xi_table(m).m
    resolution = Validations.validate_int(resolution, min_value=4, label="resolution")
    tol = Validations.validate_float(tol, min_value=1e-12, label="tol")
    grid = grid_scan(m, Quantity.F_BETA, resolution, resolution)
    values = np.where(grid.finite_mask, grid.values, -np.inf)
    # beta (axis 0) is periodic, alpha (axis 1) is not
    peaks = (values == maximum_filter(values, size=3, mode=("wrap", "nearest"))) & (values > 0.0)
    cell = (math.pi / resolution, TWO_PI / resolution)
    found: List[HotSpot] = []
    for i, j in zip(*np.nonzero(peaks)):
        beta = float(grid.beta_axis[i])
        if beta > math.pi:
            continue
        alpha, beta = _refine(m, float(grid.alpha_axis[j]), beta, cell, tol)
        for spot in (canonicalize(alpha, beta), canonicalize(alpha, TWO_PI - beta)):
            if any(abs(spot.alpha - h.alpha) < DEDUPE_TOL and abs(spot.beta - h.beta) < DEDUPE_TOL for h in found):
                continue
            found.append(HotSpot(spot.alpha, spot.beta, _f_beta(m, spot.alpha, spot.beta),
                                 escape_prob_closed(spot, m)))
    if not found:
        log.warning(f"F_beta vanishes on the M={placement_label(m)} grid; no hot spots")
    return sorted(found, key=lambda h: (-h.f_beta, h.beta))
