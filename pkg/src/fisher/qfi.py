from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from .fisher_info import FisherScalar, fisher_alpha, fisher_beta
from ..core.bloch_state import BlochState
from ..core.constants import DEFAULT_FD_STEP, SINGULAR_TOL
from ..utils.validations import Validations


def qfi(state: BlochState) -> Tuple[float, float]:
    """
        Single-copy quantum Fisher information (H_alpha, H_beta) = (1, sin^2 alpha)
    """
    return 1.0, math.sin(state.alpha) ** 2


def _spinor(alpha: float, beta: float) -> np.ndarray:
    return np.array([math.cos(0.5 * alpha), np.exp(1j * beta) * math.sin(0.5 * alpha)], dtype=np.complex128)


def qfi_numeric(state: BlochState, h: float = DEFAULT_FD_STEP) -> Tuple[float, float]:
    """
        H_theta = 4 (<d psi|d psi> - |<psi|d psi>|^2) with the derivative taken
        by central differences of the coin spinor
    """
    h = Validations.validate_float(h, min_value=1e-8, max_value=1e-2, label="h")
    psi = _spinor(state.alpha, state.beta)
    values = []
    for da, db in ((h, 0.0), (0.0, h)):
        d_psi = (_spinor(state.alpha + da, state.beta + db) - _spinor(state.alpha - da, state.beta - db)) / (2.0 * h)
        values.append(float(4.0 * (np.vdot(d_psi, d_psi).real - abs(np.vdot(psi, d_psi)) ** 2)))
    return values[0], values[1]


def _ratio(information: FisherScalar, bound: float) -> FisherScalar:
    if not information.is_finite:
        return information
    return FisherScalar(information.value / bound, information.tag)


def efficiency(state: BlochState, m: int | float | str) -> Tuple[FisherScalar, FisherScalar]:
    """
        (eta_alpha, eta_beta) = (F_alpha / H_alpha, F_beta / H_beta); eta_beta is
        UNDEFINED wherever H_beta vanishes
    """
    h_alpha, h_beta = qfi(state)
    eta_alpha = _ratio(fisher_alpha(state, m), h_alpha)
    if h_beta < SINGULAR_TOL:
        return eta_alpha, FisherScalar.undefined()
    return eta_alpha, _ratio(fisher_beta(state, m), h_beta)
