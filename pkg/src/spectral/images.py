"""
    Method-of-images amplitudes.

    Inside j < M the walk is the free solution with momentum k plus a mirror
    copy reflected about j = M - 1 whose weight cancels L(M - 1, t) at every t.
    The combined + branch amplitude is

        F_{k+}(M) = C_{k+} + e^{i(pi - 2k)(M - 1)} D_{k+}

    and the - branch follows from G_{k-} = F*_{k+}.
"""
from __future__ import annotations

from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .eigensystem import _validate_rho, spinor_components
from ..core.bloch_state import BlochState, initial_amplitudes
from ..core.constants import DEFAULT_RHO, Branch
from ..utils.errors import DomainError
from ..utils.validations import Validations


def image_phase(k: ArrayLike, m: int) -> NDArray[np.complex128]:
    return np.exp(1j * (np.pi - 2.0 * np.asarray(k, dtype=np.float64)) * (m - 1))


def images_coefficient_c(k: ArrayLike, state: BlochState, rho: float = DEFAULT_RHO, branch: Branch = Branch.PLUS):
    """
        C_{k+-} = A_{k+-} L(0,0) + B*_{k+-} R(0,0), the overlap of the start
        spinor with the branch eigenvector
    """
    rho = _validate_rho(rho)
    l0, r0 = initial_amplitudes(state)
    a_plus, a_minus, phase = spinor_components(k, rho)
    if branch is Branch.PLUS:
        value = a_plus * l0 + np.conj(phase) * a_minus * r0
    else:
        value = a_minus * l0 - np.conj(phase) * a_plus * r0
    return complex(value) if np.ndim(value) == 0 else value


def images_coefficient_d(k: ArrayLike, state: BlochState, rho: float = DEFAULT_RHO, branch: Branch = Branch.PLUS):
    """
        Weight of the mirror walker: the opposite-branch overlap at -k, scaled
        so that the L component at j = M - 1 cancels.
    """
    rho = _validate_rho(rho)
    k = np.asarray(k, dtype=np.float64)
    other = Branch.MINUS if branch is Branch.PLUS else Branch.PLUS
    a_plus, a_minus, _ = spinor_components(k, rho)
    own, opposite = (a_plus, a_minus) if branch is Branch.PLUS else (a_minus, a_plus)
    if np.any(own == 0.0):
        raise DomainError(f"Branch {branch.label} has a vanishing upper spinor component; no image weight")
    value = -(opposite / own) * np.asarray(images_coefficient_c(-k, state, rho, other))
    return complex(value) if np.ndim(value) == 0 else value


def image_terms(k: ArrayLike, state: BlochState, rho: float = DEFAULT_RHO) -> Tuple[NDArray, NDArray]:
    """
        (C_{k+}, D_{k+}) as arrays over k
    """
    k = np.atleast_1d(np.asarray(k, dtype=np.float64))
    return (np.asarray(images_coefficient_c(k, state, rho, Branch.PLUS)),
            np.asarray(images_coefficient_d(k, state, rho, Branch.PLUS)))


def f_plus(k: ArrayLike, state: BlochState, m: int, rho: float = DEFAULT_RHO):
    m = Validations.validate_int(m, min_value=2, label="M")
    scalar = np.ndim(k) == 0
    direct, image = image_terms(k, state, rho)
    value = direct + image_phase(k, m) * image
    return complex(value[0]) if scalar else value
