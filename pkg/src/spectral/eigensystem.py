from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.constants import DEFAULT_RHO, Branch
from ..utils.errors import DomainError
from ..utils.validations import Validations


@dataclass(frozen=True)
class EigenSystem:
    """
        Eigen-pairs of the k-space step operator U_k = diag(e^{ik}, e^{-ik}) C.

        Spinors are unit normalized with real, non-negative upper components;
        the lower components carry the e^{-ik} phase.
    """
    k: float
    rho: float
    omega_plus: float
    omega_minus: float
    a_plus: float
    a_minus: float
    b_plus: complex
    b_minus: complex

    @property
    def lambda_plus(self) -> complex:
        return cmath.exp(-1j * self.omega_plus)

    @property
    def lambda_minus(self) -> complex:
        return cmath.exp(-1j * self.omega_minus)

    def eigenvalue(self, branch: Branch) -> complex:
        return self.lambda_plus if branch is Branch.PLUS else self.lambda_minus

    def spinor(self, branch: Branch) -> NDArray[np.complex128]:
        if branch is Branch.PLUS:
            return np.array([self.a_plus, self.b_plus], dtype=np.complex128)
        return np.array([self.a_minus, self.b_minus], dtype=np.complex128)


def _validate_rho(rho: float) -> float:
    rho = Validations.validate_probability(rho, label="rho")
    if rho == 0.0:
        raise DomainError("rho = 0 is the swap coin; its k-space spectrum is degenerate")
    return rho


def spinor_components(k: ArrayLike, rho: float = DEFAULT_RHO) -> Tuple[NDArray, NDArray, NDArray]:
    """
        Vectorized (A+, A-, e^{-ik}) over an array of quasi-momenta; B+ = e^{-ik} A-
        and B- = -e^{-ik} A+.
    """
    k = np.asarray(k, dtype=np.float64)
    sin_k = np.sin(k)
    s = np.cos(k) / np.sqrt(1.0 / rho - sin_k ** 2)
    s = np.clip(s, -1.0, 1.0)
    a_plus = np.sqrt(0.5 * (1.0 + s))
    a_minus = np.sqrt(0.5 * (1.0 - s))
    return a_plus, a_minus, np.exp(-1j * k)


def eigensystem(k: float, rho: float = DEFAULT_RHO) -> EigenSystem:
    k = Validations.validate_float(k, label="k")
    if not (-math.pi / 2 < k < math.pi / 2):
        raise DomainError(f"k must lie in (-pi/2, pi/2) ({k})")
    rho = _validate_rho(rho)
    a_plus, a_minus, phase = spinor_components(k, rho)
    omega_plus = -math.asin(math.sqrt(rho) * math.sin(k))
    return EigenSystem(k=k,
                       rho=rho,
                       omega_plus=omega_plus,
                       omega_minus=math.pi - omega_plus,
                       a_plus=float(a_plus),
                       a_minus=float(a_minus),
                       b_plus=complex(phase * a_minus),
                       b_minus=complex(-phase * a_plus))


def step_operator_k(k: float, rho: float = DEFAULT_RHO) -> NDArray[np.complex128]:
    """
        One walk step in momentum space: coin, then L picks up e^{ik} and R e^{-ik}
    """
    rho = Validations.validate_probability(rho, label="rho")
    diag = math.sqrt(rho)
    off = math.sqrt(1.0 - rho)
    shift = np.diag([cmath.exp(1j * k), cmath.exp(-1j * k)])
    return shift @ np.array([[diag, off], [off, -diag]], dtype=np.complex128)
