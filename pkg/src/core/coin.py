from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import NDArray

from .bloch_state import ComplexAmplitudePair
from ..utils.validations import Validations


@dataclass(frozen=True)
class CoinMatrix:
    """
        Biased Hadamard coin

            [[ sqrt(rho),      sqrt(1 - rho)],
             [ sqrt(1 - rho), -sqrt(rho)    ]]

        acting on the (L, R) coin basis.
    """
    c00: complex
    c01: complex
    c10: complex
    c11: complex
    rho: float

    @cached_property
    def matrix(self) -> NDArray[np.complex128]:
        return np.array([[self.c00, self.c01], [self.c10, self.c11]], dtype=np.complex128)

    @property
    def is_real(self) -> bool:
        return not bool(np.any(self.matrix.imag))

    def unitarity_defect(self) -> float:
        """
            max |(C^dagger C - I)_ij|
        """
        m = self.matrix
        return float(np.max(np.abs(m.conj().T @ m - np.eye(2))))

    def apply(self, spinor: ComplexAmplitudePair) -> ComplexAmplitudePair:
        return ComplexAmplitudePair(self.c00 * spinor.l + self.c01 * spinor.r,
                                    self.c10 * spinor.l + self.c11 * spinor.r)


def coin_matrix(rho: float) -> CoinMatrix:
    rho = Validations.validate_probability(rho, label="rho")
    diag = math.sqrt(rho)
    off = math.sqrt(1.0 - rho)
    return CoinMatrix(complex(diag), complex(off), complex(off), complex(-diag), rho)
