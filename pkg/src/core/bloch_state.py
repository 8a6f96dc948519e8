from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .constants import ALPHA_SLACK, TWO_PI
from ..utils.errors import DomainError
from ..utils.validations import Validations


@dataclass(frozen=True, slots=True)
class ComplexAmplitudePair:
    """
        The (L, R) coin spinor of a single lattice site
    """
    l: complex
    r: complex

    @property
    def norm_squared(self) -> float:
        return abs(self.l) ** 2 + abs(self.r) ** 2

    def __iter__(self):
        yield self.l
        yield self.r


@dataclass(frozen=True, slots=True)
class BlochState:
    """
        Pure coin qubit cos(alpha/2)|L> + exp(i beta) sin(alpha/2)|R>.

        Build instances through canonicalize() (or BlochState.of()) so that
        alpha is range checked and beta is folded into [0, 2 pi).
    """
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.alpha <= math.pi):
            raise DomainError(f"alpha must lie in [0, pi] ({self.alpha})")
        if not (0.0 <= self.beta < TWO_PI):
            raise DomainError(f"beta must lie in [0, 2 pi) ({self.beta}); use canonicalize()")

    def __repr__(self) -> str:
        return f"BlochState(alpha={self.alpha:.12g}, beta={self.beta:.12g})"

    @classmethod
    def of(cls, alpha: float | str, beta: float | str = 0.0) -> BlochState:
        return canonicalize(Validations.validate_angle(alpha, label="alpha"),
                            Validations.validate_angle(beta, label="beta"))

    @property
    def mirror(self) -> BlochState:
        """
            The beta -> 2 pi - beta partner; absorption data cannot tell the two apart
        """
        return canonicalize(self.alpha, TWO_PI - self.beta)

    @property
    def folded(self) -> BlochState:
        """
            Representative of the mirror pair with beta in [0, pi]
        """
        return self if self.beta <= math.pi else self.mirror

    @property
    def amplitudes(self) -> ComplexAmplitudePair:
        return initial_amplitudes(self)

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta}


def canonicalize(alpha_raw: float, beta_raw: float) -> BlochState:
    alpha = Validations.validate_float(alpha_raw, label="alpha")
    beta = Validations.validate_float(beta_raw, label="beta")
    if math.isinf(alpha) or math.isinf(beta):
        raise DomainError(f"Bloch angles must be finite ({alpha_raw}, {beta_raw})")
    if alpha < -ALPHA_SLACK or alpha > math.pi + ALPHA_SLACK:
        raise DomainError(f"alpha must lie in [0, pi] ({alpha_raw})")
    alpha = min(max(alpha, 0.0), math.pi)
    beta = math.fmod(beta, TWO_PI)
    if beta < 0.0:
        beta += TWO_PI
    if beta >= TWO_PI:
        # fmod of a tiny negative can round up to exactly 2 pi
        beta = 0.0
    return BlochState(alpha, beta)


def initial_amplitudes(state: BlochState) -> ComplexAmplitudePair:
    """
        L(0,0) = cos(alpha/2) is kept real and non-negative; the relative phase
        rides on R(0,0) = exp(i beta) sin(alpha/2).
    """
    half = 0.5 * state.alpha
    return ComplexAmplitudePair(complex(math.cos(half), 0.0),
                                cmath.exp(1j * state.beta) * math.sin(half))
