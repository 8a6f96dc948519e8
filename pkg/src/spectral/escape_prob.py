from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .images import image_terms, image_phase
from .quadrature import GaussLegendreQuadrature, QuadratureResult
from ..core.bloch_state import BlochState, initial_amplitudes
from ..core.constants import (DEFAULT_MAX_STEPS, DEFAULT_QUAD_TOL, DEFAULT_RHO, EscapeMethod, INFINITY,
                              SUPPORTED_PLACEMENTS, UNIT_NORM_TOL, placement_label)
from ..utils.errors import DomainError
from ..utils.validations import Validations
from ..walk.walk_config import WalkConfig
from ..walk.walk_sim import default_tail_window, run, tail_residual

log = logging.getLogger(__name__)

PI = math.pi


@dataclass(frozen=True)
class EscapeCoefficients:
    """
        P_E = xi1 cos^2(alpha/2) + xi2 sin^2(alpha/2) + xi3 cos(alpha/2) sin(alpha/2) cos(beta)
        for a Hadamard walk with the absorbing site at distance m
    """
    xi1: float
    xi2: float
    xi3: float
    m: int | float

    def f(self, alpha: ArrayLike, beta: ArrayLike) -> NDArray | float:
        """
            f = 2 P_E = xi1 + xi2 - (xi2 - xi1) cos(alpha) + xi3 sin(alpha) cos(beta)
        """
        return (self.xi1 + self.xi2
                - (self.xi2 - self.xi1) * np.cos(alpha)
                + self.xi3 * np.sin(alpha) * np.cos(beta))

    def df_dalpha(self, alpha: ArrayLike, beta: ArrayLike) -> NDArray | float:
        return (self.xi2 - self.xi1) * np.sin(alpha) + self.xi3 * np.cos(alpha) * np.cos(beta)

    def df_dbeta(self, alpha: ArrayLike, beta: ArrayLike) -> NDArray | float:
        return -self.xi3 * np.sin(alpha) * np.sin(beta)

    def as_dict(self) -> dict:
        return {"m": placement_label(self.m), "xi1": self.xi1, "xi2": self.xi2, "xi3": self.xi3}


XI_TABLE: Dict[int | float, EscapeCoefficients] = {
    1: EscapeCoefficients(1 - 2 / PI, 1 - 2 / PI, 2 - 4 / PI, 1),
    2: EscapeCoefficients(2 - 4 / PI, 3 - 8 / PI, 3 - 8 / PI, 2),
    3: EscapeCoefficients(4 - 10 / PI, 13 - 118 / (3 * PI), 11 - 100 / (3 * PI), 3),
    4: EscapeCoefficients(14 - 124 / (3 * PI), 65 - 608 / (3 * PI), 53 - 496 / (3 * PI), 4),
    5: EscapeCoefficients(66 - 614 / (3 * PI), 341 - 16046 / (15 * PI), 277 - 13036 / (15 * PI), 5),
    INFINITY: EscapeCoefficients(1.5 - 2 / PI, 0.5, 1 - 2 / PI, INFINITY),
}


def xi_table(m: int | float | str) -> EscapeCoefficients:
    m = Validations.validate_placement(m)
    if m not in XI_TABLE:
        raise DomainError(f"No closed form for M = {placement_label(m)}; "
                          f"supported placements are {[placement_label(p) for p in SUPPORTED_PLACEMENTS]}, "
                          f"use escape_prob_quadrature for other M")
    return XI_TABLE[m]


def _clamp(value: float) -> float:
    if -UNIT_NORM_TOL <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + UNIT_NORM_TOL:
        return 1.0
    return value


def escape_prob_closed(state: BlochState, m: int | float | str) -> float:
    coefficients = xi_table(m)
    return _clamp(0.5 * float(coefficients.f(state.alpha, state.beta)))


def escape_closed_array(alpha: ArrayLike, beta: ArrayLike, m: int | float | str) -> NDArray[np.float64]:
    """
        escape_prob_closed broadcast over arrays of angles
    """
    p_e = 0.5 * xi_table(m).f(np.asarray(alpha, dtype=np.float64), np.asarray(beta, dtype=np.float64))
    slack = (p_e >= -UNIT_NORM_TOL) & (p_e <= 1.0 + UNIT_NORM_TOL)
    return np.where(slack, np.clip(p_e, 0.0, 1.0), p_e)


def escape_prob_m1(state: BlochState) -> float:
    """
        (1 - 2/pi)(1 + sin(alpha) cos(beta)); zero at (pi/2, pi)
    """
    return _clamp((1.0 - 2.0 / PI) * (1.0 + math.sin(state.alpha) * math.cos(state.beta)))


def _integrand(state: BlochState, m: int | float, rho: float):
    def integrand(k: NDArray[np.float64]) -> NDArray[np.float64]:
        direct, image = image_terms(k, state, rho)
        if math.isinf(m):
            # the direct/image cross term oscillates ever faster and averages out
            return 2.0 * (np.abs(direct) ** 2 + np.abs(image) ** 2)
        return 2.0 * np.abs(direct + image_phase(k, m) * image) ** 2
    return integrand


def _panels(m: int | float) -> int:
    return 4 if math.isinf(m) else max(4, 4 * (int(m) - 1))


def _integrate(state: BlochState, m: int | float, rho: float, tol: float) -> QuadratureResult:
    quadrature = GaussLegendreQuadrature(tol=tol)
    return quadrature.integrate(_integrand(state, m, rho), -PI / 2, PI / 2, panels=_panels(m))


@lru_cache(maxsize=None)
def measure_constant() -> float:
    """
        Normalization c of the k-space measure, fixed by the |L> start at
        M = infinity where the escape probability is 3/2 - 2/pi; analytically
        this is 1/(2 pi).
    """
    raw = _integrate(BlochState(0.0, 0.0), INFINITY, DEFAULT_RHO, DEFAULT_QUAD_TOL * 1e-2)
    c = XI_TABLE[INFINITY].xi1 / raw.value
    log.debug(f"measure constant {c:.15g} (2 pi c = {2 * PI * c:.15g})")
    return c


@dataclass(frozen=True)
class EscapeResult:
    value: float
    method: EscapeMethod
    m: int | float
    rho: float
    tolerance: float

    def as_dict(self) -> dict:
        return {"value": self.value,
                "method": self.method.label,
                "m": placement_label(self.m),
                "rho": self.rho,
                "tolerance": self.tolerance}


def escape_prob_quadrature_result(state: BlochState,
                                  m: int | float | str,
                                  rho: float = DEFAULT_RHO,
                                  tol: float = DEFAULT_QUAD_TOL) -> EscapeResult:
    """
        Escape probability by integrating 2|F_{k+}(M)|^2 over k. Values of rho
        other than 1/2 are experimental and checked only against the simulator.
        M = 1 is reduced by hand: one step absorbs the R part of the coined
        spinor and leaves an |L> walker two sites from the barrier.
    """
    m = Validations.validate_placement(m)
    rho = Validations.validate_probability(rho, label="rho")
    tol = Validations.validate_float(tol, min_value=0.0, label="tol")
    if rho != DEFAULT_RHO:
        log.info(f"rho = {rho} quadrature is experimental")
    c = measure_constant()
    if m == 1:
        l0, r0 = initial_amplitudes(state)
        weight = abs(math.sqrt(rho) * l0 + math.sqrt(1.0 - rho) * r0) ** 2
        inner = escape_prob_quadrature_result(BlochState(0.0, 0.0), 2, rho, tol)
        return EscapeResult(weight * inner.value, EscapeMethod.QUADRATURE, 1, rho, weight * inner.tolerance)
    # the tolerance applies to P_E, so the raw integral is held to tol / c
    result = _integrate(state, m, rho, tol / c)
    return EscapeResult(_clamp(c * result.value), EscapeMethod.QUADRATURE, m, rho, c * result.error)


def escape_prob_quadrature(state: BlochState,
                           m: int | float | str,
                           rho: float = DEFAULT_RHO,
                           tol: float = DEFAULT_QUAD_TOL) -> float:
    return escape_prob_quadrature_result(state, m, rho, tol).value


def escape_prob(state: BlochState,
                m: int | float | str,
                method: EscapeMethod = EscapeMethod.CLOSED,
                rho: float = DEFAULT_RHO,
                tol: float = DEFAULT_QUAD_TOL,
                max_steps: int = DEFAULT_MAX_STEPS) -> EscapeResult:
    """
        Evaluates P_E by any of the three routes. The simulator reports its
        tail residual over the last 10% of steps as the achieved tolerance.
    """
    m = Validations.validate_placement(m)
    rho = Validations.validate_probability(rho, label="rho")
    if method is EscapeMethod.CLOSED:
        if rho != DEFAULT_RHO:
            raise DomainError(f"Closed forms exist only for rho = {DEFAULT_RHO} ({rho})")
        return EscapeResult(escape_prob_closed(state, m), method, m, rho, 0.0)
    if method is EscapeMethod.QUADRATURE:
        return escape_prob_quadrature_result(state, m, rho, tol)
    if math.isinf(m):
        raise DomainError("The simulator needs a finite M")
    trace = run(WalkConfig(rho=rho, boundary_m=m, max_steps=max_steps), state)
    residual = tail_residual(trace, default_tail_window(trace.steps_run))
    return EscapeResult(trace.escape_estimate, method, m, rho, residual)
