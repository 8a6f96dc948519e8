from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np
from numpy.typing import NDArray

from ..core.constants import DEFAULT_QUAD_MAX_DEPTH, DEFAULT_QUAD_NODES, DEFAULT_QUAD_TOL
from ..utils.errors import QuadratureError
from ..utils.validations import Validations

log = logging.getLogger(__name__)

Integrand = Callable[[NDArray[np.float64]], NDArray[np.float64]]


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float
    panels: int


class GaussLegendreQuadrature:
    """
        Adaptive Gauss-Legendre integration over fixed-order panels.

        Each panel is compared against the sum over its two halves; panels whose
        difference exceeds their share of the absolute tolerance are split until
        max_depth bisections have been made.
    """

    def __init__(self,
                 nodes: int = DEFAULT_QUAD_NODES,
                 tol: float = DEFAULT_QUAD_TOL,
                 max_depth: int = DEFAULT_QUAD_MAX_DEPTH) -> None:
        self._nodes = Validations.validate_int(nodes, min_value=2, label="nodes")
        self._tol = Validations.validate_float(tol, min_value=0.0, label="tol")
        if self._tol == 0.0:
            raise ValueError("tol must be greater than 0")
        self._max_depth = Validations.validate_int(max_depth, min_value=1, label="max_depth")
        self._xg, self._wg = np.polynomial.legendre.leggauss(self._nodes)

    @property
    def tol(self) -> float:
        return self._tol

    def fixed(self, fun: Integrand, lo: float, hi: float) -> float:
        mid = 0.5 * (hi + lo)
        half = 0.5 * (hi - lo)
        values = np.asarray(fun(mid + half * self._xg), dtype=np.float64)
        return float(half * np.sum(self._wg * values))

    def integrate(self, fun: Integrand, lo: float, hi: float, panels: int = 1) -> QuadratureResult:
        panels = Validations.validate_int(panels, min_value=1, label="panels")
        span = hi - lo
        edges = np.linspace(lo, hi, panels + 1)
        pending: List[Tuple[float, float, int, float]] = [(a, b, 0, self.fixed(fun, a, b))
                                                            for a, b in zip(edges[:-1], edges[1:])]
        total = 0.0
        error = 0.0
        accepted = 0
        while pending:
            a, b, depth, coarse = pending.pop()
            mid = 0.5 * (a + b)
            left = self.fixed(fun, a, mid)
            right = self.fixed(fun, mid, b)
            fine = left + right
            delta = abs(fine - coarse)
            if delta <= self._tol * (b - a) / span:
                total += fine
                error += delta
                accepted += 1
            elif depth + 1 >= self._max_depth:
                estimate = total + fine + sum(p[3] for p in pending)
                raise QuadratureError(f"Quadrature did not converge on [{a:.6g}, {b:.6g}]",
                                      estimate,
                                      error + delta)
            else:
                pending.append((a, mid, depth + 1, left))
                pending.append((mid, b, depth + 1, right))
        log.debug(f"quadrature over [{lo:.6g}, {hi:.6g}]: {accepted} panels, error {error:.3g}")
        return QuadratureResult(total, error, accepted)
