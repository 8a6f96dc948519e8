from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from ..core.bloch_state import BlochState, canonicalize
from ..core.constants import DEFAULT_FD_STEP, DEFAULT_PROBE_OFFSET, SINGULAR_TOL, FisherTag, placement_label
from ..spectral.escape_prob import EscapeCoefficients, xi_table
from ..utils.validations import Validations

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FisherScalar:
    """
        Per-trial information about one angle, or a tagged non-value
    """
    value: float
    tag: FisherTag = FisherTag.REGULAR

    @classmethod
    def singular(cls) -> FisherScalar:
        return cls(math.nan, FisherTag.SINGULAR)

    @classmethod
    def undefined(cls) -> FisherScalar:
        return cls(math.nan, FisherTag.UNDEFINED)

    @property
    def is_finite(self) -> bool:
        return self.tag.is_finite

    def as_dict(self) -> dict:
        return {"value": self.value if self.is_finite else None, "tag": self.tag.label}


@dataclass(frozen=True)
class FisherMatrix:
    """
        2x2 symmetric per-trial information over (alpha, beta). A single
        placement gives the rank-1 outer product g g^T / (P_E (1 - P_E)).
    """
    f_aa: float
    f_ab: float
    f_bb: float
    placements: Tuple[int | float, ...] = ()
    tag: FisherTag = FisherTag.REGULAR
    skipped: Tuple[int | float, ...] = field(default=())

    @classmethod
    def zero(cls, tag: FisherTag = FisherTag.REGULAR) -> FisherMatrix:
        return cls(0.0, 0.0, 0.0, tag=tag)

    @property
    def matrix(self) -> NDArray[np.float64]:
        return np.array([[self.f_aa, self.f_ab], [self.f_ab, self.f_bb]], dtype=np.float64)

    @property
    def f_ba(self) -> float:
        return self.f_ab

    @property
    def det(self) -> float:
        return self.f_aa * self.f_bb - self.f_ab * self.f_ab

    @property
    def norm(self) -> float:
        """
            Frobenius norm
        """
        return float(np.linalg.norm(self.matrix))

    @property
    def eigenvalues(self) -> NDArray[np.float64]:
        return np.linalg.eigvalsh(self.matrix)

    @property
    def condition_number(self) -> float:
        if not self.tag.is_finite:
            return math.inf
        low, high = self.eigenvalues
        if high <= 0.0 or low <= SINGULAR_TOL * high:
            return math.inf
        return float(high / low)

    def rank(self, rel_tol: float = 1e-10) -> int:
        if not self.tag.is_finite:
            return 0
        eigs = np.abs(self.eigenvalues)
        top = float(np.max(eigs))
        if top == 0.0:
            return 0
        return int(np.sum(eigs > rel_tol * top))

    def __add__(self, other: FisherMatrix) -> FisherMatrix:
        if not isinstance(other, FisherMatrix):
            return NotImplemented
        return FisherMatrix(self.f_aa + other.f_aa,
                            self.f_ab + other.f_ab,
                            self.f_bb + other.f_bb,
                            placements=self.placements + other.placements,
                            skipped=self.skipped + other.skipped)

    def scaled(self, factor: float) -> FisherMatrix:
        return FisherMatrix(factor * self.f_aa, factor * self.f_ab, factor * self.f_bb,
                            placements=self.placements, tag=self.tag, skipped=self.skipped)

    def as_dict(self) -> dict:
        return {"f_aa": self.f_aa,
                "f_ab": self.f_ab,
                "f_bb": self.f_bb,
                "det": self.det,
                "rank": self.rank(),
                "placements": [placement_label(m) for m in self.placements],
                "skipped": [placement_label(m) for m in self.skipped],
                "tag": self.tag.label}


def _information(numerator: float, f: float) -> Tuple[float, FisherTag]:
    denominator = f * (2.0 - f)
    if denominator < SINGULAR_TOL:
        if numerator >= SINGULAR_TOL:
            return math.nan, FisherTag.SINGULAR
        return math.nan, FisherTag.LIMIT
    return numerator / denominator, FisherTag.REGULAR


def _fisher_scalar(state: BlochState,
                   coefficients: EscapeCoefficients,
                   derivative: Callable[[float, float], float],
                   probe_alpha: bool) -> FisherScalar:
    f = float(coefficients.f(state.alpha, state.beta))
    value, tag = _information(float(derivative(state.alpha, state.beta)) ** 2, f)
    if tag is not FisherTag.LIMIT:
        return FisherScalar(value, tag) if tag is FisherTag.REGULAR else FisherScalar.singular()
    # 0/0: approach along the parameter's own axis from every side that stays in range
    probes = []
    for offset in (-DEFAULT_PROBE_OFFSET, DEFAULT_PROBE_OFFSET):
        alpha, beta = state.alpha, state.beta
        if probe_alpha:
            alpha += offset
            if not (0.0 <= alpha <= math.pi):
                continue
        else:
            beta += offset
        probe = canonicalize(alpha, beta)
        value, tag = _information(float(derivative(probe.alpha, probe.beta)) ** 2,
                                  float(coefficients.f(probe.alpha, probe.beta)))
        if tag is FisherTag.REGULAR:
            probes.append(value)
    if not probes:
        return FisherScalar.singular()
    return FisherScalar(float(np.mean(probes)), FisherTag.LIMIT)


def fisher_alpha(state: BlochState, m: int | float | str) -> FisherScalar:
    """
        F_alpha = [(xi2 - xi1) sin(alpha) + xi3 cos(alpha) cos(beta)]^2 / (f (2 - f))
    """
    coefficients = xi_table(m)
    return _fisher_scalar(state, coefficients, coefficients.df_dalpha, probe_alpha=True)


def fisher_beta(state: BlochState, m: int | float | str) -> FisherScalar:
    """
        F_beta = [xi3 sin(alpha) sin(beta)]^2 / (f (2 - f))
    """
    coefficients = xi_table(m)
    return _fisher_scalar(state, coefficients, coefficients.df_dbeta, probe_alpha=False)


def fisher_matrix(state: BlochState, m: int | float | str) -> FisherMatrix:
    coefficients = xi_table(m)
    m = coefficients.m
    f = float(coefficients.f(state.alpha, state.beta))
    denominator = f * (2.0 - f)
    if denominator < SINGULAR_TOL:
        return FisherMatrix(math.nan, math.nan, math.nan, placements=(m,), tag=FisherTag.SINGULAR)
    g_a = float(coefficients.df_dalpha(state.alpha, state.beta))
    g_b = float(coefficients.df_dbeta(state.alpha, state.beta))
    return FisherMatrix(g_a * g_a / denominator,
                        g_a * g_b / denominator,
                        g_b * g_b / denominator,
                        placements=(m,))


def fisher_total(state: BlochState, placements: Iterable[int | float | str]) -> FisherMatrix:
    """
        Sum of the per-placement matrices; singular placements are skipped and
        listed in the result.
    """
    placements = list(placements)
    if not placements:
        raise ValueError("At least one placement is required")
    total = FisherMatrix.zero()
    skipped: List[int | float] = []
    for m in placements:
        single = fisher_matrix(state, m)
        if single.tag is FisherTag.SINGULAR:
            log.warning(f"Skipping singular placement M={placement_label(single.placements[0])} at {state}")
            skipped.extend(single.placements)
            continue
        total = total + single
    if len(skipped) == len(placements):
        return FisherMatrix(0.0, 0.0, 0.0, skipped=tuple(skipped), tag=FisherTag.SINGULAR)
    return FisherMatrix(total.f_aa, total.f_ab, total.f_bb, placements=total.placements, skipped=tuple(skipped))


def fisher_numeric(state: BlochState, m: int | float | str, h: float = DEFAULT_FD_STEP) -> FisherMatrix:
    """
        Finite-difference information matrix: central differences of the
        closed-form P_E with step h, assembled as g g^T / (P_E (1 - P_E)).
    """
    h = Validations.validate_float(h, min_value=1e-6, max_value=1e-3, label="h")
    coefficients = xi_table(m)

    def p_e(alpha: float, beta: float) -> float:
        return 0.5 * float(coefficients.f(alpha, beta))

    a, b = state.alpha, state.beta
    g_a = (p_e(a + h, b) - p_e(a - h, b)) / (2.0 * h)
    g_b = (p_e(a, b + h) - p_e(a, b - h)) / (2.0 * h)
    p = p_e(a, b)
    variance = p * (1.0 - p)
    if variance <= 1e-10:
        return FisherMatrix(math.nan, math.nan, math.nan, placements=(coefficients.m,), tag=FisherTag.SINGULAR)
    return FisherMatrix(g_a * g_a / variance, g_a * g_b / variance, g_b * g_b / variance,
                        placements=(coefficients.m,))


@dataclass(frozen=True)
class DesignScore:
    placements: Tuple[int | float, ...]
    det: float
    condition_number: float
    rank: int

    def as_dict(self) -> dict:
        return {"placements": [placement_label(m) for m in self.placements],
                "det": self.det,
                "condition_number": self.condition_number,
                "rank": self.rank}


def compare_designs(state: BlochState, designs: Sequence[Sequence[int | float | str]]) -> List[DesignScore]:
    """
        Ranks candidate placement sets for joint (alpha, beta) estimation by
        det F_tot, best first; ties fall to the better conditioned design.
    """
    scores = []
    for design in designs:
        total = fisher_total(state, design)
        scores.append(DesignScore(tuple(Validations.validate_placement(m) for m in design),
                                  total.det if total.tag.is_finite else 0.0,
                                  total.condition_number if total.tag.is_finite else math.inf,
                                  total.rank()))
    return sorted(scores, key=lambda s: (-s.det, s.condition_number))
