from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Tuple

import numpy as np
from numpy.typing import NDArray

from .amplitude_field import AmplitudeField, advance, step
from .walk_config import WalkConfig
from ..core.bloch_state import BlochState, initial_amplitudes
from ..core.coin import coin_matrix
from ..core.constants import DEFAULT_TAIL_FRACTION
from ..utils.validations import Validations

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SurvivalTrace:
    """
        Boundary flux of one run: absorbed_per_step[t - 1] is the probability
        absorbed on step t.
    """
    absorbed_per_step: NDArray[np.float64]

    @property
    def steps_run(self) -> int:
        return len(self.absorbed_per_step)

    @property
    def absorbed_cumulative(self) -> NDArray[np.float64]:
        return np.cumsum(self.absorbed_per_step)

    @property
    def absorbed_cumulative_final(self) -> float:
        return float(np.sum(self.absorbed_per_step))

    @property
    def escape_estimate(self) -> float:
        return 1.0 - self.absorbed_cumulative_final

    @property
    def survival(self) -> NDArray[np.float64]:
        return 1.0 - self.absorbed_cumulative

    def rows(self) -> Iterable[Tuple[int, float, float, float]]:
        """
            (t, absorbed_step, absorbed_cum, survival) per step
        """
        cumulative = self.absorbed_cumulative
        for t, (flux, cum) in enumerate(zip(self.absorbed_per_step, cumulative), start=1):
            yield t, float(flux), float(cum), float(1.0 - cum)

    def as_dict(self) -> dict:
        return {"steps_run": self.steps_run,
                "absorbed_cumulative_final": self.absorbed_cumulative_final,
                "escape_estimate": self.escape_estimate,
                "tail_residual": tail_residual(self, default_tail_window(self.steps_run))}


def default_tail_window(steps_run: int) -> int:
    return max(1, int(round(DEFAULT_TAIL_FRACTION * steps_run)))


def run(config: WalkConfig, state: BlochState) -> SurvivalTrace:
    """
        Iterates the absorbing-boundary recurrence max_steps times from the
        walker localized at j = 0 in the given coin state.
    """
    coin = coin_matrix(config.rho)
    field = AmplitudeField.initial(config, state)
    absorbed = np.empty(config.max_steps, dtype=np.float64)
    for t in range(config.max_steps):
        field = step(field, coin, config.boundary_m)
        absorbed[t] = field.absorbed_step
    log.debug(f"{state} M={config.boundary_m} rho={config.rho}: "
              f"escape {1.0 - field.absorbed_cumulative:.12g} after {config.max_steps} steps")
    return SurvivalTrace(absorbed)


def absorption_kernel(config: WalkConfig) -> Tuple[NDArray[np.complex128], NDArray[np.complex128]]:
    """
        Absorbed amplitudes per step for the basis starts |L> and |R>.

        The walk is linear, so a start (L0, R0) deposits u_t L0 + v_t R0 on the
        absorbing site at step t.
    """
    coin = coin_matrix(config.rho)
    origin = config.origin_index
    l_amp = np.zeros((config.num_sites, 2), dtype=np.complex128)
    r_amp = np.zeros((config.num_sites, 2), dtype=np.complex128)
    l_amp[origin, 0] = 1.0
    r_amp[origin, 1] = 1.0
    support = origin
    arrivals = np.empty((config.max_steps, 2), dtype=np.complex128)
    for t in range(config.max_steps):
        l_amp, r_amp, arrivals[t], support = advance(l_amp, r_amp, coin, support)
    return arrivals[:, 0], arrivals[:, 1]


def run_many(config: WalkConfig, states: Iterable[BlochState]) -> List[SurvivalTrace]:
    """
        Survival traces of many start states from a single pair of basis runs
    """
    u, v = absorption_kernel(config)
    traces = []
    for state in states:
        spinor = initial_amplitudes(state)
        traces.append(SurvivalTrace(np.abs(u * spinor.l + v * spinor.r) ** 2))
    return traces


def tail_residual(trace: SurvivalTrace, window: int) -> float:
    """
        Probability absorbed during the final `window` steps
    """
    window = Validations.validate_int(window, min_value=0, max_value=trace.steps_run, label="window")
    if window == 0:
        return 0.0
    return float(np.sum(trace.absorbed_per_step[-window:]))
