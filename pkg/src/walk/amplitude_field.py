from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Tuple

import numpy as np
from numpy.typing import NDArray

from .walk_config import WalkConfig
from ..core.bloch_state import BlochState, ComplexAmplitudePair, initial_amplitudes
from ..core.coin import CoinMatrix
from ..utils.errors import DomainError, LatticeOverflowError


@dataclass(frozen=True, eq=False)
class AmplitudeField:
    """
        Coin amplitudes L(j, t), R(j, t) over the lattice window
        [lattice_min, boundary_m], plus the probability absorbed so far.

        The last array entry is the absorbing site j = M and is always zero;
        amplitude arriving there is moved into absorbed_cumulative.
        support_index is the leftmost array index that may hold amplitude.
    """
    l_amp: NDArray[np.complex128]
    r_amp: NDArray[np.complex128]
    lattice_min: int
    absorbed_cumulative: float = 0.0
    absorbed_step: float = 0.0
    step_index: int = 0
    support_index: int = dc_field(default=-1)

    def __post_init__(self) -> None:
        if self.l_amp.shape != self.r_amp.shape:
            raise ValueError(f"L and R arrays differ in shape: {self.l_amp.shape} vs {self.r_amp.shape}")
        if self.support_index < 0:
            nonzero = np.flatnonzero(np.abs(self.l_amp) + np.abs(self.r_amp))
            object.__setattr__(self, "support_index", int(nonzero[0]) if nonzero.size else len(self.l_amp) - 1)

    @classmethod
    def initial(cls, config: WalkConfig, state: BlochState) -> AmplitudeField:
        return cls.localized(config, initial_amplitudes(state))

    @classmethod
    def localized(cls, config: WalkConfig, spinor: ComplexAmplitudePair, site: int = 0) -> AmplitudeField:
        if not (config.lattice_min < site < config.boundary_m):
            raise DomainError(f"Start site {site} must lie strictly inside ({config.lattice_min}, {config.boundary_m})")
        l_amp = np.zeros(config.num_sites, dtype=np.complex128)
        r_amp = np.zeros(config.num_sites, dtype=np.complex128)
        idx = config.index_of(site)
        l_amp[idx] = spinor.l
        r_amp[idx] = spinor.r
        return cls(l_amp, r_amp, config.lattice_min, support_index=idx)

    @property
    def boundary_m(self) -> int:
        return self.lattice_min + len(self.l_amp) - 1

    @property
    def sites(self) -> NDArray[np.int64]:
        return np.arange(self.lattice_min, self.boundary_m + 1)

    def amplitude_at(self, site: int) -> ComplexAmplitudePair:
        idx = site - self.lattice_min
        return ComplexAmplitudePair(complex(self.l_amp[idx]), complex(self.r_amp[idx]))

    def norm(self) -> float:
        """
            Surviving probability sum_j |L|^2 + |R|^2
        """
        return float(np.sum(np.abs(self.l_amp) ** 2 + np.abs(self.r_amp) ** 2))

    def total(self) -> float:
        """
            Surviving plus absorbed probability; 1 for a normalized start
        """
        return self.norm() + self.absorbed_cumulative


def advance(l_amp: NDArray, r_amp: NDArray, coin: CoinMatrix, support_index: int) -> Tuple[NDArray, NDArray, NDArray, int]:
    """
        One coin + conditional-shift step over arrays whose first axis is the
        lattice (trailing axes are carried along, e.g. a basis of start states).

        Returns the new L and R arrays, the amplitude that arrived on the absorbing
        site (already removed from R), and the new support index.
    """
    lo = support_index - 1
    if lo < 0:
        if np.any(l_amp[0] != 0) or np.any(r_amp[0] != 0):
            raise LatticeOverflowError("Amplitude reached the left edge of the simulation window")
        lo = 0
    new_l = np.zeros_like(l_amp)
    new_r = np.zeros_like(r_amp)
    # L moves one site left, R one site right
    new_l[lo:-1] = coin.c00 * l_amp[lo + 1:] + coin.c01 * r_amp[lo + 1:]
    new_r[lo + 1:] = coin.c10 * l_amp[lo:-1] + coin.c11 * r_amp[lo:-1]
    arriving = new_r[-1].copy()
    new_r[-1] = 0
    return new_l, new_r, arriving, lo


def step(field: AmplitudeField, coin: CoinMatrix, boundary_m: int) -> AmplitudeField:
    if boundary_m != field.boundary_m:
        raise ValueError(f"Field window ends at {field.boundary_m}, not at the absorbing site {boundary_m}")
    new_l, new_r, arriving, lo = advance(field.l_amp, field.r_amp, coin, field.support_index)
    absorbed = float(np.abs(arriving) ** 2)
    return AmplitudeField(new_l,
                          new_r,
                          field.lattice_min,
                          absorbed_cumulative=field.absorbed_cumulative + absorbed,
                          absorbed_step=absorbed,
                          step_index=field.step_index + 1,
                          support_index=lo)
