from __future__ import annotations

from dataclasses import dataclass

from ..core.constants import DEFAULT_MAX_STEPS, DEFAULT_RHO
from ..utils.validations import Validations


@dataclass(frozen=True)
class WalkConfig:
    """
        Simulation window for a walk started at j = 0 with an absorbing site at
        j = boundary_m. The lattice spans [-(max_steps + 1), boundary_m]; the walker
        moves one site per step, so the left edge is never reached.
    """
    rho: float = DEFAULT_RHO
    boundary_m: int = 1
    max_steps: int = DEFAULT_MAX_STEPS

    def __post_init__(self) -> None:
        object.__setattr__(self, "rho", Validations.validate_probability(self.rho, label="rho"))
        object.__setattr__(self, "boundary_m", Validations.validate_int(self.boundary_m, min_value=1, label="M"))
        object.__setattr__(self, "max_steps", Validations.validate_int(self.max_steps,
                                                                       min_value=1,
                                                                       label="max_steps"))

    @property
    def lattice_min(self) -> int:
        return -(self.max_steps + 1)

    @property
    def lattice_max(self) -> int:
        return self.boundary_m

    @property
    def num_sites(self) -> int:
        return self.lattice_max - self.lattice_min + 1

    @property
    def origin_index(self) -> int:
        """
            Array index of site j = 0
        """
        return -self.lattice_min

    def index_of(self, site: int) -> int:
        return site - self.lattice_min
