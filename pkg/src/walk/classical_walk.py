from __future__ import annotations

import numpy as np

from .walk_config import WalkConfig
from .walk_sim import SurvivalTrace
from ..utils.validations import Validations


def simulate_classical(p_right: float, boundary_m: int, max_steps: int) -> SurvivalTrace:
    """
        Classical random walk from j = 0 that hops right with probability p_right
        and is absorbed on reaching j = boundary_m. Evolves the occupation
        distribution exactly; no sampling.
    """
    p_right = Validations.validate_probability(p_right, label="p_right")
    config = WalkConfig(boundary_m=boundary_m, max_steps=max_steps)
    occupation = np.zeros(config.num_sites, dtype=np.float64)
    occupation[config.origin_index] = 1.0
    absorbed = np.empty(config.max_steps, dtype=np.float64)
    for t in range(config.max_steps):
        moved = np.zeros_like(occupation)
        moved[1:] += p_right * occupation[:-1]
        moved[:-1] += (1.0 - p_right) * occupation[1:]
        absorbed[t] = moved[-1]
        moved[-1] = 0.0
        occupation = moved
    return SurvivalTrace(absorbed)
