from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from ..core.bloch_state import BlochState
from ..core.constants import DEFAULT_SEED, DEFAULT_TRIALS, placement_label
from ..spectral.escape_prob import escape_prob_closed, xi_table
from ..utils.validations import Validations

RNG_ALGORITHM: str = "PCG64/SeedSequence"


@dataclass(frozen=True)
class ExperimentDesign:
    """
        N walks at each boundary placement; every placement must have a closed
        form. The seed drives all sampling.
    """
    placements: Tuple[int | float, ...]
    trials_per_placement: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        placements = tuple(xi_table(m).m for m in self.placements)
        if not placements:
            raise ValueError("An experiment needs at least one placement")
        object.__setattr__(self, "placements", placements)
        object.__setattr__(self, "trials_per_placement",
                           Validations.validate_int(self.trials_per_placement, min_value=1, label="N"))
        object.__setattr__(self, "seed",
                           Validations.validate_int(self.seed, min_value=0, max_value=2 ** 64 - 1, label="seed"))

    @classmethod
    def of(cls,
           placements: Iterable[int | float | str],
           trials: int = DEFAULT_TRIALS,
           seed: int = DEFAULT_SEED) -> ExperimentDesign:
        return cls(tuple(Validations.validate_placement(m) for m in placements), trials, seed)

    @property
    def distinct_placements(self) -> int:
        return len(set(self.placements))

    @property
    def total_trials(self) -> int:
        return self.trials_per_placement * len(self.placements)

    def rng(self, replicate: int, placement_index: int) -> np.random.Generator:
        """
            Independent stream per (replicate, placement), reproducible from the seed alone
        """
        sequence = np.random.SeedSequence(self.seed, spawn_key=(replicate, placement_index))
        return np.random.Generator(np.random.PCG64(sequence))

    def as_dict(self) -> dict:
        return {"placements": [placement_label(m) for m in self.placements],
                "trials_per_placement": self.trials_per_placement,
                "seed": self.seed}


@dataclass(frozen=True)
class CountRecord:
    placements: Tuple[int | float, ...]
    escapes: Tuple[int, ...]
    trials: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not (len(self.placements) == len(self.escapes) == len(self.trials)) or not self.placements:
            raise ValueError("Count record needs one (k, N) pair per placement")
        for k, n in zip(self.escapes, self.trials):
            Validations.validate_int(n, min_value=1, label="N")
            Validations.validate_int(k, min_value=0, max_value=n, label="k")

    @property
    def frequencies(self) -> Tuple[float, ...]:
        return tuple(k / n for k, n in zip(self.escapes, self.trials))

    @property
    def at_boundary(self) -> bool:
        """
            Some placement escaped always or never
        """
        return any(k in (0, n) for k, n in zip(self.escapes, self.trials))

    def as_dict(self) -> dict:
        return {"placements": [placement_label(m) for m in self.placements],
                "escapes": list(self.escapes),
                "trials": list(self.trials)}


def sample_counts(true_state: BlochState, design: ExperimentDesign, replicate: int = 0) -> CountRecord:
    """
        Escapes k ~ Binomial(N, P_E(true_state; M)) at each placement
    """
    replicate = Validations.validate_int(replicate, min_value=0, label="replicate")
    escapes = []
    for index, m in enumerate(design.placements):
        p_e = escape_prob_closed(true_state, m)
        escapes.append(int(design.rng(replicate, index).binomial(design.trials_per_placement, p_e)))
    return CountRecord(design.placements, tuple(escapes), (design.trials_per_placement,) * len(design.placements))
