from __future__ import annotations

from dataclasses import dataclass

from ..core.constants import DEFAULT_TRIALS
from ..utils.validations import Validations

PAULI_SETTINGS: int = 3  # X, Y, Z per mode


@dataclass(frozen=True)
class TomographyComparison:
    """
        Measurement configurations needed by mode-resolved coin tomography after
        T steps (K = 2T + 1 modes, three Pauli settings each) versus absorption
        readout at s boundary placements.
    """
    walk_steps: int
    placements_used: int
    trials: int = DEFAULT_TRIALS

    @property
    def modes(self) -> int:
        return 2 * self.walk_steps + 1

    @property
    def settings_tomo(self) -> int:
        return PAULI_SETTINGS * self.modes

    @property
    def settings_abs(self) -> int:
        return self.placements_used

    @property
    def ratio(self) -> float:
        return self.settings_tomo / self.settings_abs

    @property
    def samples_tomo(self) -> int:
        return self.settings_tomo * self.trials

    @property
    def samples_abs(self) -> int:
        return self.settings_abs * self.trials

    def as_dict(self) -> dict:
        return {"walk_steps": self.walk_steps,
                "modes": self.modes,
                "settings_tomo": self.settings_tomo,
                "settings_abs": self.settings_abs,
                "ratio": self.ratio,
                "trials": self.trials,
                "samples_tomo": self.samples_tomo,
                "samples_abs": self.samples_abs}


def tomography_comparison(walk_steps: int, placements_used: int, trials: int = DEFAULT_TRIALS) -> TomographyComparison:
    return TomographyComparison(Validations.validate_int(walk_steps, min_value=1, label="T"),
                                Validations.validate_int(placements_used, min_value=1, label="s"),
                                Validations.validate_int(trials, min_value=1, label="N"))
