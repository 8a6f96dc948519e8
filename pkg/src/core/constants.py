from __future__ import annotations

import math
import sys
from enum import Enum
from typing import TYPE_CHECKING, Tuple

if sys.version_info >= (3, 11):
    from enum import UNIQUE, verify
    from typing import Self
else:  # Python 3.10: enum.unique performs the same check as verify(UNIQUE)
    from enum import unique as _unique

    UNIQUE = "unique"

    def verify(check):
        assert check == UNIQUE
        return _unique

    if TYPE_CHECKING:
        from typing_extensions import Self

"""
    General Constants
"""
DEFAULT_RHO: float = 0.5
DEFAULT_MAX_STEPS: int = 10_000
DEFAULT_TAIL_FRACTION: float = 0.1  # tail residual window, as a fraction of steps run

DEFAULT_QUAD_TOL: float = 1e-10
DEFAULT_QUAD_NODES: int = 20
DEFAULT_QUAD_MAX_DEPTH: int = 30

DEFAULT_FD_STEP: float = 1e-5
DEFAULT_PROBE_OFFSET: float = 1e-5

DEFAULT_GRID_RES: int = 100
DEFAULT_CAP_PERCENTILE: float = 99.0
DEFAULT_HOT_SPOT_RES: int = 64
DEFAULT_HOT_SPOT_TOL: float = 1e-6

DEFAULT_MLE_GRID: int = 41
DEFAULT_MLE_TOL: float = 1e-6
DEFAULT_TRIALS: int = 100_000
DEFAULT_REPLICATES: int = 500
DEFAULT_SEED: int = 20_240_601
MIN_REPLICATES: int = 100

INFINITY: float = math.inf
SUPPORTED_PLACEMENTS: Tuple[int | float, ...] = (1, 2, 3, 4, 5, INFINITY)

"""
    Numerical thresholds
"""
UNIT_NORM_TOL: float = 1e-12
ALPHA_SLACK: float = 1e-9
SINGULAR_TOL: float = 1e-12
BOOKKEEPING_TOL: float = 1e-10

TWO_PI: float = 2.0 * math.pi


class Mixins(Enum):
    """
        Lookup helpers shared by the enums below; names and values both
        match case-insensitively, so "f_beta" finds Quantity.F_BETA.
    """
    @classmethod
    def by_name(cls, name: str, raise_exception: bool = False) -> Self | None:
        key = name.strip() if name is not None else ""
        if key in cls.__members__:
            return cls[key]
        folded = key.lower()
        member = next((v for k, v in cls.__members__.items()
                       if folded and (k.lower() == folded or str(v.value).lower() == folded)), None)
        if member is None and raise_exception:
            raise ValueError(f"'{name}' is not a valid {cls.__name__}" if key else f"None is not a valid {cls.__name__}")
        return member

    @classmethod
    def _missing_(cls, value) -> Self:
        member = cls.by_name(value) if isinstance(value, str) else None
        if member is None:
            raise ValueError(f"{value} is not a valid {cls.__name__}")
        return member

    @property
    def label(self) -> str:
        return str(self.value)


@verify(UNIQUE)
class FisherTag(Mixins, Enum):
    REGULAR = "regular"
    SINGULAR = "singular"  # P_E(1 - P_E) -> 0 with a nonzero gradient
    UNDEFINED = "undefined"  # efficiency where the quantum information vanishes
    LIMIT = "limit"  # 0/0 point resolved by a directional probe

    @property
    def is_finite(self) -> bool:
        return self in (FisherTag.REGULAR, FisherTag.LIMIT)


@verify(UNIQUE)
class Quantity(Mixins, Enum):
    P_E = "P_E"
    F_ALPHA = "F_alpha"
    F_BETA = "F_beta"
    ETA_ALPHA = "eta_alpha"
    ETA_BETA = "eta_beta"
    DET_F_TOT = "detF_tot"


@verify(UNIQUE)
class EscapeMethod(Mixins, Enum):
    CLOSED = "closed"
    QUADRATURE = "quadrature"
    SIMULATE = "simulate"


@verify(UNIQUE)
class OutputFormat(Mixins, Enum):
    CSV = "csv"
    JSON = "json"


def placement_label(m: int | float) -> str:
    return "inf" if math.isinf(m) else str(int(m))


@verify(UNIQUE)
class Branch(Mixins, Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.PLUS else -1
