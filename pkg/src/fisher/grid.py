from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Tuple

import numpy as np
from numpy.typing import NDArray

from .fisher_info import fisher_alpha, fisher_beta, fisher_total
from .qfi import efficiency
from ..core.bloch_state import BlochState
from ..core.constants import (DEFAULT_GRID_RES, SINGULAR_TOL, TWO_PI, FisherTag, Quantity, placement_label)
from ..spectral.escape_prob import escape_closed_array, xi_table
from ..utils.validations import Validations

log = logging.getLogger(__name__)

CSV_COLUMNS = ("alpha", "beta", "value", "tag")


@dataclass(frozen=True, eq=False)
class Grid:
    """
        A quantity sampled over the (alpha, beta) plane. values[row][col] holds
        the raw value at (alpha_axis[col], beta_axis[row]); tags mark SINGULAR,
        UNDEFINED and LIMIT cells. With a cap, display() clamps values above the
        cap_percentile-th percentile of the finite raw values.
    """
    quantity: Quantity
    alpha_axis: NDArray[np.float64]
    beta_axis: NDArray[np.float64]
    values: NDArray[np.float64]
    tags: NDArray[np.object_]
    m: int | float | None = None
    placements: Tuple[int | float, ...] = ()
    cap_percentile: float | None = None
    offset: bool = True

    def __post_init__(self) -> None:
        for label, axis in (("alpha", self.alpha_axis), ("beta", self.beta_axis)):
            if axis.ndim != 1 or axis.size < 1 or np.any(np.diff(axis) <= 0):
                raise ValueError(f"{label} axis must be strictly increasing")
        shape = (self.beta_axis.size, self.alpha_axis.size)
        if self.values.shape != shape or self.tags.shape != shape:
            raise ValueError(f"Grid values {self.values.shape} and tags {self.tags.shape} must be {shape}")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    @property
    def finite_mask(self) -> NDArray[np.bool_]:
        return np.isfinite(self.values)

    @property
    def cap_value(self) -> float | None:
        if self.cap_percentile is None:
            return None
        finite = self.values[self.finite_mask]
        if finite.size == 0:
            return None
        return float(np.percentile(finite, self.cap_percentile))

    def display(self) -> NDArray[np.float64]:
        cap = self.cap_value
        if cap is None:
            return self.values.copy()
        return np.where(self.finite_mask, np.minimum(self.values, cap), np.nan)

    def row(self, beta_index: int) -> NDArray[np.float64]:
        return self.values[beta_index]

    def column(self, alpha_index: int) -> NDArray[np.float64]:
        return self.values[:, alpha_index]

    def same_as(self, other: Grid) -> bool:
        return (self.quantity is other.quantity
                and np.array_equal(self.alpha_axis, other.alpha_axis)
                and np.array_equal(self.beta_axis, other.beta_axis)
                and np.array_equal(self.values, other.values, equal_nan=True)
                and np.array_equal(self.tags, other.tags))

    def as_dict(self) -> dict:
        """
            JSON envelope; values are raw, non-finite cells become null
        """
        def cells(array: NDArray) -> List[List[float | None]]:
            return [[float(v) if math.isfinite(v) else None for v in row] for row in array]

        envelope = {"quantity": self.quantity.label,
                    "m": placement_label(self.m) if self.m is not None else None,
                    "placements": [placement_label(p) for p in self.placements],
                    "offset": self.offset,
                    "cap": {"percentile": self.cap_percentile, "value": self.cap_value},
                    "alpha_axis": self.alpha_axis.tolist(),
                    "beta_axis": self.beta_axis.tolist(),
                    "values": cells(self.values),
                    "tags": self.tags.tolist()}
        if self.cap_percentile is not None:
            envelope["display"] = cells(self.display())
        return envelope

    @classmethod
    def from_dict(cls, envelope: dict) -> Grid:
        m = envelope.get("m")
        values = np.array([[math.nan if v is None else v for v in row] for row in envelope["values"]],
                          dtype=np.float64)
        return cls(quantity=Quantity.by_name(envelope["quantity"], raise_exception=True),
                   alpha_axis=np.asarray(envelope["alpha_axis"], dtype=np.float64),
                   beta_axis=np.asarray(envelope["beta_axis"], dtype=np.float64),
                   values=values,
                   tags=np.array(envelope["tags"], dtype=object),
                   m=Validations.validate_placement(m) if m is not None else None,
                   placements=tuple(Validations.validate_placement(p) for p in envelope.get("placements", [])),
                   cap_percentile=envelope.get("cap", {}).get("percentile"),
                   offset=envelope.get("offset", True))

    def to_csv(self) -> str:
        """
            alpha,beta,value,tag[,display] rows in row-major (beta, alpha) order;
            floats use repr so they re-parse exactly
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        capped = self.cap_percentile is not None
        writer.writerow(CSV_COLUMNS + (("display",) if capped else ()))
        display = self.display() if capped else None
        for i, beta in enumerate(self.beta_axis):
            for j, alpha in enumerate(self.alpha_axis):
                row = [repr(float(alpha)), repr(float(beta)), repr(float(self.values[i, j])), self.tags[i, j]]
                if capped:
                    row.append(repr(float(display[i, j])))
                writer.writerow(row)
        return buffer.getvalue()

    @classmethod
    def from_csv(cls,
                 text: str,
                 quantity: Quantity | str,
                 m: int | float | str | None = None,
                 placements: Iterable[int | float | str] = (),
                 cap_percentile: float | None = None,
                 offset: bool = True) -> Grid:
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise ValueError("Grid CSV has no data rows")
        alpha_axis = np.array(sorted({float(r["alpha"]) for r in rows}), dtype=np.float64)
        beta_axis = np.array(sorted({float(r["beta"]) for r in rows}), dtype=np.float64)
        if len(rows) != alpha_axis.size * beta_axis.size:
            raise ValueError(f"Grid CSV has {len(rows)} rows, expected {alpha_axis.size * beta_axis.size}")
        values = np.empty((beta_axis.size, alpha_axis.size), dtype=np.float64)
        tags = np.empty(values.shape, dtype=object)
        col = {a: j for j, a in enumerate(alpha_axis)}
        row_of = {b: i for i, b in enumerate(beta_axis)}
        for r in rows:
            i, j = row_of[float(r["beta"])], col[float(r["alpha"])]
            values[i, j] = float(r["value"])
            tags[i, j] = r["tag"]
        if not isinstance(quantity, Quantity):
            quantity = Quantity.by_name(quantity, raise_exception=True)
        return cls(quantity, alpha_axis, beta_axis, values, tags,
                   m=Validations.validate_placement(m) if m is not None else None,
                   placements=tuple(Validations.validate_placement(p) for p in placements),
                   cap_percentile=cap_percentile,
                   offset=offset)


def grid_axes(n_alpha: int, n_beta: int, offset: bool = True) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
        Half-cell centers of [0, pi] x [0, 2 pi) with the offset, so no sample
        falls on alpha in {0, pi} or beta in {0, pi}; otherwise alpha spans
        [0, pi] inclusive and beta [0, 2 pi) with 0 included.
    """
    n_alpha = Validations.validate_int(n_alpha, min_value=2, label="n_alpha")
    n_beta = Validations.validate_int(n_beta, min_value=2, label="n_beta")
    if offset:
        alpha = (np.arange(n_alpha) + 0.5) * (math.pi / n_alpha)
        beta = (np.arange(n_beta) + 0.5) * (TWO_PI / n_beta)
        if n_beta % 2 == 1:
            # an odd count would put the middle center exactly on pi
            beta = (np.arange(n_beta) + 0.25) * (TWO_PI / n_beta)
    else:
        alpha = np.linspace(0.0, math.pi, n_alpha)
        beta = np.linspace(0.0, TWO_PI, n_beta, endpoint=False)
    return alpha, beta


def _information_field(quantity: Quantity, m, alpha: NDArray, beta: NDArray) -> Tuple[NDArray, NDArray[np.bool_]]:
    coefficients = xi_table(m)
    f = coefficients.f(alpha, beta)
    denominator = f * (2.0 - f)
    if quantity in (Quantity.F_ALPHA, Quantity.ETA_ALPHA):
        numerator = coefficients.df_dalpha(alpha, beta) ** 2
    else:
        numerator = coefficients.df_dbeta(alpha, beta) ** 2
    degenerate = denominator < SINGULAR_TOL
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(degenerate, np.nan, numerator / np.where(degenerate, 1.0, denominator))
    if quantity is Quantity.ETA_BETA:
        h_beta = np.sin(alpha) ** 2
        undefined = h_beta < SINGULAR_TOL
        with np.errstate(divide="ignore", invalid="ignore"):
            values = np.where(undefined, np.nan, values / np.where(undefined, 1.0, h_beta))
        degenerate = degenerate | undefined
    return values, degenerate


def _det_field(placements: Tuple, alpha: NDArray, beta: NDArray) -> Tuple[NDArray, NDArray[np.bool_]]:
    f_aa = np.zeros_like(alpha)
    f_ab = np.zeros_like(alpha)
    f_bb = np.zeros_like(alpha)
    degenerate = np.zeros(alpha.shape, dtype=bool)
    for m in placements:
        coefficients = xi_table(m)
        f = coefficients.f(alpha, beta)
        denominator = f * (2.0 - f)
        singular = denominator < SINGULAR_TOL
        safe = np.where(singular, 1.0, denominator)
        g_a = coefficients.df_dalpha(alpha, beta)
        g_b = coefficients.df_dbeta(alpha, beta)
        f_aa += np.where(singular, 0.0, g_a * g_a / safe)
        f_ab += np.where(singular, 0.0, g_a * g_b / safe)
        f_bb += np.where(singular, 0.0, g_b * g_b / safe)
        degenerate |= singular
    return f_aa * f_bb - f_ab * f_ab, degenerate


def _cell(quantity: Quantity, m, placements: Tuple, alpha: float, beta: float) -> Tuple[float, str]:
    state = BlochState(alpha, beta)
    if quantity is Quantity.F_ALPHA:
        scalar = fisher_alpha(state, m)
    elif quantity is Quantity.F_BETA:
        scalar = fisher_beta(state, m)
    elif quantity is Quantity.ETA_ALPHA:
        scalar = efficiency(state, m)[0]
    elif quantity is Quantity.ETA_BETA:
        scalar = efficiency(state, m)[1]
    else:
        total = fisher_total(state, placements)
        return (total.det if total.tag.is_finite else math.nan), total.tag.label
    return scalar.value, scalar.tag.label


def grid_scan(m: int | float | str | None,
              quantity: Quantity | str,
              n_alpha: int = DEFAULT_GRID_RES,
              n_beta: int = DEFAULT_GRID_RES,
              cap_percentile: float | None = None,
              offset: bool = True,
              placements: Iterable[int | float | str] = (1, 2)) -> Grid:
    """
        Samples P_E, F_alpha, F_beta, eta_alpha, eta_beta at placement m, or
        det F_tot over `placements`. Degenerate cells are resolved one at a
        time through the scalar functions so they carry the same tags.
    """
    if not isinstance(quantity, Quantity):
        quantity = Quantity.by_name(quantity, raise_exception=True)
    if cap_percentile is not None:
        cap_percentile = Validations.validate_float(cap_percentile, min_value=0.0, max_value=100.0,
                                                    label="cap_percentile")
    alpha_axis, beta_axis = grid_axes(n_alpha, n_beta, offset)
    alpha, beta = np.meshgrid(alpha_axis, beta_axis)
    if quantity is Quantity.DET_F_TOT:
        m = None
        placements = tuple(Validations.validate_placement(p) for p in placements)
        values, degenerate = _det_field(placements, alpha, beta)
    else:
        m = xi_table(m).m
        placements = (m,)
        if quantity is Quantity.P_E:
            values, degenerate = escape_closed_array(alpha, beta, m), np.zeros(alpha.shape, dtype=bool)
        else:
            values, degenerate = _information_field(quantity, m, alpha, beta)
    tags = np.full(values.shape, FisherTag.REGULAR.label, dtype=object)
    for i, j in zip(*np.nonzero(degenerate)):
        values[i, j], tags[i, j] = _cell(quantity, m, placements, alpha_axis[j], beta_axis[i])
    if np.any(degenerate):
        log.debug(f"{quantity.label}: {int(np.sum(degenerate))} degenerate cells resolved individually")
    return Grid(quantity, alpha_axis, beta_axis, values, tags,
                m=m, placements=placements, cap_percentile=cap_percentile, offset=offset)
