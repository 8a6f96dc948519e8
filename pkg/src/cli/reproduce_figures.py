#!/usr/bin/env python3
#
"""
    Writes the data behind the escape-probability, Fisher-information and
    efficiency figures:

      fig2: P_E surfaces for M in {1, 2, inf} plus 1-D cuts at alpha and
            beta in {0, pi/2, pi}
      fig3: F_alpha and F_beta for M in {1, inf}
      fig4: eta_alpha and eta_beta for M in {1, 2, inf}, capped at the 99th
            percentile for display

    P_E surfaces include the axis end points; information surfaces use
    half-cell centers.
"""
import csv
import io
import logging
import math
import sys
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from src.cli.cli_base import CliBase, run_command
from src.core.constants import DEFAULT_CAP_PERCENTILE, DEFAULT_GRID_RES, INFINITY, TWO_PI, Quantity, placement_label
from src.fisher.grid import grid_scan
from src.spectral.escape_prob import escape_closed_array
from src.utils.argument_parser import ArgumentParser
from src.utils.output import dumps, write_text

log = logging.getLogger(__name__)

FIG2_PLACEMENTS = (1, 2, INFINITY)
FIG3_PLACEMENTS = (1, INFINITY)
FIG4_PLACEMENTS = (1, 2, INFINITY)
CUT_ANGLES: Tuple[Tuple[str, float], ...] = (("0", 0.0), ("pi_2", math.pi / 2), ("pi", math.pi))


def escape_cut(m: int | float, fixed: str, value: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
        P_E along beta in [0, 2 pi) at fixed alpha, or along alpha in [0, pi] at fixed beta
    """
    if fixed == "alpha":
        axis = np.linspace(0.0, TWO_PI, n, endpoint=False)
        return axis, escape_closed_array(value, axis, m)
    axis = np.linspace(0.0, math.pi, n)
    return axis, escape_closed_array(axis, value, m)


def _cut_csv(axis_label: str, axis: np.ndarray, values: np.ndarray) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow((axis_label, "value"))
    for x, v in zip(axis, values):
        writer.writerow((repr(float(x)), repr(float(v))))
    return buffer.getvalue()


def reproduce_figures(out_dir: str | Path, resolution: int = DEFAULT_GRID_RES) -> Dict:
    out_dir = Path(out_dir)
    grids: List[dict] = []
    cuts: List[dict] = []

    def surface(figure: str, quantity: Quantity, m, offset: bool, cap: float | None) -> None:
        grid = grid_scan(m, quantity, resolution, resolution, cap_percentile=cap, offset=offset)
        name = f"{figure}_{quantity.label}_M{placement_label(m)}.csv"
        write_text(grid.to_csv(), out_dir / name, sys.stdout)
        grids.append({"file": name,
                      "figure": figure,
                      "quantity": quantity.label,
                      "m": placement_label(m),
                      "shape": list(grid.shape),
                      "offset": offset,
                      "cap_percentile": cap,
                      "cap_value": grid.cap_value})
        log.info(f"wrote {name}")

    for m in FIG2_PLACEMENTS:
        surface("fig2", Quantity.P_E, m, offset=False, cap=None)
        for fixed in ("alpha", "beta"):
            for tag, angle in CUT_ANGLES:
                axis, values = escape_cut(m, fixed, angle, resolution)
                name = f"fig2_cut_M{placement_label(m)}_{fixed}_{tag}.csv"
                write_text(_cut_csv("beta" if fixed == "alpha" else "alpha", axis, values), out_dir / name, sys.stdout)
                cuts.append({"file": name, "figure": "fig2", "m": placement_label(m), "fixed": fixed, "value": angle})
    for m in FIG3_PLACEMENTS:
        for quantity in (Quantity.F_ALPHA, Quantity.F_BETA):
            surface("fig3", quantity, m, offset=True, cap=None)
    for m in FIG4_PLACEMENTS:
        for quantity in (Quantity.ETA_ALPHA, Quantity.ETA_BETA):
            surface("fig4", quantity, m, offset=True, cap=DEFAULT_CAP_PERCENTILE)
    manifest = {"resolution": resolution, "grids": grids, "cuts": cuts}
    write_text(dumps(manifest), out_dir / "manifest.json", sys.stdout)
    return manifest


class ReproduceFiguresCli(CliBase):
    @classmethod
    def command_parser(cls) -> ArgumentParser:
        parser = ArgumentParser(prog="reproduce-figures",
                                description="Write every figure data grid and cut plus a manifest")
        parser.add_argument("out_dir",
                            help="Directory to write into; created if needed")
        parser.add_argument("-res", "--res",
                            action="store",
                            type=int,
                            default=DEFAULT_GRID_RES,
                            help=f"Samples per axis (default: {DEFAULT_GRID_RES})")
        parser.add_argument("-verbose", "--verbose",
                            action="store_true",
                            help="Log each file written")
        return parser

    def compute(self) -> Dict:
        return reproduce_figures(self._args.out_dir, self._args.res)

    def render(self) -> str:
        return f"{len(self.result['grids'])} grids and {len(self.result['cuts'])} cuts written to {self._args.out_dir}"


if __name__ == '__main__':
    sys.exit(run_command(ReproduceFiguresCli, sys.argv[1:]))
