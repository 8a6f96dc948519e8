#!/usr/bin/env python3
#
import sys

from src.cli.cli_base import CliBase, run_command
from src.core.constants import DEFAULT_GRID_RES, OutputFormat, Quantity
from src.fisher.grid import Grid, grid_scan
from src.utils.argument_parser import ArgumentParser
from src.utils.output import dumps


class GridCli(CliBase):
    @classmethod
    def command_parser(cls) -> ArgumentParser:
        parser = ArgumentParser(prog="grid",
                                description="Sample P_E, Fisher information or efficiency over the (alpha, beta) plane",
                                parents=[cls.placement_parser(required=False),
                                         cls.output_parser(OutputFormat.CSV)])
        parser.add_argument("-quantity", "--quantity",
                            action="store",
                            required=True,
                            choices=[q.label for q in Quantity],
                            help="Quantity to sample")
        parser.add_argument("-res", "--res",
                            action="store",
                            type=cls._validate_resolution,
                            default=(DEFAULT_GRID_RES, DEFAULT_GRID_RES),
                            help=f"n_alpha x n_beta, e.g. 100x100 (default: {DEFAULT_GRID_RES})")
        parser.add_argument("-cap", "--cap",
                            action="store",
                            type=float,
                            help="Clamp displayed values at this percentile (raw values are kept)")
        parser.add_argument("-placements", "--placements",
                            action="store",
                            default="1,2",
                            help="Placements summed for detF_tot (default: 1,2)")
        parser.add_argument("-no_offset", "--no_offset",
                            action="store_true",
                            help="Sample the axes end points instead of half-cell centers")
        return parser

    def compute(self) -> Grid:
        quantity = Quantity.by_name(self._args.quantity, raise_exception=True)
        n_alpha, n_beta = self._args.res
        if quantity is Quantity.DET_F_TOT:
            return grid_scan(None, quantity, n_alpha, n_beta,
                             cap_percentile=self._args.cap,
                             offset=not self._args.no_offset,
                             placements=self.parse_placements(self._args.placements))
        if self._args.m is None:
            raise self.usage_error(f"-m is required for {quantity.label}")
        return grid_scan(self.placement, quantity, n_alpha, n_beta,
                         cap_percentile=self._args.cap,
                         offset=not self._args.no_offset)

    def render(self) -> str:
        grid: Grid = self.result
        if self._format is OutputFormat.JSON:
            return dumps(grid.as_dict())
        return grid.to_csv()


if __name__ == '__main__':
    sys.exit(run_command(GridCli, sys.argv[1:]))
