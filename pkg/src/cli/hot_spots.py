#!/usr/bin/env python3
#
import sys

from src.cli.cli_base import CliBase, run_command
from src.core.constants import DEFAULT_HOT_SPOT_RES, DEFAULT_HOT_SPOT_TOL, placement_label
from src.fisher.hot_spots import hot_spots
from src.utils.argument_parser import ArgumentParser


class HotSpotsCli(CliBase):
    @classmethod
    def command_parser(cls) -> ArgumentParser:
        parser = ArgumentParser(prog="hot-spots",
                                description="Local maxima of the phase information F_beta",
                                parents=[cls.placement_parser(),
                                         cls.output_parser()])
        parser.add_argument("-res", "--res",
                            action="store",
                            type=int,
                            default=DEFAULT_HOT_SPOT_RES,
                            help=f"Search grid resolution (default: {DEFAULT_HOT_SPOT_RES})")
        parser.add_argument("-tol", "--tol",
                            action="store",
                            type=float,
                            default=DEFAULT_HOT_SPOT_TOL,
                            help=f"Refinement tolerance in radians (default: {DEFAULT_HOT_SPOT_TOL})")
        return parser

    def compute(self) -> dict:
        m = self.placement
        return {"m": placement_label(m),
                "hot_spots": hot_spots(m, self._args.res, self._args.tol)}


if __name__ == '__main__':
    sys.exit(run_command(HotSpotsCli, sys.argv[1:]))
