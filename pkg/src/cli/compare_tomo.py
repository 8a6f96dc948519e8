#!/usr/bin/env python3
#
import sys

from src.cli.cli_base import CliBase, run_command
from src.core.constants import DEFAULT_TRIALS
from src.estimation.tomography import TomographyComparison, tomography_comparison
from src.utils.argument_parser import ArgumentParser


class CompareTomoCli(CliBase):
    @classmethod
    def command_parser(cls) -> ArgumentParser:
        parser = ArgumentParser(prog="compare-tomo",
                                description="Measurement settings of mode-resolved tomography vs absorption readout",
                                parents=[cls.output_parser()])
        parser.add_argument("-steps", "--steps",
                            action="store",
                            required=True,
                            help="Walk length T")
        parser.add_argument("-placements", "--placements",
                            action="store",
                            default="2",
                            help="Number of boundary placements s (default: 2)")
        parser.add_argument("-trials", "--trials",
                            action="store",
                            default=DEFAULT_TRIALS,
                            help=f"Shots N per configuration (default: {DEFAULT_TRIALS})")
        return parser

    def compute(self) -> TomographyComparison:
        return tomography_comparison(self._args.steps, self._args.placements, self._args.trials)


if __name__ == '__main__':
    sys.exit(run_command(CompareTomoCli, sys.argv[1:]))
