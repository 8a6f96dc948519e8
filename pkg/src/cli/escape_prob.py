#!/usr/bin/env python3
#
import sys

from src.cli.cli_base import CliBase, run_command
from src.core.constants import DEFAULT_MAX_STEPS, DEFAULT_QUAD_TOL, EscapeMethod
from src.spectral.escape_prob import EscapeResult, escape_prob
from src.utils.argument_parser import ArgumentParser


class EscapeProbCli(CliBase):
    @classmethod
    def command_parser(cls) -> ArgumentParser:
        parser = ArgumentParser(prog="escape-prob",
                                description="Escape probability P_E(alpha, beta; M) of a single coin state",
                                parents=[cls.state_parser(),
                                         cls.placement_parser(),
                                         cls.rho_parser(),
                                         cls.output_parser()])
        parser.add_argument("-method", "--method",
                            action="store",
                            choices=[m.label for m in EscapeMethod],
                            default=EscapeMethod.CLOSED.label,
                            help="closed form, k-space quadrature, or time-domain simulation (default: closed)")
        parser.add_argument("-tol", "--tol",
                            action="store",
                            type=float,
                            default=DEFAULT_QUAD_TOL,
                            help=f"Absolute quadrature tolerance (default: {DEFAULT_QUAD_TOL})")
        parser.add_argument("-steps", "--steps",
                            action="store",
                            type=int,
                            default=DEFAULT_MAX_STEPS,
                            help=f"Simulation steps (default: {DEFAULT_MAX_STEPS})")
        return parser

    def compute(self) -> EscapeResult:
        return escape_prob(self.state,
                           self.placement,
                           method=EscapeMethod.by_name(self._args.method, raise_exception=True),
                           rho=self._args.rho,
                           tol=self._args.tol,
                           max_steps=self._args.steps)


if __name__ == '__main__':
    sys.exit(run_command(EscapeProbCli, sys.argv[1:]))
