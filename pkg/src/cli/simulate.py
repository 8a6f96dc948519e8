#!/usr/bin/env python3
#
import csv
import io
import sys

from src.cli.cli_base import CliBase, run_command
from src.core.constants import DEFAULT_MAX_STEPS, OutputFormat
from src.utils.output import dumps
from src.walk.walk_config import WalkConfig
from src.walk.walk_sim import SurvivalTrace, run, tail_residual
from src.utils.argument_parser import ArgumentParser

TRACE_COLUMNS = ("t", "absorbed_step", "absorbed_cum", "survival")


class SimulateCli(CliBase):
    @classmethod
    def command_parser(cls) -> ArgumentParser:
        parser = ArgumentParser(prog="simulate",
                                description="Time-domain walk with an absorbing site at M; emits the survival trace",
                                parents=[cls.state_parser(),
                                         cls.placement_parser(),
                                         cls.rho_parser(),
                                         cls.output_parser(OutputFormat.CSV)])
        parser.add_argument("-steps", "--steps",
                            action="store",
                            type=int,
                            default=DEFAULT_MAX_STEPS,
                            help=f"Number of steps T (default: {DEFAULT_MAX_STEPS})")
        parser.add_argument("-window", "--window",
                            action="store",
                            type=int,
                            help="Tail window for the convergence residual (default: last 10%% of steps)")
        return parser

    def compute(self) -> SurvivalTrace:
        config = WalkConfig(rho=self._args.rho, boundary_m=self.placement, max_steps=self._args.steps)
        return run(config, self.state)

    def render(self) -> str:
        trace: SurvivalTrace = self.result
        if self._format is OutputFormat.JSON:
            summary = trace.as_dict()
            if self._args.window is not None:
                summary["tail_window"] = self._args.window
                summary["tail_residual"] = tail_residual(trace, self._args.window)
            return dumps(summary)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        for t, flux, cumulative, survival in trace.rows():
            writer.writerow([t, repr(flux), repr(cumulative), repr(survival)])
        return buffer.getvalue()


if __name__ == '__main__':
    sys.exit(run_command(SimulateCli, sys.argv[1:]))
