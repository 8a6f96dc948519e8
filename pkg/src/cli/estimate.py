#!/usr/bin/env python3
#
import sys

from src.cli.cli_base import CliBase, run_command
from src.core.constants import DEFAULT_MLE_GRID, DEFAULT_SEED, DEFAULT_TRIALS, MIN_REPLICATES
from src.estimation.cramer_rao import crb
from src.estimation.design import ExperimentDesign, sample_counts
from src.estimation.likelihood import EstimationReport, mle
from src.estimation.monte_carlo import monte_carlo
from src.utils.argument_parser import ArgumentParser


class EstimateCli(CliBase):
    @classmethod
    def command_parser(cls) -> ArgumentParser:
        parser = ArgumentParser(prog="estimate",
                                description="Simulate absorption counts and estimate (alpha, beta) by maximum "
                                            "likelihood; with -replicates R >= 100, benchmark against Cramer-Rao",
                                parents=[cls.state_parser(),
                                         cls.output_parser()])
        parser.add_argument("-placements", "--placements",
                            action="store",
                            default="1,2",
                            help="Comma-separated boundary placements (default: 1,2)")
        parser.add_argument("-trials", "--trials",
                            action="store",
                            type=int,
                            default=DEFAULT_TRIALS,
                            help=f"Walks N per placement (default: {DEFAULT_TRIALS})")
        parser.add_argument("-replicates", "--replicates",
                            action="store",
                            type=int,
                            default=1,
                            help=f"1 for a single experiment, or R >= {MIN_REPLICATES} Monte Carlo replicates "
                                 f"(default: 1)")
        parser.add_argument("-seed", "--seed",
                            action="store",
                            type=int,
                            default=DEFAULT_SEED,
                            help=f"64-bit seed (default: {DEFAULT_SEED})")
        parser.add_argument("-grid", "--grid",
                            action="store",
                            type=int,
                            default=DEFAULT_MLE_GRID,
                            help=f"Coarse likelihood grid per axis (default: {DEFAULT_MLE_GRID})")
        parser.add_argument("-workers", "--workers",
                            action="store",
                            type=int,
                            help="Threads for Monte Carlo replicates (default: QWALK_THREADS or CPU count)")
        return parser

    def compute(self) -> EstimationReport:
        state = self.state
        design = ExperimentDesign.of(self.parse_placements(self._args.placements),
                                     self._args.trials,
                                     self._args.seed)
        if self._args.replicates != 1:
            return monte_carlo(state, design, self._args.replicates, self._args.grid, workers=self._args.workers)
        counts = sample_counts(state, design)
        report = mle(counts, self._args.grid)
        bound = crb(state, design)
        return EstimationReport(mle_primary=report.mle_primary,
                                mle_mirror=report.mle_mirror,
                                log_likelihood_at_max=report.log_likelihood_at_max,
                                crb_covariance=bound.covariance,
                                rank_deficient=report.rank_deficient,
                                boundary_solution=report.boundary_solution,
                                degenerate=report.degenerate,
                                seed=design.seed,
                                crb=bound,
                                extras={"true_state": state.as_dict(),
                                        "design": design.as_dict(),
                                        "counts": counts.as_dict()})


if __name__ == '__main__':
    sys.exit(run_command(EstimateCli, sys.argv[1:]))
