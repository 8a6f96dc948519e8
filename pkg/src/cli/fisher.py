#!/usr/bin/env python3
#
import sys

from src.cli.cli_base import CliBase, run_command
from src.fisher.fisher_info import fisher_alpha, fisher_beta, fisher_matrix, fisher_numeric, fisher_total
from src.fisher.qfi import efficiency, qfi
from src.core.constants import placement_label
from src.spectral.escape_prob import escape_prob_closed
from src.utils.argument_parser import ArgumentParser


class FisherCli(CliBase):
    @classmethod
    def command_parser(cls) -> ArgumentParser:
        parser = ArgumentParser(prog="fisher",
                                description="Classical and quantum Fisher information of one coin state",
                                parents=[cls.state_parser(),
                                         cls.output_parser()])
        parser.add_argument("-placements", "--placements", "-m", "--m",
                            action="store",
                            dest="placements",
                            default="1",
                            help="Comma-separated placements, e.g. 1,2 or 1,inf (default: 1)")
        parser.add_argument("-numeric", "--numeric",
                            action="store",
                            type=float,
                            nargs="?",
                            const=1e-5,
                            help="Also report the central-difference matrix with this step (default step: 1e-5)")
        return parser

    def compute(self) -> dict:
        state = self.state
        placements = self.parse_placements(self._args.placements)
        h_alpha, h_beta = qfi(state)
        per_placement = []
        for m in placements:
            eta_alpha, eta_beta = efficiency(state, m)
            record = {"m": placement_label(m),
                      "P_E": escape_prob_closed(state, m),
                      "F_alpha": fisher_alpha(state, m),
                      "F_beta": fisher_beta(state, m),
                      "eta_alpha": eta_alpha,
                      "eta_beta": eta_beta,
                      "matrix": fisher_matrix(state, m)}
            if self._args.numeric is not None:
                record["numeric"] = fisher_numeric(state, m, self._args.numeric)
            per_placement.append(record)
        return {"state": state,
                "qfi": {"H_alpha": h_alpha, "H_beta": h_beta},
                "placements": per_placement,
                "total": fisher_total(state, placements)}


if __name__ == '__main__':
    sys.exit(run_command(FisherCli, sys.argv[1:]))
