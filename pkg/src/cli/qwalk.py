#!/usr/bin/env python3
#
from __future__ import annotations

import argparse
import sys
from typing import Dict, List

from src.cli.batch import BatchCli
from src.cli.cli_base import CliBase, run_command
from src.cli.compare_tomo import CompareTomoCli
from src.cli.escape_prob import EscapeProbCli
from src.cli.estimate import EstimateCli
from src.cli.fisher import FisherCli
from src.cli.grid import GridCli
from src.cli.hot_spots import HotSpotsCli
from src.cli.reproduce_figures import ReproduceFiguresCli
from src.cli.simulate import SimulateCli
from src.utils.argument_parser import ArgumentParser
from src.utils.errors import UsageError

PROGRAM_NAME: str = "qwalk"

COMMANDS: Dict[str, type[CliBase]] = {
    "escape-prob": EscapeProbCli,
    "simulate": SimulateCli,
    "grid": GridCli,
    "fisher": FisherCli,
    "hot-spots": HotSpotsCli,
    "estimate": EstimateCli,
    "compare-tomo": CompareTomoCli,
    "reproduce-figures": ReproduceFiguresCli,
    "batch": BatchCli,
}


def command_parser() -> ArgumentParser:
    """
        Parse the first token; everything after it belongs to the subcommand
    """
    parser = ArgumentParser(prog=PROGRAM_NAME,
                            description="Escape probabilities, Fisher information and estimation benchmarks "
                                        "for a discrete-time quantum walk with an absorbing boundary",
                            epilog="Help on a specific command is available by typing the command name "
                                   "followed by '-h', e.g., 'qwalk grid -h'")
    parser.add_argument("command",
                        choices=list(COMMANDS),
                        metavar="command",
                        help=f"One of: {', '.join(COMMANDS)}")
    parser.add_argument("args",
                        nargs=argparse.REMAINDER,
                        help="Options for the command")
    return parser


def dispatch(argv: List[str]) -> int:
    try:
        args = command_parser().parse_args(argv)
    except UsageError as ue:
        print(ue, file=sys.stderr)
        return 2
    except SystemExit as se:
        return se.code if isinstance(se.code, int) else 0
    return run_command(COMMANDS[args.command], args.args)


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == '__main__':
    main()
