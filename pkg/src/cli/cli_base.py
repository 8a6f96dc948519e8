import abc
import argparse
import logging
import sys
from abc import ABC
from typing import Any, List

from src.core.bloch_state import BlochState
from src.core.constants import OutputFormat, DEFAULT_RHO
from src.utils.argument_parser import ArgumentParser
from src.utils.errors import DomainError, UsageError
from src.utils.output import dumps, write_text
from src.utils.validations import Validations


class CliBase(ABC):
    __metaclass__ = abc.ABCMeta

    @classmethod
    def command_parser(cls) -> ArgumentParser | None:
        return None

    @staticmethod
    def output_parser(default: OutputFormat = OutputFormat.JSON) -> ArgumentParser:
        """
            Add options common to all CLI commands here. Command handlers
            can inherit from this parser to add other command-specific options.
        """
        parser = ArgumentParser(add_help=False)
        parser.add_argument("-output", "--output",
                            action="store",
                            help="Write results to this file rather than stdout")
        parser.add_argument("-format", "--format",
                            action="store",
                            type=CliBase._validate_format,
                            default=default,
                            help=f"Output format, csv or json (default: {default.label})")
        parser.add_argument("-verbose", "--verbose",
                            action="store_true",
                            help="Log progress to stderr")
        return parser

    @staticmethod
    def state_parser() -> ArgumentParser:
        """
            Bloch angles, as radians or pi literals such as pi/2 or 3pi/4
        """
        parser = ArgumentParser(add_help=False)
        parser.add_argument("-alpha", "--alpha",
                            action="store",
                            required=True,
                            help="Polar angle alpha in [0, pi]")
        parser.add_argument("-beta", "--beta",
                            action="store",
                            default="0",
                            help="Azimuth beta, reduced mod 2 pi (default: 0)")
        return parser

    @staticmethod
    def placement_parser(required: bool = True) -> ArgumentParser:
        parser = ArgumentParser(add_help=False)
        parser.add_argument("-m", "--m",
                            action="store",
                            required=required,
                            dest="m",
                            help="Absorbing site M: an integer >= 1 or inf")
        return parser

    @staticmethod
    def rho_parser() -> ArgumentParser:
        parser = ArgumentParser(add_help=False)
        parser.add_argument("-rho", "--rho",
                            action="store",
                            default=DEFAULT_RHO,
                            help=f"Coin bias rho in [0, 1] (default: {DEFAULT_RHO})")
        return parser

    def __init__(self,
                 arg_parser: ArgumentParser,
                 cmd_line: List[str] = None,
                 do_fire: bool = True) -> None:
        if cmd_line is None:
            self._args = arg_parser.parse_args()
        else:
            self._args = arg_parser.parse_args(cmd_line)
        self._prog = arg_parser.prog
        self._do_fire = do_fire
        self._result: Any = None
        self._output = self._args.output if "output" in self._args else None
        self._format = self._args.format if "format" in self._args else OutputFormat.JSON
        if "verbose" in self._args and self._args.verbose:
            logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(name)s: %(message)s")
        self._result = self.compute()
        if self.do_fire:
            self.emit()

    @abc.abstractmethod
    def compute(self) -> Any:
        ...

    def render(self) -> str:
        """
            JSON of the result unless a command knows a CSV layout
        """
        if self._format is OutputFormat.CSV:
            raise self.usage_error("csv output is not available for this command; use -format json")
        return dumps(self._result)

    def emit(self) -> None:
        write_text(self.render(), self._output, sys.stdout)

    def usage_error(self, message: str) -> UsageError:
        return UsageError(f"{self._prog}: {message}")

    @property
    def result(self) -> Any:
        return self._result

    @property
    def args(self) -> argparse.Namespace:
        return self._args

    @property
    def do_fire(self) -> bool:
        return self._do_fire

    @property
    def state(self) -> BlochState:
        return BlochState.of(self._args.alpha, self._args.beta)

    @property
    def placement(self) -> int | float:
        return Validations.validate_placement(self._args.m)

    @staticmethod
    def _validate_format(arg: Any) -> OutputFormat:
        fmt = OutputFormat.by_name(str(arg))
        if fmt is None:
            raise argparse.ArgumentTypeError(f"Format must be one of {[f.label for f in OutputFormat]}")
        return fmt

    @staticmethod
    def parse_placements(arg: Any) -> List[int | float]:
        """
            Comma-separated placements, e.g. "1,2" or "1,inf"
        """
        placements = [Validations.validate_placement(p.strip()) for p in str(arg).split(",") if p.strip()]
        if not placements:
            raise DomainError(f"No placements given ({arg})")
        return placements

    @staticmethod
    def _validate_resolution(arg: Any) -> tuple:
        """
            "100" or "100x80" (n_alpha x n_beta)
        """
        pieces = str(arg).lower().split("x")
        try:
            if len(pieces) == 1:
                n = int(pieces[0])
                return n, n
            if len(pieces) == 2:
                return int(pieces[0]), int(pieces[1])
        except ValueError:
            pass
        raise argparse.ArgumentTypeError(f"Resolution must look like 100 or 100x80 ({arg})")


def run_command(cli_class: type[CliBase], cmd_line: List[str]) -> int:
    """
        Runs one command and maps failures to exit statuses: 2 for usage
        errors, 1 for domain, numeric and I/O errors; each is reported as a
        single line on stderr.
    """
    try:
        cli_class(cli_class.command_parser(), cmd_line)
        return 0
    except UsageError as ue:
        print(ue, file=sys.stderr)
        return 2
    except (ValueError, TypeError, ArithmeticError, RuntimeError, OSError) as e:
        print(f"{cli_class.command_parser().prog}: {e}", file=sys.stderr)
        return getattr(e, "exit_status", 1)
    except SystemExit as se:
        # -h/--help
        return se.code if isinstance(se.code, int) else 0
