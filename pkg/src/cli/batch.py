#!/usr/bin/env python3
#
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List

from src.cli.cli_base import CliBase, run_command
from src.core.constants import OutputFormat
from src.utils.argument_parser import ArgumentParser
from src.utils.errors import UsageError

# subcommands with a -seed option
SEEDED_COMMANDS: frozenset[str] = frozenset({"estimate"})


@dataclass(frozen=True)
class RunConfig:
    """
        One entry of a batch file:

            {"command": "grid", "args": ["-quantity", "P_E", "-m", "2"],
             "output": "p_e_m2.csv", "format": "csv"}

        A "seed" key is accepted for the estimate command only.

        Relative output paths resolve against the batch file's directory.
    """
    command: str
    args: List[str] = field(default_factory=list)
    output: str | None = None
    output_format: OutputFormat | None = None
    seed: int | None = None

    @classmethod
    def from_dict(cls, entry: Dict, base_dir: Path) -> RunConfig:
        if not isinstance(entry, dict) or "command" not in entry:
            raise UsageError(f"batch: each run needs a 'command' ({entry})")
        unknown = set(entry) - {"command", "args", "output", "format", "seed"}
        if unknown:
            raise UsageError(f"batch: unknown run keys {sorted(unknown)}")
        args = entry.get("args", [])
        if not isinstance(args, list):
            raise UsageError(f"batch: 'args' must be a list ({args})")
        output = entry.get("output")
        if output is not None:
            output = str(base_dir / output)
        command = str(entry["command"])
        seed = entry.get("seed")
        if seed is not None and command not in SEEDED_COMMANDS:
            raise UsageError(f"batch: '{command}' takes no seed ({seed})")
        fmt = entry.get("format")
        if fmt is not None and OutputFormat.by_name(str(fmt)) is None:
            raise UsageError(f"batch: unknown format '{fmt}'")
        return cls(command=command,
                   args=[str(a) for a in args],
                   output=output,
                   output_format=OutputFormat.by_name(str(fmt)) if fmt is not None else None,
                   seed=seed)

    def argv(self) -> List[str]:
        argv = list(self.args)
        if self.output is not None:
            argv += ["-output", self.output]
        if self.output_format is not None:
            argv += ["-format", self.output_format.label]
        if self.seed is not None:
            argv += ["-seed", str(self.seed)]
        return argv


def load_runs(path: str | Path) -> List[RunConfig]:
    path = Path(path)
    try:
        config = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise UsageError(f"batch: {path} is not valid JSON ({e.msg}, line {e.lineno})")
    if not isinstance(config, dict) or not isinstance(config.get("runs"), list):
        raise UsageError(f"batch: {path} must hold an object with a 'runs' list")
    return [RunConfig.from_dict(entry, path.parent) for entry in config["runs"]]


class BatchCli(CliBase):
    @classmethod
    def command_parser(cls) -> ArgumentParser:
        parser = ArgumentParser(prog="batch",
                                description="Run the subcommands listed in a JSON config file, in order")
        parser.add_argument("config",
                            help="Path to {\"runs\": [{\"command\": ..., \"args\": [...], \"output\": ...}]}")
        return parser

    def compute(self) -> List[int]:
        from src.cli.qwalk import COMMANDS

        runs = load_runs(self._args.config)
        # every run's flags are checked before anything is computed
        for run in runs:
            if run.command not in COMMANDS or run.command == "batch":
                raise UsageError(f"batch: unknown command '{run.command}'")
            COMMANDS[run.command].command_parser().parse_args(run.argv())
        statuses = []
        for run in runs:
            status = run_command(COMMANDS[run.command], run.argv())
            statuses.append(status)
            if status != 0:
                raise BatchFailure(run, status)
        return statuses

    def render(self) -> str:
        return f"{len(self.result)} runs completed"


class BatchFailure(RuntimeError):
    def __init__(self, run: RunConfig, status: int) -> None:
        super().__init__(f"run '{run.command}' exited with status {status}")
        self.exit_status = status


if __name__ == '__main__':
    sys.exit(run_command(BatchCli, sys.argv[1:]))
