import argparse
from typing import NoReturn

from src.utils.errors import UsageError


class ArgumentParser(argparse.ArgumentParser):
    """
        Usage errors are raised as UsageError rather than terminating the
        interpreter, so the dispatcher (and batch runs) can map them to
        exit status 2 and keep going.
    """
    def __init__(self, *args, **kwargs) -> None:
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")
