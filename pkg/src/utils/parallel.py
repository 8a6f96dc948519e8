import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

from src.utils.validations import Validations

THREADS_ENV: str = "QWALK_THREADS"

T = TypeVar("T")
R = TypeVar("R")

log = logging.getLogger(__name__)


def max_workers() -> int:
    """
        Thread cap from QWALK_THREADS; 0 or unset means one thread per CPU
    """
    requested = os.environ.get(THREADS_ENV, "0").strip() or "0"
    requested = Validations.validate_int(requested, min_value=0, label=THREADS_ENV)
    if requested == 0:
        return os.cpu_count() or 1
    return requested


def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: int = None) -> List[R]:
    """
        Order-preserving map; results are returned in input order regardless
        of completion order, so seeded work stays deterministic.
    """
    items = list(items)
    workers = max_workers() if workers is None else max(1, workers)
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    log.debug(f"Mapping {len(items)} items over {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
