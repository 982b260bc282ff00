import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable
from typing import Iterable
from typing import List

_logger = logging.getLogger("spsfeedback.optimize")


def ordered_map(func: Callable, items: Iterable, workers: int = 1) -> List:
    """
    Apply `func` to every item, in a process pool when `workers > 1`.

    Results come back in input order whatever the worker count, so reductions over them are reproducible. `func`
    and the items must be picklable.
    """
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    _logger.info(f"evaluating {len(items)} grid points on {workers} workers")
    chunksize = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items, chunksize=chunksize))
