"""Deterministic thread-pool map used for shell-by-shell sums and sample suites."""
import logging
from concurrent.futures import ThreadPoolExecutor

logger = logging.getLogger(__name__)


def ordered_map(func, items, threads=1):
    """
    Apply func to every item and return the results in input order.

    Workers must not change the global mpmath precision: the caller fixes it before
    dispatching, so every partial result is computed at the same precision and the
    reduction order stays the input order.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    logger.debug("dispatching %d items to %d threads", len(items), threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))
