"""
Thread-pool map with deterministic result order
"""
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Sequence

from ..config import MAX_WORKERS
from .logging_config import get_logger

logger = get_logger(__name__)


def ordered_map(func: Callable, items: Sequence, max_workers: int = MAX_WORKERS, label: str = 'task') -> List:
    """
    Apply func to every item concurrently and return results in input order.

    Results are collected as they complete and re-sorted by index, so the
    output does not depend on scheduling. If any task fails, the failure with
    the lowest index is re-raised after all tasks have finished.

    Args:
        func: Callable of one argument
        items: Inputs
        max_workers: Worker threads (1 runs inline)
        label: Name used in log messages

    Returns:
        List of results, results[k] = func(items[k])
    """
    items = list(items)
    if not items:
        return []

    if max_workers <= 1 or len(items) == 1:
        return [func(item) for item in items]

    results = [None] * len(items)
    errors = {}

    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        future_to_index = {
            executor.submit(func, item): index
            for index, item in enumerate(items)
        }

        for future in as_completed(future_to_index):
            index = future_to_index[future]
            try:
                results[index] = future.result()
            except Exception as e:
                logger.error(f"Error in {label} {index}: {e}")
                errors[index] = e

    if errors:
        first = min(errors)
        logger.error(f"{len(errors)} of {len(items)} {label}s failed")
        raise errors[first]

    return results
