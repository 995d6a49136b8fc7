"""
Order-preserving parallel map. Results come back in submission order, so
the worker count never changes what a command prints.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import islice

logger = logging.getLogger("scavenger")


def parallel_map(func, items, workers: int = 1) -> list:
    """
    Apply func to every item, in a process pool when workers > 1.

    Args:
        func: A picklable top-level function.
        items: The arguments, one per call.
        workers (int): Process count; 1 runs inline.

    Returns:
        list: func(item) for each item, in input order.
    """
    items = list(items)
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    if workers == 1 or len(items) < 2:
        return [func(item) for item in items]
    logger.debug(f"parallel_map: {len(items)} tasks on {workers} workers")
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as executor:
        return list(executor.map(func, items))


def first_result(func, items, workers: int = 1):
    """
    The first item, in input order, for which func returns something other
    than None.

    Items are taken `workers` at a time and a new group starts only when
    the previous one had no result, so the answer is the one a sequential
    loop would give.

    Args:
        func: A picklable top-level function.
        items: The arguments; may be a lazy iterable.
        workers (int): Process count; 1 runs inline.

    Returns:
        tuple[int, object] | None: Position of the item and func's result.
    """
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    items = iter(items)
    if workers == 1:
        for position, item in enumerate(items):
            result = func(item)
            if result is not None:
                return position, result
        return None
    position = 0
    with ProcessPoolExecutor(max_workers=workers) as executor:
        while group := list(islice(items, workers)):
            for offset, result in enumerate(executor.map(func, group)):
                if result is not None:
                    return position + offset, result
            position += len(group)
    return None
