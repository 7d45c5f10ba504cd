"""Ordered thread fan-out for independent grid rows."""

from concurrent.futures import ThreadPoolExecutor


def ordered_map(func, items, threads=1):
    """``[func(x) for x in items]``, optionally spread over ``threads`` workers.

    Results come back in input order whatever the scheduling, and every item
    runs through the same code path, so the output does not depend on
    ``threads``.
    """
    items = list(items)
    if threads is None or threads <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=int(threads)) as pool:
        return list(pool.map(func, items))
