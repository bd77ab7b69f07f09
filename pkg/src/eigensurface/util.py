"""Small shared helpers."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor


def parallel_map(fn, items, threads=1):
    """Map fn over items preserving input order.

    threads <= 1 degrades to a plain loop. Results are merged in input order
    regardless of completion order, so output is identical for any thread
    count.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
