"""Optional process-level parallelism, capped by the SGCA_THREADS environment variable.

Results are always returned in input order so reports stay byte-identical
whatever the worker count.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def workers() -> int:
    try:
        n = int(os.environ.get("SGCA_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def map_chunks(fn, context, items: list, chunk: int = 2000):
    """Apply ``fn((context, chunk_of_items))`` over consecutive chunks, in order."""
    chunks = [items[i : i + chunk] for i in range(0, len(items), chunk)] or [[]]
    n = workers()
    if n == 1 or len(chunks) == 1:
        return [fn((context, c)) for c in chunks]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, [(context, c) for c in chunks]))
