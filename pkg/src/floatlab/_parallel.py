"""Optional thread parallelism, capped by ``FLOATLAB_THREADS``."""

import os
from concurrent.futures import ThreadPoolExecutor

MIN_CHUNK = 256


def thread_count():
    try:
        n = int(os.environ.get("FLOATLAB_THREADS", "0"))
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return max(1, n)


def chunked_map(fn, count):
    """Apply ``fn`` to contiguous index ranges covering ``range(count)``.

    Results come back in index order, so reductions over them are identical
    whatever the thread count.
    """
    workers = min(thread_count(), max(1, count // MIN_CHUNK))
    if workers == 1:
        return [fn(slice(0, count))]
    bounds = [count * k // workers for k in range(workers + 1)]
    parts = [slice(a, b) for a, b in zip(bounds[:-1], bounds[1:])]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, parts))
