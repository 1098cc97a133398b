"""Ordered fan-out over worker processes.

Callers split work into contiguous chunks and pick the first hit in chunk
order, so results never depend on how many workers ran.
"""
import atexit
import multiprocessing
from concurrent.futures import ProcessPoolExecutor

_pools = {}


def _pool(jobs):
    pool = _pools.get(jobs)
    if pool is None:
        pool = ProcessPoolExecutor(max_workers=jobs,
                                   mp_context=multiprocessing.get_context("fork"))
        _pools[jobs] = pool
    return pool


@atexit.register
def _shutdown():
    for pool in _pools.values():
        pool.shutdown(wait=False, cancel_futures=True)
    _pools.clear()


def chunked(n, jobs):
    """Split range(n) into at most 4*jobs contiguous (start, stop) chunks."""
    parts = max(1, min(n, 4 * jobs))
    bounds = [n * j // parts for j in range(parts + 1)]
    return [(bounds[j], bounds[j + 1]) for j in range(parts) if bounds[j] < bounds[j + 1]]


def first_hit(fn, chunks, jobs):
    """Run fn(chunk) per chunk; return the first non-None result in chunk order."""
    if jobs <= 1 or len(chunks) <= 1:
        for chunk in chunks:
            hit = fn(chunk)
            if hit is not None:
                return hit
        return None
    futures = [_pool(jobs).submit(fn, chunk) for chunk in chunks]
    for fut in futures:
        hit = fut.result()
        if hit is not None:
            for rest in futures:
                rest.cancel()
            return hit
    return None
