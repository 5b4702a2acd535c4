"""Worker-count resolution and an order-preserving parallel map."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
R = TypeVar("R")

JOBS_ENV = "RUNGE_KIT_JOBS"


def resolve_jobs(flag: int | None = None) -> int:
    """``--jobs`` flag, else ``$RUNGE_KIT_JOBS``, else the CPU count."""
    if flag is not None:
        if flag < 1:
            raise ValueError("--jobs must be at least 1")
        return flag
    env = os.environ.get(JOBS_ENV)
    if env:
        n = int(env)
        if n < 1:
            raise ValueError(f"{JOBS_ENV} must be at least 1")
        return n
    return os.cpu_count() or 1


def ordered_map(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> Iterator[R]:
    """Yield ``fn(item)`` in input order, using ``jobs`` worker processes."""
    if jobs <= 1:
        for item in items:
            yield fn(item)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(fn, items, chunksize=1)
