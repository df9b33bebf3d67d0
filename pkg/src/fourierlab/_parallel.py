"""Thread-count cap shared by the parallel code paths."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

ENV_THREADS = "FOURIERLAB_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    """Value of ``FOURIERLAB_THREADS`` (default 1); must be an integer >= 1."""
    raw = os.environ.get(ENV_THREADS)
    if raw is None or raw.strip() == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_THREADS} must be an integer >= 1, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{ENV_THREADS} must be an integer >= 1, got {raw!r}")
    return n


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """``[fn(x) for x in items]``, possibly on a thread pool; result order is input order."""
    items = list(items)
    n = min(thread_count(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
