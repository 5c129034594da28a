# app/core/workers.py
"""Ordered fan-out for the ``--jobs`` setting.

joblib returns results in submission order, so callers merge in input order
and reports come out identical for any worker count.
"""
from __future__ import annotations

import logging
from typing import Callable, Iterable, TypeVar

from joblib import Parallel, delayed

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    logger.debug("ordered_map: %d items on %d workers", len(items), jobs)
    return Parallel(n_jobs=jobs)(delayed(fn)(x) for x in items)


def chunked(items: list[T], parts: int) -> list[list[T]]:
    """Split into at most ``parts`` contiguous chunks, preserving order."""
    if parts <= 1 or len(items) <= 1:
        return [items]
    size = -(-len(items) // parts)
    return [items[i:i + size] for i in range(0, len(items), size)]
