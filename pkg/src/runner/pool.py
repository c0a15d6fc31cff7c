"""Bounded concurrent map over independent numerical cells."""

import asyncio
import logging
from collections.abc import Callable, Iterable
from typing import Any, TypeVar

from src.config.settings import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


async def gather_map(
    func: Callable[[T], R],
    items: Iterable[T],
    workers: int | None = None,
    return_exceptions: bool = False,
) -> list[Any]:
    """Apply ``func`` to every item in worker threads; results keep input order."""
    semaphore = asyncio.Semaphore(workers or settings.worker_count)

    async def run(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(func, item)

    return await asyncio.gather(
        *(run(item) for item in items), return_exceptions=return_exceptions
    )


def run_parallel(
    func: Callable[[T], R],
    items: Iterable[T],
    workers: int | None = None,
    return_exceptions: bool = False,
) -> list[Any]:
    """Synchronous entry point for gather_map."""
    items = list(items)
    if not items:
        return []
    return asyncio.run(gather_map(func, items, workers, return_exceptions))
