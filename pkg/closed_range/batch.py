"""Order-preserving fan-out of independent evaluations.

Results always come back in input order and every reduction downstream folds
them in that order, so the worker count never changes a digit.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from tqdm import tqdm

from closed_range.config import WORKERS

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# Progress bars follow tqdm's TTY detection unless switched off here (cli --quiet).
_progress: bool | None = None


def set_progress(enabled: bool | None) -> None:
    global _progress
    _progress = enabled


def ordered_map(
    fn: Callable[[T], R],
    items: Iterable[T],
    workers: int | None = None,
    desc: str | None = None,
) -> list[R]:
    """Apply `fn` to every item, possibly on a thread pool, keeping input order.

    Args:
        fn: Pure function of one item.
        items: Work items.
        workers: Thread count; defaults to config.WORKERS. 1 runs inline.
        desc: Progress bar label.

    Returns:
        List of results in the order of `items`.
    """
    items = list(items)
    workers = WORKERS if workers is None else workers
    disable = None if _progress is None else not _progress
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in tqdm(items, desc=desc, disable=disable, leave=False)]
    logger.debug(f"ordered_map: {len(items)} items on {workers} workers ({desc})")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(tqdm(pool.map(fn, items), total=len(items), desc=desc,
                         disable=disable, leave=False))
