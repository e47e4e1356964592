"""
Ordered fan-out over worker processes. Work is split into index ranges, each worker is
a pure function of its range, and results come back in range order, so output never
depends on the worker count.
"""
import logging
import multiprocessing
import os

from tqdm import tqdm

from permatch.exc import BadParamsException

logger = logging.getLogger(__name__)

THREADS_ENV = 'PERMATCH_THREADS'
"""
Environment variable holding the default worker count.
"""


def default_workers():
    """
    The worker count from ``PERMATCH_THREADS`` (1 when unset).
    """
    value = os.environ.get(THREADS_ENV, '').strip()
    if not value:
        return 1
    try:
        workers = int(value)
    except ValueError:
        raise BadParamsException("{} must be a positive integer, got {!r}".format(THREADS_ENV, value))
    if workers < 1:
        raise BadParamsException("{} must be a positive integer, got {!r}".format(THREADS_ENV, value))
    return workers


def chunk_ranges(total, size):
    """
    Splits ``range(total)`` into consecutive ``(start, stop)`` pairs of at most ``size``.
    """
    size = max(1, size)
    return [(start, min(start + size, total)) for start in range(0, total, size)]


def ordered_map(func, items, workers=1, progress=False, desc=None):
    """
    Yields ``func(item)`` for every item, in input order.

    :param func: a picklable module-level function
    :param items: the work items (each must be picklable when ``workers > 1``)
    :param workers: process count; ``1`` runs in-process
    :param progress: show a ``tqdm`` bar on stderr
    :param desc: the progress bar label
    """
    items = list(items)
    bar_kwargs = dict(total=len(items), desc=desc, disable=not progress, unit='chunk')
    if workers <= 1 or len(items) <= 1:
        for result in tqdm(map(func, items), **bar_kwargs):
            yield result
        return
    logger.debug("fanning %d items out to %d workers", len(items), workers)
    with multiprocessing.Pool(processes=workers) as pool:
        for result in tqdm(pool.imap(func, items), **bar_kwargs):
            yield result
