import logging
from multiprocessing import get_context
from typing import Callable, Iterable, List, Optional

import tqdm

from lab.defaults import LAB_THREADS, LOG_LEVEL, SHOW_PROGRESS


def worker_count(requested: Optional[int] = None) -> int:
    """``min(requested, LAB_THREADS)``; the environment cap always wins."""
    if requested is None:
        return LAB_THREADS
    return max(1, min(int(requested), LAB_THREADS))


def init_worker(log_level: str = LOG_LEVEL):
    logging.basicConfig(level=log_level.upper())


def ordered_map(
    func: Callable,
    items: Iterable,
    processes: Optional[int] = None,
    desc: Optional[str] = None,
    log_level: str = LOG_LEVEL,
) -> List:
    """``[func(item) for item in items]``, in input order, on a process pool when allowed."""
    items = list(items)
    processes = worker_count(processes)
    progress = dict(total=len(items), desc=desc, disable=not SHOW_PROGRESS)

    if processes == 1 or len(items) < 2:
        return [func(item) for item in tqdm.tqdm(items, **progress)]

    ctx = get_context("spawn")
    with ctx.Pool(
        processes=min(processes, len(items)),
        initializer=init_worker,
        initargs=(log_level,),
    ) as pool:
        return list(tqdm.tqdm(pool.imap(func, items), **progress))
