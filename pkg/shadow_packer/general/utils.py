#!/usr/bin/env python3
"""
General utilities for items that are reused, but not enough in a single
category to separate into its own file/module.

Module Attributes:
  THREADS_ENV_VAR (str): Name of the environment variable holding the worker
    thread count.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
from concurrent.futures import ThreadPoolExecutor
import logging
import os



THREADS_ENV_VAR = 'SHADOW_PACKER_THREADS'

logger = logging.getLogger(__name__)



def get_thread_count():
    """
    Gets the number of worker threads for the parallel sections (baking,
    per-view rendering) from the environment.

    Returns:
      (int): The thread count; 1 if unset or invalid.
    """
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        count = int(raw)
    except ValueError:
        logger.warning(f'Ignoring non-integer {THREADS_ENV_VAR}={raw!r}.')
        return 1
    return max(1, count)



def chunk_slices(n_items, chunk_size):
    """
    Splits `range(n_items)` into consecutive slices of at most `chunk_size`.

    Args:
      n_items (int): Total item count.
      chunk_size (int): Max items per chunk; must be positive.

    Returns:
      ([slice]): The slices, in order.
    """
    assert chunk_size > 0
    return [slice(start, min(start + chunk_size, n_items)) \
            for start in range(0, n_items, chunk_size)]



def ordered_map(func, items):
    """
    Maps `func` over `items`, in parallel threads when more than one thread is
    configured.  The result order always matches the input order, so any
    reduction over the results is deterministic.

    Args:
      func (callable): Function of one argument.
      items ([*]): The inputs.

    Returns:
      ([*]): `func(item)` for each item, in input order.
    """
    n_threads = get_thread_count()
    if n_threads == 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=n_threads) as executor:
        return list(executor.map(func, items))
