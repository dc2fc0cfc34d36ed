#!/usr/bin/env python3
"""
Learning-rate schedule and early stopping.

Module Attributes:
  N/A

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import math

from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import



class Schedule:
    """
    Cosine decay of the learning rate over a fixed number of iterations.

    Class Attributes:
      N/A

    Instance Attributes:
      lr_start (float): Rate at the first iteration.
      lr_end (float): Rate at the last iteration.
      total (int): Iteration count.
    """
    def __init__(self, lr_start=1e-2, lr_end=1e-4, total=1000):
        """
        Raises:
          (ParameterError): Non-positive rates, lr_end > lr_start, or
            total < 1.
        """
        if not 0.0 < lr_end <= lr_start:
            raise ParameterError('Learning rates must satisfy'
                    + f' 0 < lr end <= lr start; got {lr_start}, {lr_end}.')
        if total < 1:
            raise ParameterError(f'Iteration count must be >= 1; got {total}.')
        self.lr_start = float(lr_start)
        self.lr_end = float(lr_end)
        self.total = int(total)



def lr_schedule(iteration, s):
    """
    Gets lr_end + (lr_start - lr_end) * (1 + cos(pi * i / (T - 1))) / 2,
    so iteration 0 gives lr_start and iteration T - 1 gives lr_end.

    Args:
      iteration (int): 0 <= iteration < s.total.
      s (Schedule): The schedule.

    Returns:
      (float): The learning rate.

    Raises:
      (ParameterError): iteration out of range.
    """
    if not 0 <= iteration < s.total:
        raise ParameterError(f'Iteration {iteration} outside of'
                + f' [0, {s.total}).')
    if s.total == 1:
        return s.lr_start
    phase = math.pi * iteration / (s.total - 1)
    return s.lr_end + (s.lr_start - s.lr_end) * 0.5 * (1.0 + math.cos(phase))



class EarlyStop:
    """
    Signals a stop once the best total loss has improved by less than `tol`
    over the last `window` iterations.

    Class Attributes:
      N/A

    Instance Attributes:
      window (int): Iterations compared.
      tol (float): Minimum improvement.
      _best (list of float): Best total loss seen up to each iteration.
    """
    def __init__(self, window=50, tol=1e-7):
        """
        Args:
          See Instance Attributes.
        """
        self.window = int(window)
        self.tol = float(tol)
        self._best = []



    def update(self, total):
        """
        Records one iteration.

        Args:
          total (float): Total loss of the iteration.

        Returns:
          (bool): True if optimization should stop.
        """
        best = total if not self._best else min(self._best[-1], total)
        self._best.append(best)
        if len(self._best) <= self.window:
            return False
        return self._best[-1 - self.window] - best < self.tol
