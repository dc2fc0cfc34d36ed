#!/usr/bin/env python3
"""
Adam over the flat pose-parameter vector.

Module Attributes:
  DEFAULT_BETA1 (float): First-moment decay.
  DEFAULT_BETA2 (float): Second-moment decay.
  DEFAULT_EPS_HAT (float): Denominator offset.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import numpy as np

from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.pose import pose as pose_mod



DEFAULT_BETA1 = 0.9
DEFAULT_BETA2 = 0.999
DEFAULT_EPS_HAT = 1e-8



class AdamState:
    """
    Moment estimates and step count of one Adam run.

    Class Attributes:
      N/A

    Instance Attributes:
      m (np.ndarray): First-moment estimate.
      v (np.ndarray): Second-moment estimate.
      beta1 (float): First-moment decay.
      beta2 (float): Second-moment decay.
      eps_hat (float): Denominator offset.
      step (int): Steps taken so far.
    """
    def __init__(self, n_params, beta1=DEFAULT_BETA1, beta2=DEFAULT_BETA2,
            eps_hat=DEFAULT_EPS_HAT):
        """
        Creates a zeroed state.

        Args:
          n_params (int): Parameter vector length.
          beta1 (float): First-moment decay in [0, 1).
          beta2 (float): Second-moment decay in [0, 1).
          eps_hat (float): Denominator offset, >= 0.

        Raises:
          (ParameterError): A hyperparameter is out of range.
        """
        if not 0.0 <= beta1 < 1.0 or not 0.0 <= beta2 < 1.0:
            raise ParameterError(f'Invalid Adam betas ({beta1}, {beta2}).')
        if not eps_hat >= 0.0:
            raise ParameterError(f'Invalid Adam epsilon {eps_hat}.')
        self.m = np.zeros(n_params)
        self.v = np.zeros(n_params)
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps_hat = eps_hat
        self.step = 0



def adam_step(state, params, grad, lr):
    """
    Takes one bias-corrected Adam step.  The state is updated in place.

    Args:
      state (AdamState): The optimizer state.
      params (np.ndarray): Current parameters.
      grad (np.ndarray): Gradient at the current parameters.
      lr (float): Learning rate.

    Returns:
      (np.ndarray): The new parameters.

    Raises:
      (ParameterError): Length mismatch.
      (NumericalAbortError): The gradient is not finite; names the object
        owning the first bad entry.
    """
    params = np.asarray(params, dtype=np.float64)
    grad = np.asarray(grad, dtype=np.float64)
    if not len(params) == len(grad) == len(state.m):
        raise ParameterError(f'Adam length mismatch: {len(params)} params,'
                + f' {len(grad)} gradients, state of {len(state.m)}.')
    bad = np.nonzero(~np.isfinite(grad))[0]
    if len(bad) > 0:
        i_obj = int(bad[0]) // pose_mod.PARAMS_PER_POSE
        raise NumericalAbortError(f'Non-finite gradient for object {i_obj}.',
                obj_index=i_obj, term='total')

    state.step += 1
    state.m = state.beta1 * state.m + (1.0 - state.beta1) * grad
    state.v = state.beta2 * state.v + (1.0 - state.beta2) * grad * grad
    m_hat = state.m / (1.0 - state.beta1 ** state.step)
    v_hat = state.v / (1.0 - state.beta2 ** state.step)
    return params - lr * m_hat / (np.sqrt(v_hat) + state.eps_hat)
