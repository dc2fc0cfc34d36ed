#!/usr/bin/env python3
"""
Closed-form signed distance fields.

Module Attributes:
  N/A

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import numpy as np



def box_sdfs(half_extents, points):
    """
    Vectorized `box_sdf()`.

    Args:
      half_extents ([float]): (3,) positive half side lengths.
      points (np.ndarray): (n, 3) points in the box frame (box centered at the
        origin).

    Returns:
      (np.ndarray, np.ndarray): (n,) signed distances and (n, 3) gradients.
    """
    half = np.asarray(half_extents, dtype=np.float64).reshape(3)
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    sign = np.where(points < 0, -1.0, 1.0)
    q = np.abs(points) - half
    q_pos = np.maximum(q, 0.0)
    outer = np.sqrt((q_pos ** 2).sum(axis=1))
    q_max = q.max(axis=1)
    values = outer + np.minimum(q_max, 0.0)

    grads = np.zeros_like(points)
    is_out = outer > 0
    grads[is_out] = q_pos[is_out] / outer[is_out, None]
    # Inside (or on the surface): the nearest face, lowest axis on ties
    axis = q.argmax(axis=1)
    inside = np.nonzero(~is_out)[0]
    grads[inside, axis[inside]] = 1.0
    return values, grads * sign



def box_sdf(half_extents, p):
    """
    Gets the exact signed distance to an axis-aligned box centered at the
    origin.

    Args:
      half_extents ([float]): (3,) positive half side lengths.
      p ([float]): (3,) point.

    Returns:
      (float, np.ndarray): The signed distance and its (3,) gradient.
    """
    values, grads = box_sdfs(half_extents,
            np.asarray(p, dtype=np.float64).reshape(1, 3))
    return float(values[0]), grads[0]
