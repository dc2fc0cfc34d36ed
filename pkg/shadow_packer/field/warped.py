#!/usr/bin/env python3
"""
An object's baked SDF seen through its current rigid pose.  The grid is baked
in the object frame; a world query q is mapped back by R^T (q - t) and sampled
there, which is equivalent to rigidly moving the object.

Module Attributes:
  N/A

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import numpy as np

from shadow_packer.pose import pose as pose_mod



class WarpedField:
    """
    An `SdfGrid` warped by a `RigidPose`.

    Class Attributes:
      N/A

    Instance Attributes:
      grid (SdfGrid): The object-frame grid.
      pose (RigidPose): The pose applied to the object.
      _rot (np.ndarray): (3, 3) cached rotation matrix of the pose.
      _d_rot (np.ndarray): (3, 3, 3) cached dR/d(angle_k).
    """
    def __init__(self, grid, pose):
        """
        Creates the warped field.  The pose must not be mutated afterwards.

        Args:
          grid (SdfGrid): The object-frame grid.
          pose (RigidPose): The object pose.
        """
        self.grid = grid
        self.pose = pose
        self._rot = pose.rotation_matrix()
        self._d_rot = pose.rotation_derivatives()



    def sample(self, points, with_pose_grad=True):
        """
        Samples the warped field at world points.

        Args:
          points (np.ndarray): (n, 3) world points.
          with_pose_grad (bool): Whether to compute the pose derivatives.

        Returns:
          (np.ndarray, np.ndarray or None): (n,) values and (n, 6) derivatives
            with respect to `[ax, ay, az, tx, ty, tz]` (None if not asked).
        """
        rel = np.asarray(points, dtype=np.float64).reshape(-1, 3) \
                - self.pose.translation
        local = rel @ self._rot
        values, grads = self.grid.sample(local)
        if not with_pose_grad:
            return values, None

        d_pose = np.empty((len(values), pose_mod.PARAMS_PER_POSE))
        # d/d(angle_k) of g . (dR_k^T rel) = (dR_k g) . rel
        for k in range(3):
            d_pose[:, k] = ((grads @ self._d_rot[k].T) * rel).sum(axis=1)
        d_pose[:, 3:] = -(grads @ self._rot.T)
        return values, d_pose



def warped_sample(f, p_world):
    """
    Samples a warped field at one world point.

    Args:
      f (WarpedField): The field.
      p_world ([float]): (3,) world point.

    Returns:
      (float, np.ndarray): The value and its (6,) pose derivative.
    """
    values, d_pose = f.sample(np.asarray(p_world, dtype=np.float64) \
            .reshape(1, 3))
    return float(values[0]), d_pose[0]
