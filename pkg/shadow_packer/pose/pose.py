#!/usr/bin/env python3
"""
Rigid-transform parameterization of each object.  A pose is stored as three
rotation angles (about x, y, z) plus a translation; the angles are converted to
a quaternion and from there to the rotation matrix every time the pose is
evaluated.  The composition order is fixed as R = Rz . Ry . Rx.

The learnable vector of one object is `[ax, ay, az, tx, ty, tz]`; a scene packs
these back to back.

Angles are only wrapped to (-pi, pi] when reported, never during optimization,
so the loss landscape stays continuous.

Module Attributes:
  PARAMS_PER_POSE (int): Number of learnable scalars per object.
  QUAT_NORM_TOL (float): Norm deviation beyond which a quaternion is
    renormalized (with a warning) before conversion.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import logging
import math

import numpy as np



PARAMS_PER_POSE = 6
QUAT_NORM_TOL = 1e-6

logger = logging.getLogger(__name__)



class Quaternion:
    """
    A rotation quaternion `w + xi + yj + zk`.

    Class Attributes:
      N/A

    Instance Attributes:
      w, x, y, z (float): Components.
    """
    def __init__(self, w, x, y, z):
        """
        Creates the quaternion.

        Args:
          w, x, y, z (float): Components.
        """
        self.w = float(w)
        self.x = float(x)
        self.y = float(y)
        self.z = float(z)



    def __mul__(self, other):
        """
        Hamilton product; `(a * b)` rotates by b first, then by a.

        Args:
          other (Quaternion): Right operand.

        Returns:
          (Quaternion): The product.
        """
        aw, ax, ay, az = self.as_tuple()
        bw, bx, by, bz = other.as_tuple()
        return Quaternion(
                aw * bw - ax * bx - ay * by - az * bz,
                aw * bx + ax * bw + ay * bz - az * by,
                aw * by - ax * bz + ay * bw + az * bx,
                aw * bz + ax * by - ay * bx + az * bw)



    def as_tuple(self):
        """
        Returns:
          ((float, float, float, float)): (w, x, y, z).
        """
        return (self.w, self.x, self.y, self.z)



    def norm(self):
        """
        Returns:
          (float): Euclidean norm of the 4 components.
        """
        return math.sqrt(self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2)



    def normalized(self):
        """
        Returns:
          (Quaternion): This quaternion scaled to unit norm.
        """
        n = self.norm()
        return Quaternion(self.w / n, self.x / n, self.y / n, self.z / n)



def euler_to_quaternion(angles):
    """
    Converts rotation angles about x, y, z into the quaternion of the composed
    rotation Rz . Ry . Rx.

    Args:
      angles ([float]): (ax, ay, az), radians.

    Returns:
      (Quaternion): Unit quaternion.
    """
    ax, ay, az = (float(a) for a in angles)
    qx = Quaternion(math.cos(0.5 * ax), math.sin(0.5 * ax), 0.0, 0.0)
    qy = Quaternion(math.cos(0.5 * ay), 0.0, math.sin(0.5 * ay), 0.0)
    qz = Quaternion(math.cos(0.5 * az), 0.0, 0.0, math.sin(0.5 * az))
    return qz * qy * qx



def quaternion_to_matrix(q):
    """
    Converts a quaternion into its 3x3 rotation matrix.  A quaternion whose
    norm deviates from 1 by more than `QUAT_NORM_TOL` is normalized first and a
    warning is logged.

    Args:
      q (Quaternion): The rotation.

    Returns:
      (np.ndarray): (3, 3) orthonormal matrix with determinant +1.
    """
    n = q.norm()
    if abs(n - 1.0) > QUAT_NORM_TOL:
        logger.warning(f'Quaternion norm {n:.9g} is not unit; normalizing.')
        q = q.normalized()
    w, x, y, z = q.as_tuple()
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])



def axis_matrices(angles):
    """
    Gets the elementary rotations about x, y, z and their derivatives with
    respect to their own angle.

    Args:
      angles ([float]): (ax, ay, az), radians.

    Returns:
      ((np.ndarray, ...)): (Rx, Ry, Rz, dRx, dRy, dRz), each (3, 3).
    """
    cx, sx = math.cos(angles[0]), math.sin(angles[0])
    cy, sy = math.cos(angles[1]), math.sin(angles[1])
    cz, sz = math.cos(angles[2]), math.sin(angles[2])
    rx = np.array([[1.0, 0.0, 0.0], [0.0, cx, -sx], [0.0, sx, cx]])
    ry = np.array([[cy, 0.0, sy], [0.0, 1.0, 0.0], [-sy, 0.0, cy]])
    rz = np.array([[cz, -sz, 0.0], [sz, cz, 0.0], [0.0, 0.0, 1.0]])
    drx = np.array([[0.0, 0.0, 0.0], [0.0, -sx, -cx], [0.0, cx, -sx]])
    dry = np.array([[-sy, 0.0, cy], [0.0, 0.0, 0.0], [-cy, 0.0, -sy]])
    drz = np.array([[-sz, -cz, 0.0], [cz, -sz, 0.0], [0.0, 0.0, 0.0]])
    return rx, ry, rz, drx, dry, drz



def wrap_angle(angle):
    """
    Wraps an angle into (-pi, pi].

    Args:
      angle (float): Radians.

    Returns:
      (float): The equivalent angle in (-pi, pi].
    """
    return angle - 2.0 * math.pi * math.ceil((angle - math.pi) / (2.0 * math.pi))



class RigidPose:
    """
    The learnable rigid transform (R, t) of one object.

    Class Attributes:
      N/A

    Instance Attributes:
      angles (np.ndarray): (3,) rotation angles about x, y, z, radians;
        unwrapped.
      translation (np.ndarray): (3,) translation, world units.
    """
    def __init__(self, angles=(0.0, 0.0, 0.0), translation=(0.0, 0.0, 0.0)):
        """
        Creates the pose.

        Args:
          angles ([float]): Rotation angles, radians.
          translation ([float]): Translation, world units.
        """
        self.angles = np.array(angles, dtype=np.float64).reshape(3)
        self.translation = np.array(translation, dtype=np.float64).reshape(3)
        assert np.all(np.isfinite(self.translation))



    @classmethod
    def from_params(cls, params):
        """
        Builds a pose from its 6 learnable scalars.

        Args:
          params (array-like): `[ax, ay, az, tx, ty, tz]`.

        Returns:
          (RigidPose): The pose.
        """
        params = np.asarray(params, dtype=np.float64)
        return cls(params[:3], params[3:6])



    def to_params(self):
        """
        Returns:
          (np.ndarray): (6,) `[ax, ay, az, tx, ty, tz]`.
        """
        return np.concatenate([self.angles, self.translation])



    def quaternion(self):
        """
        Returns:
          (Quaternion): The rotation as a unit quaternion.
        """
        return euler_to_quaternion(self.angles)



    def rotation_matrix(self):
        """
        Returns:
          (np.ndarray): (3, 3) rotation matrix, via the quaternion.
        """
        return quaternion_to_matrix(self.quaternion())



    def rotation_derivatives(self):
        """
        Gets dR/d(angle_k) for k = x, y, z.

        Returns:
          (np.ndarray): (3, 3, 3) array; `[k]` is dR/d(angle_k).
        """
        rx, ry, rz, drx, dry, drz = axis_matrices(self.angles)
        return np.stack([rz @ ry @ drx, rz @ dry @ rx, drz @ ry @ rx])



    def wrapped_angles(self):
        """
        Returns:
          (np.ndarray): (3,) angles wrapped into (-pi, pi] for reporting.
        """
        return np.array([wrap_angle(a) for a in self.angles])



    def to_dict(self):
        """
        Gets the serializable form used in result files.

        Returns:
          ({str: [float]}): `angles_rad` (wrapped) and `translation`.
        """
        return {
            'angles_rad': [float(a) for a in self.wrapped_angles()],
            'translation': [float(t) for t in self.translation],
        }



def apply_pose(pose, p):
    """
    Maps object-frame point(s) into the world: R p + t.

    Args:
      pose (RigidPose): The pose.
      p (array-like): (3,) point or (n, 3) points.

    Returns:
      (np.ndarray): Same shape as p.
    """
    p = np.asarray(p, dtype=np.float64)
    return p @ pose.rotation_matrix().T + pose.translation



def inverse_map(pose, q):
    """
    Maps world point(s) back into the object frame: R^T (q - t).

    Args:
      pose (RigidPose): The pose.
      q (array-like): (3,) point or (n, 3) points.

    Returns:
      (np.ndarray): Same shape as q.
    """
    q = np.asarray(q, dtype=np.float64)
    return (q - pose.translation) @ pose.rotation_matrix()



def pose_jacobians(pose, p):
    """
    Gets the analytic Jacobian of R p + t with respect to
    `[ax, ay, az, tx, ty, tz]`.

    Args:
      pose (RigidPose): The pose.
      p (array-like): (3,) point or (n, 3) points, object frame.

    Returns:
      (np.ndarray): (3, 6) for a single point, (n, 3, 6) for n points.  The
        translation block is the identity.
    """
    p = np.asarray(p, dtype=np.float64)
    single = p.ndim == 1
    pts = p.reshape(-1, 3)

    d_rot = pose.rotation_derivatives()
    jac = np.zeros((len(pts), 3, PARAMS_PER_POSE))
    for k in range(3):
        jac[:, :, k] = pts @ d_rot[k].T
    jac[:, :, 3:] = np.eye(3)

    if single:
        return jac[0]
    return jac
