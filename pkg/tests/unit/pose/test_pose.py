#!/usr/bin/env python3
"""
Tests the shadow_packer.pose.pose functionality.

Per [pytest](https://docs.pytest.org/en/reorganize-docs/new-docs/user/naming_conventions.html),
all tiles, classes, and methods will be prefaced with `test_/Test` to comply
with auto-discovery (others may exist, but will not be part of test suite
directly).

Module Attributes:
  N/A

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import logging
import math

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from shadow_packer.pose import pose as pose_mod
from shadow_packer.pose.pose import Quaternion, RigidPose



def test_quaternion_product():
    """
    Tests the Hamilton product and norm helpers.
    """
    i = Quaternion(0.0, 1.0, 0.0, 0.0)
    j = Quaternion(0.0, 0.0, 1.0, 0.0)
    assert (i * j).as_tuple() == (0.0, 0.0, 0.0, 1.0)
    assert (j * i).as_tuple() == (0.0, 0.0, 0.0, -1.0)
    assert Quaternion(1.0, 2.0, 2.0, 4.0).norm() == pytest.approx(5.0)
    assert Quaternion(0.0, 0.0, 3.0, 4.0).normalized().as_tuple() \
            == pytest.approx((0.0, 0.0, 0.6, 0.8))



def test_euler_to_quaternion():
    """
    Tests the angle to quaternion conversion on single axis rotations.
    """
    q = pose_mod.euler_to_quaternion((0.0, 0.0, math.pi / 2))
    assert q.as_tuple() == pytest.approx(
            (math.sqrt(0.5), 0.0, 0.0, math.sqrt(0.5)))
    q = pose_mod.euler_to_quaternion((math.pi, 0.0, 0.0))
    assert q.as_tuple() == pytest.approx((0.0, 1.0, 0.0, 0.0), abs=1e-12)
    assert pose_mod.euler_to_quaternion((0.0, 0.0, 0.0)).as_tuple() \
            == (1.0, 0.0, 0.0, 0.0)



@pytest.mark.parametrize('angles', [
    (0.0, 0.0, 0.0),
    (0.3, 0.0, 0.0),
    (0.0, -1.1, 0.0),
    (0.1, 0.2, 0.3),
    (2.5, -0.7, 4.0),
    (-7.0, 3.1, 12.0),
])
def test_rotation_matrix(angles):
    """
    Tests R = Rz Ry Rx, orthonormality, and agreement with extrinsic x-y-z
    angles.
    """
    rot = RigidPose(angles).rotation_matrix()
    rx, ry, rz, _, _, _ = pose_mod.axis_matrices(angles)
    np.testing.assert_allclose(rot, rz @ ry @ rx, atol=1e-12)
    np.testing.assert_allclose(rot @ rot.T, np.eye(3), atol=1e-12)
    assert np.linalg.det(rot) == pytest.approx(1.0)
    np.testing.assert_allclose(rot,
            Rotation.from_euler('xyz', angles).as_matrix(), atol=1e-12)



def test_quaternion_to_matrix_renormalizes(caplog):
    """
    Tests that a non-unit quaternion is normalized with a warning.
    """
    caplog.set_level(logging.WARNING, logger='shadow_packer.pose.pose')
    rot = pose_mod.quaternion_to_matrix(Quaternion(2.0, 0.0, 0.0, 2.0))
    np.testing.assert_allclose(rot,
            [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]], atol=1e-12)
    assert 'not unit' in caplog.text

    caplog.clear()
    pose_mod.quaternion_to_matrix(Quaternion(1.0, 0.0, 0.0, 0.0))
    assert caplog.text == ''



@pytest.mark.parametrize('angle, exp', [
    (0.0, 0.0),
    (math.pi, math.pi),
    (-math.pi, math.pi),
    (3 * math.pi / 2, -math.pi / 2),
    (-3 * math.pi / 2, math.pi / 2),
    (7.0, 7.0 - 2 * math.pi),
    (-13.0, -13.0 + 4 * math.pi),
])
def test_wrap_angle(angle, exp):
    """
    Tests wrapping into (-pi, pi].
    """
    assert pose_mod.wrap_angle(angle) == pytest.approx(exp)



def test_params_roundtrip():
    """
    Tests the 6 parameter layout and the result file form.
    """
    params = np.array([0.1, 7.0, -0.3, 1.0, 2.0, 3.0])
    pose = RigidPose.from_params(params)
    np.testing.assert_array_equal(pose.angles, [0.1, 7.0, -0.3])
    np.testing.assert_array_equal(pose.translation, [1.0, 2.0, 3.0])
    np.testing.assert_array_equal(pose.to_params(), params)
    data = pose.to_dict()
    assert data['translation'] == [1.0, 2.0, 3.0]
    assert data['angles_rad'] == pytest.approx([0.1, 7.0 - 2 * math.pi, -0.3])
    # Wrapped angles give the same rotation
    np.testing.assert_allclose(
            RigidPose(data['angles_rad']).rotation_matrix(),
            pose.rotation_matrix(), atol=1e-12)



def test_apply_and_inverse():
    """
    Tests that `inverse_map()` undoes `apply_pose()`.
    """
    pose = RigidPose((0.4, -0.2, 1.3), (1.0, -2.0, 0.5))
    pts = np.array([[0.0, 0.0, 0.0], [1.0, 2.0, 3.0], [-0.5, 0.1, 0.2]])
    world = pose_mod.apply_pose(pose, pts)
    np.testing.assert_allclose(world[0], [1.0, -2.0, 0.5])
    np.testing.assert_allclose(pose_mod.inverse_map(pose, world), pts,
            atol=1e-12)
    single = pose_mod.apply_pose(pose, pts[1])
    assert single.shape == (3,)
    np.testing.assert_allclose(single, world[1])

    quarter = RigidPose((0.0, 0.0, math.pi / 2))
    np.testing.assert_allclose(pose_mod.apply_pose(quarter, (1.0, 0.0, 0.0)),
            [0.0, 1.0, 0.0], atol=1e-12)



def test_pose_jacobians():
    """
    Tests the Jacobian shape, translation block, and central differences.
    """
    params = np.array([0.3, -0.5, 0.9, 0.1, 0.2, 0.3])
    pts = np.array([[1.0, 0.5, -0.2], [-0.3, 0.7, 1.1]])
    pose = RigidPose.from_params(params)
    jac = pose_mod.pose_jacobians(pose, pts)
    assert jac.shape == (2, 3, 6)
    np.testing.assert_array_equal(jac[:, :, 3:], np.broadcast_to(np.eye(3),
            (2, 3, 3)))
    assert pose_mod.pose_jacobians(pose, pts[0]).shape == (3, 6)

    eps = 1e-6
    for k in range(6):
        step = np.zeros(6)
        step[k] = eps
        plus = pose_mod.apply_pose(RigidPose.from_params(params + step), pts)
        minus = pose_mod.apply_pose(RigidPose.from_params(params - step), pts)
        np.testing.assert_allclose(jac[:, :, k], (plus - minus) / (2 * eps),
                atol=1e-8)
