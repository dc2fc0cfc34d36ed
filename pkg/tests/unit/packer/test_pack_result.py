#!/usr/bin/env python3
"""
Tests the shadow_packer.packer.pack_result functionality.

Per [pytest](https://docs.pytest.org/en/reorganize-docs/new-docs/user/naming_conventions.html),
all tiles, classes, and methods will be prefaced with `test_/Test` to comply
with auto-discovery (others may exist, but will not be part of test suite
directly).

Module Attributes:
  N/A

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import math

import numpy as np
import pytest

from shadow_packer.loss.losses import LossReport
from shadow_packer.packer import pack_result
from shadow_packer.packer.audit import IntersectionAudit
from shadow_packer.packer.pack_result import PackResult
from shadow_packer.pose.pose import RigidPose



@pytest.fixture(name='result')
def fixture_result():
    """
    Gets a two-object result with a three-iteration trace.

    Returns:
      (PackResult): The result.
    """
    poses = [RigidPose((0.0, 0.0, 2.0 * math.pi), (1.0, 2.0, 3.0)),
            RigidPose((0.1, 0.2, 0.3), (-1.0, 0.0, 0.5))]
    params = np.arange(12, dtype=np.float64) / 10.0
    trace = [LossReport(3.0, 1.0, 100.0, 0.001),
            LossReport(2.0, 0.5, 10.0, 0.001),
            LossReport(1.0, 0.0, 0.0, 0.001)]
    audit = IntersectionAudit(0.01, 4, 0, 0.05)
    return PackResult(['0:a', '1:b'], poses, params, 0.25, trace, audit,
            {'front': 0.5, 'top': 1.0}, n_max_estimate=2)



def test_result_figures(result):
    """
    Tests the derived figures.
    """
    assert result.n_placed == 2
    assert result.mean_iou == pytest.approx(0.75)
    assert result.loss_csv is None
    empty = PackResult([], [], np.zeros(0), 0.0, [],
            IntersectionAudit(0.0, 0, 0, 0.05), {})
    assert empty.mean_iou is None
    assert empty.n_max_estimate is None



def test_loss_frame(result):
    """
    Tests the loss trace table.
    """
    frame = result.loss_frame()
    assert list(frame.columns) == ['iter', 'sil', 'intersect', 'extrude',
            'total']
    assert list(frame['iter']) == [0, 1, 2]
    assert list(frame['sil']) == [3.0, 2.0, 1.0]
    assert frame['total'].iloc[0] == pytest.approx(4.1)
    assert frame['total'].iloc[2] == 1.0



def test_to_dict(result):
    """
    Tests the JSON form.
    """
    data = result.to_dict()
    assert data['format_version'] == pack_result.RESULT_FORMAT_VERSION
    assert data['rho'] == 0.25
    assert data['n_placed'] == 2
    assert data['n_max_estimate'] == 2
    assert data['iterations'] == 3
    assert data['final_loss']['iter'] == 2
    assert data['final_loss']['total'] == 1.0
    assert data['audit']['passed']
    assert data['view_ious'] == {'front': 0.5, 'top': 1.0}
    assert data['mean_iou'] == pytest.approx(0.75)
    assert data['loss_csv'] is None

    first, second = data['objects']
    assert first['id'] == '0:a'
    assert first['angles_rad'] == pytest.approx([0.0, 0.0, 0.0], abs=1e-12)
    assert first['translation'] == [1.0, 2.0, 3.0]
    assert first['params'] == pytest.approx([0.0, 0.1, 0.2, 0.3, 0.4, 0.5])
    assert second['id'] == '1:b'
    assert second['params'] == pytest.approx([0.6, 0.7, 0.8, 0.9, 1.0, 1.1])



def test_read_result_params(result):
    """
    Tests reading the parameters back from the JSON form.
    """
    ids, params = pack_result.read_result_params(result.to_dict())
    assert ids == ['0:a', '1:b']
    np.testing.assert_allclose(np.array(params).reshape(-1), result.params)
    with pytest.raises(KeyError):
        pack_result.read_result_params({'objects': [{'id': '0:a'}]})
    with pytest.raises(KeyError):
        pack_result.read_result_params({})
