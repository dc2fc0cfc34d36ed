#!/usr/bin/env python3
"""
Tests the shadow_packer.cli.artifacts functionality.

Per [pytest](https://docs.pytest.org/en/reorganize-docs/new-docs/user/naming_conventions.html),
all tiles, classes, and methods will be prefaced with `test_/Test` to comply
with auto-discovery (others may exist, but will not be part of test suite
directly).

Module Attributes:
  N/A

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import json
import os
import os.path
import types

import numpy as np
import pandas as pd
import pytest

from shadow_packer.cli import artifacts
from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.geometry import mesh as mesh_mod
from shadow_packer.packer import packer
from shadow_packer.render import images



@pytest.fixture(name='packed')
def fixture_packed(box_scene, fast_config):
    """
    Gets a short packing run of the two-cube scene.

    Returns:
      (PackResult, Scene): The result and its scene.
    """
    return packer.pack(box_scene, fast_config), box_scene



def test_write_loss_csv(packed, tmp_path):
    """
    Tests the loss trace CSV at full precision.
    """
    result, _ = packed
    path = artifacts.write_loss_csv(result, str(tmp_path))
    assert path == os.path.join(str(tmp_path), artifacts.LOSS_FILE)
    assert result.loss_csv == path
    frame = pd.read_csv(path, float_precision='round_trip')
    assert list(frame.columns) == ['iter', 'sil', 'intersect', 'extrude',
            'total']
    assert list(frame['iter']) == [0, 1, 2, 3, 4]
    assert list(frame['total']) == [r.total for r in result.loss_trace]



def test_result_json(packed, tmp_path):
    """
    Tests writing and reading the result JSON.
    """
    result, _ = packed
    path = artifacts.write_result_json(result, str(tmp_path), {'mode': 'pack'})
    data = artifacts.read_result_json(path)
    assert data['mode'] == 'pack'
    assert data['n_placed'] == 2
    assert [o['id'] for o in data['objects']] == ['0:cube', '1:cube']
    np.testing.assert_array_equal(
            np.array([o['params'] for o in data['objects']]).reshape(-1),
            result.params)

    with pytest.raises(InputError, match='not found'):
        artifacts.read_result_json(os.path.join(str(tmp_path), 'nope.json'))
    bad_path = os.path.join(str(tmp_path), 'bad.json')
    with open(bad_path, 'w', encoding='utf_8') as file:
        file.write('{"objects": [')
    with pytest.raises(InputError, match='not valid JSON'):
        artifacts.read_result_json(bad_path)



def test_write_renders(packed, tmp_path):
    """
    Tests the render, target and heatmap images.
    """
    result, scene = packed
    paths = artifacts.write_renders(scene, result.params, str(tmp_path))
    names = sorted(os.path.basename(p) for p in paths)
    assert names == ['render_front.png', 'render_right.png', 'render_top.png',
            'target_front.png', 'target_right.png', 'target_top.png']
    target = images.load_target(os.path.join(str(tmp_path),
            'target_front.png'), width=16, height=16)
    np.testing.assert_array_equal(target.pixels, scene.targets[0].pixels)

    paths = artifacts.write_renders(scene, result.params, str(tmp_path),
            threshold=0.5, heatmaps=True)
    assert len(paths) == 9
    assert os.path.isfile(os.path.join(str(tmp_path), 'heatmap_top.png'))



def test_write_obj_export(packed, tmp_path):
    """
    Tests the OBJ export of the placed meshes.
    """
    result, scene = packed
    path = artifacts.write_obj_export(scene, result.params, str(tmp_path))
    exported = mesh_mod.load_mesh(path)
    assert len(exported.vertices) == 16
    assert len(exported.faces) == 24
    assert mesh_mod.mesh_volume(exported) == pytest.approx(2.0)
    placed = scene.placed_meshes(result.params)
    np.testing.assert_allclose(exported.vertices[:8], placed[0].vertices)



def test_write_all(packed, tmp_path):
    """
    Tests every output of a run.
    """
    result, scene = packed
    output_dir = os.path.join(str(tmp_path), 'out')
    run_conf = types.SimpleNamespace(output_dir=output_dir, mode='pack',
            heatmaps=False, export_obj=True)
    artifacts.write_all(result, scene, run_conf)
    files = sorted(os.listdir(output_dir))
    assert files == sorted([artifacts.RESULT_FILE, artifacts.LOSS_FILE,
            artifacts.EXPORT_FILE, 'render_front.png', 'render_right.png',
            'render_top.png', 'target_front.png', 'target_right.png',
            'target_top.png'])
    with open(os.path.join(output_dir, artifacts.RESULT_FILE),
            encoding='utf_8') as file:
        data = json.load(file)
    assert data['mode'] == 'pack'
    assert data['loss_csv'] == os.path.join(output_dir, artifacts.LOSS_FILE)
    assert [v['name'] for v in data['views']] == ['front', 'right', 'top']
