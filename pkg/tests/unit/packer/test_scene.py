#!/usr/bin/env python3
"""
Tests the shadow_packer.packer.scene functionality.

Per [pytest](https://docs.pytest.org/en/reorganize-docs/new-docs/user/naming_conventions.html),
all tiles, classes, and methods will be prefaced with `test_/Test` to comply
with auto-discovery (others may exist, but will not be part of test suite
directly).

Module Attributes:
  N/A

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import os

import numpy as np
import pytest

from shadow_packer.container.box import BoxContainer
from shadow_packer.geometry import mesh as mesh_mod
from shadow_packer.geometry.grid_spec import GridSpec
from shadow_packer.packer import scene as scene_mod
from shadow_packer.packer.scene import Scene
from shadow_packer.pose.pose import RigidPose
from shadow_packer.render import targets as targets_mod
from shadow_packer.render import views as views_mod



def test_normalization(box_scene):
    """
    Tests that the container and objects are scaled to unit container size.
    """
    assert box_scene.scale == 0.5
    np.testing.assert_allclose(box_scene.center, [0.0, 0.0, 0.0])
    np.testing.assert_allclose(box_scene.container.aabb().extent,
            [1.0, 1.0, 1.0])
    assert box_scene.n_objects == 2
    for obj, m in zip(box_scene.objects, box_scene.meshes):
        assert obj.volume == pytest.approx(1.0)
        np.testing.assert_allclose(m.aabb().extent, [0.5, 0.5, 0.5])
        np.testing.assert_allclose(m.centroid(), [0.0, 0.0, 0.0],
                atol=1e-12)
    assert len(box_scene.views) == len(box_scene.world_views) == 3
    assert box_scene.views[0].footprint[0] \
            == pytest.approx(0.5 * box_scene.world_views[0].footprint[0])
    assert len(box_scene.rays) == 3
    assert len(box_scene.query_set) > 0
    assert box_scene.lattice_spacing \
            == pytest.approx(box_scene.container.lattice().spacing)
    assert box_scene.render_params.tau \
            == pytest.approx(0.5 * box_scene.lattice_spacing)



def test_shared_grids(box_scene):
    """
    Tests that objects made from one mesh share one grid, lazily baked.
    """
    first, second = box_scene.objects
    assert first.source is second.source
    assert first.grid is second.grid
    assert first.grid.spec.dims == (16, 16, 16)

    other = box_scene.make_object(mesh_mod.make_box((1.0, 1.0, 1.0)))
    assert other.grid is not first.grid



def test_subset(box_scene):
    """
    Tests that subsets keep the shared parts.
    """
    one = box_scene.subset(1)
    assert one.n_objects == 1
    assert one.objects[0] is box_scene.objects[0]
    assert one.query_set is box_scene.query_set
    assert one.container is box_scene.container
    extra = box_scene.make_object(mesh_mod.make_box((0.5, 0.5, 0.5)))
    grown = box_scene.subset(2, [extra])
    assert grown.n_objects == 3
    assert grown.objects[2] is extra
    assert box_scene.subset(0).n_objects == 0



def test_pose_conversions(fast_config):
    """
    Tests the normalized and world pose conversions on an off-center scene.
    """
    container = BoxContainer((4.0, 2.0, 2.0), center=(10.0, 0.0, 5.0),
            grid_points=fast_config.grid_points)
    views = views_mod.make_default_views(container.aabb(), 1, 8)
    targets = targets_mod.container_targets(container.mesh, views)
    part = mesh_mod.make_box((1.0, 1.0, 1.0), center=(11.0, 0.5, 5.0))
    scene = Scene.build(container, [part], views, targets, fast_config)
    assert scene.scale == 0.25

    as_is = scene.as_is_params()
    np.testing.assert_allclose(as_is, [0, 0, 0, 0.25, 0.125, 0.0],
            atol=1e-12)
    world = scene.world_poses(as_is)[0]
    np.testing.assert_allclose(world.translation, [0, 0, 0], atol=1e-12)

    pose = RigidPose((0.3, -0.2, 1.0), (9.0, 1.0, 4.0))
    params = scene.params_from_world([pose])
    back = scene.world_poses(params)[0]
    np.testing.assert_allclose(back.translation, pose.translation,
            atol=1e-12)
    np.testing.assert_allclose(back.angles, pose.angles)

    world_mesh = scene.placed_meshes(params)[0]
    norm_mesh = scene.placed_meshes(params, world=False)[0]
    np.testing.assert_allclose(world_mesh.vertices,
            part.vertices @ pose.rotation_matrix().T + pose.translation,
            atol=1e-12)
    np.testing.assert_allclose(norm_mesh.vertices,
            scene.scale * (world_mesh.vertices - scene.center), atol=1e-12)
    assert scene.params_from_world([]).shape == (0,)



def test_bake_cached(tmp_path, unit_cube):
    """
    Tests that cached and fresh bakes give the same values.
    """
    spec = GridSpec.for_object(unit_cube.aabb(), 12)
    cache_dir = str(tmp_path / 'cache')
    first = scene_mod.bake_cached(unit_cube, spec, cache_dir)
    files = os.listdir(cache_dir)
    assert len(files) == 1 and files[0].endswith('.sdf')
    second = scene_mod.bake_cached(unit_cube, spec, cache_dir)
    np.testing.assert_array_equal(first.values, second.values)
    assert os.listdir(cache_dir) == files

    scene_mod.bake_cached(unit_cube, spec.refined(2), cache_dir)
    assert len(os.listdir(cache_dir)) == 2

    uncached = scene_mod.bake_cached(unit_cube, spec)
    np.testing.assert_allclose(uncached.values, first.values, atol=1e-6)
