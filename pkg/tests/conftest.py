#!/usr/bin/env python3
"""
Configures pytest as needed.  This file normally does not need to exist, but is
used here to share small meshes, scenes and run settings with the /tests
subpackages and all descendents.

Module Attributes:
  FAST_SETTINGS (dict): PackConfig settings small enough for unit tests.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import os.path

import pytest

from shadow_packer.container.box import BoxContainer
from shadow_packer.geometry import mesh as mesh_mod
from shadow_packer.packer.pack_config import PackConfig
from shadow_packer.packer.scene import Scene
from shadow_packer.render import targets as targets_mod
from shadow_packer.render import views as views_mod



FAST_SETTINGS = {
    'iterations': 5,
    'grid_points': 4000,
    'object_grid_dims': 16,
    'image_size': 16,
    'early_stop': False,
}



@pytest.fixture(name='unit_cube')
def fixture_unit_cube():
    """
    Gets a unit cube centered on the origin.

    Returns:
      (Mesh): The cube.
    """
    return mesh_mod.make_box((1.0, 1.0, 1.0), name='cube')



@pytest.fixture(name='write_mesh')
def fixture_write_mesh(tmp_path):
    """
    Gets a helper writing a mesh as OBJ into the test's temp dir.

    Returns:
      (callable): Maps (Mesh, file name) to the written path.
    """
    def write_mesh(m, file_name):
        path = os.path.join(str(tmp_path), file_name)
        mesh_mod.write_obj(path, [m])
        return path
    return write_mesh



@pytest.fixture(name='fast_config')
def fixture_fast_config():
    """
    Gets run settings with small grids and few iterations.

    Returns:
      (PackConfig): The settings.
    """
    return PackConfig(**FAST_SETTINGS)



@pytest.fixture(name='box_scene')
def fixture_box_scene(unit_cube, fast_config):
    """
    Gets a scene of two unit cubes in a 2 x 2 x 2 box under its three default
    views, with container targets.

    Returns:
      (Scene): The scene.
    """
    container = BoxContainer((2.0, 2.0, 2.0),
            grid_points=fast_config.grid_points)
    views = views_mod.make_default_views(container.aabb(), 3,
            fast_config.image_size)
    targets = targets_mod.container_targets(container.mesh, views)
    return Scene.build(container, [unit_cube, unit_cube], views, targets,
            fast_config)
