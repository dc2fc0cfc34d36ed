#!/usr/bin/env python3
"""
Tests the shadow_packer.geometry.mesh functionality.

Per [pytest](https://docs.pytest.org/en/reorganize-docs/new-docs/user/naming_conventions.html),
all tiles, classes, and methods will be prefaced with `test_/Test` to comply
with auto-discovery (others may exist, but will not be part of test suite
directly).

Module Attributes:
  CUBE_OBJ (str): A unit cube in OBJ form, with quad faces and comments.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import numpy as np
import pytest
from scipy.spatial.transform import Rotation
import trimesh

from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.geometry import mesh as mesh_mod



CUBE_OBJ = """# unit cube, quads
v 0 0 0
v 1 0 0
v 0 1 0
v 1 1 0
v 0 0 1
v 1 0 1
v 0 1 1
v 1 1 1

f 1 3 4 2
f 5 6 8 7
f 1 2 6 5
f 3 7 8 4
f 1 5 7 3
f 2 4 8 6
"""



def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding='utf_8')
    return str(path)



def test_load_mesh_quads(tmp_path):
    """
    Tests that quad faces come back as two triangles each.
    """
    m = mesh_mod.load_mesh(_write(tmp_path, 'cube.obj', CUBE_OBJ))
    assert m.name == 'cube'
    assert m.vertices.shape == (8, 3)
    assert m.faces.shape == (12, 3)
    assert mesh_mod.mesh_volume(m) == pytest.approx(1.0)
    np.testing.assert_allclose(m.centroid(), [0.5, 0.5, 0.5])



def test_load_mesh_roundtrip(unit_cube, write_mesh):
    """
    Tests that a written mesh loads back with the same geometry.
    """
    m = mesh_mod.load_mesh(write_mesh(unit_cube, 'unit.obj'), name='again')
    assert m.name == 'again'
    np.testing.assert_array_equal(m.vertices, unit_cube.vertices)
    np.testing.assert_array_equal(m.faces, unit_cube.faces)



def test_load_mesh_errors(tmp_path):
    """
    Tests the file, index, validation and orientation errors.
    """
    with pytest.raises(MeshFileError, match='not found'):
        mesh_mod.load_mesh(str(tmp_path / 'missing.obj'))

    with pytest.raises(InputError):
        mesh_mod.load_mesh(_write(tmp_path, 'bad.obj', 'v 0 0 0\nv 1 x 0\n'))

    with pytest.raises(MeshFileError):
        mesh_mod.load_mesh(_write(tmp_path, 'points.obj',
                '# no faces\nv 0 0 0\nv 1 0 0\nv 0 1 0\n'))

    out_of_range = CUBE_OBJ.replace('f 1 5 7 3', 'f 1 5 7 9')
    with pytest.raises(InputError):
        mesh_mod.load_mesh(_write(tmp_path, 'index.obj', out_of_range))

    open_mesh = CUBE_OBJ.replace('f 1 5 7 3\n', '')
    with pytest.raises(MeshValidationError, match='boundary edge'):
        mesh_mod.load_mesh(_write(tmp_path, 'open.obj', open_mesh))

    flipped = CUBE_OBJ.replace('f 1 3 4 2', 'f 2 4 3 1')
    with pytest.raises(MeshValidationError, match='edge'):
        mesh_mod.load_mesh(_write(tmp_path, 'flipped.obj', flipped))



def test_mesh_orientation_error(unit_cube):
    """
    Tests that an inside-out mesh is rejected.
    """
    with pytest.raises(MeshOrientationError, match='volume'):
        mesh_mod.Mesh(unit_cube.vertices, unit_cube.faces[:, ::-1], 'inverted')
    with pytest.raises(MeshIndexError, match='only 8 vertices'):
        mesh_mod.Mesh(unit_cube.vertices,
                unit_cube.faces.tolist() + [[0, 1, 8]], 'index')
    with pytest.raises(MeshValidationError, match='no faces'):
        mesh_mod.Mesh(unit_cube.vertices, np.zeros((0, 3)), 'empty')
    with pytest.raises(MeshValidationError, match='degenerate'):
        mesh_mod.Mesh(unit_cube.vertices, [[0, 0, 1]] + \
                unit_cube.faces.tolist(), 'degenerate')



def test_mesh_volume(unit_cube):
    """
    Tests `mesh_volume()` on the cube and its scaled copy.
    """
    assert mesh_mod.mesh_volume(unit_cube) == pytest.approx(1.0, abs=1e-12)
    doubled = unit_cube.transformed(2.0)
    assert mesh_mod.mesh_volume(doubled) == pytest.approx(8.0, abs=1e-12)
    moved = unit_cube.transformed(1.0, (3.0, -2.0, 5.0))
    assert mesh_mod.mesh_volume(moved) == pytest.approx(1.0, abs=1e-12)



def test_mesh_volume_rotation_invariant():
    """
    Tests that `mesh_volume()` does not change under random rigid motions.
    """
    box = mesh_mod.make_box((1.0, 2.0, 3.0), center=(0.3, -0.2, 0.7))
    base = mesh_mod.mesh_volume(box)
    rots = Rotation.random(5, random_state=7).as_matrix()
    for rot, offset in zip(rots, np.linspace(-4.0, 4.0, 15).reshape(5, 3)):
        moved = box.transformed(1.0, offset, rotation=rot)
        assert mesh_mod.mesh_volume(moved) == pytest.approx(base, rel=1e-9)



def test_mesh_volume_icosphere():
    """
    Tests the volume of a 1280-face unit icosphere against the ball volume and
    against trimesh's own volume.
    """
    sphere = trimesh.creation.icosphere(subdivisions=3, radius=1.0)
    m = mesh_mod.Mesh(sphere.vertices, sphere.faces, 'sphere')
    assert len(m.faces) == 1280
    volume = mesh_mod.mesh_volume(m)
    assert volume == pytest.approx(4.0 * np.pi / 3.0, rel=0.02)
    assert volume < 4.0 * np.pi / 3.0
    assert volume == pytest.approx(sphere.volume, rel=1e-9)



def test_mesh_measures(unit_cube):
    """
    Tests the box, centroid and bounding radius.
    """
    moved = unit_cube.transformed(1.0, (1.0, 2.0, 3.0))
    aabb = moved.aabb()
    np.testing.assert_allclose(aabb.min_corner, [0.5, 1.5, 2.5])
    np.testing.assert_allclose(aabb.extent, [1.0, 1.0, 1.0])
    np.testing.assert_allclose(aabb.center, [1.0, 2.0, 3.0])
    np.testing.assert_allclose(moved.centroid(), [1.0, 2.0, 3.0], atol=1e-12)
    assert unit_cube.bounding_radius() == pytest.approx(np.sqrt(0.75))
    assert moved.bounding_radius((1.0, 2.0, 3.0)) \
            == pytest.approx(np.sqrt(0.75))
    assert aabb.corners().shape == (8, 3)
    assert aabb.contains_box(unit_cube.transformed(0.5, (1.0, 2.0, 3.0))
            .aabb())
    assert not aabb.contains_box(unit_cube.aabb())



def test_transformed_rotation():
    """
    Tests that `transformed()` applies the rotation before scale and offset.
    """
    rot = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    box = mesh_mod.make_box((2.0, 1.0, 1.0))
    turned = box.transformed(2.0, (1.0, 0.0, 0.0), rotation=rot, name='t')
    assert turned.name == 't'
    np.testing.assert_allclose(turned.aabb().extent, [2.0, 4.0, 2.0])
    np.testing.assert_allclose(turned.aabb().center, [1.0, 0.0, 0.0])



def test_make_box():
    """
    Tests `make_box()`.
    """
    box = mesh_mod.make_box((1.0, 2.0, 3.0), center=(1.0, 1.0, 1.0))
    assert mesh_mod.mesh_volume(box) == pytest.approx(6.0)
    np.testing.assert_allclose(box.aabb().min_corner, [0.5, 0.0, -0.5])



def test_write_obj(tmp_path, unit_cube):
    """
    Tests that `write_obj()` concatenates meshes in order with offset indices.
    """
    path = str(tmp_path / 'two.obj')
    other = unit_cube.transformed(1.0, (2.0, 0.0, 0.0), name='other')
    mesh_mod.write_obj(path, [unit_cube, other])
    lines = (tmp_path / 'two.obj').read_text(encoding='utf_8').splitlines()
    assert sum(1 for line in lines if line.startswith('v ')) == 16
    assert sum(1 for line in lines if line.startswith('f ')) == 24
    both = mesh_mod.load_mesh(path)
    assert both.vertices.shape == (16, 3)
    assert both.faces.max() == 15
    assert mesh_mod.mesh_volume(both) == pytest.approx(2.0)
