#!/usr/bin/env python3
"""
Triangle mesh ingestion and measurement.  A `Mesh` is always closed and
consistently oriented with outward normals (counter-clockwise faces); this is
checked when a mesh is loaded or built, since the sign of every signed distance
computed downstream depends on it.

Wavefront OBJ is the only supported file format.  Files are read and written
with trimesh; the closed and oriented checks stay here.

Module Attributes:
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import logging
import os.path

import numpy as np
import trimesh

from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import



logger = logging.getLogger(__name__)



class Aabb:
    """
    An axis-aligned bounding box.

    Class Attributes:
      N/A

    Instance Attributes:
      min_corner (np.ndarray): (3,) min corner.
      max_corner (np.ndarray): (3,) max corner; componentwise >= min_corner.
    """
    def __init__(self, min_corner, max_corner):
        """
        Creates the box.

        Args:
          min_corner ([float]): The min corner.
          max_corner ([float]): The max corner.
        """
        self.min_corner = np.asarray(min_corner, dtype=np.float64).reshape(3)
        self.max_corner = np.asarray(max_corner, dtype=np.float64).reshape(3)
        assert np.all(self.min_corner <= self.max_corner)



    @classmethod
    def of_points(cls, points):
        """
        Gets the tight box around a set of points.

        Args:
          points (np.ndarray): (n, 3) points; n >= 1.

        Returns:
          (Aabb): The bounding box.
        """
        points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
        return cls(points.min(axis=0), points.max(axis=0))



    @property
    def extent(self):
        """
        Returns:
          (np.ndarray): (3,) side lengths.
        """
        return self.max_corner - self.min_corner



    @property
    def center(self):
        """
        Returns:
          (np.ndarray): (3,) center point.
        """
        return 0.5 * (self.min_corner + self.max_corner)



    def corners(self):
        """
        Returns:
          (np.ndarray): (8, 3) corner points.
        """
        lo, hi = self.min_corner, self.max_corner
        return np.array([[x, y, z] for z in (lo[2], hi[2]) \
                for y in (lo[1], hi[1]) for x in (lo[0], hi[0])])



    def contains_box(self, other, tol=0.0):
        """
        Checks whether another box lies inside this one.

        Args:
          other (Aabb): The box to check.
          tol (float): Slack allowed on every side.

        Returns:
          (bool): True if contained.
        """
        return bool(np.all(other.min_corner >= self.min_corner - tol) \
                and np.all(other.max_corner <= self.max_corner + tol))



class Mesh:
    """
    A closed, consistently oriented triangle mesh of one object or of a
    container.

    Class Attributes:
      N/A

    Instance Attributes:
      vertices (np.ndarray): (n, 3) float64 vertex positions, world units.
      faces (np.ndarray): (m, 3) int64 vertex indices per triangle, counter
        clockwise seen from outside.
      name (str): Label used in logs and exports.
    """
    def __init__(self, vertices, faces, name='mesh', validate=True):
        """
        Creates the mesh.

        Args:
          vertices (array-like): (n, 3) vertex positions.
          faces (array-like): (m, 3) triangle vertex indices (0-based).
          name (str): Label for the mesh.
          validate (bool): Whether to check the closed/oriented invariants.
            Only skip for meshes derived from an already validated mesh by a
            proper rigid transform or positive scaling.

        Raises:
          (MeshIndexError): A face index is out of range.
          (MeshValidationError): The mesh is open, non-manifold, or
            inconsistently oriented.
          (MeshOrientationError): The signed volume is not positive.
        """
        self.vertices = np.ascontiguousarray(vertices, dtype=np.float64) \
                .reshape(-1, 3)
        self.faces = np.ascontiguousarray(faces, dtype=np.int64).reshape(-1, 3)
        self.name = name
        if validate:
            self.validate()



    def validate(self):
        """
        Checks all mesh invariants.

        Raises:
          See `__init__()`.
        """
        n_verts = len(self.vertices)
        if len(self.faces) == 0:
            raise MeshValidationError(f'Mesh \'{self.name}\' has no faces.')
        if not np.all(np.isfinite(self.vertices)):
            raise MeshValidationError(
                    f'Mesh \'{self.name}\' has non-finite vertices.')

        bad_faces = np.nonzero(np.any((self.faces < 0) \
                | (self.faces >= n_verts), axis=1))[0]
        if len(bad_faces) > 0:
            i_face = bad_faces[0]
            raise MeshIndexError(f'Mesh \'{self.name}\': face {i_face}'
                    + f' references vertex index {self.faces[i_face].tolist()}'
                    + f' but there are only {n_verts} vertices.')

        _check_closed_and_oriented(self.faces, n_verts, self.name)

        volume = mesh_volume(self)
        if not volume > 0:
            raise MeshOrientationError(f'Mesh \'{self.name}\' has signed'
                    + f' volume {volume:.6g} <= 0; faces must be counter'
                    + ' clockwise seen from outside.')



    def triangles(self):
        """
        Returns:
          (np.ndarray): (m, 3, 3) triangle corner positions.
        """
        return self.vertices[self.faces]



    def aabb(self):
        """
        Returns:
          (Aabb): Bounding box of the vertices.
        """
        return Aabb.of_points(self.vertices)



    def centroid(self):
        """
        Gets the volume centroid (center of mass at uniform density).

        Returns:
          (np.ndarray): (3,) centroid.
        """
        tris = self.triangles()
        tet_vols = np.einsum('ij,ij->i', tris[:, 0],
                np.cross(tris[:, 1], tris[:, 2])) / 6.0
        tet_centroids = tris.sum(axis=1) / 4.0
        return (tet_vols[:, None] * tet_centroids).sum(axis=0) / tet_vols.sum()



    def bounding_radius(self, center=None):
        """
        Gets the radius of the smallest origin-centered (or center-centered)
        sphere holding every vertex.

        Args:
          center ([float] or None): Sphere center; defaults to the origin.

        Returns:
          (float): The radius.
        """
        verts = self.vertices
        if center is not None:
            verts = verts - np.asarray(center, dtype=np.float64)
        return float(np.sqrt((verts ** 2).sum(axis=1).max()))



    def transformed(self, scale=1.0, offset=(0.0, 0.0, 0.0), rotation=None,
            name=None):
        """
        Gets a copy with vertices mapped by `scale * (R v) + offset`.

        Args:
          scale (float): Positive uniform scale.
          offset ([float]): Translation applied after scaling.
          rotation (np.ndarray or None): Optional (3, 3) proper rotation.
          name (str or None): Name of the copy; defaults to this name.

        Returns:
          (Mesh): The transformed copy (invariants preserved, not rechecked).
        """
        assert scale > 0
        verts = self.vertices
        if rotation is not None:
            verts = verts @ np.asarray(rotation, dtype=np.float64).T
        verts = scale * verts + np.asarray(offset, dtype=np.float64)
        return Mesh(verts, self.faces.copy(), name or self.name,
                validate=False)



def _check_closed_and_oriented(faces, n_verts, name):
    """
    Checks that every directed edge appears exactly once and its reverse
    appears exactly once, which holds iff the mesh is closed, edge-manifold,
    and consistently oriented.

    Args:
      faces (np.ndarray): (m, 3) faces.
      n_verts (int): Vertex count.
      name (str): Mesh name for messages.

    Raises:
      (MeshValidationError): The first offending edge, in face order.
    """
    starts = faces.reshape(-1)
    ends = np.roll(faces, -1, axis=1).reshape(-1)

    degenerate = np.nonzero(starts == ends)[0]
    if len(degenerate) > 0:
        i_edge = degenerate[0]
        raise MeshValidationError(f'Mesh \'{name}\': face {i_edge // 3} is'
                + f' degenerate (repeats vertex {starts[i_edge]}).')

    keys = starts * n_verts + ends
    rev_keys = ends * n_verts + starts
    uniq, inverse, counts = np.unique(keys, return_inverse=True,
            return_counts=True)
    dir_counts = counts[inverse]
    pos = np.clip(np.searchsorted(uniq, rev_keys), 0, len(uniq) - 1)
    rev_counts = np.where(uniq[pos] == rev_keys, counts[pos], 0)

    bad = np.nonzero((dir_counts != 1) | (rev_counts != 1))[0]
    if len(bad) > 0:
        i_edge = bad[0]
        edge = (int(starts[i_edge]), int(ends[i_edge]))
        if rev_counts[i_edge] == 0:
            reason = 'is a boundary edge (mesh is open)'
        elif dir_counts[i_edge] > 1 or rev_counts[i_edge] > 1:
            reason = 'is shared by more than 2 faces or flips orientation'
        else:
            reason = 'is inconsistently oriented'
        raise MeshValidationError(f'Mesh \'{name}\': edge {edge} of face'
                + f' {i_edge // 3} {reason}.')



def mesh_volume(m):
    """
    Gets the enclosed volume as the sum of signed tetrahedron volumes of each
    face against the origin.

    Args:
      m (Mesh): Closed, oriented mesh.

    Returns:
      (float): The volume in cubic world units; positive for valid meshes.
    """
    tris = m.vertices[m.faces]
    return float(np.einsum('ij,ij->i', tris[:, 0],
            np.cross(tris[:, 1], tris[:, 2])).sum() / 6.0)



def load_mesh(path, name=None):
    """
    Loads a mesh from a Wavefront OBJ file.  Polygons with more than 3
    vertices come back triangulated by trimesh; vertices no face references
    are dropped.  Units pass through as is.

    Args:
      path (str): Path to the OBJ file.
      name (str or None): Mesh label; defaults to the file stem.

    Returns:
      (Mesh): The validated mesh.

    Raises:
      (MeshFileError): The file is missing, malformed, or holds no triangles.
      (MeshIndexError): A face references a non-existent vertex.
      (MeshValidationError): The mesh is open or inconsistently oriented.
      (MeshOrientationError): The signed volume is negative.
    """
    if name is None:
        name = os.path.splitext(os.path.basename(path))[0]
    if not os.path.isfile(path):
        raise MeshFileError(f'Mesh file not found: {path}')

    try:
        loaded = trimesh.load(path, file_type='obj', force='mesh',
                process=False)
    except IndexError as ex:
        raise MeshIndexError(f'Mesh \'{name}\': a face references a vertex'
                + f' index out of range in {path}.') from ex
    except Exception as ex:
        raise MeshFileError(f'Mesh file is not valid OBJ: {path} ({ex}).') \
                from ex
    if not isinstance(loaded, trimesh.Trimesh) or len(loaded.faces) == 0:
        raise MeshFileError(f'Mesh file holds no triangles: {path}')

    logger.debug('Read %(n_v)d vertices, %(n_f)d triangles from %(path)s',
            {'n_v': len(loaded.vertices), 'n_f': len(loaded.faces),
            'path': path})
    return Mesh(np.array(loaded.vertices, dtype=np.float64),
            np.array(loaded.faces, dtype=np.int64), name)



def make_box(extents, center=(0.0, 0.0, 0.0), name='box'):
    """
    Builds an axis-aligned box mesh (8 vertices, 12 outward triangles).

    Args:
      extents ([float]): Side lengths along x, y, z; all positive.
      center ([float]): Box center.
      name (str): Mesh label.

    Returns:
      (Mesh): The box.
    """
    half = 0.5 * np.asarray(extents, dtype=np.float64)
    center = np.asarray(center, dtype=np.float64)
    assert np.all(half > 0)
    signs = np.array([[x, y, z] for z in (-1, 1) for y in (-1, 1) \
            for x in (-1, 1)], dtype=np.float64)
    vertices = center + signs * half
    # Vertex i has bits (x, y, z) = (i & 1, i >> 1 & 1, i >> 2 & 1)
    faces = np.array([
        [0, 2, 3], [0, 3, 1],       # -z
        [4, 5, 7], [4, 7, 6],       # +z
        [0, 1, 5], [0, 5, 4],       # -y
        [2, 6, 7], [2, 7, 3],       # +y
        [0, 4, 6], [0, 6, 2],       # -x
        [1, 3, 7], [1, 7, 5],       # +x
    ], dtype=np.int64)
    return Mesh(vertices, faces, name)



def write_obj(path, meshes):
    """
    Writes meshes into a single OBJ file, concatenated in order so that the
    faces of each mesh stay contiguous.  Coordinates keep 17 digits.

    Args:
      path (str): Output path.
      meshes ([Mesh]): Meshes to write.
    """
    combined = trimesh.util.concatenate([trimesh.Trimesh(vertices=m.vertices,
            faces=m.faces, process=False) for m in meshes])
    combined.export(path, file_type='obj', include_normals=False,
            include_color=False, include_texture=False, digits=17)
