#!/usr/bin/env python3
"""
Exact signed distance to a closed triangle mesh, and baking of those distances
onto a lattice.

The magnitude is the distance to the nearest triangle; the sign comes from the
generalized winding number (negative inside, where the winding number exceeds
0.5).  The winding number stays robust on sliver triangles, where normal-side
tests do not.

Module Attributes:
  _PAIRS_PER_CHUNK (int): Point-triangle pairs evaluated per vectorized chunk.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import logging
import math

import numpy as np

from shadow_packer.field.sdf_grid import SdfGrid
from shadow_packer.general import utils
from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import



_PAIRS_PER_CHUNK = 1 << 18

logger = logging.getLogger(__name__)



def _point_triangle_sq_distances(points, tris):
    """
    Gets the squared distance from each point to each triangle, using the
    Voronoi-region classification of the closest point.

    Args:
      points (np.ndarray): (c, 3) points.
      tris (np.ndarray): (m, 3, 3) triangles.

    Returns:
      (np.ndarray): (c, m) squared distances.
    """
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    ab = b - a
    ac = c - a
    p = points[:, None, :]
    ap = p - a
    bp = p - b
    cp = p - c

    d1 = (ap * ab).sum(axis=-1)
    d2 = (ap * ac).sum(axis=-1)
    d3 = (bp * ab).sum(axis=-1)
    d4 = (bp * ac).sum(axis=-1)
    d5 = (cp * ab).sum(axis=-1)
    d6 = (cp * ac).sum(axis=-1)
    va = d3 * d6 - d5 * d4
    vb = d5 * d2 - d1 * d6
    vc = d1 * d4 - d3 * d2

    with np.errstate(divide='ignore', invalid='ignore'):
        s_ab = d1 / (d1 - d3)
        t_ac = d2 / (d2 - d6)
        t_bc = (d4 - d3) / ((d4 - d3) + (d5 - d6))
        inv = 1.0 / (va + vb + vc)
        s_in = vb * inv
        t_in = vc * inv

    # Region tests in priority order: vertex A, B, edge AB, vertex C, edge AC,
    # edge BC, face interior
    conds = [
        (d1 <= 0) & (d2 <= 0),
        (d3 >= 0) & (d4 <= d3),
        (vc <= 0) & (d1 >= 0) & (d3 <= 0),
        (d6 >= 0) & (d5 <= d6),
        (vb <= 0) & (d2 >= 0) & (d6 <= 0),
        (va <= 0) & (d4 - d3 >= 0) & (d5 - d6 >= 0),
    ]
    s = np.select(conds, [0.0, 1.0, s_ab, 0.0, 0.0, 1.0 - t_bc], s_in)
    t = np.select(conds, [0.0, 0.0, 0.0, 1.0, t_ac, t_bc], t_in)

    diff = s[..., None] * ab + t[..., None] * ac - ap
    sq_dist = (diff ** 2).sum(axis=-1)
    # Zero-area triangles can land in the interior branch with NaN weights;
    # their edges are covered by the neighbouring triangles
    return np.where(np.isfinite(sq_dist), sq_dist, np.inf)



def _solid_angles(points, tris):
    """
    Gets the signed solid angle subtended by each triangle at each point.

    Args:
      points (np.ndarray): (c, 3) points.
      tris (np.ndarray): (m, 3, 3) triangles.

    Returns:
      (np.ndarray): (c, m) solid angles, steradians.
    """
    p = points[:, None, :]
    a = tris[:, 0] - p
    b = tris[:, 1] - p
    c = tris[:, 2] - p
    la = np.sqrt((a ** 2).sum(axis=-1))
    lb = np.sqrt((b ** 2).sum(axis=-1))
    lc = np.sqrt((c ** 2).sum(axis=-1))
    det = (a * np.cross(b, c)).sum(axis=-1)
    denom = la * lb * lc + (a * b).sum(axis=-1) * lc \
            + (b * c).sum(axis=-1) * la + (c * a).sum(axis=-1) * lb
    return 2.0 * np.arctan2(det, denom)



def winding_numbers(m, points):
    """
    Gets the generalized winding number of the mesh at each point: about 1
    inside, about 0 outside.

    Args:
      m (Mesh): The mesh.
      points (np.ndarray): (n, 3) points.

    Returns:
      (np.ndarray): (n,) winding numbers.
    """
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    tris = m.triangles()
    out = np.empty(len(points))
    chunk = max(1, _PAIRS_PER_CHUNK // len(tris))
    for sl in utils.chunk_slices(len(points), chunk):
        out[sl] = _solid_angles(points[sl], tris).sum(axis=1) / (4.0 * math.pi)
    return out



def _signed_distances_chunk(points, tris):
    """
    Signed distances of one chunk of points.

    Args:
      points (np.ndarray): (c, 3) points.
      tris (np.ndarray): (m, 3, 3) triangles.

    Returns:
      (np.ndarray): (c,) signed distances.
    """
    dist = np.sqrt(_point_triangle_sq_distances(points, tris).min(axis=1))
    winding = _solid_angles(points, tris).sum(axis=1) / (4.0 * math.pi)
    return np.where(winding > 0.5, -dist, dist)



def signed_distances(m, points):
    """
    Vectorized `signed_distance()`.  Chunks are evaluated in parallel threads
    when more than one thread is configured; the result does not depend on
    the thread count.

    Args:
      m (Mesh): The mesh.
      points (np.ndarray): (n, 3) points.

    Returns:
      (np.ndarray): (n,) signed distances, negative inside.
    """
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    tris = m.triangles()
    chunk = max(1, _PAIRS_PER_CHUNK // len(tris))
    slices = utils.chunk_slices(len(points), chunk)
    parts = utils.ordered_map(
            lambda sl: _signed_distances_chunk(points[sl], tris), slices)
    if not parts:
        return np.empty(0)
    return np.concatenate(parts)



def signed_distance(m, p):
    """
    Gets the signed distance from a point to a mesh: the distance to the
    nearest triangle, negated when the generalized winding number at the point
    exceeds 0.5.  Points on the surface give 0.

    Args:
      m (Mesh): The mesh.
      p ([float]): (3,) point.

    Returns:
      (float): The signed distance, world units.
    """
    return float(signed_distances(m, np.asarray(p).reshape(1, 3))[0])



def bake_sdf(m, spec):
    """
    Bakes the exact signed distance of a mesh at every node of a lattice.

    Args:
      m (Mesh): The mesh.
      spec (GridSpec): Lattice; must cover the mesh's box plus padding.

    Returns:
      (SdfGrid): The baked grid.

    Raises:
      (GridCoverageError): The lattice does not cover the mesh.
    """
    if not spec.covers(m.aabb()):
        raise GridCoverageError(f'Grid spanning {spec.origin.tolist()} to'
                + f' {spec.max_corner.tolist()} does not cover mesh'
                + f' \'{m.name}\' plus padding.')
    logger.debug('Baking %(name)s on %(dims)s nodes',
            {'name': m.name, 'dims': spec.dims})
    return SdfGrid(spec, signed_distances(m, spec.points()))
