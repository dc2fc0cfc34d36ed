#!/usr/bin/env python3
"""
Baked signed-distance samples on a regular lattice and their trilinear
interpolation.

Queries outside the lattice box are answered with the interpolated value at
the clamped point plus the Euclidean distance to the box.  This is continuous,
grows without bound far away, and lets objects transiently leave their padded
grids during optimization.

On disk a grid is a little-endian blob: 3 x u32 dims, 3 x f64 origin, f64
spacing, then the f32 values x-fastest.

Module Attributes:
  _HEADER (struct.Struct): Binary header layout.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import logging
import struct

import numpy as np

from shadow_packer.geometry.grid_spec import GridSpec



_HEADER = struct.Struct('<3I3dd')

logger = logging.getLogger(__name__)



class SdfGrid:
    """
    Immutable signed-distance samples over a `GridSpec`.

    Class Attributes:
      N/A

    Instance Attributes:
      spec (GridSpec): The lattice.
      values (np.ndarray): (n_points,) float64 values, x-fastest; read-only.
    """
    def __init__(self, spec, values):
        """
        Creates the grid.

        Args:
          spec (GridSpec): The lattice.
          values (array-like): One finite value per node, x-fastest.
        """
        values = np.array(values, dtype=np.float64).reshape(-1)
        assert len(values) == spec.n_points
        assert np.all(np.isfinite(values))
        values.setflags(write=False)
        self.spec = spec
        self.values = values
        self._values_zyx = values.reshape(spec.dims[2], spec.dims[1],
                spec.dims[0])



    def node_value(self, ix, iy, iz):
        """
        Gets the stored value of one node.

        Args:
          ix, iy, iz (int): Node indices.

        Returns:
          (float): The value.
        """
        return float(self._values_zyx[iz, iy, ix])



    def save(self, path):
        """
        Writes the grid in the binary format described in the module doc.

        Args:
          path (str): Output path.
        """
        header = _HEADER.pack(*self.spec.dims, *self.spec.origin,
                self.spec.spacing)
        with open(path, 'wb') as file:
            file.write(header)
            file.write(self.values.astype('<f4').tobytes())



    @classmethod
    def load(cls, path):
        """
        Reads a grid written by `save()`.

        Args:
          path (str): Input path.

        Returns:
          (SdfGrid): The grid; values are the stored f32 widened to f64.

        Raises:
          (ValueError): The file is truncated or has trailing data.
        """
        with open(path, 'rb') as file:
            blob = file.read()
        if len(blob) < _HEADER.size:
            raise ValueError(f'Grid file {path} is truncated.')
        fields = _HEADER.unpack_from(blob)
        spec = GridSpec(fields[3:6], fields[6], fields[0:3])
        payload = blob[_HEADER.size:]
        if len(payload) != 4 * spec.n_points:
            raise ValueError(f'Grid file {path} holds {len(payload)} value'
                    + f' bytes; expected {4 * spec.n_points}.')
        return cls(spec, np.frombuffer(payload, dtype='<f4'))



    def sample(self, points):
        """
        Vectorized `sample_trilinear()`.

        Args:
          points (np.ndarray): (n, 3) query points in the grid's frame.

        Returns:
          (np.ndarray, np.ndarray): (n,) values and (n, 3) spatial gradients.
        """
        spec = self.spec
        points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
        lo = spec.origin
        hi = spec.max_corner
        clamped = np.clip(points, lo, hi)

        local = (clamped - lo) / spec.spacing
        dims = np.array(spec.dims)
        cell = np.clip(np.floor(local).astype(np.int64), 0, dims - 2)
        frac = local - cell
        fx, fy, fz = frac[:, 0], frac[:, 1], frac[:, 2]
        ix, iy, iz = cell[:, 0], cell[:, 1], cell[:, 2]

        vals = self._values_zyx
        v000 = vals[iz, iy, ix]
        v100 = vals[iz, iy, ix + 1]
        v010 = vals[iz, iy + 1, ix]
        v110 = vals[iz, iy + 1, ix + 1]
        v001 = vals[iz + 1, iy, ix]
        v101 = vals[iz + 1, iy, ix + 1]
        v011 = vals[iz + 1, iy + 1, ix]
        v111 = vals[iz + 1, iy + 1, ix + 1]

        gx, gy, gz = 1.0 - fx, 1.0 - fy, 1.0 - fz
        # Interpolate along x first
        c00 = v000 * gx + v100 * fx
        c10 = v010 * gx + v110 * fx
        c01 = v001 * gx + v101 * fx
        c11 = v011 * gx + v111 * fx
        c0 = c00 * gy + c10 * fy
        c1 = c01 * gy + c11 * fy
        values = c0 * gz + c1 * fz

        grads = np.empty_like(points)
        grads[:, 0] = ((v100 - v000) * gy * gz + (v110 - v010) * fy * gz \
                + (v101 - v001) * gy * fz + (v111 - v011) * fy * fz)
        grads[:, 1] = ((c10 - c00) * gz + (c11 - c01) * fz)
        grads[:, 2] = c1 - c0
        grads /= spec.spacing

        outside = (points < lo) | (points > hi)
        if np.any(outside):
            grads[outside] = 0.0
            diff = points - clamped
            dist = np.sqrt((diff ** 2).sum(axis=1))
            away = dist > 0
            values = values + dist
            grads[away] += diff[away] / dist[away, None]

        return values, grads



def sample_trilinear(g, p):
    """
    Samples a grid at one point by trilinear interpolation of the 8 nodes
    around it.  A point on a node uses the cell having that node as its lower
    corner; points outside the grid follow the clamped-plus-distance rule.

    Args:
      g (SdfGrid): The grid.
      p ([float]): (3,) query point.

    Returns:
      (float, np.ndarray): The value and the (3,) analytic gradient of the
        interpolant.
    """
    values, grads = g.sample(np.asarray(p, dtype=np.float64).reshape(1, 3))
    return float(values[0]), grads[0]
