#!/usr/bin/env python3
"""
Axis-aligned cuboid containers, with an analytic signed distance field.

Module Attributes:
  N/A

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import numpy as np

from shadow_packer.container import container_meta
from shadow_packer.field import analytic
from shadow_packer.general import config
from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.geometry import mesh as mesh_mod



class BoxContainer(container_meta.Container):
    """
    A cuboid container.

    Class Attributes:
      N/A

    Instance Attributes:
      extents (np.ndarray): (3,) side lengths.
      center (np.ndarray): (3,) box center.
      _mesh (Mesh): The box as a mesh.

      [inherited from Container]:
        _grid_points (int): Target node count of the container lattice.
    """
    def __init__(self, extents, center=(0.0, 0.0, 0.0), **kwargs):
        """
        Creates the box container.

        Args:
          extents ([float]): Side lengths, all positive.
          center ([float]): Box center.

          See parent(s) for required kwargs.

        Raises:
          (ParameterError): An extent is not positive.
        """
        super().__init__(**kwargs)
        self.extents = np.array(extents, dtype=np.float64).reshape(3)
        self.center = np.array(center, dtype=np.float64).reshape(3)
        if not np.all(self.extents > 0):
            raise ParameterError('Box container extents must be positive;'
                    + f' got {self.extents.tolist()}.')
        self._mesh = mesh_mod.make_box(self.extents, self.center, 'container')



    @classmethod
    def load_from_config(cls, run_cp, base_dir):
        """
        Loads the box from `[container] > extents` (and optional `center`).

        Args:
          run_cp (ConfigParser): The run config.
          base_dir (str): Unused; boxes reference no files.

        Returns:
          (BoxContainer): The box, world units.
        """
        kwargs = {}
        kwargs['extents'] = config.get_conf_list(run_cp, 'container',
                'extents', config.CastType.FLOAT, length=3)
        kwargs['center'] = config.get_conf_list(run_cp, 'container', 'center',
                config.CastType.FLOAT, length=3, fallback=(0.0, 0.0, 0.0))
        kwargs['grid_points'] = config.get_conf_value(run_cp, 'run',
                'grid points', config.CastType.INT,
                fallback=container_meta.DEFAULT_CONTAINER_POINTS)
        return BoxContainer(**kwargs)



    @classmethod
    def get_container_type_names(cls):
        """
        Get the list of names that can be used as the `type` in the
        `[container]` section to identify this container type.

        Returns:
          ([str]): Valid names for this container type.
        """
        return ['box', 'cuboid']



    @property
    def mesh(self):
        """
        Returns:
          (Mesh): The box as a 12-triangle mesh.
        """
        return self._mesh



    @property
    def is_box(self):
        """
        Returns:
          (bool): Always True.
        """
        return True



    def transformed(self, scale, offset):
        """
        Gets a copy with all geometry mapped by `scale * x + offset`.

        Args:
          scale (float): Positive uniform scale.
          offset ([float]): Translation after scaling.

        Returns:
          (BoxContainer): The mapped box.
        """
        return BoxContainer(self.extents * scale,
                self.center * scale + np.asarray(offset, dtype=np.float64),
                grid_points=self._grid_points)



    def sample(self, points):
        """
        Evaluates the analytic box SDF.

        Args:
          points (np.ndarray): (n, 3) points.

        Returns:
          (np.ndarray, np.ndarray): (n,) values and (n, 3) gradients.
        """
        return analytic.box_sdfs(0.5 * self.extents,
                np.asarray(points, dtype=np.float64) - self.center)



    def exact_sdf(self, points):
        """
        Evaluates the analytic box SDF (already exact).

        Args:
          points (np.ndarray): (n, 3) points.

        Returns:
          (np.ndarray): (n,) signed distances.
        """
        return self.sample(points)[0]



    def volume(self):
        """
        Returns:
          (float): Exact box volume.
        """
        return float(np.prod(self.extents))
