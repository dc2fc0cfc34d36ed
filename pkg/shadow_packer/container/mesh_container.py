#!/usr/bin/env python3
"""
Arbitrarily shaped containers given as closed meshes (also used for part
assembly, where the whole object is the container).  During optimization the
SDF is read from a grid baked on the container lattice; the audit uses the
exact mesh distance.

Module Attributes:
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import logging

from shadow_packer.container import container_meta
from shadow_packer.general import config
from shadow_packer.general import dirs
from shadow_packer.geometry import mesh as mesh_mod
from shadow_packer.geometry import sdf



logger = logging.getLogger(__name__)



class MeshContainer(container_meta.Container):
    """
    A container bounded by a closed mesh.

    Class Attributes:
      N/A

    Instance Attributes:
      _mesh (Mesh): The boundary mesh.
      _grid (SdfGrid or None): The baked SDF on the container lattice; baked
        on first use unless attached beforehand.

      [inherited from Container]:
        _grid_points (int): Target node count of the container lattice.
    """
    def __init__(self, mesh, **kwargs):
        """
        Creates the mesh container.

        Args:
          mesh (Mesh): The boundary mesh.

          See parent(s) for required kwargs.
        """
        super().__init__(**kwargs)
        self._mesh = mesh
        self._grid = None



    @classmethod
    def load_from_config(cls, run_cp, base_dir):
        """
        Loads the container mesh from `[container] > path`.

        Args:
          run_cp (ConfigParser): The run config.
          base_dir (str): Directory of the run config.

        Returns:
          (MeshContainer): The container, world units.
        """
        path = dirs.resolve_path(config.get_conf_value(run_cp, 'container',
                'path', config.CastType.STRING), base_dir)
        kwargs = {}
        kwargs['mesh'] = mesh_mod.load_mesh(path, name='container')
        kwargs['grid_points'] = config.get_conf_value(run_cp, 'run',
                'grid points', config.CastType.INT,
                fallback=container_meta.DEFAULT_CONTAINER_POINTS)
        return MeshContainer(**kwargs)



    @classmethod
    def get_container_type_names(cls):
        """
        Get the list of names that can be used as the `type` in the
        `[container]` section to identify this container type.

        Returns:
          ([str]): Valid names for this container type.
        """
        return ['mesh', 'obj']



    @property
    def mesh(self):
        """
        Returns:
          (Mesh): The boundary mesh.
        """
        return self._mesh



    @property
    def grid(self):
        """
        Gets the baked container SDF, baking it on first access.

        Returns:
          (SdfGrid): The grid over `lattice()`.
        """
        if self._grid is None:
            self._grid = sdf.bake_sdf(self._mesh, self.lattice())
        return self._grid



    def attach_grid(self, grid):
        """
        Uses an already baked grid (e.g. from the grid cache).

        Args:
          grid (SdfGrid): Grid baked from this mesh over `lattice()`.
        """
        self._grid = grid



    def transformed(self, scale, offset):
        """
        Gets a copy with all geometry mapped by `scale * x + offset`.  The
        copy bakes its own grid.

        Args:
          scale (float): Positive uniform scale.
          offset ([float]): Translation after scaling.

        Returns:
          (MeshContainer): The mapped container.
        """
        return MeshContainer(self._mesh.transformed(scale, offset),
                grid_points=self._grid_points)



    def sample(self, points):
        """
        Evaluates the grid-interpolated container SDF.

        Args:
          points (np.ndarray): (n, 3) points.

        Returns:
          (np.ndarray, np.ndarray): (n,) values and (n, 3) gradients.
        """
        return self.grid.sample(points)



    def exact_sdf(self, points):
        """
        Evaluates the exact mesh signed distance.

        Args:
          points (np.ndarray): (n, 3) points.

        Returns:
          (np.ndarray): (n,) signed distances.
        """
        return sdf.signed_distances(self._mesh, points)
