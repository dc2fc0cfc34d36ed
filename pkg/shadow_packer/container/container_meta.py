#!/usr/bin/env python3
"""
Holds the generic container meta-class that the container types subclass.  A
container supplies its signed distance field S_C (for the extrusion loss, the
query set and initialization), its exact signed distance (for the audit), its
mesh (for volume, silhouettes and export) and its lattice.

Module Attributes:
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
from abc import ABC, abstractmethod
import logging

from shadow_packer.geometry import mesh as mesh_mod
from shadow_packer.geometry.grid_spec import GridSpec
from shadow_packer.geometry.grid_spec import DEFAULT_CONTAINER_POINTS



logger = logging.getLogger(__name__)



class Container(ABC):
    """
    The abstract class for all containers.  Each container type subclasses
    this, but externally only the generic methods defined here are used.

    This serves as a base class for the container types, so will consume any
    final kwargs.

    Class Attributes:
      N/A

    Instance Attributes:
      _grid_points (int): Target node count of the container lattice.
    """
    def __init__(self, grid_points=DEFAULT_CONTAINER_POINTS, **kwargs):
        """
        Creates the container.

        Args:
          grid_points (int): Target node count of the container lattice.
        """
        self._grid_points = int(grid_points)

        if kwargs:
            logger.warning('Discarded excess kwargs provided to'
                    + f' {self.__class__.__name__}: {", ".join(kwargs.keys())}')



    @classmethod
    @abstractmethod
    def load_from_config(cls, run_cp, base_dir):
        """
        Loads the container from the `[container]` section of a run config.

        Args:
          run_cp (ConfigParser): The run config.
          base_dir (str): Directory of the run config, for relative paths.

        Returns:
          (Container<>): The container, in world units.

        Raises:
          (ConfigError): A required field is missing or invalid.
        """



    @classmethod
    @abstractmethod
    def get_container_type_names(cls):
        """
        Get the list of names that can be used as the `type` in the
        `[container]` section to identify this container type.

        Returns:
          ([str]): Valid names for this container type.
        """



    @property
    @abstractmethod
    def mesh(self):
        """
        Returns:
          (Mesh): The container boundary as a closed mesh.
        """



    @abstractmethod
    def transformed(self, scale, offset):
        """
        Gets a copy with all geometry mapped by `scale * x + offset`.

        Args:
          scale (float): Positive uniform scale.
          offset ([float]): Translation after scaling.

        Returns:
          (Container<>): The mapped container.
        """



    @abstractmethod
    def sample(self, points):
        """
        Evaluates the container SDF used during optimization.

        Args:
          points (np.ndarray): (n, 3) points.

        Returns:
          (np.ndarray, np.ndarray): (n,) values and (n, 3) spatial gradients.
        """



    @abstractmethod
    def exact_sdf(self, points):
        """
        Evaluates the exact container signed distance (not grid-interpolated).

        Args:
          points (np.ndarray): (n, 3) points.

        Returns:
          (np.ndarray): (n,) signed distances.
        """



    @property
    def is_box(self):
        """
        Returns:
          (bool): Whether this container is an axis-aligned box.
        """
        return False



    @property
    def grid_points(self):
        """
        Returns:
          (int): Target node count of the container lattice.
        """
        return self._grid_points



    def volume(self):
        """
        Returns:
          (float): Enclosed volume.
        """
        return mesh_mod.mesh_volume(self.mesh)



    def aabb(self):
        """
        Returns:
          (Aabb): Bounding box of the container.
        """
        return self.mesh.aabb()



    def lattice(self):
        """
        Gets the container lattice: about `grid_points` nodes covering the
        container box plus padding.  Query points and the mesh container grid
        both live on it.

        Returns:
          (GridSpec): The lattice.
        """
        return GridSpec.for_point_budget(self.aabb(), self._grid_points)
