#!/usr/bin/env python3
"""
The normalized optimization scene.  The container box is centered at the
origin and scaled to unit max extent; each object mesh is scaled the same way
and recentered on its volume centroid, so an object's pose translation is the
position of its centroid.  Views are re-expressed in the same frame; their
images are unchanged.

World poses act on the mesh coordinates as loaded:  x = R v + t_world, with
t_world = t / s + center - R c_i, where s is the normalization scale, center
the container box center, and c_i the object's world centroid.

Module Attributes:
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import hashlib
import json
import logging
import os
import os.path

import numpy as np

from shadow_packer.container import mesh_container
from shadow_packer.field.sdf_grid import SdfGrid
from shadow_packer.field.warped import WarpedField
from shadow_packer.geometry import mesh as mesh_mod
from shadow_packer.geometry import sdf
from shadow_packer.geometry.grid_spec import GridSpec
from shadow_packer.loss.losses import QuerySet
from shadow_packer.pose import pose as pose_mod
from shadow_packer.render.silhouette import RenderParams



logger = logging.getLogger(__name__)



def bake_cached(m, spec, cache_dir=None):
    """
    Bakes a grid, reusing a cached copy when a cache directory is given.
    Cached grids are keyed by the mesh geometry and the grid spec, and hold
    f32 values; a freshly baked grid is read back from the cache so both paths
    return identical values.

    Args:
      m (Mesh): The mesh to bake.
      spec (GridSpec): The lattice.
      cache_dir (str or None): Cache directory; no caching if None.

    Returns:
      (SdfGrid): The grid.
    """
    if cache_dir is None:
        return sdf.bake_sdf(m, spec)

    digest = hashlib.sha1()
    digest.update(m.vertices.tobytes())
    digest.update(m.faces.tobytes())
    digest.update(json.dumps(spec.to_dict(), sort_keys=True).encode('utf_8'))
    path = os.path.join(cache_dir, f'{digest.hexdigest()}.sdf')

    if not os.path.isfile(path):
        os.makedirs(cache_dir, exist_ok=True)
        sdf.bake_sdf(m, spec).save(path)
    else:
        logger.debug('Grid cache hit for %(name)s: %(path)s',
                {'name': m.name, 'path': path})
    return SdfGrid.load(path)



class SceneObject:
    """
    One object to place.

    Class Attributes:
      N/A

    Instance Attributes:
      source (Mesh): The mesh as loaded, world units.
      mesh (Mesh): The normalized mesh, centered on its centroid.
      centroid (np.ndarray): (3,) world centroid of `source`.
      volume (float): World volume of `source`.
      grid (SdfGrid): Baked SDF of `mesh` in its own frame.
    """
    def __init__(self, source, scale, grid_getter):
        """
        Args:
          source (Mesh): The mesh as loaded.
          scale (float): Normalization scale.
          grid_getter (callable): Maps the normalized mesh to its grid; called
            on first access of `grid`.
        """
        self.source = source
        self.centroid = source.centroid()
        self.volume = mesh_mod.mesh_volume(source)
        self.mesh = source.transformed(scale, -scale * self.centroid)
        self._grid_getter = grid_getter
        self._grid = None



    @property
    def grid(self):
        """
        Returns:
          (SdfGrid): Baked SDF of `mesh`, baked on first access.
        """
        if self._grid is None:
            self._grid = self._grid_getter(self.mesh)
        return self._grid



class Scene:      # pylint: disable=too-many-instance-attributes
    """
    Everything a loss evaluation needs, in normalized units.

    Class Attributes:
      N/A

    Instance Attributes:
      world_container (Container<>): The container as given.
      container (Container<>): The normalized container.
      scale (float): Normalization scale s.
      center (np.ndarray): (3,) world center of the container box.
      objects ([SceneObject]): The objects to place.
      world_views ([ViewConfig]): The views as given.
      views ([ViewConfig]): The normalized views.
      targets ([Image]): One target per view.
      render_params (RenderParams): Ray-marching settings.
      rays ([np.ndarray]): Ray sample points of each view.
      query_set (QuerySet): Intersection query points.
      lattice_spacing (float): Normalized container lattice spacing.
    """
    def __init__(self, container, objects, views, targets, scale, center,
            shared):
        """
        Use `build()`; this wires prepared parts together.
        """
        self.world_container = container
        self.objects = objects
        self.world_views = views
        self.targets = targets
        self.scale = scale
        self.center = center
        self.container = shared['container']
        self.views = shared['views']
        self.render_params = shared['render_params']
        self.rays = shared['rays']
        self.query_set = shared['query_set']
        self.lattice_spacing = shared['lattice_spacing']
        self._shared = shared



    @classmethod
    def build(cls, container, meshes, views, targets, config):
        """
        Normalizes the inputs and prepares grids, rays and query points.
        Object grids are baked lazily; meshes given as the same object share
        one grid.

        Args:
          container (Container<>): The container, world units.
          meshes ([Mesh]): The objects, world units.
          views ([ViewConfig]): The cameras, world units.
          targets ([Image]): One target per view.
          config (PackConfig): Run settings.

        Returns:
          (Scene): The scene.
        """
        aabb = container.aabb()
        center = aabb.center
        scale = 1.0 / float(aabb.extent.max())
        norm_container = container.transformed(scale, -scale * center)
        lattice = norm_container.lattice()
        if isinstance(norm_container, mesh_container.MeshContainer):
            norm_container.attach_grid(bake_cached(norm_container.mesh,
                    lattice, config.grid_cache_dir))

        render_params = RenderParams.for_lattice(lattice.spacing,
                norm_container.aabb(), config.tau)
        norm_views = [v.normalized(scale, center) for v in views]
        rays = [v.ray_points(render_params.ray_extent,
                render_params.samples_per_ray) for v in norm_views]
        logger.debug('Scene lattice %(dims)s, spacing %(h).6g, tau %(tau).6g',
                {'dims': lattice.dims, 'h': lattice.spacing,
                    'tau': render_params.tau})

        shared = {
            'container': norm_container,
            'views': norm_views,
            'render_params': render_params,
            'rays': rays,
            'query_set': QuerySet.from_container(norm_container, lattice),
            'lattice_spacing': lattice.spacing,
            'grids': {},
            'config': config,
        }
        scene = cls(container, [], views, targets, scale, center, shared)
        scene.objects = [scene.make_object(m) for m in meshes]
        return scene



    def make_object(self, source):
        """
        Wraps a world mesh as a scene object whose grid is shared with every
        other object made from the same mesh instance.

        Args:
          source (Mesh): The mesh as loaded.

        Returns:
          (SceneObject): The object.
        """
        grids = self._shared['grids']
        config = self._shared['config']
        key = id(source)

        def grid_getter(normalized):
            if key not in grids:
                spec = GridSpec.for_object(normalized.aabb(),
                        config.object_grid_dims)
                grids[key] = (source, bake_cached(normalized, spec,
                        config.grid_cache_dir))
            return grids[key][1]

        return SceneObject(source, self.scale, grid_getter)



    def subset(self, n_objects, extra=None):
        """
        Gets a scene sharing everything but holding only the first
        `n_objects` objects (plus any extra ones).

        Args:
          n_objects (int): Objects kept.
          extra ([SceneObject] or None): Objects appended.

        Returns:
          (Scene): The scene.
        """
        objects = self.objects[:n_objects] + list(extra or [])
        return Scene(self.world_container, objects, self.world_views,
                self.targets, self.scale, self.center, self._shared)



    @property
    def n_objects(self):
        """
        Returns:
          (int): Object count.
        """
        return len(self.objects)



    @property
    def meshes(self):
        """
        Returns:
          ([Mesh]): Normalized object meshes, in their own frames.
        """
        return [o.mesh for o in self.objects]



    def poses(self, params):
        """
        Args:
          params (np.ndarray): (6 * n_objects,) normalized pose parameters.

        Returns:
          ([RigidPose]): One pose per object.
        """
        n_params = pose_mod.PARAMS_PER_POSE
        return [pose_mod.RigidPose.from_params(params[n_params * i:
                n_params * (i + 1)]) for i in range(self.n_objects)]



    def fields(self, params):
        """
        Args:
          params (np.ndarray): (6 * n_objects,) normalized pose parameters.

        Returns:
          ([WarpedField]): The posed object SDFs.
        """
        return [WarpedField(o.grid, p) \
                for o, p in zip(self.objects, self.poses(params))]



    def world_poses(self, params):
        """
        Converts normalized parameters to world poses of the loaded meshes.

        Args:
          params (np.ndarray): (6 * n_objects,) normalized pose parameters.

        Returns:
          ([RigidPose]): World poses; angles are unchanged.
        """
        world = []
        for obj, pose in zip(self.objects, self.poses(params)):
            rot = pose.rotation_matrix()
            t_world = pose.translation / self.scale + self.center \
                    - rot @ obj.centroid
            world.append(pose_mod.RigidPose(pose.angles, t_world))
        return world



    def params_from_world(self, world_poses):
        """
        Converts world poses of the loaded meshes to normalized parameters.

        Args:
          world_poses ([RigidPose]): One per object.

        Returns:
          (np.ndarray): (6 * n_objects,) normalized parameters.
        """
        params = []
        for obj, pose in zip(self.objects, world_poses):
            rot = pose.rotation_matrix()
            t_norm = self.scale * (pose.translation - self.center \
                    + rot @ obj.centroid)
            params.append(np.concatenate([pose.angles, t_norm]))
        if not params:
            return np.zeros(0)
        return np.concatenate(params)



    def as_is_params(self):
        """
        Returns:
          (np.ndarray): Parameters placing every object as loaded.
        """
        return self.params_from_world([pose_mod.RigidPose() \
                for _ in self.objects])



    def placed_meshes(self, params, world=True):
        """
        Gets the object meshes moved to their poses.

        Args:
          params (np.ndarray): (6 * n_objects,) normalized pose parameters.
          world (bool): World units if True, else normalized.

        Returns:
          ([Mesh]): The placed meshes.
        """
        if world:
            return [o.source.transformed(1.0, p.translation,
                    rotation=p.rotation_matrix()) \
                    for o, p in zip(self.objects, self.world_poses(params))]
        return [o.mesh.transformed(1.0, p.translation,
                rotation=p.rotation_matrix()) \
                for o, p in zip(self.objects, self.poses(params))]
