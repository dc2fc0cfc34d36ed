#!/usr/bin/env python3
"""
Optimization settings of one packing or assembly run.  All lengths are in
normalized container units (container scaled to unit max extent), except
`perturb_offset`, which is in world units.

Module Attributes:
  N/A

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
from enum import Enum

from shadow_packer.geometry import grid_spec
from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.loss.losses import IntersectionVariant



class InitMode(Enum):
    """
    How object poses are initialized before optimization.

    RANDOM places each object at a random interior lattice node with a random
    orientation.  PERTURB starts from the given placement, randomly rotated
    and shifted a bounded amount.  AS_IS starts from the given placement.
    """
    RANDOM = 'random'
    PERTURB = 'perturb'
    AS_IS = 'as-is'



class PackConfig:      # pylint: disable=too-many-instance-attributes
    """
    The settings of one run.

    Class Attributes:
      N/A

    Instance Attributes:
      seed (int): Random seed of every random choice.
      iterations (int): Optimization iterations per round.
      lr_start (float): Learning rate at the first iteration.
      lr_end (float): Learning rate at the last iteration.
      lam (float): Weight of the extrusion term.
      epsilon (float): Extrusion buffer width.
      tau (float or None): Render softness; None for half the container
        lattice spacing.
      loss_variant (IntersectionVariant): Intersection term variant.
      grid_points (int): Target node count of the container lattice.
      object_grid_dims (int): Nodes per axis of each object grid.
      image_size (int): Side of auto-generated view images, pixels.
      view_count (int or None): Auto-generated view count; None for the
        default (3 for boxes, 5 otherwise).
      early_stop (bool): Whether to stop once the loss stalls.
      early_stop_window (int): Iterations compared for early stopping.
      early_stop_tol (float): Minimum improvement over the window.
      audit_multiplier (int): Audit lattice refinement.
      spare_capacity_threshold (float): Uncovered target fraction above which
        incremental packing adds objects.
      batch_size (int or None): Objects added per incremental round; None for
        max(1, N_init // 10).
      use_silhouette (bool): Whether the silhouette term is active.
      use_intersection (bool): Whether the intersection term is active.
      use_extrusion (bool): Whether the extrusion term is active.
      init_mode (InitMode): Initialization strategy.
      perturb_angle_deg (float): Max rotation of the perturb init, degrees.
      perturb_offset (float): Max shift of the perturb init, world units.
      grid_cache_dir (str or None): Directory caching baked grids.
    """
    def __init__(self, **kwargs):
        """
        Creates the settings; any instance attribute may be given by keyword,
        the rest take their defaults.

        Raises:
          (ParameterError): A value is out of range.
          (TypeError): An unknown keyword is given.
        """
        self.seed = 0
        self.iterations = 1000
        self.lr_start = 1e-2
        self.lr_end = 1e-4
        self.lam = 0.001
        self.epsilon = 0.01
        self.tau = None
        self.loss_variant = IntersectionVariant.OVERLAP_ONLY
        self.grid_points = grid_spec.DEFAULT_CONTAINER_POINTS
        self.object_grid_dims = grid_spec.DEFAULT_OBJECT_DIMS
        self.image_size = 64
        self.view_count = None
        self.early_stop = True
        self.early_stop_window = 50
        self.early_stop_tol = 1e-7
        self.audit_multiplier = 2
        self.spare_capacity_threshold = 0.03
        self.batch_size = None
        self.use_silhouette = True
        self.use_intersection = True
        self.use_extrusion = True
        self.init_mode = InitMode.RANDOM
        self.perturb_angle_deg = 30.0
        self.perturb_offset = 0.2
        self.grid_cache_dir = None

        for key, val in kwargs.items():
            if not hasattr(self, key):
                raise TypeError(f'Unknown pack setting \'{key}\'.')
            setattr(self, key, val)
        self.validate()



    def validate(self):
        """
        Raises:
          (ParameterError): A value is out of range.
        """
        if self.iterations < 1:
            raise ParameterError(f'iterations must be >= 1; got'
                    + f' {self.iterations}.')
        if not self.lam > 0:
            raise ParameterError(f'lambda must be positive; got {self.lam}.')
        if not self.epsilon > 0:
            raise ParameterError(f'epsilon must be positive; got'
                    + f' {self.epsilon}.')
        if self.tau is not None and not self.tau > 0:
            raise ParameterError(f'tau must be positive; got {self.tau}.')
        if self.audit_multiplier < 1:
            raise ParameterError('audit multiplier must be >= 1; got'
                    + f' {self.audit_multiplier}.')
        if self.batch_size is not None and self.batch_size < 1:
            raise ParameterError(f'batch size must be >= 1; got'
                    + f' {self.batch_size}.')
        if self.view_count is not None and not 1 <= self.view_count <= 5:
            raise ParameterError(f'view count must be 1..5; got'
                    + f' {self.view_count}.')
        if self.image_size < 1 or self.object_grid_dims < 8 \
                or self.grid_points < 8:
            raise ParameterError('image size, object grid dims and grid'
                    + ' points are too small.')
