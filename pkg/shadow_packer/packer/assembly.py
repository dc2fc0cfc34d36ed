#!/usr/bin/env python3
"""
Part assembly: the whole object is the container, and the targets are its own
silhouettes, so packing the parts into it reassembles them.

Module Attributes:
  VOLUME_SLACK (float): Allowed excess of the parts' total volume over the
    whole's, as a fraction.
  DEFAULT_ASSEMBLY_VIEWS (int): Views generated when none are given.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import logging

from shadow_packer.container.mesh_container import MeshContainer
from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.geometry import mesh as mesh_mod
from shadow_packer.packer import packer
from shadow_packer.packer.scene import Scene
from shadow_packer.render import targets as targets_mod
from shadow_packer.render import views as views_mod



VOLUME_SLACK = 0.05
DEFAULT_ASSEMBLY_VIEWS = 5

logger = logging.getLogger(__name__)



def check_part_volumes(parts, whole):
    """
    Raises:
      (PreconditionError): The parts' total volume exceeds the whole's by more
        than `VOLUME_SLACK`.
    """
    parts_volume = sum(mesh_mod.mesh_volume(p) for p in parts)
    whole_volume = mesh_mod.mesh_volume(whole)
    if parts_volume > whole_volume * (1.0 + VOLUME_SLACK):
        raise PreconditionError(f'Parts total volume {parts_volume:.6g}'
                + f' exceeds whole volume {whole_volume:.6g} by more than'
                + f' {VOLUME_SLACK:.0%}.')



def build_assembly_scene(parts, whole, views, config):
    """
    Builds the scene of an assembly: the whole is the container and its own
    silhouettes are the targets.

    Args:
      parts ([Mesh]): The parts, world units.
      whole (Mesh): The whole object.
      views ([ViewConfig] or None): The cameras; if None,
        `config.view_count` (default 5) preset views framing the whole.
      config (PackConfig): Run settings.

    Returns:
      (Scene): The scene.

    Raises:
      (PreconditionError): The parts are too large for the whole.
    """
    check_part_volumes(parts, whole)
    container = MeshContainer(whole, grid_points=config.grid_points)
    if views is None:
        views = views_mod.make_default_views(whole.aabb(),
                config.view_count or DEFAULT_ASSEMBLY_VIEWS,
                config.image_size)
    targets = targets_mod.container_targets(whole, views)
    return Scene.build(container, parts, views, targets, config)



def assemble(parts, whole, views, config):
    """
    Reassembles parts into a whole by silhouette guidance.

    Args:
      parts ([Mesh]): The parts, world units.  With the `as-is` or `perturb`
        init modes their loaded placement is the starting point.
      whole (Mesh): The whole object, used as the container.
      views ([ViewConfig] or None): The cameras; see `build_assembly_scene()`.
      config (PackConfig): Run settings.

    Returns:
      (PackResult, Scene): The result, with per-view IoU, and its scene.

    Raises:
      (PreconditionError): The parts are too large for the whole.
    """
    scene = build_assembly_scene(parts, whole, views, config)
    logger.info('Assembling %(n)d parts under %(k)d views',
            {'n': len(parts), 'k': len(scene.views)})
    result = packer.pack(scene, config)
    logger.info('Mean silhouette IoU %(iou).4f', {'iou': result.mean_iou})
    return result, scene
