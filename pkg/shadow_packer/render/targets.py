#!/usr/bin/env python3
"""
Target silhouettes: the container's own hard silhouettes, strip targets that
keep only the bottom of the side-view silhouettes (which pulls objects down
to the container floor), and user images.

A target is described by a short string:
- `auto-container`: the container's silhouette in that view.
- `strip:<f>`: the container's silhouette clipped to its bottom fraction f
  (side views only; other views keep the full silhouette).
- anything else: a PNG path.

Module Attributes:
  AUTO_CONTAINER_TARGET (str): Target string for the container silhouette.
  STRIP_TARGET_PREFIX (str): Prefix of strip target strings.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import logging

import numpy as np

from shadow_packer.general import dirs
from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.render import images
from shadow_packer.render import silhouette



AUTO_CONTAINER_TARGET = 'auto-container'
STRIP_TARGET_PREFIX = 'strip:'

logger = logging.getLogger(__name__)



def container_targets(container_mesh, views):
    """
    Args:
      container_mesh (Mesh): The container boundary.
      views ([ViewConfig]): The cameras.

    Returns:
      ([Image]): The container's hard silhouette in each view.
    """
    return [silhouette.project_meshes([container_mesh], v) for v in views]



def make_strip_targets(container, views, height_fraction):
    """
    Builds strip targets.  For each side view (image up = world +z) the
    container silhouette is clipped to its bottom `height_fraction` of
    projected height, rounded to whole rows; the other views get the full
    silhouette.

    Args:
      container (Mesh): The container boundary (normally a box).
      views ([ViewConfig]): The cameras.
      height_fraction (float): Fraction in (0, 1].

    Returns:
      ([Image]): One target per view.

    Raises:
      (ParameterError): height_fraction is outside (0, 1].
    """
    if not 0.0 < height_fraction <= 1.0:
        raise ParameterError('Strip height fraction must be in (0, 1]; got'
                + f' {height_fraction}.')

    targets = []
    for view in views:
        full = silhouette.project_meshes([container], view)
        if not view.is_side_view():
            targets.append(full)
            continue
        rows = np.nonzero(full.pixels.any(axis=1))[0]
        if len(rows) == 0:
            logger.warning(f'Container is not visible in view \'{view.name}\';'
                    + ' strip target left empty.')
            targets.append(full)
            continue
        top, bottom = rows.min(), rows.max()
        n_keep = int(round(height_fraction * (bottom - top + 1)))
        pixels = full.pixels.copy()
        pixels[:bottom + 1 - n_keep, :] = 0.0
        targets.append(images.Image(pixels))
    return targets



def parse_strip_fraction(target):
    """
    Args:
      target (str): A target string.

    Returns:
      (float or None): The strip fraction, or None if not a strip target.

    Raises:
      (ParameterError): The fraction is not a number.
    """
    target = target.strip().lower()
    if not target.startswith(STRIP_TARGET_PREFIX):
        return None
    raw = target[len(STRIP_TARGET_PREFIX):]
    try:
        return float(raw)
    except ValueError as ex:
        raise ParameterError(f'Invalid strip fraction {raw!r}.') from ex



def resolve_target(target, container_mesh, view, base_dir):
    """
    Builds the target image of one view from its target string.

    Args:
      target (str): `auto-container`, `strip:<f>`, or a PNG path.
      container_mesh (Mesh): The container boundary, in the same frame as the
        view.
      view (ViewConfig): The camera.
      base_dir (str): Directory that relative PNG paths are relative to.

    Returns:
      (Image): The target.

    Raises:
      (ParameterError): Invalid strip fraction.
      (ImageFileError): PNG missing or unreadable.
      (ImageDimensionError): PNG size differs from the view's.
    """
    if target.strip().lower() == AUTO_CONTAINER_TARGET:
        return container_targets(container_mesh, [view])[0]
    fraction = parse_strip_fraction(target)
    if fraction is not None:
        return make_strip_targets(container_mesh, [view], fraction)[0]
    return images.load_target(dirs.resolve_path(target, base_dir),
            width=view.width, height=view.height)
