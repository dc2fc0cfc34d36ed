#!/usr/bin/env python3
"""
Orthographic camera configurations.  A view maps world points into camera
coordinates by x_c = R x + t; the image plane is camera (x, y) with camera +y
pointing up in the image, and rays travel along camera z.  The light is
co-located with the camera, so a silhouette is the shadow seen from it.

Rotation rows are (image right, image up, viewing direction) in world
coordinates.

Module Attributes:
  PRESET_ROTATIONS ({str: np.ndarray}): Named world-to-camera rotations.
  DEFAULT_VIEW_ORDER ([str]): Presets used, in order, when K views are
    generated automatically (first 3 are the axis views).
  FOOTPRINT_MARGIN (float): Scale applied to the container's projected extent
    when a footprint is chosen automatically.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import logging

import numpy as np

from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.pose import pose as pose_mod



PRESET_ROTATIONS = {
    'front': np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]]),
    'back': np.array([[-1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]]),
    'right': np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]),
    'left': np.array([[0.0, -1.0, 0.0], [0.0, 0.0, 1.0], [-1.0, 0.0, 0.0]]),
    'top': np.array([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]),
}
PRESET_ROTATIONS['side'] = PRESET_ROTATIONS['right']

DEFAULT_VIEW_ORDER = ['front', 'right', 'top', 'back', 'left']
FOOTPRINT_MARGIN = 1.1

logger = logging.getLogger(__name__)



class ViewConfig:
    """
    One orthographic camera and the image it produces.

    Class Attributes:
      N/A

    Instance Attributes:
      name (str): View label (used for output file names).
      rotation (np.ndarray): (3, 3) world-to-camera rotation, orthonormal.
      translation (np.ndarray): (3,) camera translation.
      width (int): Image width M, pixels.
      height (int): Image height N, pixels.
      footprint ((float, float)): World width/height covered by the image.
    """
    def __init__(self, name, rotation, translation, width, height, footprint):
        """
        Creates the view.

        Args:
          name (str): View label.
          rotation (array-like): (3, 3) world-to-camera rotation.
          translation ([float]): (3,) camera translation.
          width (int): Image width, pixels.
          height (int): Image height, pixels.
          footprint ([float]): World width and height covered by the image.

        Raises:
          (ParameterError): The rotation is not a proper rotation, or a size is
            not positive.
        """
        self.name = name
        self.rotation = np.array(rotation, dtype=np.float64).reshape(3, 3)
        self.translation = np.array(translation, dtype=np.float64).reshape(3)
        self.width = int(width)
        self.height = int(height)
        self.footprint = (float(footprint[0]), float(footprint[1]))

        if not np.allclose(self.rotation @ self.rotation.T, np.eye(3),
                atol=1e-9) or np.linalg.det(self.rotation) <= 0:
            raise ParameterError(f'View \'{name}\' rotation is not a proper'
                    + ' rotation matrix.')
        if self.width < 1 or self.height < 1 or min(self.footprint) <= 0:
            raise ParameterError(f'View \'{name}\' needs positive image size'
                    + ' and footprint.')



    @classmethod
    def from_preset(cls, preset, width, height, footprint,
            translation=(0.0, 0.0, 0.0), name=None):
        """
        Builds a view from a named preset rotation.

        Args:
          preset (str): One of `PRESET_ROTATIONS`.
          width (int): Image width, pixels.
          height (int): Image height, pixels.
          footprint ([float]): World width and height covered by the image.
          translation ([float]): Camera translation.
          name (str or None): View label; defaults to the preset name.

        Returns:
          (ViewConfig): The view.

        Raises:
          (ParameterError): Unknown preset.
        """
        try:
            rotation = PRESET_ROTATIONS[preset.strip().lower()]
        except KeyError as ex:
            raise ParameterError(f'Unknown view preset \'{preset}\'; expected'
                    + f' one of {sorted(PRESET_ROTATIONS)}.') from ex
        return cls(name or preset, rotation, translation, width, height,
                footprint)



    @classmethod
    def from_angles(cls, angles, width, height, footprint,
            translation=(0.0, 0.0, 0.0), name='view'):
        """
        Builds a view whose world-to-camera rotation is Rz . Ry . Rx of the
        given angles (for arbitrary, non-orthogonal viewpoints).

        Args:
          angles ([float]): Rotation angles about x, y, z, radians.
          width (int): Image width, pixels.
          height (int): Image height, pixels.
          footprint ([float]): World width and height covered by the image.
          translation ([float]): Camera translation.
          name (str): View label.

        Returns:
          (ViewConfig): The view.
        """
        rotation = pose_mod.RigidPose(angles).rotation_matrix()
        return cls(name, rotation, translation, width, height, footprint)



    @property
    def up_axis(self):
        """
        Returns:
          (np.ndarray): (3,) world direction of image up.
        """
        return self.rotation[1]



    def is_side_view(self):
        """
        Returns:
          (bool): Whether image up is the world +z axis (a view from the side,
            whose bottom image rows show the container floor).
        """
        return bool(self.up_axis[2] > 1.0 - 1e-9)



    def project(self, points):
        """
        Maps world points to image-plane coordinates.

        Args:
          points (np.ndarray): (n, 3) world points.

        Returns:
          (np.ndarray): (n, 2) camera (x, y).
        """
        cam = np.asarray(points, dtype=np.float64) @ self.rotation.T \
                + self.translation
        return cam[:, :2]



    def pixel_centers(self):
        """
        Gets the image-plane coordinates of every pixel center, row-major with
        row 0 at the top.

        Returns:
          (np.ndarray, np.ndarray): (width,) camera x of each column and
            (height,) camera y of each row.
        """
        fw, fh = self.footprint
        xs = (np.arange(self.width) + 0.5) / self.width * fw - 0.5 * fw
        ys = 0.5 * fh - (np.arange(self.height) + 0.5) / self.height * fh
        return xs, ys



    def ray_points(self, ray_extent, samples_per_ray):
        """
        Gets the world positions of the samples along every pixel ray.
        Samples are centered in `samples_per_ray` equal steps over camera
        depths -ray_extent/2 to +ray_extent/2, so they move with the camera.

        Args:
          ray_extent (float): Depth range covered, world units.
          samples_per_ray (int): Samples per ray.

        Returns:
          (np.ndarray): (height * width * samples_per_ray, 3) world points;
            point `i` belongs to pixel `i // samples_per_ray` (row-major).
        """
        xs, ys = self.pixel_centers()
        zs = (np.arange(samples_per_ray) + 0.5) / samples_per_ray \
                * ray_extent - 0.5 * ray_extent
        yy, xx, zz = np.meshgrid(ys, xs, zs, indexing='ij')
        cam = np.stack([xx.ravel(), yy.ravel(), zz.ravel()], axis=1)
        return (cam - self.translation) @ self.rotation



    def normalized(self, scale, center):
        """
        Gets the same camera expressed in normalized scene coordinates
        x_n = scale * (x - center).  The produced image is unchanged: the
        camera frame and footprint are scaled along with the scene.

        Args:
          scale (float): Positive normalization scale.
          center ([float]): World point mapped to the origin.

        Returns:
          (ViewConfig): The normalized view.
        """
        center = np.asarray(center, dtype=np.float64)
        translation = scale * (self.rotation @ center + self.translation)
        return ViewConfig(self.name, self.rotation, translation, self.width,
                self.height, (scale * self.footprint[0],
                    scale * self.footprint[1]))



    def covers(self, points):
        """
        Checks that the projection of points lies inside the footprint.

        Args:
          points (np.ndarray): (n, 3) world points.

        Returns:
          (bool): True if every point projects inside the image.
        """
        proj = self.project(points)
        fw, fh = self.footprint
        return bool(np.all(np.abs(proj[:, 0]) <= 0.5 * fw + 1e-12) \
                and np.all(np.abs(proj[:, 1]) <= 0.5 * fh + 1e-12))



    def to_dict(self):
        """
        Returns:
          (dict): JSON-friendly form.
        """
        return {
            'name': self.name,
            'rotation': self.rotation.tolist(),
            'translation': self.translation.tolist(),
            'width': self.width,
            'height': self.height,
            'footprint': list(self.footprint),
        }



def auto_footprint(rotation, aabb):
    """
    Chooses a square footprint and camera translation framing a box: the
    camera is centered on the box center and the footprint is the larger
    projected side times `FOOTPRINT_MARGIN`.

    Args:
      rotation (np.ndarray): (3, 3) world-to-camera rotation.
      aabb (Aabb): The box to frame.

    Returns:
      ((float, float), np.ndarray): Footprint and (3,) camera translation.
    """
    translation = -(rotation @ aabb.center)
    proj = aabb.corners() @ rotation.T + translation
    side = FOOTPRINT_MARGIN * 2.0 * float(np.abs(proj[:, :2]).max())
    return (side, side), translation



def make_default_views(aabb, n_views, size):
    """
    Builds the first `n_views` preset views of `DEFAULT_VIEW_ORDER`, each
    framing a box.

    Args:
      aabb (Aabb): The box to frame (normally the container's).
      n_views (int): 1 to 5 views.
      size (int): Image width and height, pixels.

    Returns:
      ([ViewConfig]): The views.

    Raises:
      (ParameterError): n_views out of range.
    """
    if not 1 <= n_views <= len(DEFAULT_VIEW_ORDER):
        raise ParameterError(f'View count must be 1..{len(DEFAULT_VIEW_ORDER)};'
                + f' got {n_views}.')
    views = []
    for name in DEFAULT_VIEW_ORDER[:n_views]:
        footprint, translation = auto_footprint(PRESET_ROTATIONS[name], aabb)
        views.append(ViewConfig(name, PRESET_ROTATIONS[name], translation,
                size, size, footprint))
    return views



def warn_if_not_covering(view, aabb):
    """
    Logs a warning when a view's footprint does not cover a box.

    Args:
      view (ViewConfig): The view.
      aabb (Aabb): The box (normally the container's).

    Returns:
      (bool): True if covered.
    """
    covered = view.covers(aabb.corners())
    if not covered:
        logger.warning(f'View \'{view.name}\' footprint {view.footprint} does'
                + ' not cover the container\'s projection.')
    return covered
