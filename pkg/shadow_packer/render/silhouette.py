#!/usr/bin/env python3
"""
Soft silhouette rendering by orthographic ray marching through the warped
object SDFs, and hard silhouettes by rasterizing projected triangles.

Along each pixel ray the samples p_j give per-object occupancies
alpha_i(p_j) = sigmoid(-S_i(p_j) / tau), and the pixel value is
1 - prod_{i,j} (1 - alpha_i(p_j)).  The product is accumulated as a sum of
log-sigmoids.  Samples farther than `CULL_TAUS` softness lengths outside an
object's grid box are skipped; their occupancy is below sigmoid(-CULL_TAUS).

Module Attributes:
  CULL_TAUS (float): Culling margin, in multiples of tau.
  RAY_EXTENT_MARGIN (float): Scale applied to the container diagonal for the
    default ray extent.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import logging
import math

import numpy as np
from scipy.special import expit, log_expit

from shadow_packer.general import utils
from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.pose import pose as pose_mod
from shadow_packer.render.images import Image



CULL_TAUS = 30.0
RAY_EXTENT_MARGIN = 1.05

logger = logging.getLogger(__name__)



class RenderParams:
    """
    Ray-marching settings shared by all views.

    Class Attributes:
      N/A

    Instance Attributes:
      tau (float): Softness length, world units.
      samples_per_ray (int): Samples along each ray.
      ray_extent (float): Depth range covered by each ray, world units.
    """
    def __init__(self, tau, samples_per_ray, ray_extent):
        """
        Creates the settings.

        Args:
          tau (float): Softness length, > 0.
          samples_per_ray (int): Samples along each ray, >= 1.
          ray_extent (float): Depth range, > 0.

        Raises:
          (ParameterError): A value is out of range.
        """
        self.tau = float(tau)
        self.samples_per_ray = int(samples_per_ray)
        self.ray_extent = float(ray_extent)
        if not self.tau > 0:
            raise ParameterError(f'tau must be positive; got {tau}.')
        if self.samples_per_ray < 1 or not self.ray_extent > 0:
            raise ParameterError('Rays need >= 1 sample and a positive'
                    + f' extent; got {samples_per_ray} samples over'
                    + f' {ray_extent}.')



    @classmethod
    def for_lattice(cls, spacing, aabb, tau=None):
        """
        Gets the default settings for a container lattice: tau is half the
        spacing, the ray spans the container diagonal (with margin), and the
        sample step equals the spacing.

        Args:
          spacing (float): Container lattice spacing.
          aabb (Aabb): Container box.
          tau (float or None): Softness override.

        Returns:
          (RenderParams): The settings.
        """
        ray_extent = RAY_EXTENT_MARGIN * float(np.linalg.norm(aabb.extent))
        samples = max(1, int(math.ceil(ray_extent / spacing)))
        if tau is None:
            tau = 0.5 * spacing
        return cls(tau, samples, ray_extent)



class RenderTape:
    """
    What a soft render kept to back-propagate a per-pixel adjoint into the
    pose parameters of each rendered object.

    Class Attributes:
      N/A

    Instance Attributes:
      n_fields (int): Number of rendered objects.
      _log_transmit (np.ndarray): (n_pixels,) log prod (1 - alpha).
      _entries ([(int, np.ndarray, np.ndarray, np.ndarray)]): Per object: its
        index, the pixel index of each kept sample, dlog(1 - alpha)/dS
        (= alpha / tau) and the (k, 6) pose derivative of S.
    """
    def __init__(self, n_fields, log_transmit, entries):
        """
        Args:
          See Instance Attributes.
        """
        self.n_fields = n_fields
        self._log_transmit = log_transmit
        self._entries = entries



    def backward(self, adjoint):
        """
        Gets the gradient of sum(adjoint * image) with respect to the pose
        parameters of every object.

        Args:
          adjoint (np.ndarray): (height, width) dLoss/dPixel.

        Returns:
          (np.ndarray): (6 * n_fields,) gradient, object-major.
        """
        grad = np.zeros(pose_mod.PARAMS_PER_POSE * self.n_fields)
        # dP/dS = -exp(log_transmit) * alpha / tau
        weight = -np.asarray(adjoint, dtype=np.float64).reshape(-1) \
                * np.exp(self._log_transmit)
        for i_obj, pix, coef, d_pose in self._entries:
            start = pose_mod.PARAMS_PER_POSE * i_obj
            grad[start:start + pose_mod.PARAMS_PER_POSE] = \
                    (weight[pix] * coef) @ d_pose
        return grad



def _cull_radius(field, tau):
    """
    Gets the radius, about the object's translation, beyond which a sample
    cannot be occupied by more than sigmoid(-CULL_TAUS).
    """
    corners = field.grid.spec.aabb().corners()
    return float(np.sqrt((corners ** 2).sum(axis=1).max())) + CULL_TAUS * tau



def render_silhouette(fields, view, params, rays=None, with_grad=True):
    """
    Renders the soft silhouette of a set of objects under one view.

    Args:
      fields ([WarpedField]): The posed objects; may be empty.
      view (ViewConfig): The camera.
      params (RenderParams): Ray-marching settings.
      rays (np.ndarray or None): Precomputed `view.ray_points(...)` for these
        params; computed here if None.
      with_grad (bool): Whether to record the tape.

    Returns:
      (Image, RenderTape or None): The image and its gradient tape.
    """
    n_pixels = view.width * view.height
    if rays is None:
        rays = view.ray_points(params.ray_extent, params.samples_per_ray)
    log_transmit = np.zeros(n_pixels)
    entries = []

    for i_obj, field in enumerate(fields):
        offsets = rays - field.pose.translation
        radius = _cull_radius(field, params.tau)
        kept = np.nonzero((offsets ** 2).sum(axis=1) <= radius * radius)[0]
        if len(kept) == 0:
            continue
        values, d_pose = field.sample(rays[kept], with_pose_grad=with_grad)
        scaled = values / params.tau
        pix = kept // params.samples_per_ray
        log_transmit += np.bincount(pix, weights=log_expit(scaled),
                minlength=n_pixels)
        if with_grad:
            entries.append((i_obj, pix, expit(-scaled) / params.tau, d_pose))

    pixels = -np.expm1(log_transmit)
    image = Image(np.clip(pixels, 0.0, 1.0).reshape(view.height, view.width))
    tape = RenderTape(len(fields), log_transmit, entries) if with_grad \
            else None
    return image, tape



def render_views(fields, views, params, rays_per_view, with_grad=True):
    """
    Renders every view, in parallel threads when configured.  Results are in
    view order.

    Args:
      fields ([WarpedField]): The posed objects.
      views ([ViewConfig]): The cameras.
      params (RenderParams): Ray-marching settings.
      rays_per_view ([np.ndarray]): Precomputed rays of each view.
      with_grad (bool): Whether to record tapes.

    Returns:
      ([Image], [RenderTape or None]): Images and tapes, in view order.
    """
    results = utils.ordered_map(
            lambda k: render_silhouette(fields, views[k], params,
                rays_per_view[k], with_grad),
            list(range(len(views))))
    return [r[0] for r in results], [r[1] for r in results]



def project_meshes(meshes, view):
    """
    Gets the hard silhouette of meshes: a pixel is foreground when its center
    lies in the orthographic projection of any triangle (edges inclusive).

    Args:
      meshes ([Mesh]): The meshes, already in their final placement.
      view (ViewConfig): The camera.

    Returns:
      (Image): Binary image.
    """
    xs, ys = view.pixel_centers()
    fw, fh = view.footprint
    mask = np.zeros((view.height, view.width), dtype=bool)

    for m in meshes:
        verts_2d = view.project(m.vertices)
        for tri in verts_2d[m.faces]:
            _rasterize_triangle(tri, xs, ys, fw, fh, mask)

    return Image(mask.astype(np.float64))



def _rasterize_triangle(tri, xs, ys, fw, fh, mask):
    """
    Marks the pixels whose centers lie inside one projected triangle.

    Args:
      tri (np.ndarray): (3, 2) projected corners.
      xs (np.ndarray): Pixel-center x of each column.
      ys (np.ndarray): Pixel-center y of each row.
      fw, fh (float): Footprint.
      mask (np.ndarray): (height, width) bool image, updated in place.
    """
    a, b, c = tri
    area2 = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if abs(area2) < 1e-18:
        return
    width = len(xs)
    height = len(ys)
    lo = tri.min(axis=0)
    hi = tri.max(axis=0)
    col_lo = max(0, int(math.ceil((lo[0] + 0.5 * fw) / fw * width - 0.5)))
    col_hi = min(width - 1, int(math.floor((hi[0] + 0.5 * fw) / fw * width
            - 0.5)))
    row_lo = max(0, int(math.ceil((0.5 * fh - hi[1]) / fh * height - 0.5)))
    row_hi = min(height - 1, int(math.floor((0.5 * fh - lo[1]) / fh * height
            - 0.5)))
    if col_lo > col_hi or row_lo > row_hi:
        return

    px, py = np.meshgrid(xs[col_lo:col_hi + 1], ys[row_lo:row_hi + 1])
    sign = 1.0 if area2 > 0 else -1.0
    inside = np.ones(px.shape, dtype=bool)
    for start, end in ((a, b), (b, c), (c, a)):
        edge = (end[0] - start[0]) * (py - start[1]) \
                - (end[1] - start[1]) * (px - start[0])
        inside &= sign * edge >= 0.0
    mask[row_lo:row_hi + 1, col_lo:col_hi + 1] |= inside
