#!/usr/bin/env python3
"""
The packing loss terms and their combination
total = sil + intersect + lambda * extrude.  Every term returns its value and
its gradient with respect to the flat pose-parameter vector (6 scalars per
object, object-major: ax, ay, az, tx, ty, tz).

Module Attributes:
  TERM_NAMES ([str]): Loss term names, in report order.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
from enum import Enum
import logging

import numpy as np

from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.pose import pose as pose_mod
from shadow_packer.render import images
from shadow_packer.render import silhouette



TERM_NAMES = ['sil', 'intersect', 'extrude']

logger = logging.getLogger(__name__)



class IntersectionVariant(Enum):
    """
    How penetration depths at one query point are combined.

    LITERAL sums the depth inside every object, so any occupied point costs.
    OVERLAP_ONLY subtracts the deepest one, so a point costs only when it is
    inside two or more objects.
    """
    LITERAL = 'literal'
    OVERLAP_ONLY = 'overlap-only'



class LossReport:
    """
    The loss terms of one evaluation.

    Class Attributes:
      N/A

    Instance Attributes:
      sil (float): Silhouette term.
      intersect (float): Intersection term.
      extrude (float): Extrusion term (may be negative).
      lam (float): Weight of the extrusion term.
      total (float): sil + intersect + lam * extrude, in that order.
    """
    def __init__(self, sil, intersect, extrude, lam):
        """
        Args:
          See Instance Attributes.
        """
        self.sil = float(sil)
        self.intersect = float(intersect)
        self.extrude = float(extrude)
        self.lam = float(lam)
        self.total = self.sil + self.intersect + self.lam * self.extrude



    def to_row(self, iteration):
        """
        Args:
          iteration (int): Iteration index.

        Returns:
          (dict): CSV row of the loss trace.
        """
        return {
            'iter': iteration,
            'sil': self.sil,
            'intersect': self.intersect,
            'extrude': self.extrude,
            'total': self.total,
        }



class QuerySet:
    """
    The fixed query points of the intersection term: the container lattice
    nodes on or inside the container.

    Class Attributes:
      N/A

    Instance Attributes:
      points (np.ndarray): (n, 3) points.
    """
    def __init__(self, points):
        """
        Args:
          points (array-like): (n, 3) points.
        """
        self.points = np.asarray(points, dtype=np.float64).reshape(-1, 3)



    @classmethod
    def from_container(cls, container, spec=None):
        """
        Keeps the lattice nodes where the container SDF is <= 0.

        Args:
          container (Container<>): The container.
          spec (GridSpec or None): Lattice; defaults to the container's.

        Returns:
          (QuerySet): The query set.
        """
        if spec is None:
            spec = container.lattice()
        nodes = spec.points()
        values, _ = container.sample(nodes)
        return cls(nodes[values <= 0.0])



    def __len__(self):
        return len(self.points)



def silhouette_loss(rendered, targets):
    """
    Gets the mean squared pixel error over all views, and its per-pixel
    adjoints.

    Args:
      rendered ([Image]): Rendered images, one per view.
      targets ([Image]): Target images, same count and sizes.

    Returns:
      (float, [np.ndarray]): The loss and the (height, width) dLoss/dPixel of
        each view.

    Raises:
      (ImageDimensionError): The counts or sizes differ.
    """
    if len(rendered) != len(targets):
        raise ImageDimensionError(f'{len(rendered)} rendered images vs'
                + f' {len(targets)} targets.')
    if not rendered:
        return 0.0, []
    for img, tgt in zip(rendered, targets):
        images.check_same_dims(img, tgt)

    n_total = sum(t.pixels.size for t in targets)
    value = 0.0
    adjoints = []
    for img, tgt in zip(rendered, targets):
        diff = img.pixels - tgt.pixels
        value += float((diff ** 2).sum())
        adjoints.append(2.0 * diff / n_total)
    return value / n_total, adjoints



def _grid_radius(field):
    """
    Gets the radius, about the object's translation, of the sphere holding its
    whole grid box.  Outside of it the warped SDF is positive.
    """
    corners = field.grid.spec.aabb().corners()
    return float(np.sqrt((corners ** 2).sum(axis=1).max()))



def intersection_loss(fields, q, variant=IntersectionVariant.OVERLAP_ONLY):
    """
    Gets the penetration of objects measured at fixed query points.  With
    depth d_i(p) = max(0, -S_i(p)):
    - literal: sum_p sum_i d_i(p).
    - overlap-only: sum_p (sum_i d_i(p) - max_i d_i(p)); the max is taken by
      the lowest object index on ties, and that object gets no gradient at p.

    Args:
      fields ([WarpedField]): The posed objects.
      q (QuerySet): The query points.
      variant (IntersectionVariant): Combination rule.

    Returns:
      (float, np.ndarray): The loss and its (6 * len(fields),) gradient.

    Raises:
      (PreconditionError): The query set is empty.
    """
    if len(q) == 0:
        raise PreconditionError('Intersection query set is empty; the'
                + ' container holds no lattice node.')
    n_params = pose_mod.PARAMS_PER_POSE
    grad = np.zeros(n_params * len(fields))
    if not fields:
        return 0.0, grad

    points = q.points
    depths = np.zeros((len(points), len(fields)))
    inside_idx = []
    for i_obj, field in enumerate(fields):
        offsets = points - field.pose.translation
        radius = _grid_radius(field)
        near = np.nonzero((offsets ** 2).sum(axis=1) <= radius * radius)[0]
        values, _ = field.sample(points[near], with_pose_grad=False)
        inside = near[values < 0.0]
        depths[inside, i_obj] = -values[values < 0.0]
        inside_idx.append(inside)

    if variant == IntersectionVariant.LITERAL:
        value = float(depths.sum())
        owner = None
    else:
        owner = np.argmax(depths, axis=1)
        value = float((depths.sum(axis=1) - depths.max(axis=1)).sum())

    for i_obj, field in enumerate(fields):
        idx = inside_idx[i_obj]
        if owner is not None:
            idx = idx[owner[idx] != i_obj]
        if len(idx) == 0:
            continue
        _, d_pose = field.sample(points[idx])
        # d(-S)/d(pose)
        grad[n_params * i_obj:n_params * (i_obj + 1)] = -d_pose.sum(axis=0)

    return value, grad



def extrusion_loss(meshes, poses, container_sdf, epsilon):
    """
    Gets sum_i sum_{v in V_i} max(-epsilon, S_C(R_i v + t_i)).  Vertices in
    the buffer (S_C <= -epsilon) contribute -epsilon and no gradient.

    Args:
      meshes ([Mesh]): Object meshes in their own frames.
      poses ([RigidPose]): One pose per mesh.
      container_sdf (callable): Maps (n, 3) points to ((n,) values,
        (n, 3) gradients) of the container SDF.
      epsilon (float): Buffer width, > 0.

    Returns:
      (float, np.ndarray): The loss and its (6 * len(meshes),) gradient.

    Raises:
      (ParameterError): epsilon is not positive.
    """
    if not epsilon > 0:
        raise ParameterError(f'Extrusion epsilon must be positive; got'
                + f' {epsilon}.')
    n_params = pose_mod.PARAMS_PER_POSE
    grad = np.zeros(n_params * len(meshes))
    value = 0.0
    for i_obj, (m, pose) in enumerate(zip(meshes, poses)):
        world = pose_mod.apply_pose(pose, m.vertices)
        values, spatial = container_sdf(world)
        value += float(np.maximum(-epsilon, values).sum())
        active = values > -epsilon
        if not np.any(active):
            continue
        jac = pose_mod.pose_jacobians(pose, m.vertices[active]) \
                .reshape(-1, 3, n_params)
        grad[n_params * i_obj:n_params * (i_obj + 1)] = \
                np.einsum('nj,njk->k', spatial[active], jac)
    return value, grad



def _check_finite(term, value, grad):
    """
    Raises:
      (NumericalAbortError): The value or gradient is not finite; names the
        term and the first object hit.
    """
    bad = np.nonzero(~np.isfinite(grad))[0]
    if len(bad) > 0:
        i_obj = int(bad[0]) // pose_mod.PARAMS_PER_POSE
        raise NumericalAbortError(f'Non-finite {term} gradient for object'
                + f' {i_obj}.', obj_index=i_obj, term=term)
    if not np.isfinite(value):
        raise NumericalAbortError(f'Non-finite {term} loss value.', term=term)



def total_loss(scene, params, config, with_grad=True):
    """
    Evaluates all enabled terms for one parameter vector.  A disabled term
    reports 0 and adds no gradient.

    Args:
      scene (Scene): The normalized scene.
      params (np.ndarray): (6 * n_objects,) pose parameters.
      config (PackConfig): Weights, epsilon, variant, and term switches.
      with_grad (bool): Whether to compute the gradient.

    Returns:
      (LossReport, np.ndarray or None): The report and the gradient.

    Raises:
      (NumericalAbortError): A parameter, term value or gradient is not
        finite.
    """
    bad = np.nonzero(~np.isfinite(params))[0]
    if len(bad) > 0:
        i_obj = int(bad[0]) // pose_mod.PARAMS_PER_POSE
        raise NumericalAbortError(f'Non-finite pose parameters for object'
                + f' {i_obj}.', obj_index=i_obj, term='params')
    fields = scene.fields(params)
    grad = np.zeros(len(params))
    sil = intersect = extrude = 0.0

    if config.use_silhouette:
        rendered, tapes = silhouette.render_views(fields, scene.views,
                scene.render_params, scene.rays, with_grad=with_grad)
        sil, adjoints = silhouette_loss(rendered, scene.targets)
        if with_grad:
            sil_grad = np.zeros(len(params))
            # Reduce in view order
            for tape, adjoint in zip(tapes, adjoints):
                sil_grad += tape.backward(adjoint)
            _check_finite('sil', sil, sil_grad)
            grad += sil_grad

    if config.use_intersection and fields:
        intersect, is_grad = intersection_loss(fields, scene.query_set,
                config.loss_variant)
        _check_finite('intersect', intersect, is_grad)
        grad += is_grad

    if config.use_extrusion:
        extrude, ext_grad = extrusion_loss(scene.meshes,
                [f.pose for f in fields], scene.container.sample,
                config.epsilon)
        _check_finite('extrude', extrude, ext_grad)
        grad += config.lam * ext_grad

    report = LossReport(sil, intersect, extrude, config.lam)
    if not with_grad:
        return report, None
    return report, grad
