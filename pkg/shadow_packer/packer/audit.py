#!/usr/bin/env python3
"""
Post-optimization verification with exact mesh distances (no grid
interpolation): inter-object penetration on a refined container lattice and
object vertices outside the container.

Module Attributes:
  CONTAINER_TOLERANCE (float): Container SDF above which a vertex counts as a
    violation, in normalized container units.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import logging

import numpy as np

from shadow_packer.geometry import sdf



CONTAINER_TOLERANCE = 1e-3

logger = logging.getLogger(__name__)



class IntersectionAudit:
    """
    Audit figures of one arrangement, world units.

    Class Attributes:
      N/A

    Instance Attributes:
      max_penetration (float): Largest sum of the two deepest penetration
        depths at any audit point (the thickness of the worst overlap).
      multi_count (int): Audit points inside two or more objects.
      container_violations (int): Object vertices outside the container by
        more than the tolerance.
      lattice_spacing (float): Spacing of the optimization lattice, the
        penetration allowance.
    """
    def __init__(self, max_penetration, multi_count, container_violations,
            lattice_spacing):
        """
        Args:
          See Instance Attributes.
        """
        self.max_penetration = float(max_penetration)
        self.multi_count = int(multi_count)
        self.container_violations = int(container_violations)
        self.lattice_spacing = float(lattice_spacing)



    @property
    def passed(self):
        """
        Returns:
          (bool): True if penetration is within one lattice spacing and no
            vertex leaves the container.
        """
        return self.max_penetration <= self.lattice_spacing \
                and self.container_violations == 0



    def to_dict(self):
        """
        Returns:
          (dict): JSON-friendly form.
        """
        return {
            'max_penetration': self.max_penetration,
            'multi_count': self.multi_count,
            'container_violations': self.container_violations,
            'lattice_spacing': self.lattice_spacing,
            'passed': self.passed,
        }



def intersection_audit(scene, params, multiplier=2):
    """
    Audits an arrangement.  Each node of the container lattice refined by
    `multiplier` is tested against every object whose bounding sphere holds
    it, with the exact mesh signed distance.

    Args:
      scene (Scene): The scene.
      params (np.ndarray): (6 * n_objects,) normalized pose parameters.
      multiplier (int): Lattice refinement.

    Returns:
      (IntersectionAudit): The audit, world units.
    """
    spec = scene.container.lattice().refined(multiplier)
    points = spec.points()
    deepest = np.zeros(len(points))
    second = np.zeros(len(points))
    count = np.zeros(len(points), dtype=np.int64)
    violations = 0

    placed = scene.placed_meshes(params, world=False)
    for obj, m, pose in zip(scene.objects, placed, scene.poses(params)):
        radius = obj.mesh.bounding_radius()
        near = np.nonzero(((points - pose.translation) ** 2).sum(axis=1) \
                <= radius * radius)[0]
        if len(near) > 0:
            depth = np.maximum(0.0, -sdf.signed_distances(m, points[near]))
            inside = depth > 0.0
            count[near[inside]] += 1
            second[near] = np.maximum(second[near],
                    np.minimum(deepest[near], depth))
            deepest[near] = np.maximum(deepest[near], depth)
        violations += int(np.count_nonzero(
                scene.container.exact_sdf(m.vertices) > CONTAINER_TOLERANCE))

    multi = count >= 2
    max_pen = float((deepest + second)[multi].max()) if np.any(multi) else 0.0
    audit = IntersectionAudit(max_pen / scene.scale, np.count_nonzero(multi),
            violations, scene.lattice_spacing / scene.scale)
    logger.debug('Audit: penetration %(pen).6g, %(multi)d multi points,'
            + ' %(viol)d violations',
            {'pen': audit.max_penetration, 'multi': audit.multi_count,
                'viol': audit.container_violations})
    return audit
