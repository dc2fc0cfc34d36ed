#!/usr/bin/env python3
"""
The outcome of a packing or assembly run and its JSON form.

Module Attributes:
  RESULT_FORMAT_VERSION (int): Version of the JSON layout.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import pandas as pd

from shadow_packer.pose import pose as pose_mod



RESULT_FORMAT_VERSION = 1



class PackResult:      # pylint: disable=too-many-instance-attributes
    """
    Final placement and figures of one run.

    Class Attributes:
      N/A

    Instance Attributes:
      object_ids ([str]): Object labels, in parameter order.
      poses ([RigidPose]): World poses of the loaded meshes.
      params (np.ndarray): Final normalized parameters (exact render input).
      rho (float): Packing density.
      n_placed (int): Objects placed.
      n_max_estimate (int or None): Capacity estimate (incremental packing).
      loss_trace ([LossReport]): Loss of every iteration of the final round.
      audit (IntersectionAudit): Exact verification.
      view_ious ({str: float}): Thresholded IoU against each view target.
      loss_csv (str or None): Path of the written loss trace.
    """
    def __init__(self, object_ids, poses, params, rho, loss_trace, audit,
            view_ious, n_max_estimate=None):
        """
        Args:
          See Instance Attributes.
        """
        self.object_ids = list(object_ids)
        self.poses = list(poses)
        self.params = params
        self.rho = float(rho)
        self.n_placed = len(self.poses)
        self.n_max_estimate = n_max_estimate
        self.loss_trace = list(loss_trace)
        self.audit = audit
        self.view_ious = dict(view_ious)
        self.loss_csv = None



    @property
    def mean_iou(self):
        """
        Returns:
          (float or None): Mean of the per-view IoUs; None without views.
        """
        if not self.view_ious:
            return None
        return sum(self.view_ious.values()) / len(self.view_ious)



    def loss_frame(self):
        """
        Returns:
          (DataFrame): One row per iteration: iter, sil, intersect, extrude,
            total.
        """
        return pd.DataFrame([r.to_row(i) for i, r in enumerate(self.loss_trace)],
                columns=['iter', 'sil', 'intersect', 'extrude', 'total'])



    def to_dict(self):
        """
        Returns:
          (dict): JSON-friendly form.
        """
        n_params = pose_mod.PARAMS_PER_POSE
        objects = []
        for i, (obj_id, pose) in enumerate(zip(self.object_ids, self.poses)):
            entry = {'id': obj_id}
            entry.update(pose.to_dict())
            entry['params'] = [float(v) \
                    for v in self.params[n_params * i:n_params * (i + 1)]]
            objects.append(entry)
        return {
            'format_version': RESULT_FORMAT_VERSION,
            'objects': objects,
            'rho': self.rho,
            'n_placed': self.n_placed,
            'n_max_estimate': self.n_max_estimate,
            'iterations': len(self.loss_trace),
            'final_loss': self.loss_trace[-1].to_row(len(self.loss_trace) - 1) \
                    if self.loss_trace else None,
            'audit': self.audit.to_dict(),
            'view_ious': self.view_ious,
            'mean_iou': self.mean_iou,
            'loss_csv': self.loss_csv,
        }



def read_result_params(data):
    """
    Gets the object ids and normalized parameters from a result dict.

    Args:
      data (dict): Output of `PackResult.to_dict()`.

    Returns:
      ([str], [[float]]): Ids and the 6 parameters of each object.

    Raises:
      (KeyError): A required entry is missing.
    """
    ids = [o['id'] for o in data['objects']]
    params = [o['params'] for o in data['objects']]
    return ids, params

