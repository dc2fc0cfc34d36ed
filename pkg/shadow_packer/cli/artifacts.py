#!/usr/bin/env python3
"""
Writes the outputs of a run into its output directory: the result JSON, the
loss trace CSV, per-view renders and targets, optional error heatmaps, and the
optional OBJ export of the placed meshes.

Module Attributes:
  RESULT_FILE (str): File name of the result JSON.
  LOSS_FILE (str): File name of the loss trace CSV.
  EXPORT_FILE (str): File name of the OBJ export.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import json
import logging
import os
import os.path

from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.geometry import mesh as mesh_mod
from shadow_packer.packer import packer
from shadow_packer.render import images



RESULT_FILE = 'result.json'
LOSS_FILE = 'loss.csv'
EXPORT_FILE = 'placed.obj'

logger = logging.getLogger(__name__)



def write_loss_csv(result, output_dir):
    """
    Writes the loss trace with full float precision.

    Args:
      result (PackResult): The result; its `loss_csv` is set to the path.
      output_dir (str): Output directory.

    Returns:
      (str): The CSV path.
    """
    path = os.path.join(output_dir, LOSS_FILE)
    result.loss_frame().to_csv(path, index=False, float_format='%.17g')
    result.loss_csv = path
    return path



def write_result_json(result, output_dir, extra=None):
    """
    Writes the result JSON.

    Args:
      result (PackResult): The result.
      output_dir (str): Output directory.
      extra (dict or None): Entries added at the top level.

    Returns:
      (str): The JSON path.
    """
    data = result.to_dict()
    data.update(extra or {})
    path = os.path.join(output_dir, RESULT_FILE)
    with open(path, 'w', encoding='utf_8') as file:
        json.dump(data, file, indent=2)
    return path



def read_result_json(path):
    """
    Reads a result JSON.

    Args:
      path (str): The JSON path.

    Returns:
      (dict): The decoded result.

    Raises:
      (InputError): The file is missing or not valid JSON.
    """
    if not os.path.isfile(path):
        raise InputError(f'Result file not found: {path}')
    try:
        with open(path, encoding='utf_8') as file:
            return json.load(file)
    except json.JSONDecodeError as ex:
        raise InputError(f'Result file is not valid JSON: {path}') from ex



def write_renders(scene, params, output_dir, threshold=None, heatmaps=False):
    """
    Writes the final render and the target of every view, and optionally the
    per-pixel error heatmap.

    Args:
      scene (Scene): The scene.
      params (np.ndarray): Normalized parameters.
      output_dir (str): Output directory.
      threshold (float or None): Binarize renders at this level if given.
      heatmaps (bool): Whether to write heatmaps.

    Returns:
      ([str]): Paths written.
    """
    paths = []
    rendered = packer.render_final(scene, params)
    for view, img, tgt in zip(scene.views, rendered, scene.targets):
        render_path = os.path.join(output_dir, f'render_{view.name}.png')
        images.save_png(img, render_path, threshold)
        target_path = os.path.join(output_dir, f'target_{view.name}.png')
        images.save_png(tgt, target_path)
        paths.extend([render_path, target_path])
        if heatmaps:
            heat_path = os.path.join(output_dir, f'heatmap_{view.name}.png')
            images.save_heatmap(img, tgt, heat_path)
            paths.append(heat_path)
    return paths



def write_obj_export(scene, params, output_dir):
    """
    Writes every placed mesh, world units, into one OBJ file.

    Args:
      scene (Scene): The scene.
      params (np.ndarray): Normalized parameters.
      output_dir (str): Output directory.

    Returns:
      (str): The OBJ path.
    """
    path = os.path.join(output_dir, EXPORT_FILE)
    mesh_mod.write_obj(path, scene.placed_meshes(params, world=True))
    return path



def write_all(result, scene, run_conf):
    """
    Writes every output of a finished run.

    Args:
      result (PackResult): The result.
      scene (Scene): The scene the result's parameters apply to.
      run_conf (RunConfig): The run config (output dir and switches).
    """
    output_dir = run_conf.output_dir
    os.makedirs(output_dir, exist_ok=True)
    write_loss_csv(result, output_dir)
    write_renders(scene, result.params, output_dir,
            heatmaps=run_conf.heatmaps)
    if run_conf.export_obj:
        write_obj_export(scene, result.params, output_dir)
    extra = {'mode': run_conf.mode,
            'views': [v.to_dict() for v in scene.world_views]}
    path = write_result_json(result, output_dir, extra)
    logger.info('Wrote results to %(dir)s (%(file)s)',
            {'dir': output_dir, 'file': os.path.basename(path)})
