#!/usr/bin/env python3
"""
The command implementations behind the command line.  Each command returns the
process exit code; input errors and numerical aborts are logged here and turned
into their exit codes.

Module Attributes:
  EXIT_OK (int): Success.
  EXIT_INPUT_ERROR (int): Bad input (files, config, parameters).
  EXIT_AUDIT_FAILED (int): The run finished but its arrangement failed the
    audit.
  EXIT_NUMERICAL_ABORT (int): The optimization produced a non-finite value.
  BOX_VIEW_COUNT (int): Views generated for a box container with none
    configured.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import functools
import logging
import os
import os.path

import numpy as np

from shadow_packer.cli import artifacts
from shadow_packer.cli.run_config import RunConfig
from shadow_packer.general import config
from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.geometry import grid_spec
from shadow_packer.geometry import mesh as mesh_mod
from shadow_packer.geometry import sdf
from shadow_packer.packer import assembly
from shadow_packer.packer import packer
from shadow_packer.packer import pack_result
from shadow_packer.packer.scene import Scene
from shadow_packer.render import targets as targets_mod



EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_AUDIT_FAILED = 3
EXIT_NUMERICAL_ABORT = 4

BOX_VIEW_COUNT = 3

logger = logging.getLogger(__name__)



def reports_errors(func):
    """
    Decorates a command so that input errors and numerical aborts are logged
    and returned as exit codes instead of raised.
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except InputError as ex:
            logger.error(f'{type(ex).__name__}: {ex}')
            return EXIT_INPUT_ERROR
        except NumericalAbortError as ex:
            logger.error(f'Numerical abort (term {ex.term}, object'
                    + f' {ex.obj_index}): {ex}')
            return EXIT_NUMERICAL_ABORT
    return wrapper



def build_pack_scene(run_conf):
    """
    Builds the scene of a `pack` or `incremental` run from its config: all
    configured objects, the container, and the views with their targets.

    Args:
      run_conf (RunConfig): The run config.

    Returns:
      (Scene): The scene, holding every configured object.

    Raises:
      (InputError): Some input is missing or invalid.
    """
    container = run_conf.load_container()
    meshes = run_conf.load_objects()
    default_count = BOX_VIEW_COUNT if container.is_box \
            else assembly.DEFAULT_ASSEMBLY_VIEWS
    views, target_strs = run_conf.build_views(container.aabb(),
            default_count)
    targets = [targets_mod.resolve_target(t, container.mesh, v,
            run_conf.base_dir) for v, t in zip(views, target_strs)]
    return Scene.build(container, meshes, views, targets,
            run_conf.pack_config)



def load_assembly_inputs(run_conf):
    """
    Loads the inputs of an `assemble` run from its config.

    Args:
      run_conf (RunConfig): The run config.

    Returns:
      ([Mesh], Mesh, [ViewConfig] or None): The parts, the whole, and the
        configured views (None for the default ones).

    Raises:
      (InputError): Some input is missing or invalid.
    """
    whole, parts = run_conf.load_assembly()
    views = None
    if config.get_section_ids(run_conf.conf_cp, 'view'):
        views, _ = run_conf.build_views(whole.aabb(),
                assembly.DEFAULT_ASSEMBLY_VIEWS)
    return parts, whole, views



def _finish(result, scene, run_conf):
    """
    Writes the outputs of a run and picks its exit code.
    """
    artifacts.write_all(result, scene, run_conf)
    if not result.audit.passed:
        logger.error('Audit failed: max penetration'
                + f' {result.audit.max_penetration:.6g} (allowed'
                + f' {result.audit.lattice_spacing:.6g}),'
                + f' {result.audit.container_violations} vertices outside the'
                + ' container.')
        return EXIT_AUDIT_FAILED
    return EXIT_OK



@reports_errors
def cmd_pack(conf_path, overrides=None):
    """
    Runs a `pack` or `incremental` run.

    Args:
      conf_path (str): Run config path.
      overrides ([str] or None): `section.key=value` overrides.

    Returns:
      (int): The exit code.
    """
    run_conf = RunConfig.load(conf_path, overrides)
    if run_conf.mode == 'assemble':
        return cmd_assemble.__wrapped__(conf_path, overrides)

    scene = build_pack_scene(run_conf)
    if run_conf.mode == 'incremental':
        pool = [o.source for o in scene.objects]
        result = packer.incremental_pack(pool, scene, run_conf.pack_config)
        scene = scene.subset(result.n_placed)
    else:
        result = packer.pack(scene, run_conf.pack_config)
    return _finish(result, scene, run_conf)



@reports_errors
def cmd_assemble(conf_path, overrides=None):
    """
    Runs an assembly.

    Args:
      conf_path (str): Run config path.
      overrides ([str] or None): `section.key=value` overrides.

    Returns:
      (int): The exit code.
    """
    run_conf = RunConfig.load(conf_path,
            list(overrides or []) + ['run.mode=assemble'])
    parts, whole, views = load_assembly_inputs(run_conf)
    result, scene = assembly.assemble(parts, whole, views,
            run_conf.pack_config)
    return _finish(result, scene, run_conf)



@reports_errors
def cmd_bake(mesh_path, output_path, dims=grid_spec.DEFAULT_OBJECT_DIMS):
    """
    Bakes the SDF grid of a mesh into a file.

    Args:
      mesh_path (str): OBJ path.
      output_path (str): Grid file path.
      dims (int): Nodes per axis.

    Returns:
      (int): The exit code.
    """
    m = mesh_mod.load_mesh(mesh_path)
    if dims <= 2 * grid_spec.DEFAULT_PADDING_CELLS + 1:
        raise ParameterError(f'Grid dims must exceed'
                + f' {2 * grid_spec.DEFAULT_PADDING_CELLS + 1}; got {dims}.')
    spec = grid_spec.GridSpec.for_object(m.aabb(), dims)
    out_dir = os.path.dirname(os.path.abspath(output_path))
    os.makedirs(out_dir, exist_ok=True)
    sdf.bake_sdf(m, spec).save(output_path)
    logger.info('Baked %(name)s on a %(d)d^3 grid into %(path)s',
            {'name': m.name, 'd': dims, 'path': output_path})
    return EXIT_OK



@reports_errors
def cmd_render(result_path, conf_path, overrides=None, threshold=None):
    """
    Re-renders the views of a finished run from its result file and run
    config.  The stored normalized parameters are used, so the images match
    the optimization-time renders.

    Args:
      result_path (str): Result JSON path.
      conf_path (str): Run config the result was produced with.
      overrides ([str] or None): `section.key=value` overrides.
      threshold (float or None): Binarize the renders at this level.

    Returns:
      (int): The exit code.

    Raises:
      (UnknownPoseIdError): The result names an object the scene lacks.
    """
    run_conf = RunConfig.load(conf_path, overrides)
    data = artifacts.read_result_json(result_path)
    try:
        ids, params = pack_result.read_result_params(data)
    except KeyError as ex:
        raise InputError(f'Result file lacks entry {ex}: {result_path}') \
                from ex

    if run_conf.mode == 'assemble':
        scene = assembly.build_assembly_scene(*load_assembly_inputs(run_conf),
                run_conf.pack_config)
    else:
        scene = build_pack_scene(run_conf)
    if len(ids) > scene.n_objects:
        raise UnknownPoseIdError(f'Result holds {len(ids)} objects; the scene'
                + f' has {scene.n_objects}.')
    scene = scene.subset(len(ids))
    expected = [f'{i}:{o.source.name}' for i, o in enumerate(scene.objects)]
    for obj_id, exp_id in zip(ids, expected):
        if obj_id != exp_id:
            raise UnknownPoseIdError(f'Object id {obj_id!r} does not match'
                    + f' scene object {exp_id!r}.')

    flat = np.array(params, dtype=np.float64).reshape(-1)
    os.makedirs(run_conf.output_dir, exist_ok=True)
    paths = artifacts.write_renders(scene, flat, run_conf.output_dir,
            threshold, run_conf.heatmaps)
    logger.info('Rendered %(n)d images into %(dir)s',
            {'n': len(paths), 'dir': run_conf.output_dir})
    return EXIT_OK
