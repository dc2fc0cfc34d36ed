#!/usr/bin/env python3
"""
The packing drivers: initial count estimate, pose initialization, the
optimization loop, incremental growth of the object count, and density.

Module Attributes:
  INFO_LOG_EVERY (int): Iteration interval of INFO progress logs.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import logging
import math

import numpy as np
from scipy.spatial.transform import Rotation

from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.geometry import mesh as mesh_mod
from shadow_packer.loss import losses
from shadow_packer.optim import adam
from shadow_packer.optim import schedule
from shadow_packer.packer import audit as audit_mod
from shadow_packer.packer.pack_config import InitMode
from shadow_packer.packer.pack_result import PackResult
from shadow_packer.pose import pose as pose_mod
from shadow_packer.render import images
from shadow_packer.render import silhouette



INFO_LOG_EVERY = 100

logger = logging.getLogger(__name__)



def estimate_initial_count(pool, container_volume):
    """
    Gets N_init = floor(|C| / mean object volume), clamped to the pool size.

    Args:
      pool ([Mesh]): The objects available.
      container_volume (float): Container volume, same units.

    Returns:
      (int): The initial object count.

    Raises:
      (ParameterError): Empty pool or non-positive mean volume.
    """
    if not pool:
        raise ParameterError('Object pool is empty.')
    mean_volume = sum(mesh_mod.mesh_volume(m) for m in pool) / len(pool)
    if not mean_volume > 0:
        raise ParameterError(f'Mean object volume is {mean_volume}.')
    return min(len(pool), int(math.floor(container_volume / mean_volume)))



def _as_rng(seed_or_rng):
    """
    Returns:
      (Generator): `seed_or_rng` itself, or a new generator seeded by it.
    """
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)



def random_init(scene, seed, start=0):
    """
    Places objects at random: each centroid goes to a lattice node picked
    uniformly among those with S_C <= -min(bounding radius, deepest S_C
    depth), and each orientation is uniform on SO(3).

    Args:
      scene (Scene): The scene.
      seed (int or Generator): Seed, or a generator to draw from.
      start (int): Only objects from this index on are placed.

    Returns:
      (np.ndarray): (6 * (n_objects - start),) normalized parameters.

    Raises:
      (ContainerTooSmallError): No lattice node is inside the container.
    """
    rng = _as_rng(seed)
    nodes = scene.container.lattice().points()
    values, _ = scene.container.sample(nodes)
    max_depth = -float(values.min())
    if not max_depth > 0:
        raise ContainerTooSmallError('No container lattice node lies inside'
                + ' the container.')

    params = []
    for obj in scene.objects[start:]:
        depth = min(obj.mesh.bounding_radius(), max_depth)
        candidates = np.nonzero(values <= -depth + 1e-12)[0]
        position = nodes[candidates[rng.integers(len(candidates))]]
        angles = Rotation.random(1, rng).as_euler('xyz')[0]
        params.append(np.concatenate([angles, position]))
    if not params:
        return np.zeros(0)
    return np.concatenate(params)



def perturb_init(scene, base_params, seed, max_angle_deg, max_offset):
    """
    Perturbs a placement: each object is rotated about a uniformly random
    axis by an angle uniform in [0, max_angle_deg] and shifted in a uniformly
    random direction by a distance uniform in [0, max_offset].

    Args:
      scene (Scene): The scene.
      base_params (np.ndarray): (6 * n_objects,) placement to perturb.
      seed (int or Generator): Seed, or a generator to draw from.
      max_angle_deg (float): Max rotation, degrees.
      max_offset (float): Max shift, world units.

    Returns:
      (np.ndarray): Perturbed parameters.
    """
    rng = _as_rng(seed)
    out = []
    for pose in scene.poses(base_params):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        angle = math.radians(max_angle_deg) * rng.uniform()
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        shift = max_offset * scene.scale * rng.uniform() * direction

        rot = Rotation.from_rotvec(angle * axis) \
                * Rotation.from_matrix(pose.rotation_matrix())
        out.append(np.concatenate([rot.as_euler('xyz'),
                pose.translation + shift]))
    if not out:
        return np.zeros(0)
    return np.concatenate(out)



def initial_params(scene, config):
    """
    Gets the starting parameters for the configured init mode.

    Args:
      scene (Scene): The scene.
      config (PackConfig): Run settings.

    Returns:
      (np.ndarray): (6 * n_objects,) normalized parameters.
    """
    if config.init_mode == InitMode.RANDOM:
        return random_init(scene, config.seed)
    if config.init_mode == InitMode.PERTURB:
        return perturb_init(scene, scene.as_is_params(), config.seed,
                config.perturb_angle_deg, config.perturb_offset)
    return scene.as_is_params()



def packing_density(poses, meshes, container_volume, audit=None):
    """
    Gets sum |O_i| / |C|.  Rigid poses do not change volumes.

    Args:
      poses ([RigidPose]): The final poses (one per mesh).
      meshes ([Mesh]): The objects.
      container_volume (float): Container volume, same units.
      audit (IntersectionAudit or None): If given and failing, the density is
        flagged with a warning.

    Returns:
      (float): The density.
    """
    assert len(poses) == len(meshes)
    rho = sum(mesh_mod.mesh_volume(m) for m in meshes) / container_volume
    if audit is not None and not audit.passed:
        logger.warning(f'Density {rho:.4f} is reported for an arrangement that'
                + ' failed its audit (overlaps or extrusions).')
    return rho



def render_final(scene, params):
    """
    Renders every view for a parameter vector, without gradients.

    Args:
      scene (Scene): The scene.
      params (np.ndarray): Normalized parameters.

    Returns:
      ([Image]): One soft image per view.
    """
    rendered, _ = silhouette.render_views(scene.fields(params), scene.views,
            scene.render_params, scene.rays, with_grad=False)
    return rendered



def uncovered_fraction(scene, params):
    """
    Gets the fraction of target foreground pixels (over all views) that the
    thresholded render leaves uncovered.

    Args:
      scene (Scene): The scene.
      params (np.ndarray): Normalized parameters.

    Returns:
      (float): The fraction; 0 when no target has foreground.
    """
    uncovered = 0
    foreground = 0
    for img, tgt in zip(render_final(scene, params), scene.targets):
        fg = tgt.pixels >= 0.5
        foreground += np.count_nonzero(fg)
        uncovered += np.count_nonzero(fg & (img.pixels < 0.5))
    if foreground == 0:
        return 0.0
    return uncovered / foreground



def pack(scene, config, init_params=None):
    """
    Optimizes the poses of all scene objects with Adam on the total loss,
    then audits the result.

    Args:
      scene (Scene): The scene.
      config (PackConfig): Run settings.
      init_params (np.ndarray or None): Starting parameters; from the
        configured init mode if None.

    Returns:
      (PackResult): The result.

    Raises:
      (NumericalAbortError): A loss value or gradient became non-finite.
    """
    params = initial_params(scene, config) if init_params is None \
            else np.array(init_params, dtype=np.float64)
    state = adam.AdamState(len(params))
    sched = schedule.Schedule(config.lr_start, config.lr_end,
            config.iterations)
    stopper = schedule.EarlyStop(config.early_stop_window,
            config.early_stop_tol) if config.early_stop else None
    trace = []

    n_iterations = config.iterations if scene.n_objects > 0 else 1
    for iteration in range(n_iterations):
        report, grad = losses.total_loss(scene, params, config)
        trace.append(report)
        logger.debug('iter %(it)d: sil %(sil).6g is %(is).6g ext %(ext).6g'
                + ' total %(total).6g',
                {'it': iteration, 'sil': report.sil, 'is': report.intersect,
                    'ext': report.extrude, 'total': report.total})
        if iteration % INFO_LOG_EVERY == 0:
            logger.info('Iteration %(it)d/%(n)d, total loss %(total).6g',
                    {'it': iteration, 'n': n_iterations,
                        'total': report.total})
        if stopper is not None and stopper.update(report.total):
            logger.info('Loss stalled; stopping at iteration %(it)d',
                    {'it': iteration})
            break
        if scene.n_objects == 0:
            break
        params = adam.adam_step(state, params, grad,
                schedule.lr_schedule(iteration, sched))

    return finish_result(scene, params, trace, config)



def finish_result(scene, params, trace, config, n_max_estimate=None):
    """
    Audits an arrangement and assembles its result.

    Args:
      scene (Scene): The scene.
      params (np.ndarray): Final normalized parameters.
      trace ([LossReport]): Loss trace.
      config (PackConfig): Run settings.
      n_max_estimate (int or None): Capacity estimate to record.

    Returns:
      (PackResult): The result.
    """
    audit = audit_mod.intersection_audit(scene, params,
            config.audit_multiplier)
    world_poses = scene.world_poses(params)
    rho = packing_density(world_poses, [o.source for o in scene.objects],
            scene.world_container.volume(), audit)
    ious = {v.name: images.iou(img, tgt) for v, img, tgt \
            in zip(scene.views, render_final(scene, params), scene.targets)}
    ids = [f'{i}:{o.source.name}' for i, o in enumerate(scene.objects)]
    logger.info('%(n)d objects, density %(rho).4f, audit %(status)s',
            {'n': scene.n_objects, 'rho': rho,
                'status': 'passed' if audit.passed else 'FAILED'})
    return PackResult(ids, world_poses, params, rho, trace, audit, ious,
            n_max_estimate)



def incremental_pack(pool, scene, config):
    """
    Packs as many pool objects as fit.  Starts from N_init objects; while the
    audit passes and more than `spare_capacity_threshold` of the target
    foreground is uncovered, adds the next N_k pool objects at random poses
    and re-optimizes.  A failing round is reverted.  If the first round
    fails, objects are removed N_k at a time until the audit passes.

    Args:
      pool ([Mesh]): Objects, in the order they are drawn.
      scene (Scene): Scene holding the container and views (its objects are
        ignored).
      config (PackConfig): Run settings.

    Returns:
      (PackResult): The last passing result; `n_max_estimate` is its count.

    Raises:
      (ParameterError): Empty pool.
    """
    n_init = estimate_initial_count(pool, scene.world_container.volume())
    n_k = config.batch_size or max(1, n_init // 10)
    pool_scene = scene.subset(0, [scene.make_object(m) for m in pool])
    rng = np.random.default_rng(config.seed)
    n_params = pose_mod.PARAMS_PER_POSE
    logger.info('Incremental packing: N_init %(n)d, N_k %(k)d, pool %(p)d',
            {'n': n_init, 'k': n_k, 'p': len(pool)})

    n_placed = n_init
    round_scene = pool_scene.subset(n_placed)
    result = pack(round_scene, config, random_init(round_scene, rng))
    while not result.audit.passed and n_placed > 0:
        n_placed = max(0, n_placed - n_k)
        logger.info('Audit failed; retrying with %(n)d objects',
                {'n': n_placed})
        round_scene = pool_scene.subset(n_placed)
        result = pack(round_scene, config,
                result.params[:n_params * n_placed])
    last_pass = result

    while n_placed < len(pool) and uncovered_fraction(
            pool_scene.subset(n_placed), last_pass.params) \
            > config.spare_capacity_threshold:
        n_next = min(len(pool), n_placed + n_k)
        round_scene = pool_scene.subset(n_next)
        init = np.concatenate([last_pass.params,
                random_init(round_scene, rng, start=n_placed)])
        logger.info('Adding %(k)d objects (%(n)d total)',
                {'k': n_next - n_placed, 'n': n_next})
        result = pack(round_scene, config, init)
        if not result.audit.passed:
            logger.info('Audit failed with %(n)d objects; reverting to'
                    + ' %(prev)d', {'n': n_next, 'prev': n_placed})
            break
        last_pass = result
        n_placed = n_next

    last_pass.n_max_estimate = n_placed
    return last_pass
