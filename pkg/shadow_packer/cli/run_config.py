#!/usr/bin/env python3
"""
Loads a run configuration: an INI file whose `[run]`, `[container]`,
`[objects]`, `[assembly]` and `[view :: <name>]` sections describe one packing
or assembly run.  Relative paths are resolved against the config file's
directory.  Fields can be overridden by `section.key=value` strings.

Module Attributes:
  RUN_MODES ([str]): Valid `[run] > mode` values.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import glob
import logging
import math
import os.path

import numpy as np

from shadow_packer.container import containers
from shadow_packer.general import config
from shadow_packer.general import dirs
from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import
from shadow_packer.geometry import mesh as mesh_mod
from shadow_packer.loss.losses import IntersectionVariant
from shadow_packer.packer.pack_config import InitMode, PackConfig
from shadow_packer.render import targets as targets_mod
from shadow_packer.render import views as views_mod



RUN_MODES = ['pack', 'incremental', 'assemble']

logger = logging.getLogger(__name__)



def apply_overrides(conf_cp, overrides):
    """
    Applies `section.key=value` overrides to a loaded config.  The key is the
    part after the last dot, so section names may contain dots.

    Args:
      conf_cp (ConfigParser): The loaded config; updated in place.
      overrides ([str]): The override strings.

    Raises:
      (ConfigError): An override is malformed.
    """
    for override in overrides or []:
        try:
            target, value = override.split('=', 1)
            section, key = target.rsplit('.', 1)
        except ValueError as ex:
            raise ConfigError(f'Override {override!r} is not of the form'
                    + ' section.key=value.') from ex
        section = section.strip()
        if not conf_cp.has_section(section):
            conf_cp.add_section(section)
        conf_cp.set(section, key.strip(), value.strip())



def _get_enum(conf_cp, section, key, enum_cls, fallback):
    """
    Gets an enum-valued field by its value string.

    Raises:
      (ConfigError): The value is not one of the enum's.
    """
    raw = config.get_conf_value(conf_cp, section, key, config.CastType.STRING,
            fallback=None)
    if raw is None:
        return fallback
    try:
        return enum_cls(raw.strip().lower())
    except ValueError as ex:
        raise ConfigError(f'Invalid [{section}] > {key}: {raw!r}; expected one'
                + f' of {[e.value for e in enum_cls]}.') from ex



def _get_auto_float(conf_cp, section, key):
    """
    Gets a float field that may also be `auto` (returned as None).
    """
    raw = config.get_conf_value(conf_cp, section, key, config.CastType.STRING,
            fallback='auto')
    if raw.strip().lower() == 'auto':
        return None
    return config.get_conf_value(conf_cp, section, key, config.CastType.FLOAT)



def _get_auto_int(conf_cp, section, key):
    """
    Gets an int field that may also be `auto` (returned as None).
    """
    raw = config.get_conf_value(conf_cp, section, key, config.CastType.STRING,
            fallback='auto')
    if raw.strip().lower() == 'auto':
        return None
    return config.get_conf_value(conf_cp, section, key, config.CastType.INT)



def load_pack_config(conf_cp, mode):
    """
    Reads the optimization settings from `[run]`.

    Args:
      conf_cp (ConfigParser): The loaded config.
      mode (str): The run mode (sets the default init mode).

    Returns:
      (PackConfig): The settings.

    Raises:
      (ConfigError): A field is invalid.
      (ParameterError): A value is out of range.
    """
    get = config.get_conf_value
    c_int = config.CastType.INT
    c_float = config.CastType.FLOAT
    c_bool = config.CastType.BOOL
    default_init = InitMode.PERTURB if mode == 'assemble' else InitMode.RANDOM

    kwargs = {}
    kwargs['seed'] = get(conf_cp, 'run', 'seed', c_int, fallback=0)
    kwargs['iterations'] = get(conf_cp, 'run', 'iterations', c_int,
            fallback=1000)
    kwargs['lr_start'] = get(conf_cp, 'run', 'lr start', c_float,
            fallback=1e-2)
    kwargs['lr_end'] = get(conf_cp, 'run', 'lr end', c_float, fallback=1e-4)
    kwargs['lam'] = get(conf_cp, 'run', 'lambda', c_float, fallback=0.001)
    kwargs['epsilon'] = get(conf_cp, 'run', 'epsilon', c_float, fallback=0.01)
    kwargs['tau'] = _get_auto_float(conf_cp, 'run', 'tau')
    kwargs['loss_variant'] = _get_enum(conf_cp, 'run', 'loss variant',
            IntersectionVariant, IntersectionVariant.OVERLAP_ONLY)
    kwargs['grid_points'] = get(conf_cp, 'run', 'grid points', c_int,
            fallback=80000)
    kwargs['object_grid_dims'] = get(conf_cp, 'run', 'object grid dims', c_int,
            fallback=64)
    kwargs['image_size'] = get(conf_cp, 'run', 'image size', c_int,
            fallback=64)
    kwargs['view_count'] = _get_auto_int(conf_cp, 'run', 'view count')
    kwargs['early_stop'] = get(conf_cp, 'run', 'early stop', c_bool,
            fallback=True)
    kwargs['early_stop_window'] = get(conf_cp, 'run', 'early stop window',
            c_int, fallback=50)
    kwargs['early_stop_tol'] = get(conf_cp, 'run', 'early stop tol', c_float,
            fallback=1e-7)
    kwargs['audit_multiplier'] = get(conf_cp, 'run', 'audit multiplier',
            c_int, fallback=2)
    kwargs['spare_capacity_threshold'] = get(conf_cp, 'run',
            'spare capacity threshold', c_float, fallback=0.03)
    kwargs['batch_size'] = _get_auto_int(conf_cp, 'run', 'batch size')
    kwargs['use_silhouette'] = get(conf_cp, 'run', 'use silhouette', c_bool,
            fallback=True)
    kwargs['use_intersection'] = get(conf_cp, 'run', 'use intersection',
            c_bool, fallback=True)
    kwargs['use_extrusion'] = get(conf_cp, 'run', 'use extrusion', c_bool,
            fallback=True)
    kwargs['init_mode'] = _get_enum(conf_cp, 'run', 'init', InitMode,
            default_init)
    kwargs['perturb_angle_deg'] = get(conf_cp, 'run', 'perturb angle deg',
            c_float, fallback=30.0)
    kwargs['perturb_offset'] = get(conf_cp, 'run', 'perturb offset', c_float,
            fallback=0.2)
    return PackConfig(**kwargs)



class RunConfig:      # pylint: disable=too-many-instance-attributes
    """
    A loaded run configuration.

    Class Attributes:
      N/A

    Instance Attributes:
      conf_cp (ConfigParser): The config, overrides applied.
      base_dir (str): Directory of the config file.
      mode (str): One of `RUN_MODES`.
      pack_config (PackConfig): Optimization settings.
      output_dir (str): Directory receiving every output.
      export_obj (bool): Whether to write the placed meshes as OBJ.
      heatmaps (bool): Whether to write per-view error heatmaps.
      default_target (str): Target of views not naming one.
    """
    def __init__(self, conf_cp, base_dir):
        """
        Reads the `[run]` section.

        Args:
          conf_cp (ConfigParser): The config, overrides applied.
          base_dir (str): Directory of the config file.

        Raises:
          (ConfigError): A field is missing or invalid.
          (ParameterError): A value is out of range.
        """
        self.conf_cp = conf_cp
        self.base_dir = base_dir
        self.mode = config.get_conf_value(conf_cp, 'run', 'mode',
                config.CastType.STRING, fallback='pack').strip().lower()
        if self.mode not in RUN_MODES:
            raise ConfigError(f'Invalid [run] > mode: {self.mode!r}; expected'
                    + f' one of {RUN_MODES}.')
        self.pack_config = load_pack_config(conf_cp, self.mode)

        cache_dir = config.get_conf_value(conf_cp, 'run', 'grid cache dir',
                config.CastType.STRING, fallback=None)
        if cache_dir is not None:
            self.pack_config.grid_cache_dir = dirs.resolve_path(cache_dir,
                    base_dir)
        self.output_dir = dirs.resolve_path(config.get_conf_value(conf_cp,
                'run', 'output dir', config.CastType.STRING,
                fallback='output'), base_dir)
        self.export_obj = config.get_conf_value(conf_cp, 'run', 'export obj',
                config.CastType.BOOL, fallback=False)
        self.heatmaps = config.get_conf_value(conf_cp, 'run', 'heatmaps',
                config.CastType.BOOL, fallback=False)
        self.default_target = config.get_conf_value(conf_cp, 'run', 'target',
                config.CastType.STRING,
                fallback=targets_mod.AUTO_CONTAINER_TARGET)



    @classmethod
    def load(cls, conf_path, overrides=None):
        """
        Reads a run config file.

        Args:
          conf_path (str): Path to the config file.
          overrides ([str] or None): `section.key=value` overrides.

        Returns:
          (RunConfig): The loaded config.

        Raises:
          (ConfigError): The file is missing, unparsable, or invalid.
          (ParameterError): A value is out of range.
        """
        conf_path = os.path.abspath(conf_path)
        base_dir = os.path.dirname(conf_path)
        conf_cp = config.read_conf_file(os.path.basename(conf_path), base_dir)
        apply_overrides(conf_cp, overrides)
        return cls(conf_cp, base_dir)



    def _path(self, section, key):
        """
        Returns:
          (str): A required path field, resolved.
        """
        return dirs.resolve_path(config.get_conf_value(self.conf_cp, section,
                key, config.CastType.STRING), self.base_dir)



    def load_container(self):
        """
        Returns:
          (Container<>): The container, world units.

        Raises:
          (ConfigError): No `[container]` section or unknown type.
          (InputError): The container itself cannot be loaded.
        """
        container = containers.get_container(self.conf_cp, self.base_dir)
        if container is None:
            raise ConfigError('Missing [container] section, or [container] >'
                    + ' type is not one of'
                    + f' {containers.get_all_container_type_names()}.')
        return container



    def load_objects(self):
        """
        Loads the objects to pack: `[objects] > meshes` repeated `copies`
        times, followed by every OBJ of `pool dir` in name order.  Copies
        share one Mesh instance.

        Returns:
          ([Mesh]): The objects, in draw order.

        Raises:
          (ConfigError): No objects are configured.
          (MeshFileError): A mesh cannot be read.
          (MeshValidationError): A mesh is invalid.
        """
        raw = config.get_conf_value(self.conf_cp, 'objects', 'meshes',
                config.CastType.STRING, fallback='')
        paths = [dirs.resolve_path(p, self.base_dir) for p in \
                config.parse_list_from_conf_string(raw, config.CastType.STRING,
                    strip_quotes=True)]
        copies = config.get_conf_value(self.conf_cp, 'objects', 'copies',
                config.CastType.INT, fallback=1)
        loaded = [mesh_mod.load_mesh(p) for p in paths]
        meshes = []
        for _ in range(copies):
            meshes.extend(loaded)

        pool_dir = config.get_conf_value(self.conf_cp, 'objects', 'pool dir',
                config.CastType.STRING, fallback=None)
        if pool_dir is not None:
            pool_dir = dirs.resolve_path(pool_dir, self.base_dir)
            if not os.path.isdir(pool_dir):
                raise ConfigError(f'[objects] > pool dir not found: {pool_dir}')
            for path in sorted(glob.glob(os.path.join(pool_dir, '*.obj'))):
                meshes.append(mesh_mod.load_mesh(path))

        if not meshes:
            raise ConfigError('No objects configured: set [objects] > meshes'
                    + ' or pool dir.')
        return meshes



    def load_assembly(self):
        """
        Returns:
          (Mesh, [Mesh]): The whole and its parts.

        Raises:
          (ConfigError): A field is missing.
          (MeshFileError): A mesh cannot be read.
          (MeshValidationError): A mesh is invalid.
        """
        whole = mesh_mod.load_mesh(self._path('assembly', 'whole'),
                name='whole')
        paths = config.get_conf_list(self.conf_cp, 'assembly', 'parts',
                config.CastType.STRING)
        parts = [mesh_mod.load_mesh(dirs.resolve_path(p, self.base_dir)) \
                for p in paths]
        return whole, parts



    def build_views(self, aabb, default_count):
        """
        Builds the views of the `[view :: <name>]` sections, or default preset
        views framing `aabb` if there are none.

        Args:
          aabb (Aabb): The container box, world units.
          default_count (int): View count when none are configured and
            `[run] > view count` is auto.

        Returns:
          ([ViewConfig], [str]): The views and the target string of each.

        Raises:
          (ConfigError): A view section is invalid.
          (ParameterError): A view value is out of range.
        """
        view_ids = config.get_section_ids(self.conf_cp, 'view')
        if not view_ids:
            count = self.pack_config.view_count or default_count
            size = self.pack_config.image_size
            views = views_mod.make_default_views(aabb, count, size)
            return views, [self.default_target] * len(views)

        views = []
        target_strs = []
        for view_id in view_ids:
            section = f'view :: {view_id}'
            rotation = self._view_rotation(section, view_id)
            auto_fp, auto_t = views_mod.auto_footprint(rotation, aabb)
            size = self.pack_config.image_size
            width = config.get_conf_value(self.conf_cp, section, 'width',
                    config.CastType.INT, fallback=size)
            height = config.get_conf_value(self.conf_cp, section, 'height',
                    config.CastType.INT, fallback=size)
            footprint = config.get_conf_list(self.conf_cp, section,
                    'footprint', config.CastType.FLOAT, length=2,
                    fallback=auto_fp)
            translation = config.get_conf_list(self.conf_cp, section,
                    'translation', config.CastType.FLOAT, length=3,
                    fallback=auto_t)
            view = views_mod.ViewConfig(view_id, rotation, translation, width,
                    height, footprint)
            views_mod.warn_if_not_covering(view, aabb)
            views.append(view)
            target_strs.append(config.get_conf_value(self.conf_cp, section,
                    'target', config.CastType.STRING,
                    fallback=self.default_target))
        return views, target_strs



    def _view_rotation(self, section, view_id):
        """
        Gets the rotation of a view section from `preset`, `angles deg`, or
        `rotation`; a section with none of them uses the preset named by its
        id.

        Raises:
          (ConfigError): No rotation can be determined.
          (ParameterError): Unknown preset.
        """
        cp = self.conf_cp
        if cp.has_option(section, 'rotation'):
            vals = config.get_conf_list(cp, section, 'rotation',
                    config.CastType.FLOAT, length=9)
            return np.array(vals).reshape(3, 3)
        if cp.has_option(section, 'angles deg'):
            vals = config.get_conf_list(cp, section, 'angles deg',
                    config.CastType.FLOAT, length=3)
            return views_mod.ViewConfig.from_angles(
                    [math.radians(v) for v in vals], 1, 1, (1.0, 1.0)).rotation
        preset = config.get_conf_value(cp, section, 'preset',
                config.CastType.STRING, fallback=view_id)
        if preset.strip().lower() not in views_mod.PRESET_ROTATIONS:
            raise ConfigError(f'[{section}] needs a preset, angles deg, or'
                    + ' rotation.')
        return views_mod.PRESET_ROTATIONS[preset.strip().lower()]
