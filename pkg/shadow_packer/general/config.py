#!/usr/bin/env python3
"""
This module handles access to the configuration files.  Run configurations and
the logger configuration are INI files read through `configparser`; this module
provides the reading, the value casting used by the run config loader, and the
logger initialization.

Module Attributes:
  logger (Logger): Logger for this module.

(C) Copyright 2020 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import configparser
from enum import Enum
import logging
import logging.config
import os.path

from shadow_packer.general import dirs
from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import



logger = logging.getLogger(__name__)



def read_conf_file(conf_rel_file, conf_base_dir=None):
    """
    Read config file in configparser format.

    Args:
      conf_rel_file (str): Relative file path to config file (or an absolute
        path, in which case the base dir is ignored).
      conf_base_dir (str or None): Base file path to use with relative path.
        If not provided, this will use the project config dir.

    Returns:
      parser (ConfigParser): ConfigParser for file loaded.

    Raises:
      (ConfigError): The file does not exist or is not valid INI.
    """
    if conf_base_dir is None:
        conf_base_dir = dirs.get_conf_path()
    conf_file = os.path.join(conf_base_dir, conf_rel_file)

    if not os.path.isfile(conf_file):
        raise ConfigError(f'Config file not found: {conf_file}')

    parser = configparser.ConfigParser()
    try:
        with open(conf_file, encoding='utf_8') as file:
            parser.read_file(file)
    except configparser.Error as ex:
        raise ConfigError(f'Config file could not be parsed: {conf_file}') \
                from ex

    return parser



def get_section_ids(conf_cp, submod):
    """
    Lists the IDs of all sections named in the `submod :: id` form for the
    given submodule, in file order.

    Args:
      conf_cp (ConfigParser): A loaded config parser.
      submod (str): The submodule prefix to look for (e.g. 'view').

    Returns:
      ([str]): The IDs found, stripped; empty if none.
    """
    section_ids = []
    for section_name in conf_cp.sections():
        try:
            submod_found, id_found = section_name.split('::')
        except ValueError:
            continue
        if submod_found.strip().lower() == submod.strip().lower():
            section_ids.append(id_found.strip())
    return section_ids



class CastType(Enum):
    """
    Enum of cast types.

    These are used to specify a target type when casting in `cast_var()`.
    """
    INT = 'int'
    FLOAT = 'float'
    STRING = 'string'
    BOOL = 'bool'



def cast_var(var, cast_type, fallback_to_original=False):
    """
    Cast variable to the specified type.

    Args:
      var (*): Variable of an unknown type.
      cast_type (CastType): Type that var should be cast to, if possible.
      fallback_to_original (bool): If true, will return original var if cast
        fails; otherwise, failed cast will raise exception.

    Returns:
      var (CastType, or ?): Same as var provided, but of the type specified by
        CastType; but if cast failed and fallback to original was true, will
        return original var in original type.

    Raises:
      (TypeError): Cannot cast because type specified is not supported.
      (ValueError): Cast failed and fallback to original was not True.
    """
    try:
        if cast_type == CastType.INT:
            return int(var)
        if cast_type == CastType.FLOAT:
            return float(var)
        if cast_type == CastType.STRING:
            return str(var)
        if cast_type == CastType.BOOL:
            if isinstance(var, bool):
                return var
            val = str(var).strip().lower()
            if val in ('1', 'yes', 'true', 'on'):
                return True
            if val in ('0', 'no', 'false', 'off'):
                return False
            raise ValueError(f'Not a boolean: {var!r}')
        raise TypeError('Cast failed -- unsupported type.')

    except (TypeError, ValueError):
        if fallback_to_original:
            return var
        raise



def parse_list_from_conf_string(conf_str, val_type, delim=',',
        strip_quotes=False, strict=False):
    """
    Parse a string into a list of items based on the provided specifications.

    Args:
      conf_str (str): The string to be split.
      val_type (CastType): The type to cast each element to.
      delim (str): The delimiter on which to split conf_str.
      strip_quotes (bool): Whether or not there are quotes to be stripped from
        each item after split and strip.
      strict (bool): If True, an element that cannot be cast raises instead of
        being skipped.

    Returns:
      list_out (list of val_type): List of all elements found in conf_str after
        splitting on delim.  Each element will be of val_type.  Unless strict,
        this will silently skip any element that cannot be cast.

    Raises:
      (ValueError): An element could not be cast and strict was set.
    """
    if not conf_str:
        return []

    list_out = []
    for val in conf_str.split(delim):
        val = val.strip()
        if strip_quotes:
            val = val.strip('\'"')
        if not val:
            # may have been a blank line without a delim
            continue
        try:
            list_out.append(cast_var(val, val_type))
        except (ValueError, TypeError):
            if strict:
                raise

    return list_out



_REQUIRED = object()



def get_conf_value(conf_cp, section, key, cast_type, fallback=_REQUIRED):
    """
    Gets one value from a loaded config and casts it.

    Args:
      conf_cp (ConfigParser): The loaded config.
      section (str): Section name.
      key (str): Field name.
      cast_type (CastType): Type to cast to.
      fallback (*): Value returned when the field is absent.  If omitted, the
        field is required.

    Returns:
      (*): The cast value, or the fallback.

    Raises:
      (ConfigError): The field is required but missing, or cannot be cast.
    """
    raw = conf_cp.get(section, key, fallback=None)
    if raw is None or raw.strip() == '':
        if fallback is _REQUIRED:
            raise ConfigError(f'Missing required field [{section}] > {key}.')
        return fallback
    try:
        return cast_var(raw.strip(), cast_type)
    except (TypeError, ValueError) as ex:
        raise ConfigError(f'Invalid {cast_type.value} for [{section}] >'
                + f' {key}: {raw.strip()!r}') from ex



def get_conf_list(conf_cp, section, key, cast_type, length=None,
        fallback=_REQUIRED):
    """
    Gets one comma separated list from a loaded config and casts each element.

    Args:
      conf_cp (ConfigParser): The loaded config.
      section (str): Section name.
      key (str): Field name.
      cast_type (CastType): Type to cast each element to.
      length (int or None): Required element count, if any.
      fallback (*): Value returned when the field is absent.  If omitted, the
        field is required.

    Returns:
      ([*]): The cast elements, or the fallback.

    Raises:
      (ConfigError): The field is required but missing, an element cannot be
        cast, or the element count is wrong.
    """
    raw = conf_cp.get(section, key, fallback=None)
    if raw is None or raw.strip() == '':
        if fallback is _REQUIRED:
            raise ConfigError(f'Missing required field [{section}] > {key}.')
        return fallback
    try:
        vals = parse_list_from_conf_string(raw, cast_type, strip_quotes=True,
                strict=True)
    except (TypeError, ValueError) as ex:
        raise ConfigError(f'Invalid {cast_type.value} list for [{section}] >'
                + f' {key}: {raw.strip()!r}') from ex
    if length is not None and len(vals) != length:
        raise ConfigError(f'[{section}] > {key} needs {length} values; got'
                + f' {len(vals)}.')
    return vals



class LevelFilter(logging.Filter):      # pylint: disable=too-few-public-methods
    """
    A logging filter for the level to set min and max log levels for a handler.
    While the min level is redundant given logging already implements this with
    the base level functionality, the max level adds a new control.

    Class Attributes:
      N/A

    Instance Attributes:
      _min_exc_levelno (int or None): The min log level above which is to be
        included (exclusive).  Can be None to skip min level check.
      _max_inc_levelno (int or None): The max log level below which is to be
        included (inclusive).  Can be None to skip max level check.
    """
    def __init__(self, min_exc_level=None, max_inc_level=None):
        """
        Creates the level filter.

        Args:
          min_exc_level (int/str/None): The min log level above which is to be
            included (exclusive), as level number or level name.  None
            disables filtering the min level.
          max_inc_level (int/str/None): The max log level below which is to be
            included (inclusive), as level number or level name.  None disables
            filtering the max level.
        """
        self._min_exc_levelno = _to_levelno(min_exc_level)
        self._max_inc_levelno = _to_levelno(max_inc_level)
        super().__init__()



    def filter(self, record):
        """
        Filters the provided record according to the logic in this method.

        Args:
          record (LogRecord): The log record that is being checked whether to
            log.

        Returns:
          (bool): True if should log; False to drop.
        """
        if self._min_exc_levelno is not None \
                and record.levelno <= self._min_exc_levelno:
            return False
        if self._max_inc_levelno is not None \
                and record.levelno > self._max_inc_levelno:
            return False
        return True



def _to_levelno(level):
    """
    Converts a level given by number or by name into the level number.

    Args:
      level (int/str/None): The level.  Names are case insensitive; `all` and
        `verbose` are accepted as aliases of `notset`.

    Returns:
      (int or None): The level number; None if level was None.
    """
    if level is None:
        return None
    try:
        return int(level)
    except ValueError:
        name = level.strip().upper()
        if name in ('ALL', 'VERBOSE'):
            name = 'NOTSET'
        # Level name dict is bi-directional lookup
        return logging.getLevelName(name)



def find_handler(handler_name):
    """
    Finds the handler attached to the root logger with the given name, as
    named by the `[handlers] > keys` entry of the logger config.

    Args:
      handler_name (str): The handler name from the logger config.

    Returns:
      (Handler or None): The matching root handler; None if not found.
    """
    for h_existing in logging.getLogger().handlers:
        if h_existing.get_name() == handler_name:
            return h_existing
    return None



def init_logger(override_log_level=None, conf_file=None):
    """
    Initializes the logger(s).  This is meant to be called once per main entry.
    Each module should still get the logger for its own module name.

    On top of the standard `logging.config.fileConfig()` options, each handler
    section may give:
    - `max level`: messages above this level are filtered out of the handler.
    - `allow level override lower` / `allow level override raise`: whether the
      override level may lower / raise this handler's level.

    Args:
      override_log_level (str/int/None): The log level to override and set for
        the root logger as well as for the handlers that allow it.  In addition
        to the standard level names and the `disabled` level added here, `all`
        and `verbose` can be used for `notset`.
      conf_file (str or None): Path to the logger config; defaults to
        `logger.conf` in the project config dir.
    """
    if conf_file is None:
        conf_file = os.path.join(dirs.get_conf_path(), 'logger.conf')

    logging.addLevelName(99, 'DISABLED')
    logging.config.fileConfig(conf_file, disable_existing_loggers=False)

    root_logger = logging.getLogger()
    new_levelno = _to_levelno(override_log_level)
    if new_levelno is not None:
        root_logger.setLevel(new_levelno)

    logger_cp = configparser.RawConfigParser()
    logger_cp.read(conf_file)

    handler_names = [h.strip() \
            for h in logger_cp['handlers']['keys'].split(',')]
    for h_name in handler_names:
        h_existing = find_handler(h_name)
        if h_existing is None:
            logger.warning(f'Handler \'{h_name}\' listed in logger config'
                    + ' but not attached to the root logger.')
            continue

        section = f'handler_{h_name}'
        if new_levelno is not None:
            allow_lower = logger_cp.getboolean(section,
                    'allow level override lower', fallback=False)
            allow_raise = logger_cp.getboolean(section,
                    'allow level override raise', fallback=False)

            if allow_lower and not allow_raise \
                    and new_levelno < h_existing.level:
                h_existing.setLevel(new_levelno)
            elif allow_raise and not allow_lower \
                    and new_levelno > h_existing.level:
                h_existing.setLevel(new_levelno)
            # Both -- would only allow to set to level it already was

        max_level = logger_cp.get(section, 'max level', fallback=None)
        if max_level is not None:
            h_existing.addFilter(LevelFilter(max_inc_level=max_level))
