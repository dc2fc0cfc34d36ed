#!/usr/bin/env python3
"""
Locates the repo, source and config dirs, and resolves the paths written in run
configs (meshes, target images, output and cache dirs) against the config
file's own dir.

Module Attributes:
  N/A

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import os.path



def get_root_path():
    """
    Get the root path to the project/repo root dir.

    Returns:
      (os.path): Path to root dir.
    """
    return os.path.dirname(get_src_app_root_path())



def get_src_app_root_path():
    """
    Get the path to project/app source root dir.

    Returns:
      (os.path): Path to source root dir.
    """
    this_script_dir = os.path.dirname(os.path.realpath(__file__))
    return os.path.dirname(this_script_dir)



def get_conf_path():
    """
    Get the path to configuration files (logger config and run config
    examples).

    Returns:
      (os.path): Path to config dir.
    """
    return os.path.join(get_root_path(), 'config')



def resolve_path(path, base_dir):
    """
    Resolves a path given in a config file.  Relative paths are taken relative
    to the directory holding that config file; absolute paths are untouched.

    Args:
      path (str): The path as written in the config file.
      base_dir (str): The directory of the config file.

    Returns:
      (str): The resolved, normalized path.
    """
    path = os.path.expanduser(path.strip())
    if not os.path.isabs(path):
        path = os.path.join(base_dir, path)
    return os.path.normpath(path)
