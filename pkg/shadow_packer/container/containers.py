#!/usr/bin/env python3
"""
The container access module.  This is intended to be the item accessed outside
of the container submodule/folder.

Module Attributes:
  _CONTAINER_TYPES ((Class<Container<>>)): All container classes supported.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
from shadow_packer.container import box
from shadow_packer.container import mesh_container



_CONTAINER_TYPES = (
    box.BoxContainer,
    mesh_container.MeshContainer,
)



def get_container(run_cp, base_dir):
    """
    Loads the container described by the `[container]` section of a run
    config, picking the container type whose names include the `type` field.

    Args:
      run_cp (ConfigParser): The run config.
      base_dir (str): Directory of the run config, for relative paths.

    Returns:
      container (Container<> or None): The container, in world units; None if
        there is no `[container]` section or no type matches.
    """
    if not run_cp.has_section('container'):
        return None

    type_name = run_cp.get('container', 'type', fallback='').strip().lower()
    for container_type in _CONTAINER_TYPES:
        if type_name in container_type.get_container_type_names():
            return container_type.load_from_config(run_cp, base_dir)
    return None



def get_all_container_type_names():
    """
    Returns:
      ([str]): Every name accepted as `[container] > type`.
    """
    return [n for c in _CONTAINER_TYPES for n in c.get_container_type_names()]
