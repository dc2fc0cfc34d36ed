# pylint: disable=missing-module-docstring
__all__ = [
        'box',
        'container_meta',
        'containers',
        'mesh_container',
]
