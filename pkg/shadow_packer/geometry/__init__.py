# pylint: disable=missing-module-docstring
__all__ = [
        'grid_spec',
        'mesh',
        'sdf',
]
