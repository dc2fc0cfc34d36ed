# pylint: disable=missing-module-docstring
__all__ = [
        'test_grid_spec',
        'test_mesh',
        'test_sdf',
]
