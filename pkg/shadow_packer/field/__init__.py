# pylint: disable=missing-module-docstring
__all__ = [
        'analytic',
        'sdf_grid',
        'warped',
]
