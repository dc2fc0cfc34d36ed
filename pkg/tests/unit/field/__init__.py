# pylint: disable=missing-module-docstring
__all__ = [
        'test_analytic',
        'test_sdf_grid',
        'test_warped',
]
