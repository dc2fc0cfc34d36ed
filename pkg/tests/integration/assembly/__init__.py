# pylint: disable=missing-module-docstring
__all__ = [
        'test_int__assembly',
]
