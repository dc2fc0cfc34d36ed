# pylint: disable=missing-module-docstring
__all__ = [
        'test_adam',
        'test_schedule',
]
