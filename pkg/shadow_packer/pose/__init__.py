# pylint: disable=missing-module-docstring
__all__ = [
        'pose',
]
