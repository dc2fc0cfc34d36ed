# pylint: disable=missing-module-docstring
__all__ = [
        'test_config',
        'test_dirs',
        'test_utils',
]
