# pylint: disable=missing-module-docstring
__all__ = [
        'assembly',
        'audit',
        'pack_config',
        'pack_result',
        'packer',
        'scene',
]
