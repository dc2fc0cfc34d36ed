# pylint: disable=missing-module-docstring
__all__ = [
        'test_assembly',
        'test_audit',
        'test_pack_config',
        'test_pack_result',
        'test_packer',
        'test_scene',
]
