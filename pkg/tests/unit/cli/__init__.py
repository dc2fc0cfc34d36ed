# pylint: disable=missing-module-docstring
__all__ = [
        'test_artifacts',
        'test_commands',
        'test_main',
        'test_run_config',
]
