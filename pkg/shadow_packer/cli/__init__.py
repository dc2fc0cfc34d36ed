# pylint: disable=missing-module-docstring
__all__ = [
        'artifacts',
        'commands',
        'run_config',
]
