# pylint: disable=missing-module-docstring
__all__ = []
