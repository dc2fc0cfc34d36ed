# pylint: disable=missing-module-docstring
__all__ = [
        'images',
        'silhouette',
        'targets',
        'views',
]
