# pylint: disable=missing-module-docstring
__all__ = [
        'test_images',
        'test_silhouette',
        'test_targets',
        'test_views',
]
