#!/usr/bin/env python3
"""
Grayscale silhouette images: target ingestion, PNG output, and comparison.
Pixel value 1.0 is foreground (shadow); images are row-major with row 0 at
the top.

Module Attributes:
  BINARY_THRESHOLD_8BIT (int): 8-bit gray level at or above which a target
    pixel is foreground.
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import logging
import os.path

import numpy as np
from PIL import Image as PilImage
from PIL import UnidentifiedImageError

from shadow_packer.general.exceptions import *      # pylint: disable=wildcard-import, unused-wildcard-import



BINARY_THRESHOLD_8BIT = 128

logger = logging.getLogger(__name__)



class Image:
    """
    A silhouette image.

    Class Attributes:
      N/A

    Instance Attributes:
      pixels (np.ndarray): (height, width) float64 values in [0, 1].
    """
    def __init__(self, pixels):
        """
        Creates the image.

        Args:
          pixels (array-like): (height, width) values in [0, 1].
        """
        self.pixels = np.array(pixels, dtype=np.float64)
        assert self.pixels.ndim == 2
        assert np.all((self.pixels >= 0.0) & (self.pixels <= 1.0))



    @classmethod
    def zeros(cls, width, height):
        """
        Args:
          width (int): Image width, pixels.
          height (int): Image height, pixels.

        Returns:
          (Image): All-background image.
        """
        return cls(np.zeros((height, width)))



    @property
    def width(self):
        """
        Returns:
          (int): Width M, pixels.
        """
        return self.pixels.shape[1]



    @property
    def height(self):
        """
        Returns:
          (int): Height N, pixels.
        """
        return self.pixels.shape[0]



    def thresholded(self, level=0.5):
        """
        Args:
          level (float): Values at or above this become foreground.

        Returns:
          (Image): The binarized image.
        """
        return Image((self.pixels >= level).astype(np.float64))



    def to_uint8(self):
        """
        Returns:
          (np.ndarray): (height, width) uint8 gray levels.
        """
        return np.round(self.pixels * 255.0).astype(np.uint8)



def load_target(path, width=None, height=None):
    """
    Loads a target silhouette from a PNG.  The image is converted to 8-bit
    grayscale and binarized: gray >= 128 is foreground (1.0), else 0.0.

    Args:
      path (str): PNG path.
      width (int or None): Expected width; not checked if None.
      height (int or None): Expected height; not checked if None.

    Returns:
      (Image): The binary target.

    Raises:
      (ImageFileError): The file is missing or not a readable image.
      (ImageDimensionError): The size differs from the one expected.
    """
    if not os.path.isfile(path):
        raise ImageFileError(f'Target image not found: {path}')
    try:
        with PilImage.open(path) as pil_img:
            gray = np.asarray(pil_img.convert('L'))
    except (UnidentifiedImageError, OSError) as ex:
        raise ImageFileError(f'Target image could not be read: {path}') \
                from ex

    if (width is not None and gray.shape[1] != width) \
            or (height is not None and gray.shape[0] != height):
        raise ImageDimensionError(f'Target image {path} is'
                + f' {gray.shape[1]}x{gray.shape[0]}; the view expects'
                + f' {width}x{height}.')

    return Image((gray >= BINARY_THRESHOLD_8BIT).astype(np.float64))



def save_png(image, path, threshold=None):
    """
    Writes an image as an 8-bit grayscale PNG.

    Args:
      image (Image): The image.
      path (str): Output path.
      threshold (float or None): If given, binarize at this level first.
    """
    if threshold is not None:
        image = image.thresholded(threshold)
    PilImage.fromarray(image.to_uint8()).save(path)
    logger.debug('Wrote %(path)s', {'path': path})



def save_heatmap(rendered, target, path):
    """
    Writes the per-pixel squared error between two images as a grayscale PNG
    (white = error 1).

    Args:
      rendered (Image): The rendered image.
      target (Image): The target image.
      path (str): Output path.

    Raises:
      (ImageDimensionError): The images differ in size.
    """
    check_same_dims(rendered, target)
    save_png(Image((rendered.pixels - target.pixels) ** 2), path)



def check_same_dims(a, b):
    """
    Raises:
      (ImageDimensionError): `a` and `b` differ in size.
    """
    if a.pixels.shape != b.pixels.shape:
        raise ImageDimensionError(f'Image sizes differ: {a.width}x{a.height}'
                + f' vs {b.width}x{b.height}.')



def iou(a, b, level=0.5):
    """
    Gets the intersection over union of two images binarized at `level`.

    Args:
      a (Image): First image.
      b (Image): Second image.
      level (float): Binarization level.

    Returns:
      (float): IoU in [0, 1]; 1.0 when both are empty.

    Raises:
      (ImageDimensionError): The images differ in size.
    """
    check_same_dims(a, b)
    fg_a = a.pixels >= level
    fg_b = b.pixels >= level
    union = np.count_nonzero(fg_a | fg_b)
    if union == 0:
        return 1.0
    return np.count_nonzero(fg_a & fg_b) / union
