#!/usr/bin/env python3
"""
This module lists all user defined exceptions for import to the modules
that need them.  `InputError` comes first since every input-related exception
subclasses it; the rest are in alphabetical order.

Everything deriving from `InputError` is reported by the command line as an
input error (exit code 2); `NumericalAbortError` is reported as a numerical
abort (exit code 4).

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""



class InputError(Exception):
    """
    Base for every error caused by what the user provided (files, config
    values, parameters), as opposed to a failure of the optimization itself.
    """



class ConfigError(InputError):
    """
    Raised when a run configuration is missing a required field or a field
    holds an invalid value.  The message names the section and field.
    """



class ContainerTooSmallError(InputError):
    """
    Raised when the container offers no interior lattice point at which an
    object can be initialized.
    """



class GridCoverageError(InputError):
    """
    Raised when a grid spec does not cover the mesh to be baked (including the
    required padding).
    """



class ImageDimensionError(InputError):
    """
    Raised when image dimensions or image counts do not match what the view
    configuration or the other operand expects.
    """



class ImageFileError(InputError):
    """
    Raised when a target image cannot be found or decoded.
    """



class MeshFileError(InputError):
    """
    Raised when a mesh file cannot be found, read, or parsed.
    """



class MeshValidationError(InputError):
    """
    Raised when a mesh is not closed and consistently oriented.  The message
    names the first offending edge.
    """



class MeshIndexError(MeshValidationError):
    """
    Raised when a face references a vertex index that does not exist.
    """



class MeshOrientationError(InputError):
    """
    Raised when a closed mesh has a negative signed volume (inward-facing
    triangles).
    """



class NumericalAbortError(Exception):
    """
    Raised when a loss value or gradient becomes non-finite during
    optimization.

    Instance Attributes:
      obj_index (int or None): Index of the object whose parameters were hit,
        if known.
      term (str or None): Name of the loss term that produced the non-finite
        value, if known.
    """
    def __init__(self, msg, obj_index=None, term=None):
        """
        Creates the error.

        Args:
          msg (str): The diagnostic message.
          obj_index (int or None): Index of the offending object.
          term (str or None): Name of the offending loss term.
        """
        super().__init__(msg)
        self.obj_index = obj_index
        self.term = term



class ParameterError(InputError):
    """
    Raised when a numeric parameter is outside of its valid range.
    """



class PreconditionError(InputError):
    """
    Raised when the inputs of a driver violate a documented precondition (e.g.
    parts larger than the whole they should reassemble).
    """



class UnknownPoseIdError(InputError):
    """
    Raised when a result file references an object id that is not part of the
    scene it is applied to.
    """
