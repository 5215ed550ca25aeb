"""Exact computations in interpolated permutation-module categories."""

from .combinatorics import CosetMatrix, ObjectLabel, parse_matrix, parse_object
from .deligne import PartitionDiagram, compose_diagrams, parse_diagram
from .errors import GenericPointError, InputError, PermcatError, ResourceError, VerificationFailure
from .exact import IVPoly, format_ivpoly, parse_ivpoly
from .hsmod import hs_scalar
from .schur import Morphism, compose_interpolated, specialize_morphism, tensor_interpolated

__all__ = [
    "CosetMatrix",
    "GenericPointError",
    "IVPoly",
    "InputError",
    "Morphism",
    "ObjectLabel",
    "PartitionDiagram",
    "PermcatError",
    "ResourceError",
    "VerificationFailure",
    "compose_diagrams",
    "compose_interpolated",
    "format_ivpoly",
    "hs_scalar",
    "parse_diagram",
    "parse_ivpoly",
    "parse_matrix",
    "parse_object",
    "specialize_morphism",
    "tensor_interpolated",
]
