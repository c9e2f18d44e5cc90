"""Additive Deligne-Simpson problem: decide, construct and verify irreducible
matrix tuples with prescribed conjugacy classes and sum zero."""

from .classdata import ClassTuple, JordanClass, XiSequence, normalize
from .errors import InputError, InternalError, ResourceError
from .exactlinalg import Matrix

__all__ = [
    "ClassTuple",
    "InputError",
    "InternalError",
    "JordanClass",
    "Matrix",
    "ResourceError",
    "XiSequence",
    "normalize",
]
__version__ = "0.1.0"
