"""Workbench for linear and nonlinear index codes over small prime fields."""

from .errors import IndexCodingError
from .gf import BlockMatrix, FieldSpec, GfMatrix
from .instance import Instance, MaisResult
from .matroid import MatroidSpec, SearchOutcome

__all__ = [
    "BlockMatrix",
    "FieldSpec",
    "GfMatrix",
    "IndexCodingError",
    "Instance",
    "MaisResult",
    "MatroidSpec",
    "SearchOutcome",
]

__version__ = "0.1.0"
