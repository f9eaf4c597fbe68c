"""symplex.types

A collection of useful enums and type aliases in symplex
"""
from __future__ import annotations

import os
from enum import Enum
from typing import Union

from typing_extensions import TypeAlias

__all__ = [
    "PathLike",
    "FieldTag",
    "CohomologyKind",
    "OutputFormat",
]

PathLike: TypeAlias = Union[str, "os.PathLike[str]"]


class FieldTag(str, Enum):
    """coefficient field needed by a presentation"""

    RATIONAL = "rational"
    GAUSSIAN = "gaussian"


class CohomologyKind(str, Enum):
    """the cohomologies of a bi-differential complex (∂, ∂̄)"""

    DR = "dR"
    DLAMBDA = "dLambda"
    BC = "BC"
    AEPPLI = "A"
    HARMONIC = "harmonic"


class OutputFormat(str, Enum):
    TEXT = "text"
    CSV = "csv"
    JSON = "json"

