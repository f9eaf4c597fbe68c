"""symplex: exact symplectic cohomologies of solvmanifold models"""
from __future__ import annotations

from typing import TYPE_CHECKING

try:
    from ._version import version as __version__
except ImportError:
    __version__ = "not-installed"

if TYPE_CHECKING:
    from symplex.algebra.presentation import LieAlgebraPresentation
    from symplex.cohomology.complex import BiDifferentialComplex
    from symplex.modelfile import ModelFile
    from symplex.report import ResultReport
    from symplex.symplectic import SymplecticStructure

__all__ = [
    "LieAlgebraPresentation",
    "SymplecticStructure",
    "BiDifferentialComplex",
    "ModelFile",
    "ResultReport",
]

_MODULES = {
    "LieAlgebraPresentation": "symplex.algebra.presentation",
    "SymplecticStructure": "symplex.symplectic",
    "BiDifferentialComplex": "symplex.cohomology.complex",
    "ModelFile": "symplex.modelfile",
    "ResultReport": "symplex.report",
}


# allow importing items in __all__
def __getattr__(name):
    from importlib import import_module

    if name in __all__:
        return getattr(import_module(_MODULES[name]), name)
    raise AttributeError(f"module '{__name__}' has no attribute '{name}'")
