"""cohomologies and verdicts of bi-differential complexes"""
from __future__ import annotations

from symplex.cohomology.complex import BiDifferentialComplex
from symplex.cohomology.complex import ComplexError
from symplex.cohomology.complex import from_presentation
from symplex.cohomology.complex import load_raw_complex
from symplex.cohomology.spaces import CohomologySpace
from symplex.cohomology.spaces import InducedMap
from symplex.cohomology.spaces import cohomology
from symplex.cohomology.spaces import h_aeppli
from symplex.cohomology.spaces import h_bc
from symplex.cohomology.spaces import h_debar
from symplex.cohomology.spaces import h_dr
from symplex.cohomology.spaces import harmonic_space
from symplex.cohomology.spaces import natural_map
from symplex.cohomology.verdicts import VerdictReport
from symplex.cohomology.verdicts import lefschetz_map
from symplex.cohomology.verdicts import verdicts

__all__ = [
    "BiDifferentialComplex",
    "CohomologySpace",
    "ComplexError",
    "InducedMap",
    "VerdictReport",
    "cohomology",
    "from_presentation",
    "h_aeppli",
    "h_bc",
    "h_debar",
    "h_dr",
    "harmonic_space",
    "lefschetz_map",
    "load_raw_complex",
    "natural_map",
    "verdicts",
]
