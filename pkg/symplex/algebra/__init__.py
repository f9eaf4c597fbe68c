"""exact exterior algebra, structure equations and linear algebra"""
from __future__ import annotations

from symplex.algebra.forms import Bivector
from symplex.algebra.forms import Form
from symplex.algebra.forms import Monomial
from symplex.algebra.forms import interior_product
from symplex.algebra.forms import wedge
from symplex.algebra.parser import StructureSyntaxError
from symplex.algebra.parser import format_structure
from symplex.algebra.parser import parse_form
from symplex.algebra.parser import parse_structure
from symplex.algebra.presentation import Diagnostic
from symplex.algebra.presentation import LieAlgebraPresentation
from symplex.algebra.presentation import ce_differential
from symplex.algebra.presentation import validate_presentation

__all__ = [
    "Bivector",
    "Diagnostic",
    "Form",
    "LieAlgebraPresentation",
    "Monomial",
    "StructureSyntaxError",
    "ce_differential",
    "format_structure",
    "interior_product",
    "parse_form",
    "parse_structure",
    "validate_presentation",
    "wedge",
]
