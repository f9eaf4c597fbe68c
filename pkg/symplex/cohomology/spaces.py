"""cohomologies of a bi-differential complex and maps between them"""
from __future__ import annotations

import logging
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

from symplex.algebra.linalg import Matrix
from symplex.algebra.linalg import Quotient
from symplex.algebra.linalg import Subspace
from symplex.algebra.linalg import Vector
from symplex.algebra.linalg import image
from symplex.algebra.linalg import intersect
from symplex.algebra.linalg import kernel
from symplex.algebra.linalg import rank
from symplex.algebra.linalg import subspace_sum
from symplex.algebra.scalars import format_scalar
from symplex.cohomology.complex import BiDifferentialComplex
from symplex.cohomology.complex import ComplexError
from symplex.types import CohomologyKind

__all__ = [
    "CohomologySpace",
    "InducedMap",
    "cohomology",
    "h_dr",
    "h_debar",
    "h_bc",
    "h_aeppli",
    "harmonic_space",
    "natural_map",
    "render_vector",
]

_log = logging.getLogger(__name__)

NATURAL_MAPS = {
    (CohomologyKind.BC, CohomologyKind.DR),
    (CohomologyKind.BC, CohomologyKind.DLAMBDA),
    (CohomologyKind.DR, CohomologyKind.AEPPLI),
    (CohomologyKind.DLAMBDA, CohomologyKind.AEPPLI),
    (CohomologyKind.HARMONIC, CohomologyKind.DR),
    (CohomologyKind.BC, CohomologyKind.AEPPLI),
}


class CohomologySpace:
    """a quotient numerator / denominator in one degree of a complex"""

    __slots__ = ("kind", "degree", "quotient")

    def __init__(self, kind: CohomologyKind, degree: int, quotient: Quotient) -> None:
        self.kind = kind
        self.degree = degree
        self.quotient = quotient

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def numerator(self) -> Subspace:
        return self.quotient.numerator

    @property
    def denominator(self) -> Subspace:
        return self.quotient.denominator

    @property
    def representatives(self) -> Subspace:
        """canonical cocycles, echelon reduced against the denominator"""
        return self.quotient.representatives

    def coordinates(self, v: Vector) -> List:
        return self.quotient.coordinates(v)

    def __repr__(self) -> str:
        return f"CohomologySpace({self.kind.value}, degree={self.degree}, dim={self.dim})"


def _compute(c: BiDifferentialComplex, kind: CohomologyKind, k: int) -> Quotient:
    dim = c.dim(k)
    d, db = c.del_, c.debar
    if kind == CohomologyKind.DR:
        return Quotient(kernel(d[k]), image(d[k - 1]))
    if kind == CohomologyKind.DLAMBDA:
        return Quotient(kernel(db[k]), image(db[k + 1]))
    if kind == CohomologyKind.HARMONIC:
        return Quotient(_harmonic(c, k), Subspace.zero(dim))
    ddbar_image = image(c.ddbar[k])
    if kind == CohomologyKind.BC:
        check = image(db[k + 1] @ d[k])
        if check != ddbar_image:
            raise ComplexError(f"im ∂∂̄ ≠ im ∂̄∂ in degree {k}")
        return Quotient(_harmonic(c, k), ddbar_image)
    if kind == CohomologyKind.AEPPLI:
        return Quotient(kernel(c.ddbar[k]), subspace_sum(image(d[k - 1]), image(db[k + 1])))
    raise ValueError(f"unknown cohomology kind {kind!r}")  # pragma: no cover


def _harmonic(c: BiDifferentialComplex, k: int) -> Subspace:
    key = ("harmonic-subspace", k)
    sub = c.cache.get(key)
    if sub is None:
        sub = intersect(kernel(c.del_[k]), kernel(c.debar[k]))
        c.cache[key] = sub
    return sub


def cohomology(
    c: BiDifferentialComplex, kind: CohomologyKind | str, k: int
) -> CohomologySpace:
    """one cohomology space, cached on the complex"""
    kind = CohomologyKind(kind)
    key = (kind, k)
    space = c.cache.get(key)
    if space is None:
        space = CohomologySpace(kind, k, _compute(c, kind, k))
        _log.debug("%s H^%d_%s = %d", c.name, k, kind.value, space.dim)
        c.cache[key] = space
    return space


def _all(c: BiDifferentialComplex, kind: CohomologyKind) -> Dict[int, CohomologySpace]:
    return {k: cohomology(c, kind, k) for k in c.degrees}


def h_dr(c: BiDifferentialComplex) -> Dict[int, CohomologySpace]:
    return _all(c, CohomologyKind.DR)


def h_debar(c: BiDifferentialComplex) -> Dict[int, CohomologySpace]:
    return _all(c, CohomologyKind.DLAMBDA)


def h_bc(c: BiDifferentialComplex) -> Dict[int, CohomologySpace]:
    """(ker ∂ ∩ ker ∂̄) / im ∂∂̄ in every degree"""
    return _all(c, CohomologyKind.BC)


def h_aeppli(c: BiDifferentialComplex) -> Dict[int, CohomologySpace]:
    """ker ∂∂̄ / (im ∂ + im ∂̄) in every degree"""
    return _all(c, CohomologyKind.AEPPLI)


def harmonic_space(c: BiDifferentialComplex) -> Dict[int, CohomologySpace]:
    """ker ∂ ∩ ker ∂̄ as a space without quotient"""
    return _all(c, CohomologyKind.HARMONIC)


# --- induced maps ----------------------------------------------------


class InducedMap:
    """a linear map between cohomology spaces in representative bases"""

    __slots__ = ("source", "target", "matrix", "rank")

    def __init__(self, source: CohomologySpace, target: CohomologySpace, matrix: Matrix):
        if matrix.shape != (target.dim, source.dim):
            raise ValueError("matrix does not fit source and target")
        self.source = source
        self.target = target
        self.matrix = matrix
        self.rank = rank(matrix)

    @property
    def injective(self) -> bool:
        return self.rank == self.source.dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target.dim

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    def __repr__(self) -> str:
        return (
            f"InducedMap({self.source.kind.value}^{self.source.degree} -> "
            f"{self.target.kind.value}^{self.target.degree}, rank={self.rank})"
        )


def induced_map(
    source: CohomologySpace,
    target: CohomologySpace,
    op: Optional[Matrix] = None,
) -> InducedMap:
    """send every source representative (through ``op``) to its target class"""
    columns = []
    for v in source.representatives.vectors():
        w = op.apply(v) if op is not None else v
        coords = target.coordinates(w)
        columns.append({i: x for i, x in enumerate(coords) if x})
    return InducedMap(source, target, Matrix.from_columns(columns, target.dim))


def natural_map(
    c: BiDifferentialComplex,
    from_kind: CohomologyKind | str,
    to_kind: CohomologyKind | str,
    degree: int,
) -> InducedMap:
    """the map induced by the identity, e.g. H_BC -> H_dR"""
    pair: Tuple[CohomologyKind, CohomologyKind] = (
        CohomologyKind(from_kind),
        CohomologyKind(to_kind),
    )
    if pair not in NATURAL_MAPS:
        raise ValueError(f"no natural map {pair[0].value} -> {pair[1].value}")
    return induced_map(cohomology(c, pair[0], degree), cohomology(c, pair[1], degree))


def render_vector(c: BiDifferentialComplex, k: int, v: Vector) -> str:
    """a vector as a combination of the complex's basis labels"""
    if not v:
        return "0"
    parts = []
    for i in sorted(v):
        coeff = format_scalar(v[i])
        label = c.label(k, i)
        if coeff == "1":
            parts.append(label)
        elif coeff == "-1":
            parts.append(f"-{label}")
        elif "+" in coeff[1:] or "-" in coeff[1:]:
            parts.append(f"({coeff})*{label}")
        else:
            parts.append(f"{coeff}*{label}")
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out
