"""Lefschetz maps and the HLC / Brylinski / dd^Λ-Lemma verdicts"""
from __future__ import annotations

import logging
from typing import TYPE_CHECKING
from typing import List
from typing import Optional

from pydantic import BaseModel
from pydantic import Extra

from symplex.algebra.linalg import GradedMap
from symplex.algebra.linalg import Matrix
from symplex.algebra.linalg import image
from symplex.algebra.linalg import intersect
from symplex.algebra.linalg import kernel
from symplex.cohomology.complex import BiDifferentialComplex
from symplex.cohomology.spaces import InducedMap
from symplex.cohomology.spaces import cohomology
from symplex.cohomology.spaces import induced_map
from symplex.cohomology.spaces import natural_map
from symplex.types import CohomologyKind

if TYPE_CHECKING:
    from symplex.symplectic import SymplecticStructure

__all__ = [
    "LefschetzRank",
    "VerdictReport",
    "lefschetz_map",
    "dd_lambda_subspaces",
    "verdicts",
]

_log = logging.getLogger(__name__)


class LefschetzRank(BaseModel):
    """rank of [ω^k]: H^{n-k} -> H^{n+k}"""

    k: int
    rank: int
    source_dim: int
    target_dim: int

    class Config:
        extra = Extra.forbid

    @property
    def injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim


class VerdictReport(BaseModel):
    """the verdict battery of a symplectic complex

    Per-degree lists are indexed like ``degrees``, per-k lists run over
    k = 0..n.
    """

    degrees: List[int]
    delta: List[int]
    hlc: bool
    brylinski: bool
    dd_lambda_lemma: bool
    # bc -> dR
    bc_to_dr_injective: List[bool]
    bc_to_dr_surjective: List[bool]
    harmonic_surjective: List[bool]
    lefschetz_ranks: List[LefschetzRank]
    bc_lefschetz_ranks: List[LefschetzRank]
    dd_lambda_subspaces: bool

    class Config:
        extra = Extra.forbid

    @property
    def delta_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.delta)

    @property
    def delta_vanishes(self) -> bool:
        return not any(self.delta)

    @property
    def lefschetz_injective(self) -> bool:
        return all(r.injective for r in self.lefschetz_ranks)

    @property
    def lefschetz_surjective(self) -> bool:
        return all(r.surjective for r in self.lefschetz_ranks)

    @property
    def bc_to_dr_bijective(self) -> bool:
        return all(self.bc_to_dr_injective) and all(self.bc_to_dr_surjective)


def _lefschetz_power(L: GradedMap, start: int, k: int, dim: int) -> Matrix:
    out = Matrix.identity(dim)
    for j in range(k):
        out = L[start + 2 * j] @ out
    return out


def lefschetz_map(
    c: BiDifferentialComplex,
    s: Optional[SymplecticStructure],
    k: int,
    *,
    kind: CohomologyKind = CohomologyKind.DR,
) -> InducedMap:
    """[ω^k]: H^{n-k} -> H^{n+k} in de Rham (or Bott-Chern) cohomology"""
    L = c.lefschetz if c.lefschetz is not None else (s.lefschetz if s else None)
    n = c.n_half if c.n_half is not None else (s.n_half if s else None)
    if L is None or n is None:
        raise ValueError("complex carries no Lefschetz operator")
    if not 0 <= k <= n:
        raise ValueError(f"k must be in 0..{n}, got {k}")
    source = cohomology(c, kind, n - k)
    target = cohomology(c, kind, n + k)
    op = _lefschetz_power(L, n - k, k, c.dim(n - k))
    return induced_map(source, target, op)


def dd_lambda_subspaces(c: BiDifferentialComplex, degree: int) -> bool:
    """im ∂̄ ∩ ker ∂ = im ∂∂̄ = im ∂ ∩ ker ∂̄ in one degree"""
    d, db = c.del_, c.debar
    a = intersect(image(db[degree + 1]), kernel(d[degree]))
    b = image(c.ddbar[degree])
    e = intersect(image(d[degree - 1]), kernel(db[degree]))
    return a == b == e


def _ranks(maps: List[InducedMap]) -> List[LefschetzRank]:
    return [
        LefschetzRank(
            k=k,
            rank=m.rank,
            source_dim=m.source.dim,
            target_dim=m.target.dim,
        )
        for k, m in enumerate(maps)
    ]


def verdicts(
    c: BiDifferentialComplex, s: Optional[SymplecticStructure] = None
) -> VerdictReport:
    """compute every verdict independently of the others"""
    degrees = c.degrees
    dr = {k: cohomology(c, CohomologyKind.DR, k).dim for k in degrees}
    bc = {k: cohomology(c, CohomologyKind.BC, k).dim for k in degrees}
    ae = {k: cohomology(c, CohomologyKind.AEPPLI, k).dim for k in degrees}
    delta = [bc[k] + ae[k] - 2 * dr[k] for k in degrees]

    to_dr = [natural_map(c, CohomologyKind.BC, CohomologyKind.DR, k) for k in degrees]
    harmonic = [
        natural_map(c, CohomologyKind.HARMONIC, CohomologyKind.DR, k) for k in degrees
    ]
    n = c.n_half if c.n_half is not None else (s.n_half if s else None)
    if n is None:
        raise ValueError("complex carries no middle degree")
    lef = [lefschetz_map(c, s, k) for k in range(n + 1)]
    lef_bc = [lefschetz_map(c, s, k, kind=CohomologyKind.BC) for k in range(n + 1)]

    report = VerdictReport(
        degrees=degrees,
        delta=delta,
        hlc=all(m.bijective for m in lef),
        brylinski=all(m.surjective for m in harmonic),
        dd_lambda_lemma=all(m.injective for m in to_dr),
        bc_to_dr_injective=[m.injective for m in to_dr],
        bc_to_dr_surjective=[m.surjective for m in to_dr],
        harmonic_surjective=[m.surjective for m in harmonic],
        lefschetz_ranks=_ranks(lef),
        bc_lefschetz_ranks=_ranks(lef_bc),
        dd_lambda_subspaces=all(dd_lambda_subspaces(c, k) for k in degrees),
    )
    if not report.delta_nonnegative:
        _log.warning("%s: negative delta %s", c.name, delta)
    return report
