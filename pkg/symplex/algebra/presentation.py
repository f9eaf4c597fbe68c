"""Lie algebra presentations and their Chevalley-Eilenberg complex"""
from __future__ import annotations

import logging
from typing import TYPE_CHECKING
from typing import Dict
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

from symplex.algebra.forms import MAX_GENERATORS
from symplex.algebra.forms import Form
from symplex.algebra.forms import basis
from symplex.algebra.forms import basis_index
from symplex.algebra.forms import mask_indices
from symplex.algebra.linalg import GradedMap
from symplex.algebra.linalg import Matrix
from symplex.algebra.linalg import Subspace
from symplex.algebra.linalg import kernel
from symplex.algebra.scalars import K
from symplex.algebra.scalars import Scalar
from symplex.algebra.scalars import format_scalar
from symplex.algebra.scalars import is_real
from symplex.types import FieldTag

if TYPE_CHECKING:
    from symplex.twisted import CharacterWeight

__all__ = [
    "Diagnostic",
    "LieAlgebraPresentation",
    "ce_differential",
    "validate_presentation",
    "is_unimodular",
    "is_nilpotent",
    "operator_matrices",
]

_log = logging.getLogger(__name__)


class Diagnostic(NamedTuple):
    """outcome of a validation, truthy iff everything passed"""

    ok: bool
    issues: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def collect(cls, issues: Sequence[str]) -> Diagnostic:
        return cls(not issues, tuple(issues))


class LieAlgebraPresentation:
    """a Lie algebra given by the differentials of its dual generators

    d_of_generator[k - 1] is the 2-form d e^k. ``params`` records the
    parameter values this presentation was instantiated with.
    """

    def __init__(
        self,
        name: str,
        n: int,
        d_of_generator: Sequence[Form],
        *,
        params: Sequence[Tuple[str, Scalar]] = (),
        weights: Optional[Sequence[CharacterWeight]] = None,
    ) -> None:
        if not 1 <= n <= MAX_GENERATORS:
            raise ValueError(f"n must be in 1..{MAX_GENERATORS}, got {n}")
        if len(d_of_generator) != n:
            raise ValueError(f"need {n} differentials, got {len(d_of_generator)}")
        for k, f in enumerate(d_of_generator, start=1):
            if f and (f.degree != 2 or f.max_index > n):
                raise ValueError(f"d e{k} is not a 2-form over e1..e{n}")
        self.name = name
        self.n = n
        self.d_of_generator: Tuple[Form, ...] = tuple(d_of_generator)
        self.params = tuple(params)
        self.weights = tuple(weights) if weights is not None else None
        self._d_cache: Dict[int, Form] = {0: Form()}
        self._differential: Optional[GradedMap] = None

    @property
    def field_tag(self) -> FieldTag:
        real = all(is_real(c) for f in self.d_of_generator for c in f.terms.values())
        return FieldTag.RATIONAL if real else FieldTag.GAUSSIAN

    @property
    def dims(self) -> Dict[int, int]:
        return {k: len(basis(self.n, k)) for k in range(self.n + 1)}

    def __repr__(self) -> str:
        from symplex.algebra.parser import format_structure

        params = "".join(f", {s}={format_scalar(v)}" for s, v in self.params)
        return f"LieAlgebraPresentation({self.name!r}, {format_structure(self)!r}{params})"

    # --- differential on forms ---

    def _d_mask(self, mask: int) -> Form:
        cached = self._d_cache.get(mask)
        if cached is not None:
            return cached
        low = mask & -mask
        first = low.bit_length()
        rest = mask ^ low
        # d(e^i ∧ rest) = d e^i ∧ rest - e^i ∧ d rest
        out = (self.d_of_generator[first - 1] ^ Form({rest: K.one}))
        out = out - (Form.generator(first) ^ self._d_mask(rest))
        self._d_cache[mask] = out
        return out

    def d(self, a: Form) -> Form:
        """the Chevalley-Eilenberg differential extended by Leibniz"""
        out = Form()
        for m, c in a.terms.items():
            out = out + self._d_mask(m) * c
        return out

    @property
    def differential(self) -> GradedMap:
        if self._differential is None:
            self._differential = operator_matrices(self.n, self.d, shift=1)
        return self._differential


def operator_matrices(
    n: int,
    op,
    *,
    shift: int = 0,
    mirror: Optional[int] = None,
    degrees: Optional[Sequence[int]] = None,
) -> GradedMap:
    """matrices of a linear operator on forms in the monomial basis"""
    dims = {k: len(basis(n, k)) for k in range(n + 1)}
    blocks = {}
    for k in degrees if degrees is not None else range(n + 1):
        tgt = mirror - k if mirror is not None else k + shift
        if not 0 <= tgt <= n:
            continue
        tgt_index = basis_index(n, tgt)
        rows: Dict[int, Dict[int, Scalar]] = {}
        for j, m in enumerate(basis(n, k)):
            image = op(Form({m: K.one}))
            for mm, c in image.terms.items():
                if mm not in tgt_index:
                    raise ValueError(f"operator left degree {tgt} on {mask_indices(m)}")
                rows.setdefault(tgt_index[mm], {})[j] = c
        blocks[k] = Matrix(rows, (dims[tgt], dims[k]))
    return GradedMap(dims, blocks, shift=shift, mirror=mirror)


def ce_differential(p: LieAlgebraPresentation) -> GradedMap:
    """d as one matrix per degree, lexicographic monomial bases"""
    d = p.differential
    _log.debug(
        "ce differential %s: nonzeros %s",
        p.name,
        [d[k].nnz() for k in d.degrees],
    )
    return d


def validate_presentation(p: LieAlgebraPresentation) -> Diagnostic:
    """check d∘d = 0 on every generator (the Jacobi identity)"""
    issues: List[str] = []
    for k in range(1, p.n + 1):
        residue = p.d(p.d_of_generator[k - 1])
        if residue:
            issues.append(f"d² ≠ 0 at generator e{k}: d²e{k} = {residue.to_str()}")
    return Diagnostic.collect(issues)


def is_unimodular(p: LieAlgebraPresentation) -> bool:
    """tr ad_X = 0 for all X, i.e. d vanishes on (n-1)-forms"""
    return p.differential[p.n - 1].is_zero()


def is_nilpotent(p: LieAlgebraPresentation) -> bool:
    """the dual central series V_1 ⊂ V_2 ⊂ ... reaches all of g*

    V_1 are the closed 1-forms and V_{i+1} = {x : dx ∈ ∧²V_i}.
    """
    n = p.n
    one_forms = basis(n, 1)
    two_index = basis_index(n, 2)
    d1 = p.differential[1]
    current = kernel(d1)
    while True:
        forms = [
            Form({one_forms[j]: c for j, c in v.items()}) for v in current.vectors()
        ]
        wedges = []
        for a in range(len(forms)):
            for b in range(a + 1, len(forms)):
                w = forms[a] ^ forms[b]
                wedges.append({two_index[m]: c for m, c in w.terms.items()})
        span = Subspace.from_vectors(len(two_index), wedges)
        ann = kernel(span.basis)
        grown = kernel(ann.basis @ d1)
        if grown.dim == n:
            return True
        if grown == current:
            return False
        current = grown
