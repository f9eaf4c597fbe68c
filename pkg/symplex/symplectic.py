"""symplectic structures on a Lie algebra and their operators

Conventions: the Gram matrix is Ω_ij = ω(X_i, X_j), the Poisson bivector
has components (Ω⁻¹)_ij, Λ = -ι_Π and H acts on k-forms by n - k where
2n is the dimension. The star uses the volume form ωⁿ/n!.
With these choices [Λ, L] = H and ⋆² = id hold exactly.
"""
from __future__ import annotations

import logging
from itertools import combinations
from math import factorial
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

from symplex.algebra.forms import Bivector
from symplex.algebra.forms import Form
from symplex.algebra.forms import basis
from symplex.algebra.forms import from_vector
from symplex.algebra.forms import indices_mask
from symplex.algebra.forms import interior_product
from symplex.algebra.forms import mask_indices
from symplex.algebra.forms import to_vector
from symplex.algebra.linalg import GradedMap
from symplex.algebra.linalg import Matrix
from symplex.algebra.linalg import Subspace
from symplex.algebra.linalg import inverse
from symplex.algebra.linalg import kernel
from symplex.algebra.linalg import rank
from symplex.algebra.linalg import solve
from symplex.algebra.presentation import LieAlgebraPresentation
from symplex.algebra.presentation import operator_matrices
from symplex.algebra.scalars import K
from symplex.algebra.scalars import Scalar

__all__ = [
    "SymplecticError",
    "SymplecticStructure",
    "build_symplectic",
    "lefschetz_L",
    "dual_lefschetz_Lambda",
    "weight_H",
    "symplectic_star",
    "d_lambda",
    "primitive_decomposition",
    "primitive_subspace",
    "primitive_dims",
]

_log = logging.getLogger(__name__)


class SymplecticError(ValueError):
    """raised when a 2-form does not define a symplectic structure

    ``kind`` is one of "not closed", "degenerate" or "shape".
    """

    def __init__(self, kind: str, msg: str) -> None:
        super().__init__(f"{kind}: {msg}")
        self.kind = kind


def _wedge_power(a: Form, k: int) -> Form:
    out = Form.one()
    for _ in range(k):
        out = out ^ a
    return out


class SymplecticStructure:
    """a closed non-degenerate 2-form on a presentation

    Operator matrices (L, Λ, H, ⋆, d^Λ) are computed lazily and cached.
    """

    def __init__(self, presentation: LieAlgebraPresentation, omega: Form) -> None:
        n = presentation.n
        self.presentation = presentation
        self.omega = omega
        self.n_half = n // 2
        self.gram = _gram(omega, n)
        inv = inverse(self.gram)
        self.pi = Bivector(
            {(i + 1, j + 1): inv[i, j] for i in range(n) for j in range(i + 1, n)}
        )
        self._pi_rows: Dict[int, Dict[int, Scalar]] = {
            i: dict(r) for i, r in inv.rows.items()
        }
        self.omega_top = _wedge_power(omega, self.n_half)
        top = self.omega_top.coefficient(indices_mask(range(1, n + 1)))
        self.volume = K.quo(top, K.convert(factorial(self.n_half)))
        self._det_cache: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Scalar] = {}
        self._star_cache: Dict[int, Form] = {}
        self._ops: Dict[str, GradedMap] = {}

    @property
    def n(self) -> int:
        return self.presentation.n

    def __repr__(self) -> str:
        return (
            f"SymplecticStructure({self.presentation.name!r}, "
            f"omega={self.omega.to_str(compact=True)!r})"
        )

    # --- pointwise operators on forms ---

    def L(self, a: Form) -> Form:
        return self.omega ^ a

    def Lambda(self, a: Form) -> Form:
        return -interior_product(self.pi, a)

    def _minor(self, rows: Tuple[int, ...], cols: Tuple[int, ...]) -> Scalar:
        """det of the (rows, cols) submatrix of Ω⁻¹ by sparse expansion"""
        if not rows:
            return K.one
        key = (rows, cols)
        cached = self._det_cache.get(key)
        if cached is not None:
            return cached
        acc = K.zero
        head = self._pi_rows.get(rows[0], {})
        for pos, j in enumerate(cols):
            v = head.get(j)
            if v is None:
                continue
            sub = self._minor(rows[1:], cols[:pos] + cols[pos + 1 :])
            term = v * sub
            acc = acc - term if pos & 1 else acc + term
        self._det_cache[key] = acc
        return acc

    def _star_mask(self, mask: int) -> Form:
        cached = self._star_cache.get(mask)
        if cached is not None:
            return cached
        n = self.n
        full = (1 << n) - 1
        cols = tuple(i - 1 for i in mask_indices(mask))
        k = len(cols)
        # e^I ∧ ⋆e^J = G(I, J) vol forces the coefficient on the complement of I
        candidates = sorted(
            {i for i, r in self._pi_rows.items() if any(j in r for j in cols)}
        )
        terms: Dict[int, Scalar] = {}
        for rows in combinations(candidates, k):
            g = self._minor(rows, cols)
            if g == K.zero:
                continue
            i_mask = indices_mask(i + 1 for i in rows)
            c_mask = full ^ i_mask
            sign = (Form({i_mask: K.one}) ^ Form({c_mask: K.one})).coefficient(full)
            terms[c_mask] = sign * g * self.volume
        out = Form(terms)
        self._star_cache[mask] = out
        return out

    def star(self, a: Form) -> Form:
        out = Form()
        for m, c in a.terms.items():
            out = out + self._star_mask(m) * c
        return out

    # --- operator matrices ---

    def _op(self, name: str) -> GradedMap:
        op = self._ops.get(name)
        if op is None:
            n = self.n
            if name == "L":
                op = operator_matrices(n, self.L, shift=2)
            elif name == "Lambda":
                op = operator_matrices(n, self.Lambda, shift=-2)
            elif name == "H":
                dims = {k: len(basis(n, k)) for k in range(n + 1)}
                blocks = {
                    k: Matrix.identity(dims[k]).scale(K.convert(self.n_half - k))
                    for k in range(n + 1)
                }
                op = GradedMap(dims, blocks)
            elif name == "star":
                op = operator_matrices(n, self.star, mirror=n)
            elif name == "d_lambda":
                op = d_lambda(self, self.presentation.differential)
            else:  # pragma: no cover
                raise KeyError(name)
            _log.debug("built %s for %s", name, self.presentation.name)
            self._ops[name] = op
        return op

    @property
    def lefschetz(self) -> GradedMap:
        return self._op("L")

    @property
    def dual_lefschetz(self) -> GradedMap:
        return self._op("Lambda")

    @property
    def weight(self) -> GradedMap:
        return self._op("H")

    @property
    def star_matrices(self) -> GradedMap:
        return self._op("star")

    @property
    def d_lambda(self) -> GradedMap:
        return self._op("d_lambda")


def _gram(omega: Form, n: int) -> Matrix:
    rows: Dict[int, Dict[int, Scalar]] = {}
    for m, c in omega.terms.items():
        i, j = mask_indices(m)
        rows.setdefault(i - 1, {})[j - 1] = c
        rows.setdefault(j - 1, {})[i - 1] = -c
    return Matrix(rows, (n, n))


def build_symplectic(p: LieAlgebraPresentation, omega: Form) -> SymplecticStructure:
    """validate ω against the presentation and build the structure"""
    n = p.n
    if n % 2:
        raise SymplecticError("shape", f"odd dimension {n}")
    if omega and omega.degree != 2:
        raise SymplecticError("shape", f"omega is not a 2-form: {omega.to_str()}")
    if omega.max_index > n:
        raise SymplecticError("shape", f"omega uses generators beyond e{n}")
    d_omega = p.d(omega)
    if d_omega:
        raise SymplecticError("not closed", f"d omega = {d_omega.to_str()}")
    r = rank(_gram(omega, n))
    if r < n:
        raise SymplecticError("degenerate", f"Gram rank {r} of {n}")
    return SymplecticStructure(p, omega)


# === operations on forms ===


def lefschetz_L(s: SymplecticStructure, a: Form) -> Form:
    return s.L(a)


def dual_lefschetz_Lambda(s: SymplecticStructure, a: Form) -> Form:
    return s.Lambda(a)


def weight_H(a: Form, n_half: int) -> Form:
    """multiply the degree-k component by n - k"""
    out = Form()
    for k in a.degrees:
        out = out + a.component(k) * (n_half - k)
    return out


def symplectic_star(s: SymplecticStructure, a: Form) -> Form:
    """the unique form with α ∧ ⋆a = (ω⁻¹)^k(α, a)·ωⁿ/n! for all k-forms α"""
    return s.star(a)


def d_lambda(s: SymplecticStructure, d: GradedMap) -> GradedMap:
    """d^Λ = d∘Λ - Λ∘d"""
    lam = s.dual_lefschetz
    return (d @ lam) - (lam @ d)


# === primitive forms ===


def primitive_subspace(s: SymplecticStructure, k: int) -> Subspace:
    """P^k = ker Λ on k-forms, zero above the middle degree"""
    dim = len(basis(s.n, k))
    if k > s.n_half:
        return Subspace.zero(dim)
    return kernel(s.dual_lefschetz[k])


def primitive_dims(s: SymplecticStructure) -> List[int]:
    return [primitive_subspace(s, k).dim for k in range(s.n_half + 1)]


def primitive_decomposition(
    s: SymplecticStructure, a: Form, degree: Optional[int] = None
) -> List[Tuple[int, Form]]:
    """split a homogeneous form as a = Σ_j L^j p_j with Λ p_j = 0

    Returns the nonzero components as (j, p_j) pairs ordered by j.
    """
    if degree is None:
        degree = a.degree
    if degree is None:
        if not a:
            return []
        raise ValueError("primitive decomposition needs a homogeneous form")
    n = s.n
    columns = []
    owners: List[Tuple[int, Form]] = []
    for j in range(degree // 2 + 1):
        p = degree - 2 * j
        if p > s.n_half:
            continue
        lift = _wedge_power(s.omega, j)
        for v in primitive_subspace(s, p).vectors():
            prim = from_vector(v, n, p)
            columns.append(to_vector(lift ^ prim, n, degree))
            owners.append((j, prim))
    target = to_vector(a, n, degree)
    coeffs = solve(Matrix.from_columns(columns, len(basis(n, degree))), target)
    parts: Dict[int, Form] = {}
    for idx, c in coeffs.items():
        j, prim = owners[idx]
        parts[j] = parts.get(j, Form()) + prim * c
    return [(j, f) for j, f in sorted(parts.items()) if f]
