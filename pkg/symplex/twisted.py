"""flat twists, character weights and the Γ-trivial subcomplex

Twisted complexes live on (∧g*) ⊗ K^r. Basis vectors are ordered
monomial-major and fiber-minor, so an operator M acting on forms only
becomes M ⊗ Id_r.
"""
from __future__ import annotations

import logging
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from symplex.algebra.forms import Form
from symplex.algebra.forms import basis
from symplex.algebra.forms import basis_index
from symplex.algebra.forms import mask_indices
from symplex.algebra.linalg import GradedMap
from symplex.algebra.linalg import Matrix
from symplex.algebra.presentation import Diagnostic
from symplex.algebra.presentation import LieAlgebraPresentation
from symplex.algebra.presentation import operator_matrices
from symplex.algebra.presentation import validate_presentation
from symplex.algebra.scalars import K
from symplex.algebra.scalars import Scalar
from symplex.cohomology.complex import BiDifferentialComplex
from symplex.cohomology.complex import monomial_labels
from symplex.cohomology.verdicts import VerdictReport
from symplex.cohomology.verdicts import verdicts
from symplex.symplectic import SymplecticStructure

__all__ = [
    "TwistError",
    "TwistConnection",
    "CharacterWeight",
    "WeightedPresentation",
    "validate_flat",
    "twisted_complex",
    "twisted_verdicts",
    "check_star_identity",
    "weighted_differential",
    "untwist",
    "gamma_subcomplex",
]

_log = logging.getLogger(__name__)


class TwistError(ValueError):
    """raised for non-flat twists, escaping subcomplexes and failed identities"""


# --- flat twists -----------------------------------------------------


class TwistConnection:
    """a flat connection form φ, an r x r matrix of 1-forms"""

    def __init__(self, phi: Sequence[Sequence[Form]], *, label: str = "") -> None:
        r = len(phi)
        if r < 1 or any(len(row) != r for row in phi):
            raise TwistError("connection form must be a square matrix of 1-forms")
        for row in phi:
            for f in row:
                if f and f.degree != 1:
                    raise TwistError(f"connection entry is not a 1-form: {f.to_str()}")
        self.phi: Tuple[Tuple[Form, ...], ...] = tuple(tuple(row) for row in phi)
        self.label = label

    @classmethod
    def rank_one(cls, phi: Form, *, label: str = "") -> TwistConnection:
        return cls([[phi]], label=label)

    @property
    def rank(self) -> int:
        return len(self.phi)

    def is_zero(self) -> bool:
        return not any(f for row in self.phi for f in row)

    def __repr__(self) -> str:
        if self.rank == 1:
            return f"TwistConnection({self.label!r}, phi={self.phi[0][0].to_str()!r})"
        return f"TwistConnection({self.label!r}, rank={self.rank})"


def validate_flat(p: LieAlgebraPresentation, t: TwistConnection) -> Diagnostic:
    """check dφ + φ∧φ = 0 entry by entry"""
    issues = []
    r = t.rank
    for c in range(r):
        for a in range(r):
            f = t.phi[c][a]
            if f.max_index > p.n:
                issues.append(f"phi[{c}][{a}] uses generators beyond e{p.n}")
                continue
            residue = p.d(f)
            for b in range(r):
                residue = residue + (t.phi[c][b] ^ t.phi[b][a])
            if residue:
                issues.append(f"not flat at ({c}, {a}): dφ + φ∧φ = {residue.to_str()}")
    return Diagnostic.collect(issues)


def _connection_matrices(n: int, t: TwistConnection) -> GradedMap:
    """s ⊗ v_a -> Σ_b (φ_ba ∧ s) ⊗ v_b"""
    r = t.rank
    dims = {k: len(basis(n, k)) * r for k in range(n + 1)}
    blocks = {}
    for k in range(n):
        tgt_index = basis_index(n, k + 1)
        rows: Dict[int, Dict[int, Scalar]] = {}
        for j, m in enumerate(basis(n, k)):
            mono = Form({m: K.one})
            for a in range(r):
                for b in range(r):
                    image = t.phi[b][a] ^ mono
                    for mm, c in image.terms.items():
                        row = rows.setdefault(tgt_index[mm] * r + b, {})
                        row[j * r + a] = row.get(j * r + a, K.zero) + c
        blocks[k] = Matrix(rows, (dims[k + 1], dims[k]))
    return GradedMap(dims, blocks, shift=1)


def check_star_identity(D: GradedMap, DL: GradedMap, star: GradedMap, top: int) -> None:
    """require D^Λ = (-1)^{k+1} ⋆ D ⋆ on every degree k"""
    for k in range(1, top + 1):
        rhs = star[top - k + 1] @ D[top - k] @ star[k]
        if k % 2 == 0:
            rhs = -rhs
        if rhs != DL[k]:
            raise TwistError(f"D^Λ ≠ (-1)^(k+1) ⋆D⋆ on degree {k}")


def twisted_complex(
    p: LieAlgebraPresentation,
    s: SymplecticStructure,
    t: TwistConnection,
) -> BiDifferentialComplex:
    """the complex (∧g* ⊗ K^r, D_φ, D_φ^Λ)"""
    diag = validate_flat(p, t)
    if not diag:
        raise TwistError("; ".join(diag.issues))
    r = t.rank
    n = p.n
    D = p.differential.kron_identity(r)
    if not t.is_zero():
        D = D + _connection_matrices(n, t)
    lam = s.dual_lefschetz.kron_identity(r)
    DL = (D @ lam) - (lam @ D)
    labels = monomial_labels(n)
    if r > 1:
        labels = {
            k: [f"{m}⊗v{a + 1}" for m in lab for a in range(r)] for k, lab in labels.items()
        }
    c = BiDifferentialComplex(
        {k: v * r for k, v in p.dims.items()},
        D,
        DL,
        labels=labels,
        lefschetz=s.lefschetz.kron_identity(r),
        n_half=s.n_half,
        name=f"{p.name}[{t.label}]" if t.label else p.name,
    )
    diag = c.validate()
    if not diag:
        raise TwistError("; ".join(diag.issues))
    check_star_identity(D, DL, s.star_matrices.kron_identity(r), n)
    _log.debug("twisted complex %s: rank %d", c.name, r)
    return c


def twisted_verdicts(
    c: BiDifferentialComplex, s: Optional[SymplecticStructure] = None
) -> VerdictReport:
    """twisted HLC, Brylinski and D_φD_φ^Λ-Lemma with per-degree detail"""
    return verdicts(c, s)


# --- character weights -----------------------------------------------


class CharacterWeight:
    """a product of basic characters, with its logarithmic derivative"""

    __slots__ = ("exponents", "derivative")

    def __init__(self, exponents: Sequence[int], derivative: Form) -> None:
        if derivative and derivative.degree != 1:
            raise TwistError("character derivative must be a 1-form")
        self.exponents: Tuple[int, ...] = tuple(int(e) for e in exponents)
        self.derivative = derivative

    @classmethod
    def from_exponents(
        cls, exponents: Sequence[int], basic: Sequence[Form]
    ) -> CharacterWeight:
        if len(exponents) != len(basic):
            raise TwistError("one exponent per basic character required")
        derivative = Form()
        for e, lam in zip(exponents, basic):
            derivative = derivative + lam * e
        return cls(exponents, derivative)

    @classmethod
    def trivial(cls, m: int) -> CharacterWeight:
        return cls((0,) * m, Form())

    def __mul__(self, other: CharacterWeight) -> CharacterWeight:
        if len(self.exponents) != len(other.exponents):
            return NotImplemented
        return CharacterWeight(
            [a + b for a, b in zip(self.exponents, other.exponents)],
            self.derivative + other.derivative,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharacterWeight):
            return NotImplemented
        return self.exponents == other.exponents and self.derivative == other.derivative

    def __repr__(self) -> str:
        return f"CharacterWeight({self.exponents!r}, {self.derivative.to_str()!r})"


class WeightedPresentation:
    """a presentation whose generators carry character weights

    ``gamma_matrix`` is the integer q x m matrix M; a total exponent vector
    w is Γ-trivial iff M·w = 0. ``None`` means every weight is trivial on Γ.
    """

    def __init__(
        self,
        base: LieAlgebraPresentation,
        weight_of_generator: Sequence[CharacterWeight],
        *,
        characters: Sequence[str] = (),
        basic_derivatives: Sequence[Form] = (),
        gamma_matrix: Optional[np.ndarray] = None,
    ) -> None:
        if len(weight_of_generator) != base.n:
            raise TwistError(f"need {base.n} weights, got {len(weight_of_generator)}")
        m = len(weight_of_generator[0].exponents) if weight_of_generator else 0
        if any(len(w.exponents) != m for w in weight_of_generator):
            raise TwistError("weights over different character sets")
        for name, lam in zip(characters, basic_derivatives):
            if base.d(lam):
                raise TwistError(f"character {name} has a non-closed derivative")
        for k, w in enumerate(weight_of_generator, start=1):
            if base.d(w.derivative):
                raise TwistError(f"weight of e{k} has a non-closed derivative")
        if gamma_matrix is not None:
            gamma_matrix = np.atleast_2d(np.asarray(gamma_matrix, dtype=np.int64))
            if gamma_matrix.size and gamma_matrix.shape[1] != m:
                raise TwistError(f"gamma matrix needs {m} columns")
        self.base = base
        self.weight_of_generator = tuple(weight_of_generator)
        self.characters = tuple(characters)
        self.basic_derivatives = tuple(basic_derivatives)
        self.gamma_matrix = gamma_matrix

    @property
    def n(self) -> int:
        return self.base.n

    def with_gamma(self, gamma_matrix: Optional[np.ndarray]) -> WeightedPresentation:
        return WeightedPresentation(
            self.base,
            self.weight_of_generator,
            characters=self.characters,
            basic_derivatives=self.basic_derivatives,
            gamma_matrix=gamma_matrix,
        )

    def total_weight(self, mask: int) -> CharacterWeight:
        m = len(self.weight_of_generator[0].exponents) if self.n else 0
        out = CharacterWeight.trivial(m)
        for i in mask_indices(mask):
            out = out * self.weight_of_generator[i - 1]
        return out

    def is_gamma_trivial(self, mask: int) -> bool:
        if self.gamma_matrix is None or not self.gamma_matrix.size:
            return True
        w = np.asarray(self.total_weight(mask).exponents, dtype=np.int64)
        return not np.any(self.gamma_matrix @ w)

    def __repr__(self) -> str:
        return f"WeightedPresentation({self.base.name!r}, characters={self.characters!r})"


def weighted_differential(wp: WeightedPresentation) -> GradedMap:
    """d_w(x_I) = λ_I ∧ x_I + d x_I on every monomial"""
    p = wp.base

    def _dw(a: Form) -> Form:
        out = p.d(a)
        for m, c in a.terms.items():
            out = out + (wp.total_weight(m).derivative ^ Form({m: c}))
        return out

    dw = operator_matrices(p.n, _dw, shift=1)
    if not (dw @ dw).is_zero():
        raise TwistError(f"weighted differential of {p.name} does not square to zero")
    return dw


def untwist(wp: WeightedPresentation) -> LieAlgebraPresentation:
    """the nilpotent shadow with d_u e_k = d e_k + λ_k ∧ e_k"""
    p = wp.base
    d_of = [
        p.d_of_generator[k - 1] + (wp.weight_of_generator[k - 1].derivative ^ Form.generator(k))
        for k in range(1, p.n + 1)
    ]
    u = LieAlgebraPresentation(f"{p.name}~u", p.n, d_of, params=p.params)
    diag = validate_presentation(u)
    if not diag:
        raise TwistError("; ".join(diag.issues))
    return u


def gamma_subcomplex(
    wp: WeightedPresentation, s: SymplecticStructure
) -> BiDifferentialComplex:
    """restrict the weighted complex to Γ-trivial monomials"""
    n = wp.n
    for m in s.omega.terms:
        if not wp.is_gamma_trivial(m):
            raise TwistError(f"omega is not Γ-trivial: {s.omega.to_str()}")
    dw = weighted_differential(wp)
    lam = s.dual_lefschetz
    dlw = (dw @ lam) - (lam @ dw)
    selection: Dict[int, List[int]] = {
        k: [j for j, m in enumerate(basis(n, k)) if wp.is_gamma_trivial(m)]
        for k in range(n + 1)
    }
    labels_full = monomial_labels(n)
    for op_name, op in (("d_w", dw), ("d_w^Λ", dlw)):
        for k in range(n + 1):
            tgt = op.target(k)
            if not 0 <= tgt <= n:
                continue
            kept = set(selection[tgt])
            blk = op[k]
            for row_idx, row in blk.rows.items():
                if row_idx in kept:
                    continue
                for j in selection[k]:
                    if j in row:
                        raise TwistError(
                            f"{op_name} maps {labels_full[k][j]} outside A_Γ "
                            f"(hits {labels_full[tgt][row_idx]})"
                        )
    labels = {k: [labels_full[k][j] for j in sel] for k, sel in selection.items()}
    c = BiDifferentialComplex(
        {k: len(sel) for k, sel in selection.items()},
        dw.restrict(selection),
        dlw.restrict(selection),
        labels=labels,
        lefschetz=s.lefschetz.restrict(selection),
        n_half=s.n_half,
        name=f"{wp.base.name}[Γ]",
    )
    diag = c.validate()
    if not diag:
        raise TwistError("; ".join(diag.issues))
    _log.debug("gamma subcomplex %s: dims %s", c.name, list(c.dims.values()))
    return c
