"""exact linear algebra over QQ(i)

Matrices are stored sparse (row -> column -> scalar) and handed to
sympy's ``DomainMatrix`` for elimination and products. Subspaces keep
their basis as the rows of a reduced row echelon matrix, so two
subspaces are equal iff their bases are literally equal.
"""
from __future__ import annotations

import logging
from typing import Dict
from typing import Iterable
from typing import List
from typing import Mapping
from typing import Optional
from typing import Sequence
from typing import Tuple

from sympy.polys.matrices import DomainMatrix
from typing_extensions import TypeAlias

from symplex.algebra.scalars import K
from symplex.algebra.scalars import Scalar
from symplex.algebra.scalars import format_scalar

__all__ = [
    "Vector",
    "Matrix",
    "Subspace",
    "Quotient",
    "SubspaceError",
    "GradedMap",
    "rref",
    "rank",
    "kernel",
    "image",
    "intersect",
    "subspace_sum",
    "quotient",
    "coordinates_in_quotient",
    "solve",
    "inverse",
]

_log = logging.getLogger(__name__)

Vector: TypeAlias = Dict[int, Scalar]
_Rows: TypeAlias = Dict[int, Dict[int, Scalar]]


class SubspaceError(ValueError):
    """raised on failed containment in quotient computations"""


# --- matrices --------------------------------------------------------


def _clean(rows: Mapping[int, Mapping[int, Scalar]]) -> _Rows:
    zero = K.zero
    out: _Rows = {}
    for i, row in rows.items():
        r = {j: v for j, v in row.items() if v != zero}
        if r:
            out[i] = r
    return out


class Matrix:
    """a sparse rows x cols matrix of scalars"""

    __slots__ = ("shape", "_rows")

    def __init__(
        self,
        rows: Mapping[int, Mapping[int, Scalar]] | None = None,
        shape: Tuple[int, int] = (0, 0),
    ) -> None:
        self.shape = (int(shape[0]), int(shape[1]))
        self._rows = _clean(rows or {})
        m, n = self.shape
        for i, row in self._rows.items():
            if not 0 <= i < m or any(not 0 <= j < n for j in row):
                raise IndexError(f"entry outside of matrix shape {self.shape}")

    # constructors

    @classmethod
    def zeros(cls, m: int, n: int) -> Matrix:
        return cls({}, (m, n))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls({i: {i: K.one} for i in range(n)}, (n, n))

    @classmethod
    def from_list(cls, rows: Sequence[Sequence[Scalar]], ncols: int | None = None):
        n = len(rows[0]) if rows else (ncols or 0)
        if any(len(r) != n for r in rows):
            raise ValueError("ragged rows")
        return cls({i: dict(enumerate(r)) for i, r in enumerate(rows)}, (len(rows), n))

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Scalar]], nrows: int):
        rows: _Rows = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
        return cls(rows, (nrows, len(columns)))

    @classmethod
    def from_domain(cls, dm: DomainMatrix) -> Matrix:
        rep = dm.to_sparse().rep
        return cls({i: dict(row) for i, row in rep.items()}, dm.shape)

    def to_domain(self) -> DomainMatrix:
        return DomainMatrix({i: dict(r) for i, r in self._rows.items()}, self.shape, K)

    # accessors

    @property
    def rows(self) -> Mapping[int, Mapping[int, Scalar]]:
        return self._rows

    def __getitem__(self, ij: Tuple[int, int]) -> Scalar:
        i, j = ij
        return self._rows.get(i, {}).get(j, K.zero)

    def row(self, i: int) -> Vector:
        return dict(self._rows.get(i, {}))

    def column(self, j: int) -> Vector:
        return {i: r[j] for i, r in self._rows.items() if j in r}

    def columns(self) -> List[Vector]:
        cols: List[Vector] = [{} for _ in range(self.shape[1])]
        for i, r in self._rows.items():
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def to_list(self) -> List[List[Scalar]]:
        m, n = self.shape
        return [[self[i, j] for j in range(n)] for i in range(m)]

    def is_zero(self) -> bool:
        return not self._rows

    def nnz(self) -> int:
        return sum(map(len, self._rows.values()))

    # arithmetic

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self.nnz()))

    def _check_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} != {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_shape(other)
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            tgt = rows.setdefault(i, {})
            for j, v in r.items():
                tgt[j] = tgt.get(j, K.zero) + v
        return Matrix(rows, self.shape)

    def __neg__(self) -> Matrix:
        return Matrix(
            {i: {j: -v for j, v in r.items()} for i, r in self._rows.items()},
            self.shape,
        )

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, c: Scalar) -> Matrix:
        c = K.convert(c)
        return Matrix(
            {i: {j: v * c for j, v in r.items()} for i, r in self._rows.items()},
            self.shape,
        )

    def __matmul__(self, other: Matrix) -> Matrix:
        m, k = self.shape
        k2, n = other.shape
        if k != k2:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.is_zero() or other.is_zero() or 0 in (m, k, n):
            return Matrix.zeros(m, n)
        prod = self.to_domain().matmul(other.to_domain())
        return Matrix.from_domain(prod)

    def apply(self, v: Mapping[int, Scalar]) -> Vector:
        """matrix vector product on sparse vectors"""
        out: Vector = {}
        for i, r in self._rows.items():
            acc = K.zero
            for j, a in r.items():
                x = v.get(j)
                if x is not None:
                    acc += a * x
            if acc != K.zero:
                out[i] = acc
        return out

    def transpose(self) -> Matrix:
        rows: _Rows = {}
        for i, r in self._rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return Matrix(rows, (self.shape[1], self.shape[0]))

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def hstack(self, *others: Matrix) -> Matrix:
        rows = {i: dict(r) for i, r in self._rows.items()}
        offset = self.shape[1]
        for o in others:
            if o.shape[0] != self.shape[0]:
                raise ValueError("hstack needs equal row counts")
            for i, r in o._rows.items():
                rows.setdefault(i, {}).update({j + offset: v for j, v in r.items()})
            offset += o.shape[1]
        return Matrix(rows, (self.shape[0], offset))

    def vstack(self, *others: Matrix) -> Matrix:
        rows = {i: dict(r) for i, r in self._rows.items()}
        offset = self.shape[0]
        for o in others:
            if o.shape[1] != self.shape[1]:
                raise ValueError("vstack needs equal column counts")
            rows.update({i + offset: dict(r) for i, r in o._rows.items()})
            offset += o.shape[0]
        return Matrix(rows, (offset, self.shape[1]))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> Matrix:
        cpos = {j: p for p, j in enumerate(col_idx)}
        rows: _Rows = {}
        for p, i in enumerate(row_idx):
            r = self._rows.get(i)
            if r:
                rows[p] = {cpos[j]: v for j, v in r.items() if j in cpos}
        return Matrix(rows, (len(row_idx), len(col_idx)))

    def kron_identity(self, r: int) -> Matrix:
        """self ⊗ Id_r with the identity as the fast (minor) index"""
        if r == 1:
            return self
        rows: _Rows = {}
        for i, row in self._rows.items():
            for a in range(r):
                rows[i * r + a] = {j * r + a: v for j, v in row.items()}
        return Matrix(rows, (self.shape[0] * r, self.shape[1] * r))

    def __repr__(self) -> str:
        m, n = self.shape
        if m * n > 64:
            return f"Matrix(shape={self.shape}, nnz={self.nnz()})"
        body = "; ".join(
            " ".join(format_scalar(self[i, j]) for j in range(n)) for i in range(m)
        )
        return f"Matrix([{body}])"


# --- elimination -----------------------------------------------------


def rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """reduced row echelon form and pivot columns"""
    if m.is_zero():
        return Matrix.zeros(*m.shape), ()
    dm, pivots = m.to_domain().rref()
    return Matrix.from_domain(dm), tuple(int(p) for p in pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def _reduce(v: Mapping[int, Scalar], basis: Matrix, pivots: Sequence[int]) -> Vector:
    """reduce v modulo the row space of an rref basis"""
    out = dict(v)
    for i, p in enumerate(pivots):
        c = out.get(p)
        if c is None:
            continue
        for j, b in basis.rows[i].items():
            x = out.get(j, K.zero) - c * b
            if x == K.zero:
                out.pop(j, None)
            else:
                out[j] = x
    return out


# --- subspaces -------------------------------------------------------


class Subspace:
    """a subspace of K^ambient with canonical (rref) row basis"""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, basis: Matrix, pivots: Sequence[int]) -> None:
        self.ambient = ambient
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, ambient: int, vectors: Iterable[Mapping[int, Scalar]]):
        rows = {i: dict(v) for i, v in enumerate(vectors)}
        return cls.from_rows(Matrix(rows, (len(rows), ambient)))

    @classmethod
    def from_rows(cls, m: Matrix) -> Subspace:
        r, pivots = rref(m)
        basis = r.submatrix(range(len(pivots)), range(m.shape[1]))
        return cls(m.shape[1], basis, pivots)

    @classmethod
    def zero(cls, ambient: int) -> Subspace:
        return cls(ambient, Matrix.zeros(0, ambient), ())

    @classmethod
    def full(cls, ambient: int) -> Subspace:
        return cls(ambient, Matrix.identity(ambient), range(ambient))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> List[Vector]:
        return [self.basis.row(i) for i in range(self.dim)]

    def columns(self) -> Matrix:
        """the basis as the columns of an ambient x dim matrix"""
        return self.basis.transpose()

    def reduce(self, v: Mapping[int, Scalar]) -> Vector:
        return _reduce(v, self.basis, self.pivots)

    def contains(self, v: Mapping[int, Scalar]) -> bool:
        return not self.reduce(v)

    def issubspace(self, other: Subspace) -> bool:
        return all(other.contains(v) for v in self.vectors())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def kernel(m: Matrix) -> Subspace:
    rows, cols = m.shape
    r, pivots = rref(m)
    piv_set = set(pivots)
    vectors = []
    for j in range(cols):
        if j in piv_set:
            continue
        v: Vector = {j: K.one}
        for i, p in enumerate(pivots):
            x = r[i, j]
            if x != K.zero:
                v[p] = -x
        vectors.append(v)
    if not vectors:
        return Subspace.zero(cols)
    return Subspace.from_vectors(cols, vectors)


def image(m: Matrix) -> Subspace:
    return Subspace.from_rows(m.transpose())


def _annihilator(u: Subspace) -> Subspace:
    return kernel(u.basis)


def intersect(u: Subspace, w: Subspace) -> Subspace:
    if u.ambient != w.ambient:
        raise ValueError("subspaces live in different spaces")
    ann = _annihilator(u).basis.vstack(_annihilator(w).basis)
    return kernel(ann)


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    if u.ambient != w.ambient:
        raise ValueError("subspaces live in different spaces")
    return Subspace.from_rows(u.basis.vstack(w.basis))


class Quotient:
    """numerator / denominator with canonical representatives"""

    __slots__ = ("numerator", "denominator", "representatives")

    def __init__(self, numerator: Subspace, denominator: Subspace) -> None:
        if not denominator.issubspace(numerator):
            raise SubspaceError("denominator is not contained in numerator")
        self.numerator = numerator
        self.denominator = denominator
        self.representatives = Subspace.from_vectors(
            numerator.ambient, (denominator.reduce(v) for v in numerator.vectors())
        )
        if self.representatives.dim != numerator.dim - denominator.dim:
            raise SubspaceError("inconsistent quotient dimension")  # pragma: no cover

    @property
    def dim(self) -> int:
        return self.representatives.dim

    def coordinates(self, v: Mapping[int, Scalar]) -> List[Scalar]:
        """coefficients of the class of v in the representative basis"""
        if not self.numerator.contains(v):
            raise SubspaceError("vector is not contained in the numerator")
        w = self.denominator.reduce(v)
        reps = self.representatives
        coords = [w.get(p, K.zero) for p in reps.pivots]
        if reps.reduce(w):
            raise SubspaceError("class not spanned by representatives")  # pragma: no cover
        return coords

    def __repr__(self) -> str:
        return f"Quotient(dim={self.dim}, ambient={self.numerator.ambient})"


def quotient(numerator: Subspace, denominator: Subspace) -> Quotient:
    return Quotient(numerator, denominator)


def coordinates_in_quotient(
    vector: Mapping[int, Scalar] | Sequence[Scalar],
    numerator: Subspace,
    denominator: Subspace,
) -> List[Scalar]:
    if not isinstance(vector, Mapping):
        vector = {i: x for i, x in enumerate(vector) if x != K.zero}
    return Quotient(numerator, denominator).coordinates(vector)


def solve(a: Matrix, b: Mapping[int, Scalar]) -> Vector:
    """a particular solution x of a·x = b"""
    m, n = a.shape
    aug = a.hstack(Matrix.from_columns([b], m))
    r, pivots = rref(aug)
    if pivots and pivots[-1] == n:
        raise SubspaceError("linear system is inconsistent")
    return {p: r[i, n] for i, p in enumerate(pivots) if r[i, n] != K.zero}


def inverse(a: Matrix) -> Matrix:
    n, n2 = a.shape
    if n != n2:
        raise ValueError("inverse of a non-square matrix")
    r, pivots = rref(a.hstack(Matrix.identity(n)))
    if n and pivots[:n] != tuple(range(n)):
        raise SubspaceError("matrix is singular")
    return r.submatrix(range(n), range(n, 2 * n))


# --- graded maps -----------------------------------------------------


class GradedMap:
    """a family of matrices between the graded pieces of a complex

    block ``k`` maps degree ``k`` to degree ``target(k)``, which is
    ``k + shift`` or, for mirrored maps like the symplectic star,
    ``mirror - k``.
    """

    __slots__ = ("dims", "shift", "mirror", "_blocks")

    def __init__(
        self,
        dims: Mapping[int, int],
        blocks: Mapping[int, Matrix],
        *,
        shift: int = 0,
        mirror: Optional[int] = None,
    ) -> None:
        self.dims = {k: v for k, v in dims.items() if v}
        self.shift = shift
        self.mirror = mirror
        self._blocks: Dict[int, Matrix] = {}
        for k, blk in blocks.items():
            exp = (self.dim(self.target(k)), self.dim(k))
            if blk.shape != exp:
                raise ValueError(f"block {k} has shape {blk.shape}, expected {exp}")
            self._blocks[k] = blk

    def dim(self, k: int) -> int:
        return self.dims.get(k, 0)

    def target(self, k: int) -> int:
        return self.mirror - k if self.mirror is not None else k + self.shift

    @property
    def degrees(self) -> List[int]:
        return sorted(self.dims)

    def __getitem__(self, k: int) -> Matrix:
        blk = self._blocks.get(k)
        if blk is None:
            return Matrix.zeros(self.dim(self.target(k)), self.dim(k))
        return blk

    def _like(self, blocks: Mapping[int, Matrix]) -> GradedMap:
        return GradedMap(self.dims, blocks, shift=self.shift, mirror=self.mirror)

    def _check(self, other: GradedMap) -> None:
        if (self.shift, self.mirror) != (other.shift, other.mirror):
            raise ValueError("graded maps of different degree")

    def __add__(self, other: GradedMap) -> GradedMap:
        self._check(other)
        return self._like({k: self[k] + other[k] for k in self.degrees})

    def __sub__(self, other: GradedMap) -> GradedMap:
        self._check(other)
        return self._like({k: self[k] - other[k] for k in self.degrees})

    def __neg__(self) -> GradedMap:
        return self._like({k: -self[k] for k in self.degrees})

    def scale(self, c: Scalar) -> GradedMap:
        return self._like({k: self[k].scale(c) for k in self.degrees})

    def __matmul__(self, other: GradedMap) -> GradedMap:
        """composition self ∘ other"""
        if self.mirror is None and other.mirror is None:
            kw = dict(shift=self.shift + other.shift, mirror=None)
        elif self.mirror is None:
            kw = dict(shift=0, mirror=other.mirror + self.shift)
        elif other.mirror is None:
            kw = dict(shift=0, mirror=self.mirror - other.shift)
        else:
            kw = dict(shift=self.mirror - other.mirror, mirror=None)
        blocks = {k: self[other.target(k)] @ other[k] for k in other.degrees}
        return GradedMap(other.dims, blocks, **kw)  # type: ignore[arg-type]

    def is_zero(self) -> bool:
        return all(self[k].is_zero() for k in self.degrees)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedMap):
            return NotImplemented
        if (self.shift, self.mirror) != (other.shift, other.mirror):
            return False
        degs = set(self.degrees) | set(other.degrees)
        return all(self[k] == other[k] for k in degs)

    def kron_identity(self, r: int) -> GradedMap:
        dims = {k: v * r for k, v in self.dims.items()}
        blocks = {k: self[k].kron_identity(r) for k in self.degrees}
        return GradedMap(dims, blocks, shift=self.shift, mirror=self.mirror)

    def restrict(self, selection: Mapping[int, Sequence[int]]) -> GradedMap:
        """restrict to the selected basis vectors in every degree"""
        dims = {k: len(v) for k, v in selection.items()}
        blocks = {
            k: self[k].submatrix(selection.get(self.target(k), ()), selection[k])
            for k in selection
        }
        return GradedMap(dims, blocks, shift=self.shift, mirror=self.mirror)

    def __repr__(self) -> str:
        deg = f"mirror={self.mirror}" if self.mirror is not None else f"shift={self.shift}"
        return f"GradedMap({deg}, dims={[self.dim(k) for k in self.degrees]})"
