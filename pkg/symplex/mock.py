"""seeded random inputs for symplex tests"""
from __future__ import annotations

from typing import Dict
from typing import List
from typing import NamedTuple
from typing import Tuple

import numpy as np

from symplex.algebra.forms import Form
from symplex.algebra.forms import basis
from symplex.algebra.linalg import GradedMap
from symplex.algebra.linalg import Matrix
from symplex.algebra.linalg import inverse
from symplex.algebra.scalars import Scalar
from symplex.algebra.scalars import scalar
from symplex.cohomology.complex import BiDifferentialComplex

__all__ = [
    "PIECES",
    "PieceCounts",
    "mock_scalar",
    "mock_form",
    "mock_integer_matrix",
    "mock_unimodular_matrix",
    "mock_complex",
]

# direct summands mock_complex assembles a complex from
PIECES = ("dot", "del", "debar", "square", "zigzag_up", "zigzag_down")


def _rng(seed: int | np.random.Generator | None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def mock_scalar(rng: np.random.Generator, *, gaussian: bool = False) -> Scalar:
    """a small nonzero gaussian rational"""
    num = int(rng.integers(1, 4)) * (1 if rng.random() < 0.5 else -1)
    den = int(rng.integers(1, 3))
    im = int(rng.integers(-2, 3)) if gaussian else 0
    return scalar(f"{num}/{den}", im) if im else scalar(f"{num}/{den}")


def mock_form(
    n: int,
    k: int,
    *,
    terms: int = 3,
    seed: int | np.random.Generator | None = None,
    gaussian: bool = False,
) -> Form:
    """a random homogeneous k-form over e1..en"""
    rng = _rng(seed)
    monomials = basis(n, k)
    if not monomials or terms <= 0:
        return Form()
    pick = rng.choice(len(monomials), size=min(terms, len(monomials)), replace=False)
    return Form({monomials[int(i)]: mock_scalar(rng, gaussian=gaussian) for i in pick})


def mock_integer_matrix(
    rows: int, cols: int, *, low: int = -3, high: int = 4, seed=None
) -> np.ndarray:
    rng = _rng(seed)
    return rng.integers(low, high, size=(rows, cols), dtype=np.int64)


def mock_unimodular_matrix(n: int, *, seed=None) -> np.ndarray:
    """an integer matrix with determinant ±1 (product of unit triangulars)"""
    rng = _rng(seed)
    upper = np.triu(rng.integers(-2, 3, size=(n, n), dtype=np.int64), 1)
    lower = np.tril(rng.integers(-2, 3, size=(n, n), dtype=np.int64), -1)
    eye = np.eye(n, dtype=np.int64)
    signs = np.diag(rng.choice(np.array([-1, 1], dtype=np.int64), size=n))
    return (eye + upper) @ (eye + lower) @ signs


def _to_matrix(a: np.ndarray) -> Matrix:
    rows = {
        i: {j: scalar(int(a[i, j])) for j in range(a.shape[1]) if a[i, j]}
        for i in range(a.shape[0])
    }
    return Matrix(rows, (int(a.shape[0]), int(a.shape[1])))


class PieceCounts(NamedTuple):
    """the pieces a random complex was assembled from"""

    pieces: List[Tuple[str, int]]
    dims: Dict[int, int]


# piece -> (vertex degree offsets, del edges, debar edges), edges as
# (source vertex, target vertex, coefficient)
_SHAPES = {
    "dot": ((0,), (), ()),
    "del": ((0, 1), ((0, 1, 1),), ()),
    "debar": ((0, -1), (), ((0, 1, 1),)),
    # x, ∂x = a, ∂̄x = b, ∂̄a = c, ∂b = -c
    "square": ((0, 1, -1, 0), ((0, 1, 1), (2, 3, -1)), ((0, 2, 1), (1, 3, 1))),
    # ∂x = a = ∂̄y
    "zigzag_up": ((0, 1, 2), ((0, 1, 1),), ((2, 1, 1),)),
    # ∂̄x = b = ∂y
    "zigzag_down": ((0, -1, -2), ((2, 1, 1),), ((0, 1, 1),)),
}


def mock_complex(
    *,
    seed: int | np.random.Generator | None = None,
    max_total_dim: int = 12,
    top_degree: int = 4,
    conjugate: bool = True,
) -> Tuple[BiDifferentialComplex, PieceCounts]:
    """a random valid bi-differential complex assembled from small pieces

    The pieces are direct summands with known cohomology, the complex is
    then conjugated degree-wise by random unimodular integer matrices.
    """
    rng = _rng(seed)
    target = int(rng.integers(1, max_total_dim + 1))
    vertices: List[int] = []
    del_edges: List[Tuple[int, int, int]] = []
    debar_edges: List[Tuple[int, int, int]] = []
    pieces: List[Tuple[str, int]] = []
    for _ in range(64):
        name = PIECES[int(rng.integers(len(PIECES)))]
        offsets, dels, debars = _SHAPES[name]
        if len(vertices) + len(offsets) > target:
            continue
        lo, hi = -min(offsets), top_degree - max(offsets)
        if lo > hi:
            continue
        k = int(rng.integers(lo, hi + 1))
        base = len(vertices)
        vertices.extend(k + o for o in offsets)
        del_edges.extend((base + s, base + t, c) for s, t, c in dels)
        debar_edges.extend((base + s, base + t, c) for s, t, c in debars)
        pieces.append((name, k))
        if len(vertices) == target:
            break
    if not vertices:
        vertices.append(0)
        pieces.append(("dot", 0))

    # position of each vertex inside its degree
    dims: Dict[int, int] = {k: 0 for k in range(top_degree + 1)}
    position = []
    for k in vertices:
        position.append(dims[k])
        dims[k] += 1

    def _graded(edges, shift: int) -> Dict[int, np.ndarray]:
        blocks = {
            k: np.zeros((dims.get(k + shift, 0), dims[k]), dtype=np.int64) for k in dims
        }
        for s, t, c in edges:
            blocks[vertices[s]][position[t], position[s]] += c
        return blocks

    d_blocks = _graded(del_edges, 1)
    db_blocks = _graded(debar_edges, -1)

    if conjugate:
        change = {k: mock_unimodular_matrix(d, seed=rng) for k, d in dims.items() if d}
        inv = {k: inverse(_to_matrix(p)) for k, p in change.items()}
        conj = {k: _to_matrix(p) for k, p in change.items()}

        def _conjugated(blocks: Dict[int, np.ndarray], shift: int) -> Dict[int, Matrix]:
            out = {}
            for k, a in blocks.items():
                if not a.size:
                    continue
                out[k] = conj[k + shift] @ _to_matrix(a) @ inv[k]
            return out

        del_m = _conjugated(d_blocks, 1)
        debar_m = _conjugated(db_blocks, -1)
    else:
        del_m = {k: _to_matrix(a) for k, a in d_blocks.items() if a.size}
        debar_m = {k: _to_matrix(a) for k, a in db_blocks.items() if a.size}

    c = BiDifferentialComplex(
        dims,
        GradedMap(dims, del_m, shift=1),
        GradedMap(dims, debar_m, shift=-1),
        name=f"mock[{len(pieces)} pieces]",
    )
    return c, PieceCounts(pieces, dims)
