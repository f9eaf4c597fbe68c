from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from symplex.algebra.linalg import GradedMap
from symplex.algebra.linalg import Matrix
from symplex.algebra.linalg import Quotient
from symplex.algebra.linalg import Subspace
from symplex.algebra.linalg import SubspaceError
from symplex.algebra.linalg import image
from symplex.algebra.linalg import intersect
from symplex.algebra.linalg import inverse
from symplex.algebra.linalg import kernel
from symplex.algebra.linalg import rank
from symplex.algebra.linalg import solve
from symplex.algebra.linalg import subspace_sum
from symplex.algebra.scalars import K
from symplex.algebra.scalars import scalar
from symplex.mock import mock_integer_matrix
from symplex.mock import mock_unimodular_matrix


def fraction_rank(rows):
    """plain gaussian elimination over Fractions"""
    m = [[Fraction(int(x)) for x in r] for r in rows]
    rk = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][c] != 0:
                f = m[i][c] / m[rk][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


def to_matrix(a):
    return Matrix.from_list([[scalar(int(x)) for x in row] for row in a], a.shape[1])


def vec(*xs):
    return {i: scalar(x) for i, x in enumerate(xs) if x}


def test_matrix_basics():
    a = Matrix.from_list([[scalar(1), scalar(2)], [scalar(0), scalar(3)]])
    assert a.shape == (2, 2)
    assert a[0, 1] == scalar(2)
    assert a.T[1, 0] == scalar(2)
    assert (a - a).is_zero()
    assert a @ Matrix.identity(2) == a
    assert a.apply(vec(1, 1)) == vec(3, 3)
    with pytest.raises(ValueError):
        a @ Matrix.zeros(3, 1)
    with pytest.raises(IndexError):
        Matrix({3: {0: scalar(1)}}, (2, 2))


def test_stacking_and_kron():
    a = Matrix.from_list([[scalar(1), scalar(2)]])
    assert a.hstack(a).shape == (1, 4)
    assert a.vstack(a).shape == (2, 2)
    k = a.kron_identity(2)
    assert k.shape == (2, 4)
    assert k[1, 3] == scalar(2)
    assert k[0, 1] == K.zero


@pytest.mark.parametrize("seed", range(40))
def test_rank_matches_fraction_oracle(seed):
    rng = np.random.default_rng(seed)
    m, n = (int(x) for x in rng.integers(1, 7, size=2))
    a = mock_integer_matrix(m, n, low=-2, high=3, seed=rng)
    if m > 2 and rng.random() < 0.5:
        a[-1] = a[0] - a[1]
    mat = to_matrix(a)
    r = fraction_rank(a.tolist())
    assert rank(mat) == r
    ker = kernel(mat)
    assert ker.dim == n - r
    for v in ker.vectors():
        assert not mat.apply(v)
    assert image(mat).dim == r


def test_subspace_operations():
    u = Subspace.from_vectors(3, [vec(1, 0, 0), vec(0, 1, 0)])
    w = Subspace.from_vectors(3, [vec(0, 1, 0), vec(0, 0, 1)])
    assert intersect(u, w) == Subspace.from_vectors(3, [vec(0, 1, 0)])
    assert subspace_sum(u, w) == Subspace.full(3)
    assert Subspace.zero(3).issubspace(u)
    assert u.contains(vec(2, -1, 0))
    assert not u.contains(vec(0, 0, 1))
    # equality is basis independent
    assert u == Subspace.from_vectors(3, [vec(1, 1, 0), vec(1, -1, 0)])


def test_quotient_coordinates():
    num = Subspace.full(3)
    den = Subspace.from_vectors(3, [vec(1, 1, 0)])
    q = Quotient(num, den)
    assert q.dim == 2
    # v and v + (1,1,0) have the same class
    assert q.coordinates(vec(0, 0, 5)) == q.coordinates(vec(1, 1, 5))
    with pytest.raises(SubspaceError):
        Quotient(den, num)
    with pytest.raises(SubspaceError):
        Quotient(den, Subspace.zero(3)).coordinates(vec(0, 0, 1))


def test_gaussian_entries():
    i = scalar(0, 1)
    a = Matrix.from_list([[scalar(1), i], [i, scalar(-1)]])
    # second row is i times the first
    assert rank(a) == 1
    assert kernel(a).dim == 1


@pytest.mark.parametrize("seed", range(10))
def test_solve_and_inverse(seed):
    u = to_matrix(mock_unimodular_matrix(4, seed=seed))
    inv = inverse(u)
    assert u @ inv == Matrix.identity(4)
    b = vec(1, -2, 0, 3)
    x = solve(u, b)
    assert u.apply(x) == b


def test_solve_inconsistent():
    a = Matrix.from_list([[scalar(1), scalar(1)], [scalar(2), scalar(2)]])
    with pytest.raises(SubspaceError):
        solve(a, vec(1, 0))
    with pytest.raises(SubspaceError):
        inverse(a)


def test_graded_map_composition():
    dims = {0: 1, 1: 2, 2: 1}
    up = GradedMap(
        dims,
        {
            0: Matrix.from_list([[scalar(1)], [scalar(0)]]),
            1: Matrix.from_list([[scalar(0), scalar(1)]]),
        },
        shift=1,
    )
    assert (up @ up).shift == 2
    assert (up @ up).is_zero()
    assert up[2].shape == (0, 1)
    mirror = GradedMap(dims, {0: Matrix.identity(1), 2: Matrix.identity(1)}, mirror=2)
    assert (mirror @ up).mirror == 1
    with pytest.raises(ValueError):
        GradedMap(dims, {0: Matrix.identity(2)}, shift=1)
