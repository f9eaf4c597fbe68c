from __future__ import annotations

import posixpath

import pytest

from symplex.algebra.forms import Form
from symplex.algebra.forms import from_vector
from symplex.algebra.forms import to_vector
from symplex.algebra.linalg import Matrix
from symplex.algebra.parser import parse_form
from symplex.algebra.parser import parse_structure
from symplex.algebra.scalars import K
from symplex.corpus import list_models
from symplex.modelfile import load_model
from symplex.settings import symplex_corpus_path
from symplex.symplectic import SymplecticError
from symplex.symplectic import build_symplectic
from symplex.symplectic import d_lambda
from symplex.symplectic import primitive_decomposition
from symplex.symplectic import primitive_dims
from symplex.symplectic import symplectic_star
from symplex.symplectic import weight_H

STRUCTURES = [
    ("(0,0,0,0)", "12+34", 4),
    ("(0,0,0,23)", "12+34", 4),
    ("(0,0,12,13)", "14+23", 4),
    ("(0,0,-23,24)", "12+34", 4),
    ("(0,0,12,13,14,15)", "16+34-25", 6),
    ("(0,0,0,12,13,14+23)", "16-2×34-25", 6),
]

CORPUS = [posixpath.basename(p)[: -len(".model")] for p in list_models(symplex_corpus_path())]

CASES = [pytest.param(x, id=x[0]) for x in STRUCTURES] + [
    pytest.param(name, id=name) for name in CORPUS
]


def e(*idx):
    return Form.monomial(idx)


def structure(text, omega, n):
    p = parse_structure(text, n)
    return p, build_symplectic(p, parse_form(omega, n))


def build(case):
    """a hand-typed structure or the first sample of a bundled model"""
    if isinstance(case, str):
        model = load_model(symplex_corpus_path().joinpath(f"{case}.model"))
        inst = next(model.instances())
        return inst.presentation, inst.symplectic
    return structure(*case)


def test_torus_operators(torus):
    _, s = torus
    assert s.Lambda(e(1, 2)) == Form.one()
    assert s.Lambda(e(1, 3)) == Form()
    assert s.Lambda(s.omega) == Form.one() * 2
    assert s.L(e(1, 2)) == e(1, 2, 3, 4)
    assert s.volume == K.one


def test_torus_star(torus):
    _, s = torus
    assert symplectic_star(s, Form.one()) == e(1, 2, 3, 4)
    assert s.star(e(1)) == -e(1, 3, 4)
    assert s.star(e(1, 3, 4)) == -e(1)
    assert s.star(e(1, 2, 3, 4)) == Form.one()


def test_weight_operator():
    f = Form.one() + e(1) + e(1, 2)
    assert weight_H(f, 2) == Form.one() * 2 + e(1)


@pytest.mark.parametrize("case", CASES)
def test_sl2_relations(case):
    _, s = build(case)
    L, lam, H = s.lefschetz, s.dual_lefschetz, s.weight
    assert (lam @ L) - (L @ lam) == H
    assert (L @ H) - (H @ L) == L.scale(K.convert(2))
    assert (lam @ H) - (H @ lam) == lam.scale(K.convert(-2))


@pytest.mark.parametrize("case", CASES)
def test_star_is_an_involution(case):
    p, s = build(case)
    n = p.n
    star = s.star_matrices
    twice = star @ star
    assert twice.shift == 0
    for k in range(n + 1):
        assert twice[k] == Matrix.identity(s.presentation.dims[k])


@pytest.mark.parametrize("case", CASES)
def test_d_lambda_identities(case):
    p, s = build(case)
    n = p.n
    assert (p.differential @ p.differential).is_zero()
    d, dl, L, lam = p.differential, s.d_lambda, s.lefschetz, s.dual_lefschetz
    assert (dl @ dl).is_zero()
    assert ((d @ dl) + (dl @ d)).is_zero()
    assert ((d @ L) - (L @ d)).is_zero()
    assert (dl @ L) - (L @ dl) == d
    assert ((dl @ lam) - (lam @ dl)).is_zero()
    star = s.star_matrices
    sds = star @ d @ star
    for k in range(n + 1):
        expected = sds[k] if k % 2 else -sds[k]
        assert dl[k] == expected


def test_d_lambda_on_kodaira(kodaira):
    p, s = kodaira
    v = to_vector(e(1, 2, 4), 4, 3)
    out = from_vector(s.d_lambda[3].apply(v), 4, 2)
    assert out == e(2, 3)
    assert d_lambda(s, p.differential) == s.d_lambda


@pytest.mark.parametrize(
    "text,omega,n,match",
    [
        ("(0,0,0,23)", "14+23", 4, "not closed"),
        ("(0,0,0,0)", "12", 4, "Gram rank 2 of 4"),
        ("(0,0,0)", "12", 3, "odd dimension"),
        ("(0,0,0,0)", "e1.2.3", 4, "not a 2-form"),
    ],
)
def test_build_symplectic_errors(text, omega, n, match):
    p = parse_structure(text, n)
    with pytest.raises(SymplecticError, match=match):
        build_symplectic(p, parse_form(omega, n))


def test_primitive_dims(torus, g41):
    assert primitive_dims(torus[1]) == [1, 4, 5]
    assert primitive_dims(g41[1]) == [1, 4, 5]


def test_primitive_decomposition(torus):
    _, s = torus
    assert primitive_decomposition(s, e(1, 3)) == [(0, e(1, 3))]
    assert primitive_decomposition(s, s.omega) == [(1, Form.one())]
    a = e(1, 2) * 3
    parts = primitive_decomposition(s, a)
    rebuilt = Form()
    for j, prim in parts:
        assert not s.Lambda(prim)
        lifted = prim
        for _ in range(j):
            lifted = s.L(lifted)
        rebuilt = rebuilt + lifted
    assert rebuilt == a
    assert primitive_decomposition(s, Form()) == []
    with pytest.raises(ValueError):
        primitive_decomposition(s, e(1) + e(1, 2))
