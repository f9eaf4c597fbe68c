from __future__ import annotations

import posixpath
from fractions import Fraction

import pytest

from symplex.algebra.forms import to_vector
from symplex.algebra.linalg import Matrix
from symplex.algebra.linalg import rank
from symplex.algebra.parser import parse_form
from symplex.algebra.presentation import is_nilpotent
from symplex.algebra.scalars import K
from symplex.algebra.scalars import real_fraction
from symplex.algebra.scalars import scalar
from symplex.cohomology.complex import BiDifferentialComplex
from symplex.cohomology.complex import ComplexError
from symplex.cohomology.complex import from_presentation
from symplex.cohomology.complex import load_raw_complex
from symplex.cohomology.spaces import cohomology
from symplex.cohomology.spaces import h_bc
from symplex.cohomology.spaces import induced_map
from symplex.cohomology.spaces import natural_map
from symplex.cohomology.spaces import render_vector
from symplex.cohomology.verdicts import lefschetz_map
from symplex.cohomology.verdicts import verdicts
from symplex.corpus import list_models
from symplex.mock import mock_complex
from symplex.settings import symplex_corpus_path
from symplex.types import CohomologyKind

KINDS = ("dR", "dLambda", "BC", "A")

CORPUS = [posixpath.basename(p)[: -len(".model")] for p in list_models(symplex_corpus_path())]

# degree offsets of the classes each mock piece contributes
PIECE_CLASSES = {
    "dot": {"dR": [0], "dLambda": [0], "BC": [0], "A": [0]},
    "del": {"dR": [], "dLambda": [0, 1], "BC": [1], "A": [0]},
    "debar": {"dR": [0, -1], "dLambda": [], "BC": [-1], "A": [0]},
    "square": {"dR": [], "dLambda": [], "BC": [], "A": []},
    "zigzag_up": {"dR": [2], "dLambda": [0], "BC": [1], "A": [0, 2]},
    "zigzag_down": {"dR": [0], "dLambda": [-2], "BC": [-1], "A": [0, -2]},
}

GOLDEN_4D = [
    ("t4", [1, 4, 6, 4, 1], [1, 4, 6, 4, 1], [1, 4, 6, 4, 1]),
    ("kodaira", [1, 3, 4, 3, 1], [1, 3, 5, 3, 1], [1, 3, 5, 3, 1]),
    ("g4_1", [1, 2, 2, 2, 1], [1, 2, 4, 2, 1], [1, 2, 4, 2, 1]),
    ("g3_4_g1", [1, 2, 2, 2, 1], [1, 2, 2, 2, 1], [1, 2, 2, 2, 1]),
]


def dims(c, kind):
    return [cohomology(c, kind, k).dim for k in c.degrees]


def fraction_rank(m):
    """rank by elimination over Fractions, independent of the sympy backend"""
    rows = [[real_fraction(x) for x in r] for r in m.to_list()]
    rk = 0
    ncols = m.shape[1]
    for col in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        for i in range(len(rows)):
            if i != rk and rows[i][col] != 0:
                f = Fraction(rows[i][col]) / rows[rk][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rk])]
        rk += 1
    return rk


def oracle_dims(c: BiDifferentialComplex):
    """cohomology dimensions from ranks alone"""
    d, db = c.del_, c.debar
    out = {kind: [] for kind in KINDS}
    for k in c.degrees:
        n = c.dim(k)
        r_d = fraction_rank(d[k])
        r_db = fraction_rank(db[k])
        out["dR"].append(n - r_d - fraction_rank(d[k - 1]))
        out["dLambda"].append(n - r_db - fraction_rank(db[k + 1]))
        both = fraction_rank(d[k].vstack(db[k]))
        ddbar = fraction_rank(c.ddbar[k])
        out["BC"].append(n - both - ddbar)
        out["A"].append(n - ddbar - fraction_rank(d[k - 1].hstack(db[k + 1])))
    return out


def piece_dims(counts, degrees):
    out = {kind: {k: 0 for k in degrees} for kind in KINDS}
    for name, k in counts.pieces:
        for kind, offsets in PIECE_CLASSES[name].items():
            for o in offsets:
                out[kind][k + o] += 1
    return {kind: [v[k] for k in degrees] for kind, v in out.items()}


@pytest.mark.parametrize("seed", range(120))
def test_mock_complex_against_oracles(seed):
    c, counts = mock_complex(seed=seed)
    assert c.validate()
    computed = {kind: dims(c, kind) for kind in KINDS}
    assert computed == piece_dims(counts, c.degrees)
    assert computed == oracle_dims(c)


@pytest.mark.parametrize("seed", range(10))
def test_unconjugated_mock_complex(seed):
    c, counts = mock_complex(seed=seed, conjugate=False, max_total_dim=8)
    assert {kind: dims(c, kind) for kind in KINDS} == piece_dims(counts, c.degrees)


@pytest.mark.parametrize("name,dr,bc,ae", GOLDEN_4D)
def test_four_dimensional_goldens(corpus_model, name, dr, bc, ae):
    inst = next(corpus_model(name).instances())
    c = from_presentation(inst.presentation, inst.symplectic)
    assert dims(c, "dR") == dr
    assert dims(c, "dLambda") == dr[::-1]
    assert dims(c, "BC") == bc
    assert dims(c, "A") == ae


@pytest.mark.parametrize("name", CORPUS)
def test_dualities(corpus_model, name):
    inst = next(corpus_model(name).instances())
    c = from_presentation(inst.presentation, inst.symplectic)
    top = c.max_degree
    dr, dl = dims(c, "dR"), dims(c, "dLambda")
    bc, ae = dims(c, "BC"), dims(c, "A")
    for k in c.degrees:
        assert dl[k] == dr[top - k]
        assert bc[k] == ae[top - k]
        assert bc[k] == bc[top - k]
        # unimodular: the wedge pairing makes A dual to BC
        assert ae[k] == bc[k]


@pytest.mark.parametrize("name", CORPUS)
def test_verdicts_agree(corpus_model, name):
    inst = next(corpus_model(name).instances())
    s = inst.symplectic
    c = from_presentation(inst.presentation, s)
    v = verdicts(c, s)
    assert v.delta_nonnegative
    assert v.hlc == v.delta_vanishes == v.brylinski == v.dd_lambda_lemma
    assert v.dd_lambda_subspaces == v.dd_lambda_lemma


SIX_NILPOTENT = [
    name for name in CORPUS if name.startswith(("g3_1", "g4_1_", "g5_", "g6_"))
]


@pytest.mark.parametrize("name", SIX_NILPOTENT)
def test_bc_from_lefschetz_ranks(corpus_model, name):
    # six-dimensional nilpotent: H_BC in degrees 2, 3 is fixed by b_k and
    # the ranks of L: H¹→H³, L²: H¹→H⁵ and L: H²→H⁴
    inst = next(corpus_model(name).instances())
    assert is_nilpotent(inst.presentation)
    s = inst.symplectic
    c = from_presentation(inst.presentation, s)
    assert c.max_degree == 6
    L = c.lefschetz
    h = {k: cohomology(c, CohomologyKind.DR, k) for k in c.degrees}
    r3 = induced_map(h[1], h[3], L[1]).rank
    s1 = induced_map(h[1], h[5], L[3] @ L[1]).rank
    r2 = induced_map(h[2], h[4], L[2]).rank
    b = dims(c, "dR")
    bc = dims(c, "BC")
    assert bc[2] == b[2] + b[1] - s1
    assert bc[3] == 2 * b[3] - b[2] + 3 * b[1] - 2 - r2 - r3
    assert inst.model.expect.dims["BC"] == bc


def test_kodaira_bc_representatives(kodaira_complex):
    c = kodaira_complex
    bc1 = cohomology(c, CohomologyKind.BC, 1)
    assert bc1.dim == 3
    forms = [to_vector(parse_form(x, 4), 4, 1) for x in ("e1", "e2", "e3")]
    coords = [bc1.coordinates(v) for v in forms]
    assert rank(Matrix.from_list(coords)) == 3
    ae1 = cohomology(c, CohomologyKind.AEPPLI, 1)
    # e3 = d^Λ(e1.4)
    e3 = to_vector(parse_form("e3", 4), 4, 1)
    assert all(x == K.zero for x in ae1.coordinates(e3))
    forms = [to_vector(parse_form(x, 4), 4, 1) for x in ("e1", "e2", "e4")]
    assert rank(Matrix.from_list([ae1.coordinates(v) for v in forms])) == 3
    assert len(h_bc(c)) == 5


def test_natural_maps_on_kodaira(kodaira_complex):
    c = kodaira_complex
    m1 = natural_map(c, "BC", "dR", 1)
    assert m1.bijective
    m2 = natural_map(c, "BC", "dR", 2)
    assert not m2.injective
    assert m2.surjective
    with pytest.raises(ValueError, match="no natural map"):
        natural_map(c, "dR", "BC", 2)


def test_lefschetz_maps(kodaira_complex, g41_complex, kodaira, g41):
    # L^0 is the identity
    assert lefschetz_map(kodaira_complex, kodaira[1], 0).bijective
    assert not lefschetz_map(kodaira_complex, kodaira[1], 1).bijective
    assert lefschetz_map(g41_complex, g41[1], 2).bijective
    with pytest.raises(ValueError):
        lefschetz_map(kodaira_complex, kodaira[1], 3)


def test_bc_quotient_uses_ddbar_image(g41_complex):
    c = g41_complex
    space = cohomology(c, "BC", 2)
    assert space.numerator.dim - space.denominator.dim == 4
    assert rank(c.ddbar[2]) == space.denominator.dim


RAW = """
dims 1 2 1          # degrees 0, 1, 2
del 0
1
0
debar 2
1/2
i
"""


def test_load_raw_complex():
    c = load_raw_complex(RAW, name="raw")
    assert c.name == "raw"
    assert [c.dim(k) for k in c.degrees] == [1, 2, 1]
    assert dims(c, "dR") == [0, 1, 1]
    assert dims(c, "dLambda") == [1, 1, 0]
    assert dims(c, "BC") == [0, 2, 0]
    assert dims(c, "A") == [1, 0, 1]
    assert render_vector(c, 1, {0: c.debar[2][0, 0]}) == "1/2*v1.0"


@pytest.mark.parametrize(
    "text,match",
    [
        ("del 0\n1", "missing `dims` line"),
        ("dims 1 1\ndel 0\n1 1", "must be a 1x1 block"),
        ("dims 1 1\ndel 0\n1\ndebar 1\n1", "del debar"),
        ("dims 1\nfoo", "unexpected"),
    ],
)
def test_load_raw_complex_errors(text, match):
    with pytest.raises(ComplexError, match=match):
        load_raw_complex(text)


def test_load_raw_complex_spaced_gaussian():
    # `p/q+r/s i` is one entry, `1 i` are two
    text = "dims 1 2 1\ndel 0\n1/2+3/4 i\n-3/4+1/2 i\ndel 1\n1 i\n"
    c = load_raw_complex(text)
    assert c.del_[0][0, 0] == scalar("1/2", "3/4")
    assert c.del_[0][1, 0] == scalar("-3/4", "1/2")
    assert c.del_[1][0, 1] == scalar(0, 1)
