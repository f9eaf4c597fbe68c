from __future__ import annotations

import numpy as np
import pytest

from symplex.algebra.forms import Form
from symplex.algebra.presentation import is_nilpotent
from symplex.cohomology.complex import from_presentation
from symplex.cohomology.spaces import cohomology
from symplex.report import evaluate_model
from symplex.twisted import CharacterWeight
from symplex.twisted import TwistConnection
from symplex.twisted import TwistError
from symplex.twisted import WeightedPresentation
from symplex.twisted import gamma_subcomplex
from symplex.twisted import twisted_complex
from symplex.twisted import untwist
from symplex.twisted import validate_flat
from symplex.twisted import weighted_differential


def e(*idx):
    return Form.monomial(idx)


def dims(c, kind):
    return [cohomology(c, kind, k).dim for k in c.degrees]


def test_validate_flat(kodaira):
    p, _ = kodaira
    assert validate_flat(p, TwistConnection.rank_one(e(1)))
    diag = validate_flat(p, TwistConnection.rank_one(e(4)))
    assert not diag
    assert "not flat" in diag.issues[0]
    # φ∧φ does not vanish for this off-diagonal connection
    off = TwistConnection([[Form(), e(1)], [e(2), Form()]])
    assert not validate_flat(p, off)
    with pytest.raises(TwistError):
        TwistConnection([[e(1, 2)]])
    with pytest.raises(TwistError):
        TwistConnection([[e(1), Form()]])


def test_zero_twist_is_the_untwisted_complex(kodaira, kodaira_complex):
    p, s = kodaira
    c = twisted_complex(p, s, TwistConnection.rank_one(Form(), label="trivial"))
    for kind in ("dR", "dLambda", "BC", "A"):
        assert dims(c, kind) == dims(kodaira_complex, kind)


def test_twist_by_a_generator_is_acyclic(torus):
    p, s = torus
    c = twisted_complex(p, s, TwistConnection.rank_one(e(1), label="x"))
    assert c.name == "4g1[x]"
    assert dims(c, "dR") == [0, 0, 0, 0, 0]
    assert dims(c, "dLambda") == [0, 0, 0, 0, 0]


def test_rank_two_twist(torus):
    p, s = torus
    t = TwistConnection([[e(1), Form()], [Form(), Form()]], label="split")
    c = twisted_complex(p, s, t)
    assert [c.dim(k) for k in c.degrees] == [2, 8, 12, 8, 2]
    assert c.label(1, 0) == "e1⊗v1"
    assert dims(c, "dR") == [1, 4, 6, 4, 1]


def test_twisted_complex_rejects_non_flat(kodaira):
    p, s = kodaira
    with pytest.raises(TwistError, match="not flat"):
        twisted_complex(p, s, TwistConnection.rank_one(e(4)))


def test_sawai_twisted_cohomology(corpus_model):
    model = corpus_model("sawai")
    ev = evaluate_model(model, twists=["alpha1"])
    report = ev.report
    assert report.samplesAgree
    assert len(report.samples) == 3
    assert report.verdicts.hlc
    tw = report.twists["alpha1"]
    assert tw.cohomology["dR"] == [0, 1, 2, 2, 2, 1, 0, 0, 0]
    assert tw.cohomology["BC"] == [0, 1, 2, 3, 4, 3, 2, 1, 0]
    assert not tw.verdicts.ddLambdaLemma
    assert not tw.verdicts.bcToDrInjective[3]
    assert "twist:alpha1" in ev.complexes


def test_sawai_samples_each_give_the_golden_twist(corpus_model):
    model = corpus_model("sawai")
    expected = model.expect.twist_dims["alpha1"]
    for inst in model.instances():
        c = twisted_complex(inst.presentation, inst.symplectic, inst.twists["alpha1"])
        assert dims(c, "dR") == expected["dR"], inst.sample_label
        assert dims(c, "BC") == expected["BC"], inst.sample_label


@pytest.mark.parametrize("sample", [["1", "2", "-3"], ["1", "-3", "2"]])
def test_sawai_resonant_samples_disagree(corpus_model, sample):
    model = corpus_model("sawai")
    model = model.copy(update={"samples": [["2", "3", "-5"], sample]})
    report = evaluate_model(model, twists=["alpha1"]).report
    assert not report.samplesAgree
    assert report.twists["alpha1"].cohomology["dR"] == [0, 1, 2, 2, 2, 1, 0, 0, 0]


def test_sawai_degenerate_sample_disagrees(corpus_model):
    model = corpus_model("sawai")
    # a1 = a2 gives e4 the weight of e3
    model = model.copy(update={"samples": [["2", "3", "-5"], ["1", "1", "-2"]]})
    report = evaluate_model(model, twists=["alpha1"]).report
    assert not report.samplesAgree


def test_unknown_twist_label(corpus_model):
    with pytest.raises(KeyError):
        evaluate_model(corpus_model("sawai"), twists=["beta"])


def test_untwist_sawai(corpus_model):
    inst = next(corpus_model("sawai").instances())
    u = untwist(inst.weighted)
    assert u.d_of_generator[2] == Form()
    assert u.d_of_generator[5] == -e(4, 5)
    assert is_nilpotent(u)
    assert not is_nilpotent(inst.presentation)


def test_untwist_nakamura_is_abelian(corpus_model):
    inst = next(corpus_model("nakamura_a").instances())
    u = untwist(inst.weighted)
    assert all(not f for f in u.d_of_generator)
    dw = weighted_differential(inst.weighted)
    assert (dw @ dw).is_zero()


@pytest.mark.parametrize(
    "name,expected",
    [
        ("nakamura_a", [1, 2, 5, 8, 5, 2, 1]),
        ("nakamura_b", [1, 2, 3, 4, 3, 2, 1]),
    ],
)
def test_nakamura_subcomplex(corpus_model, name, expected):
    inst = next(corpus_model(name).instances())
    c = gamma_subcomplex(inst.weighted, inst.symplectic)
    for kind in ("dR", "dLambda", "BC", "A"):
        assert dims(c, kind) == expected


def test_gamma_trivial_monomials(corpus_model):
    inst = next(corpus_model("nakamura_a").instances())
    wp = inst.weighted
    # e2 carries chi1, e3 its inverse
    assert wp.total_weight(0b110).exponents == (0, 0)
    assert wp.is_gamma_trivial(0b110)
    assert not wp.is_gamma_trivial(0b10)
    # chi1 * chibar1^-1 is trivial on the lattice of case (a) only
    assert wp.is_gamma_trivial(0b100010)
    assert not wp.with_gamma(np.array([[1, 0], [0, 1]])).is_gamma_trivial(0b100010)
    assert wp.with_gamma(None).is_gamma_trivial(0b10)


def test_gamma_subcomplex_needs_trivial_omega(torus):
    p, s = torus
    weights = [CharacterWeight((1,), Form())] + [CharacterWeight.trivial(1)] * 3
    wp = WeightedPresentation(
        p, weights, characters=["c"], basic_derivatives=[Form()], gamma_matrix=np.array([[1]])
    )
    with pytest.raises(TwistError, match="omega is not"):
        gamma_subcomplex(wp, s)


def test_weighted_presentation_checks(kodaira):
    p, _ = kodaira
    with pytest.raises(TwistError, match="need 4 weights"):
        WeightedPresentation(p, [CharacterWeight.trivial(1)])
    with pytest.raises(TwistError, match="non-closed"):
        WeightedPresentation(
            p,
            [CharacterWeight.trivial(1)] * 3 + [CharacterWeight((1,), e(4))],
        )
    with pytest.raises(TwistError):
        CharacterWeight.from_exponents([1, 2], [e(1)])
    with pytest.raises(TwistError):
        CharacterWeight((1,), e(1, 2))


def test_character_products():
    a = CharacterWeight.from_exponents([1, 0], [e(1), e(2)])
    b = CharacterWeight.from_exponents([0, -1], [e(1), e(2)])
    ab = a * b
    assert ab.exponents == (1, -1)
    assert ab.derivative == e(1) - e(2)
    assert a * CharacterWeight.trivial(2) == a


def test_main_complex_of_sawai_is_unchanged_by_twists(corpus_model):
    ev = evaluate_model(corpus_model("sawai"), twists=["alpha1"])
    inst = ev.instance
    c = from_presentation(inst.presentation, inst.symplectic)
    assert dims(c, "dR") == ev.report.cohomology["dR"]
