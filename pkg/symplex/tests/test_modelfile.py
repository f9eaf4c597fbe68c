from __future__ import annotations

import pytest

from symplex.algebra.forms import Form
from symplex.modelfile import ModelFileError
from symplex.modelfile import load_model
from symplex.modelfile import parse_model
from symplex.types import CohomologyKind

G41 = """\
# filiform in dimension four
name g4.1
dim 4
structure (0,0,12,13)
symplectic omega = 14+23    # d(e14) = 0

expect dR dims = [1, 2, 2, 2, 1]
expect BC dims = [1, 2, 4, 2, 1]
expect delta = [0, 0, 4, 0, 0]
expect hlc = false
expect rep BC 1 = e1, e2
"""

PARAMETRIC = """\
name family
dim 4
param a b
constraint a - b = 0
samples = [(1, 1), (2, 2)]
d e3 = a*e1.2
d e4 = b*e1.3
symplectic omega = e1.4 + e2.3
"""


def test_parse_model():
    m = parse_model(G41, path="g41.model")
    assert m.name == "g4.1"
    assert m.dim == 4
    assert m.structure == "(0,0,12,13)"
    assert m.omega == "14+23"
    assert m.expect.dims == {"dR": [1, 2, 2, 2, 1], "BC": [1, 2, 4, 2, 1]}
    assert m.expect.delta == [0, 0, 4, 0, 0]
    assert m.expect.verdicts == {"hlc": False}
    (rep,) = m.expect.representatives
    assert rep.kind == CohomologyKind.BC
    assert rep.degree == 1
    assert rep.forms == ["e1", "e2"]
    assert not m.expect.is_empty()


def test_single_instance_without_params():
    m = parse_model(G41)
    (inst,) = list(m.instances())
    assert inst.sample_label == ""
    assert inst.presentation.d(Form.generator(4)) == Form.monomial((1, 3))
    assert inst.symplectic.n_half == 2
    assert inst.weighted is None
    assert inst.twists == {}


def test_parametric_instances():
    m = parse_model(PARAMETRIC)
    assert m.params == ["a", "b"]
    assert m.samples == [["1", "1"], ["2", "2"]]
    insts = list(m.instances())
    assert [i.sample_label for i in insts] == ["a=1, b=1", "a=2, b=2"]
    assert insts[1].presentation.d(Form.generator(3)) == Form.monomial((1, 2), 2)


def test_constraint_violation():
    m = parse_model(PARAMETRIC.replace("(2, 2)", "(2, 3)"))
    with pytest.raises(ModelFileError, match=r"sample \(a=2, b=3\) violates a - b = 0"):
        list(m.instances())


def test_params_without_samples():
    m = parse_model(PARAMETRIC.replace("samples = [(1, 1), (2, 2)]\n", ""))
    with pytest.raises(ModelFileError, match="no samples given"):
        list(m.instances())


def test_sample_arity():
    with pytest.raises(ModelFileError, match="does not match params"):
        parse_model(PARAMETRIC.replace("(2, 2)", "(2, 2, 2)"))


@pytest.mark.parametrize(
    "text,line,match",
    [
        ("name x\ndim 4\nfrobnicate\n", 3, "unknown directive"),
        ("name x\ndim four\n", 2, "invalid literal"),
        ("name x\ndim 2\nstructure (0,0)\nexpect hlc = maybe\n", 4, "true or false"),
        ("name x\ndim 2\nstructure (0,0)\nexpect XY dims = [1]\n", 4, "unknown cohomology kind"),
        ("name x\ndim 2\nstructure (0,0)\nexpect kaehler = true\n", 4, "unknown verdict"),
        ("name x\ndim 2\ntwist t rank 2 phi = e1\n", 3, "rank one twists"),
        ("name x\ndim 2\nsymplectic 12\n", 3, "symplectic omega"),
    ],
)
def test_errors_carry_line_numbers(text, line, match):
    with pytest.raises(ModelFileError, match=match) as exc:
        parse_model(text, path="bad.model")
    assert exc.value.line == line
    assert exc.value.path == "bad.model"
    assert str(exc.value).startswith(f"bad.model:{line}: ")


def test_structural_errors():
    with pytest.raises(ModelFileError, match="missing `name`"):
        parse_model("dim 2\nstructure (0,0)\n")
    with pytest.raises(ModelFileError, match="both shorthand"):
        parse_model("name x\ndim 2\nstructure (0,0)\nd e2 = e1.2\n")
    with pytest.raises(ModelFileError, match="dim must be positive"):
        parse_model("name x\ndim 0\nstructure ()\n")


def test_missing_symplectic_form():
    m = parse_model("name x\ndim 2\nstructure (0,0)\n")
    inst = next(m.instances())
    with pytest.raises(ModelFileError, match="no symplectic form"):
        inst.symplectic


def test_undeclared_character():
    text = "name x\ndim 2\nstructure (0,0)\nchar a derivative = e1\nweight e2 = b\n"
    with pytest.raises(ModelFileError, match="undeclared character 'b'"):
        next(parse_model(text).instances())


def test_weights_and_gamma(corpus_model):
    m = corpus_model("nakamura_b")
    assert [c for c, _ in m.characters] == ["chi1", "chibar1"]
    assert m.weights[3] == [("chi1", -1)]
    assert m.gamma_rows == [[1, 0], [0, 1]]
    wp = next(m.instances()).weighted
    assert wp.gamma_matrix.shape == (2, 2)
    assert wp.weight_of_generator[1].exponents == (1, 0)


def test_twists_and_expectations(corpus_model):
    m = corpus_model("sawai")
    assert m.twists == {"alpha1": "-a1*e1"}
    assert m.expect.twist_dims["alpha1"]["dR"] == [0, 1, 2, 2, 2, 1, 0, 0, 0]
    assert m.expect.twist_verdicts == {"alpha1": {"ddLambdaLemma": False}}
    inst = next(m.instances())
    assert inst.twists["alpha1"].rank == 1
    assert inst.twists["alpha1"].phi[0][0] == Form.monomial((1,), -1)


def test_load_model_errors(tmp_path):
    with pytest.raises(ModelFileError, match="cannot read model file"):
        load_model(tmp_path.joinpath("missing.model"))
    path = tmp_path.joinpath("g41.model")
    path.write_text(G41)
    assert load_model(path).path == str(path)
