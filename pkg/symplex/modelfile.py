"""model files: structure equations, symplectic form, twists and goldens

A model file is line oriented and ``#`` starts a comment::

    name g4.1
    dim 4
    structure (0,0,12,13)
    symplectic omega = 14+23
    expect dR dims = [1, 2, 2, 2, 1]
    expect hlc = false

Parameters are declared with ``param`` and instantiated once per entry
of ``samples``; every instance is checked against the ``constraint``
lines.
"""
from __future__ import annotations

import logging
import re
from typing import Dict
from typing import Iterator
from typing import List
from typing import Optional
from typing import Tuple

import numpy as np
from pydantic import BaseModel
from pydantic import Extra
from pydantic import validator

from symplex.algebra.forms import Form
from symplex.algebra.parser import StructureSyntaxError
from symplex.algebra.parser import parse_form
from symplex.algebra.parser import parse_structure
from symplex.algebra.presentation import LieAlgebraPresentation
from symplex.algebra.scalars import Scalar
from symplex.algebra.scalars import format_scalar
from symplex.algebra.scalars import parse_scalar
from symplex.files import read_text
from symplex.symplectic import SymplecticStructure
from symplex.symplectic import build_symplectic
from symplex.twisted import CharacterWeight
from symplex.twisted import TwistConnection
from symplex.twisted import WeightedPresentation
from symplex.types import CohomologyKind
from symplex.types import PathLike

__all__ = [
    "ModelFileError",
    "RepExpectation",
    "Expectations",
    "ModelFile",
    "ModelInstance",
    "parse_model",
    "load_model",
]

_log = logging.getLogger(__name__)

_DIM_KINDS = {k.value for k in CohomologyKind if k != CohomologyKind.HARMONIC}
_VERDICTS = {"hlc", "brylinski", "ddLambdaLemma"}


class ModelFileError(ValueError):
    """raised for unreadable or malformed model files"""

    def __init__(self, msg: str, path: Optional[str] = None, line: Optional[int] = None):
        where = ":".join(str(x) for x in (path, line) if x is not None)
        super().__init__(f"{where}: {msg}" if where else msg)
        self.msg = msg
        self.path = path
        self.line = line


# --- parsed model ----------------------------------------------------


class RepExpectation(BaseModel):
    """forms whose classes are expected to form a basis of H^degree"""

    kind: CohomologyKind
    degree: int
    forms: List[str]

    class Config:
        extra = Extra.forbid


class Expectations(BaseModel):
    """the golden block of a model file"""

    dims: Dict[str, List[int]] = {}
    delta: Optional[List[int]] = None
    verdicts: Dict[str, bool] = {}
    twist_dims: Dict[str, Dict[str, List[int]]] = {}
    twist_verdicts: Dict[str, Dict[str, bool]] = {}
    subcomplex_dims: Dict[str, List[int]] = {}
    subcomplex_verdicts: Dict[str, bool] = {}
    representatives: List[RepExpectation] = []

    class Config:
        extra = Extra.forbid

    def is_empty(self) -> bool:
        return self == Expectations()


class ModelFile(BaseModel):
    """a parsed but not yet instantiated model file"""

    path: Optional[str] = None
    name: str
    dim: int
    structure: str
    omega: Optional[str] = None
    params: List[str] = []
    constraints: List[str] = []
    samples: List[List[str]] = []
    characters: List[Tuple[str, str]] = []
    weights: Dict[int, List[Tuple[str, int]]] = {}
    gamma_rows: Optional[List[List[int]]] = None
    twists: Dict[str, str] = {}
    expect: Expectations = Expectations()

    class Config:
        extra = Extra.forbid

    @validator("dim")
    def dim_positive(cls, v):
        if v < 1:
            raise ValueError("dim must be positive")
        return v

    @validator("samples")
    def samples_match_params(cls, v, values):
        params = values.get("params", [])
        for sample in v:
            if len(sample) != len(params):
                raise ValueError(f"sample {sample} does not match params {params}")
        return v

    def _error(self, msg: str) -> ModelFileError:
        return ModelFileError(msg, self.path)

    def environments(self) -> List[Dict[str, Scalar]]:
        """one value environment per sample (a single empty one without params)"""
        if not self.params:
            return [{}]
        if not self.samples:
            raise self._error("parameters declared but no samples given")
        envs = []
        for sample in self.samples:
            try:
                env = {p: parse_scalar(v) for p, v in zip(self.params, sample)}
                values = [
                    parse_form(c, self.dim, env=env, shorthand=False)
                    for c in self.constraints
                ]
            except ValueError as err:
                raise self._error(str(err)) from None
            for constraint, value in zip(self.constraints, values):
                if value:
                    shown = ", ".join(f"{p}={format_scalar(x)}" for p, x in env.items())
                    raise self._error(f"sample ({shown}) violates {constraint} = 0")
            envs.append(env)
        return envs

    def instance(self, env: Dict[str, Scalar]) -> ModelInstance:
        """build presentation, symplectic form, twists and weights for one sample"""
        try:
            p = parse_structure(self.structure, self.dim, name=self.name, env=env)
            p = LieAlgebraPresentation(
                self.name, self.dim, p.d_of_generator, params=tuple(env.items())
            )
            omega = parse_form(self.omega, self.dim, env=env) if self.omega else None
            twists = {
                label: TwistConnection.rank_one(
                    parse_form(expr, self.dim, env=env), label=label
                )
                for label, expr in self.twists.items()
            }
            basic = [parse_form(expr, self.dim, env=env) for _, expr in self.characters]
        except StructureSyntaxError as err:
            raise self._error(str(err)) from None
        weighted = None
        if self.characters or self.weights:
            names = [c for c, _ in self.characters]
            gens = []
            for k in range(1, self.dim + 1):
                exps = [0] * len(names)
                for char, e in self.weights.get(k, []):
                    if char not in names:
                        raise self._error(f"undeclared character {char!r}")
                    exps[names.index(char)] += e
                gens.append(CharacterWeight.from_exponents(exps, basic))
            gamma = np.array(self.gamma_rows, dtype=np.int64) if self.gamma_rows else None
            weighted = WeightedPresentation(
                p,
                gens,
                characters=names,
                basic_derivatives=basic,
                gamma_matrix=gamma,
            )
        return ModelInstance(self, env, p, omega, twists, weighted)

    def instances(self) -> Iterator[ModelInstance]:
        for env in self.environments():
            yield self.instance(env)


class ModelInstance:
    """a model file evaluated at one parameter sample"""

    __slots__ = ("model", "env", "presentation", "omega", "twists", "weighted", "_s")

    def __init__(
        self,
        model: ModelFile,
        env: Dict[str, Scalar],
        presentation: LieAlgebraPresentation,
        omega: Optional[Form],
        twists: Dict[str, TwistConnection],
        weighted: Optional[WeightedPresentation],
    ) -> None:
        self.model = model
        self.env = env
        self.presentation = presentation
        self.omega = omega
        self.twists = twists
        self.weighted = weighted
        self._s: Optional[SymplecticStructure] = None

    @property
    def symplectic(self) -> SymplecticStructure:
        """the validated symplectic structure (raises SymplecticError)"""
        if self._s is None:
            if self.omega is None:
                raise ModelFileError("model declares no symplectic form", self.model.path)
            self._s = build_symplectic(self.presentation, self.omega)
        return self._s

    @property
    def sample_label(self) -> str:
        return ", ".join(f"{p}={format_scalar(v)}" for p, v in self.env.items())

    def __repr__(self) -> str:
        return f"ModelInstance({self.model.name!r}, {self.sample_label!r})"


# --- parser ----------------------------------------------------------

_RE_LONG_D = re.compile(r"^d\s*e\d+\s*=")
_RE_EXPECT_DIMS = re.compile(r"^expect\s+(\w+)\s+dims\s*=\s*(.+)$")
_RE_EXPECT_TWIST_DIMS = re.compile(r"^expect\s+twist\s+(\w+)\s+(\w+)\s+dims\s*=\s*(.+)$")
_RE_EXPECT_TWIST_VERDICT = re.compile(r"^expect\s+twist\s+(\w+)\s+(\w+)\s*=\s*(\w+)$")
_RE_EXPECT_SUB_DIMS = re.compile(r"^expect\s+subcomplex\s+(\w+)\s+dims\s*=\s*(.+)$")
_RE_EXPECT_SUB_VERDICT = re.compile(r"^expect\s+subcomplex\s+(\w+)\s*=\s*(\w+)$")
_RE_EXPECT_REP = re.compile(r"^expect\s+rep\s+(\w+)\s+(\d+)\s*=\s*(.+)$")
_RE_EXPECT_VERDICT = re.compile(r"^expect\s+(\w+)\s*=\s*(\w+)$")
_RE_EXPECT_DELTA = re.compile(r"^expect\s+delta\s*=\s*(.+)$")
_RE_OMEGA = re.compile(r"^symplectic\s+omega\s*=\s*(.+)$")
_RE_CHAR = re.compile(r"^char\s+(\w+)\s+derivative\s*=\s*(.+)$")
_RE_WEIGHT = re.compile(r"^weight\s+e(\d+)\s*=\s*(.+)$")
_RE_WEIGHT_FACTOR = re.compile(r"^(\w+)(?:\^([+-]?\d+))?$")
_RE_GAMMA = re.compile(r"^gamma_trivial\s+rows\s*=\s*(.+)$")
_RE_TWIST = re.compile(r"^twist\s+(\w+)\s+rank\s+(\d+)\s+phi\s*=\s*(.+)$")
_RE_CONSTRAINT = re.compile(r"^constraint\s+(.+?)\s*=\s*0$")
_RE_SAMPLES = re.compile(r"^samples\s*=\s*\[(.*)\]$")


def _int_list(text: str) -> List[int]:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"expected [..], got {text!r}")
    return [int(x) for x in body[1:-1].replace(",", " ").split()]


def _bool(text: str) -> bool:
    if text not in {"true", "false"}:
        raise ValueError(f"expected true or false, got {text!r}")
    return text == "true"


def _dim_kind(kind: str) -> str:
    if kind not in _DIM_KINDS:
        raise ValueError(f"unknown cohomology kind {kind!r}")
    return kind


def _verdict(name: str) -> str:
    if name not in _VERDICTS:
        raise ValueError(f"unknown verdict {name!r}")
    return name


def parse_model(text: str, *, path: Optional[str] = None) -> ModelFile:
    """parse the text of a model file"""
    data: Dict = {
        "path": path,
        "params": [],
        "constraints": [],
        "samples": [],
        "characters": [],
        "weights": {},
        "twists": {},
    }
    expect: Dict = {
        "dims": {},
        "verdicts": {},
        "twist_dims": {},
        "twist_verdicts": {},
        "subcomplex_dims": {},
        "subcomplex_verdicts": {},
        "representatives": [],
    }
    long_lines: List[str] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            head = line.split(None, 1)[0]
            rest = line[len(head) :].strip()
            if head == "name":
                data["name"] = rest
            elif head == "dim":
                data["dim"] = int(rest)
            elif head == "structure":
                data["structure"] = rest
            elif _RE_LONG_D.match(line):
                long_lines.append(line)
            elif head == "symplectic":
                m = _RE_OMEGA.match(line)
                if m is None:
                    raise ValueError("expected `symplectic omega = <form>`")
                data["omega"] = m.group(1)
            elif head == "param":
                data["params"].extend(rest.replace(",", " ").split())
            elif head == "constraint":
                m = _RE_CONSTRAINT.match(line)
                if m is None:
                    raise ValueError("expected `constraint <expr> = 0`")
                data["constraints"].append(m.group(1))
            elif head == "samples":
                m = _RE_SAMPLES.match(line)
                if m is None:
                    raise ValueError("expected `samples = [(...), ...]`")
                data["samples"] = [
                    [v.strip() for v in t.split(",")]
                    for t in re.findall(r"\(([^)]*)\)", m.group(1))
                ]
            elif head == "char":
                m = _RE_CHAR.match(line)
                if m is None:
                    raise ValueError("expected `char <Name> derivative = <form>`")
                data["characters"].append((m.group(1), m.group(2)))
            elif head == "weight":
                m = _RE_WEIGHT.match(line)
                if m is None:
                    raise ValueError("expected `weight e<k> = <Name>^<int> ...`")
                factors = []
                for factor in m.group(2).split("*"):
                    fm = _RE_WEIGHT_FACTOR.match(factor.strip())
                    if fm is None:
                        raise ValueError(f"bad weight factor {factor.strip()!r}")
                    factors.append((fm.group(1), int(fm.group(2) or 1)))
                data["weights"][int(m.group(1))] = factors
            elif head == "gamma_trivial":
                m = _RE_GAMMA.match(line)
                if m is None:
                    raise ValueError("expected `gamma_trivial rows = [[...]; ...]`")
                body = m.group(1).strip()
                if not (body.startswith("[") and body.endswith("]")):
                    raise ValueError("gamma rows must be enclosed in [...]")
                data["gamma_rows"] = [
                    _int_list(f"[{row.strip().strip('[]')}]")
                    for row in body[1:-1].split(";")
                    if row.strip()
                ]
            elif head == "twist":
                m = _RE_TWIST.match(line)
                if m is None:
                    raise ValueError("expected `twist <label> rank 1 phi = <form>`")
                if int(m.group(2)) != 1:
                    raise ValueError("model files only declare rank one twists")
                data["twists"][m.group(1)] = m.group(3)
            elif head == "expect":
                _parse_expect(line, expect)
            else:
                raise ValueError(f"unknown directive {head!r}")
        except (ValueError, StructureSyntaxError) as err:
            raise ModelFileError(str(err), path, lineno) from None

    if long_lines:
        if "structure" in data:
            raise ModelFileError("both shorthand and `d e<k>` structure given", path)
        data["structure"] = "\n".join(long_lines)
    for required in ("name", "dim", "structure"):
        if required not in data:
            raise ModelFileError(f"missing `{required}`", path)
    try:
        return ModelFile(expect=Expectations(**expect), **data)
    except ValueError as err:
        raise ModelFileError(str(err), path) from None


def _parse_expect(line: str, expect: Dict) -> None:
    m = _RE_EXPECT_TWIST_DIMS.match(line)
    if m:
        label, kind, dims = m.groups()
        expect["twist_dims"].setdefault(label, {})[_dim_kind(kind)] = _int_list(dims)
        return
    m = _RE_EXPECT_TWIST_VERDICT.match(line)
    if m:
        label, name, value = m.groups()
        expect["twist_verdicts"].setdefault(label, {})[_verdict(name)] = _bool(value)
        return
    m = _RE_EXPECT_SUB_DIMS.match(line)
    if m:
        expect["subcomplex_dims"][_dim_kind(m.group(1))] = _int_list(m.group(2))
        return
    m = _RE_EXPECT_SUB_VERDICT.match(line)
    if m:
        expect["subcomplex_verdicts"][_verdict(m.group(1))] = _bool(m.group(2))
        return
    m = _RE_EXPECT_REP.match(line)
    if m:
        kind, degree, forms = m.groups()
        expect["representatives"].append(
            RepExpectation(
                kind=_dim_kind(kind),
                degree=int(degree),
                forms=[f.strip() for f in forms.split(",")],
            )
        )
        return
    m = _RE_EXPECT_DELTA.match(line)
    if m:
        expect["delta"] = _int_list(m.group(1))
        return
    m = _RE_EXPECT_DIMS.match(line)
    if m:
        expect["dims"][_dim_kind(m.group(1))] = _int_list(m.group(2))
        return
    m = _RE_EXPECT_VERDICT.match(line)
    if m:
        expect["verdicts"][_verdict(m.group(1))] = _bool(m.group(2))
        return
    raise ValueError(f"cannot parse expectation {line!r}")


def load_model(urlpath: PathLike) -> ModelFile:
    """read and parse a model file from a path or fsspec url"""
    path = str(urlpath)
    try:
        text = read_text(urlpath)
    except (OSError, TypeError) as err:
        raise ModelFileError(f"cannot read model file: {err}", path) from None
    return parse_model(text, path=path)
