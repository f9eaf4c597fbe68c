"""golden regression harness over the bundled model corpus

Every model file carries an ``expect`` block. Running the corpus
evaluates each model (in a thread pool) and compares the computed
report against its expectations with exact equality.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Sequence

from tqdm import tqdm

from symplex.algebra.forms import to_vector
from symplex.algebra.linalg import Matrix
from symplex.algebra.linalg import SubspaceError
from symplex.algebra.linalg import rank
from symplex.algebra.parser import parse_form
from symplex.cohomology.complex import BiDifferentialComplex
from symplex.cohomology.spaces import cohomology
from symplex.files import find_files
from symplex.modelfile import Expectations
from symplex.modelfile import ModelFile
from symplex.modelfile import RepExpectation
from symplex.modelfile import load_model
from symplex.report import ComplexSummary
from symplex.report import Evaluation
from symplex.report import evaluate_model
from symplex.settings import settings
from symplex.settings import symplex_corpus_path
from symplex.types import PathLike

__all__ = [
    "CorpusError",
    "ModelResult",
    "CorpusRun",
    "list_models",
    "check_model",
    "run_corpus",
]

_log = logging.getLogger(__name__)


class CorpusError(ValueError):
    """raised when no corpus models can be found"""


class ModelResult(NamedTuple):
    name: str
    path: str
    mismatches: List[str]
    seconds: float

    @property
    def passed(self) -> bool:
        return not self.mismatches


class CorpusRun(NamedTuple):
    results: List[ModelResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def mismatches(self) -> List[str]:
        return [m for r in self.results for m in r.mismatches]


def list_models(
    corpus_dir: Optional[PathLike] = None, *, pattern: Optional[str] = None
) -> List[str]:
    """sorted model file paths in the corpus directory"""
    if corpus_dir is None:
        corpus_dir = symplex_corpus_path()
    glob = pattern or "*.model"
    if not glob.endswith(".model"):
        glob = f"{glob}.model"
    try:
        paths = find_files(corpus_dir, glob=glob)
    except (NotADirectoryError, FileNotFoundError):
        paths = []
    if not paths:
        raise CorpusError(f"no models found in {corpus_dir}")
    return paths


# --- comparing -------------------------------------------------------


def _compare_dims(
    where: str, expected: Dict[str, List[int]], summary: ComplexSummary
) -> List[str]:
    out = []
    for kind, dims in sorted(expected.items()):
        computed = summary.cohomology[kind]
        if len(dims) != len(computed):
            out.append(
                f"{where} {kind}: expected {len(dims)} degrees, computed {len(computed)}"
            )
            continue
        for degree, exp, got in zip(summary.degrees, dims, computed):
            if exp != got:
                out.append(
                    f"{where} {kind} degree {degree}: expected {exp}, computed {got}"
                )
    return out


def _compare_verdicts(
    where: str, expected: Dict[str, bool], summary: ComplexSummary
) -> List[str]:
    computed = summary.verdicts.dict()
    return [
        f"{where} {name}: expected {str(exp).lower()}, computed {str(computed[name]).lower()}"
        for name, exp in sorted(expected.items())
        if computed[name] != exp
    ]


def _compare_representatives(
    where: str, reps: Sequence[RepExpectation], c: BiDifferentialComplex, n: int
) -> List[str]:
    out = []
    for rep in reps:
        label = f"{where} rep {rep.kind.value} degree {rep.degree}"
        space = cohomology(c, rep.kind, rep.degree)
        try:
            vectors = [
                to_vector(parse_form(f, n), n, rep.degree) for f in rep.forms
            ]
            coords = [space.coordinates(v) for v in vectors]
        except (ValueError, SubspaceError) as err:
            out.append(f"{label}: {err}")
            continue
        r = rank(Matrix.from_list(coords, space.dim)) if coords else 0
        if not (len(rep.forms) == space.dim == r):
            out.append(
                f"{label}: expected a basis of {len(rep.forms)} classes, "
                f"computed dim {space.dim} with {r} independent classes"
            )
    return out


def compare(model: ModelFile, evaluation: Evaluation) -> List[str]:
    """all differences between the expectations and an evaluation"""
    expect: Expectations = model.expect
    report = evaluation.report
    name = model.name
    out = _compare_dims(name, expect.dims, report)
    if expect.delta is not None and expect.delta != report.delta:
        out.append(f"{name} delta: expected {expect.delta}, computed {report.delta}")
    out += _compare_verdicts(name, expect.verdicts, report)
    for label in sorted(set(expect.twist_dims) | set(expect.twist_verdicts)):
        summary = report.twists[label]
        where = f"{name} twist {label}"
        out += _compare_dims(where, expect.twist_dims.get(label, {}), summary)
        out += _compare_verdicts(where, expect.twist_verdicts.get(label, {}), summary)
    if expect.subcomplex_dims or expect.subcomplex_verdicts:
        assert report.subcomplex is not None
        where = f"{name} subcomplex"
        out += _compare_dims(where, expect.subcomplex_dims, report.subcomplex)
        out += _compare_verdicts(where, expect.subcomplex_verdicts, report.subcomplex)
    if expect.representatives:
        out += _compare_representatives(
            name, expect.representatives, evaluation.complexes["main"], model.dim
        )
    if not report.samplesAgree:
        out.append(f"{name} samples: dimensions differ between parameter samples")
    return out


def check_model(model: ModelFile) -> List[str]:
    """evaluate one model with everything its expectations need and compare"""
    expect = model.expect
    twists = sorted(set(expect.twist_dims) | set(expect.twist_verdicts))
    subcomplex = bool(expect.subcomplex_dims or expect.subcomplex_verdicts)
    evaluation = evaluate_model(model, twists=twists, subcomplex=subcomplex)
    return compare(model, evaluation)


def _run_one(path: str) -> ModelResult:
    t0 = time.perf_counter()
    try:
        model = load_model(path)
    except ValueError as err:
        return ModelResult(path, path, [f"{path}: {err}"], 0.0)
    try:
        mismatches = check_model(model)
    except (ValueError, KeyError) as err:
        mismatches = [f"{model.name}: {err}"]
    dt = time.perf_counter() - t0
    _log.info("%s: %s in %.2fs", model.name, "ok" if not mismatches else "FAIL", dt)
    return ModelResult(model.name, path, mismatches, dt)


def run_corpus(
    corpus_dir: Optional[PathLike] = None,
    *,
    pattern: Optional[str] = None,
    workers: Optional[int] = None,
    progress: Optional[bool] = None,
) -> CorpusRun:
    """run every model of the corpus, results sorted by model name"""
    paths = list_models(corpus_dir, pattern=pattern)
    if workers is None:
        workers = int(settings.workers)
    if progress is None:
        progress = bool(settings.progress)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(
            tqdm(
                pool.map(_run_one, paths),
                total=len(paths),
                desc="models",
                disable=not progress,
            )
        )
    results.sort(key=lambda r: r.name)
    return CorpusRun(results)
