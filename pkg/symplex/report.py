"""result reports for model files and their text, csv and json renderings"""
from __future__ import annotations

import io
import logging
from typing import Dict
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Sequence

import pandas as pd
from orjson import OPT_INDENT_2
from orjson import OPT_SORT_KEYS
from orjson import dumps as orjson_dumps
from orjson import loads as orjson_loads
from pydantic import BaseModel
from pydantic import Extra
from pydantic import root_validator

from symplex.cohomology.complex import BiDifferentialComplex
from symplex.cohomology.complex import from_presentation
from symplex.cohomology.spaces import cohomology
from symplex.cohomology.spaces import render_vector
from symplex.cohomology.verdicts import LefschetzRank
from symplex.cohomology.verdicts import verdicts
from symplex.modelfile import ModelFile
from symplex.modelfile import ModelInstance
from symplex.symplectic import SymplecticStructure
from symplex.symplectic import primitive_dims
from symplex.twisted import gamma_subcomplex
from symplex.twisted import twisted_complex
from symplex.types import CohomologyKind
from symplex.types import OutputFormat

__all__ = [
    "Verdicts",
    "ComplexSummary",
    "ResultReport",
    "Evaluation",
    "summarize",
    "evaluate_model",
    "compute_report",
    "render_report",
]

_log = logging.getLogger(__name__)

REPORT_KINDS = (
    CohomologyKind.DR,
    CohomologyKind.DLAMBDA,
    CohomologyKind.BC,
    CohomologyKind.AEPPLI,
)


class Verdicts(BaseModel):
    hlc: bool
    brylinski: bool
    ddLambdaLemma: bool
    ddLambdaSubspaces: bool
    lefschetzInjective: bool
    lefschetzSurjective: bool
    bcLefschetz: bool
    bcToDrInjective: List[bool]
    bcToDrSurjective: List[bool]

    class Config:
        extra = Extra.forbid


class ComplexSummary(BaseModel):
    """dimensions and verdicts of one complex"""

    degrees: List[int]
    cohomology: Dict[str, List[int]]
    delta: List[int]
    verdicts: Verdicts
    lefschetz: List[LefschetzRank]

    class Config:
        extra = Extra.forbid

    @root_validator(skip_on_failure=True)
    def delta_is_consistent(cls, values):
        dims = values["cohomology"]
        if all(k in dims for k in ("dR", "BC", "A")):
            expected = [
                b + a - 2 * d for b, a, d in zip(dims["BC"], dims["A"], dims["dR"])
            ]
            if expected != values["delta"]:
                raise ValueError("delta does not match the reported dimensions")
        return values

    def same_dims(self, other: ComplexSummary) -> bool:
        return self.cohomology == other.cohomology


class ResultReport(ComplexSummary):
    """everything computed for a model file"""

    model: str
    primitive: List[int] = []
    twists: Dict[str, ComplexSummary] = {}
    subcomplex: Optional[ComplexSummary] = None
    representatives: Optional[Dict[str, Dict[str, List[str]]]] = None
    samples: List[str] = []
    samplesAgree: bool = True

    def to_json(self) -> str:
        return orjson_dumps(
            self.dict(), option=OPT_SORT_KEYS | OPT_INDENT_2
        ).decode()

    @classmethod
    def from_json(cls, data: str | bytes) -> ResultReport:
        return cls.parse_obj(orjson_loads(data))


# --- computing reports -----------------------------------------------


def summarize(
    c: BiDifferentialComplex, s: Optional[SymplecticStructure] = None
) -> ComplexSummary:
    v = verdicts(c, s)
    dims = {
        kind.value: [cohomology(c, kind, k).dim for k in c.degrees] for kind in REPORT_KINDS
    }
    return ComplexSummary(
        degrees=c.degrees,
        cohomology=dims,
        delta=v.delta,
        verdicts=Verdicts(
            hlc=v.hlc,
            brylinski=v.brylinski,
            ddLambdaLemma=v.dd_lambda_lemma,
            ddLambdaSubspaces=v.dd_lambda_subspaces,
            lefschetzInjective=v.lefschetz_injective,
            lefschetzSurjective=v.lefschetz_surjective,
            bcLefschetz=all(r.injective and r.surjective for r in v.bc_lefschetz_ranks),
            bcToDrInjective=v.bc_to_dr_injective,
            bcToDrSurjective=v.bc_to_dr_surjective,
        ),
        lefschetz=v.lefschetz_ranks,
    )


def representatives(c: BiDifferentialComplex) -> Dict[str, Dict[str, List[str]]]:
    """rendered canonical representatives keyed by kind and degree"""
    out: Dict[str, Dict[str, List[str]]] = {}
    for kind in REPORT_KINDS:
        out[kind.value] = {
            str(k): [
                render_vector(c, k, v)
                for v in cohomology(c, kind, k).representatives.vectors()
            ]
            for k in c.degrees
        }
    return out


class Evaluation(NamedTuple):
    """a report and the complexes of the first sample it was computed from"""

    report: ResultReport
    instance: ModelInstance
    complexes: Dict[str, BiDifferentialComplex]


def _evaluate_instance(
    inst: ModelInstance, twists: Sequence[str], subcomplex: bool
) -> tuple:
    s = inst.symplectic
    complexes = {"main": from_presentation(inst.presentation, s)}
    for label in twists:
        if label not in inst.twists:
            raise KeyError(f"model {inst.model.name!r} declares no twist {label!r}")
        complexes[f"twist:{label}"] = twisted_complex(
            inst.presentation, s, inst.twists[label]
        )
    if subcomplex:
        if inst.weighted is None:
            raise KeyError(f"model {inst.model.name!r} declares no weights")
        complexes["subcomplex"] = gamma_subcomplex(inst.weighted, s)
    summaries = {key: summarize(c, s) for key, c in complexes.items()}
    return s, complexes, summaries


def evaluate_model(
    model: ModelFile,
    *,
    twists: Sequence[str] = (),
    subcomplex: bool = False,
    reps: bool = False,
) -> Evaluation:
    """compute the report of a model over all of its parameter samples"""
    first = None
    agree = True
    labels = []
    for inst in model.instances():
        s, complexes, summaries = _evaluate_instance(inst, twists, subcomplex)
        labels.append(inst.sample_label)
        if first is None:
            first = (inst, s, complexes, summaries)
            continue
        for key, summary in summaries.items():
            if not summary.same_dims(first[3][key]):
                agree = False
                _log.warning(
                    "%s: sample (%s) is not generic, %s dims differ",
                    model.name,
                    inst.sample_label,
                    key,
                )
    assert first is not None
    inst, s, complexes, summaries = first
    main = summaries["main"]
    report = ResultReport(
        model=model.name,
        **main.dict(),
        primitive=primitive_dims(s),
        twists={
            key.split(":", 1)[1]: v for key, v in summaries.items() if key.startswith("twist:")
        },
        subcomplex=summaries.get("subcomplex"),
        representatives=representatives(complexes["main"]) if reps else None,
        samples=[x for x in labels if x],
        samplesAgree=agree,
    )
    return Evaluation(report, inst, complexes)


def compute_report(
    model: ModelFile,
    *,
    twists: Sequence[str] = (),
    subcomplex: bool = False,
    reps: bool = False,
) -> ResultReport:
    return evaluate_model(model, twists=twists, subcomplex=subcomplex, reps=reps).report


# --- rendering -------------------------------------------------------


def _frames(report: ResultReport) -> List[pd.DataFrame]:
    parts = [("main", report)]
    parts.extend((f"twist:{k}", v) for k, v in sorted(report.twists.items()))
    if report.subcomplex is not None:
        parts.append(("subcomplex", report.subcomplex))
    frames = []
    for name, summary in parts:
        df = pd.DataFrame({"degree": summary.degrees})
        df.insert(0, "complex", name)
        for kind in REPORT_KINDS:
            df[kind.value] = summary.cohomology[kind.value]
        df["delta"] = summary.delta
        frames.append(df)
    return frames


def to_dataframe(report: ResultReport) -> pd.DataFrame:
    return pd.concat(_frames(report), ignore_index=True)


def render_csv(report: ResultReport) -> str:
    return to_dataframe(report).to_csv(index=False)


def _verdict_str(value: bool) -> str:
    return "✓" if value else "×"


def render_text(report: ResultReport, *, width: int = 100) -> str:
    from rich.console import Console
    from rich.table import Table

    console = Console(file=io.StringIO(), width=width, color_system=None)
    df = to_dataframe(report)
    table = Table(title=report.model)
    for col in df.columns:
        table.add_column(str(col), justify="left" if col == "complex" else "right")
    for row in df.itertuples(index=False):
        table.add_row(*map(str, row))
    console.print(table)
    summaries = [("", report)] + [(f"twist {k} ", v) for k, v in sorted(report.twists.items())]
    if report.subcomplex is not None:
        summaries.append(("subcomplex ", report.subcomplex))
    for prefix, summary in summaries:
        v = summary.verdicts
        console.print(
            f"{prefix}HLC {_verdict_str(v.hlc)}  "
            f"Brylinski {_verdict_str(v.brylinski)}  "
            f"ddLambdaLemma {_verdict_str(v.ddLambdaLemma)}"
        )
    if report.samples:
        agree = "agree" if report.samplesAgree else "DISAGREE"
        console.print(f"samples: {'; '.join(report.samples)} ({agree})")
    if report.representatives:
        for kind, per_degree in report.representatives.items():
            for k, forms in sorted(per_degree.items(), key=lambda t: int(t[0])):
                if forms:
                    console.print(f"H^{k}_{kind}: " + ", ".join(forms))
    return console.file.getvalue()  # type: ignore[attr-defined]


def render_report(report: ResultReport, fmt: OutputFormat | str = OutputFormat.TEXT) -> str:
    fmt = OutputFormat(fmt)
    if fmt == OutputFormat.JSON:
        return report.to_json()
    if fmt == OutputFormat.CSV:
        return render_csv(report)
    return render_text(report)
