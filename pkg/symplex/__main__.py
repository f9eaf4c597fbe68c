from __future__ import annotations

import logging
from pathlib import Path
from typing import List
from typing import Optional

import typer
from orjson import OPT_INDENT_2
from orjson import OPT_SORT_KEYS
from orjson import dumps as orjson_dumps
from rich.console import Console
from rich.table import Table
from typer import Argument
from typer import Option

from symplex import __version__ as symplex_version
from symplex.types import OutputFormat

# --- symplex command line interface ----------------------------------

cli = typer.Typer(
    name="symplex",
    epilog="#### symplectic cohomologies of Lie algebras ####",
    no_args_is_help=True,
)


@cli.callback()
def main(
    verbose: bool = Option(False, "--verbose", "-v", help="log debug output"),
):
    """exact symplectic cohomologies of solvmanifold models"""
    if verbose:
        from rich.logging import RichHandler

        logging.basicConfig(
            level=logging.DEBUG,
            format="%(message)s",
            handlers=[RichHandler(console=Console(stderr=True))],
        )


@cli.command("version")
def version():
    """show the symplex version"""
    typer.echo(symplex_version)


def _load(file: Path):
    from symplex.modelfile import ModelFileError
    from symplex.modelfile import load_model

    try:
        return load_model(file)
    except ModelFileError as err:
        typer.secho(f"ERROR: {err}", err=True, fg="red")
        raise typer.Exit(2)


@cli.command("validate", no_args_is_help=True)
def validate(
    file: Path = Argument(..., exists=True, file_okay=True, dir_okay=False, readable=True),
):
    """check grammar, d² = 0, ω, flatness of twists and ω ∈ A_Γ"""
    from symplex.algebra.presentation import is_nilpotent
    from symplex.algebra.presentation import is_unimodular
    from symplex.algebra.presentation import validate_presentation
    from symplex.modelfile import ModelFileError
    from symplex.symplectic import SymplecticError
    from symplex.twisted import validate_flat

    model = _load(file)
    issues: List[str] = []
    info: List[str] = []
    try:
        instances = list(model.instances())
    except (ModelFileError, ValueError) as err:
        typer.secho(f"ERROR: {err}", err=True, fg="red")
        raise typer.Exit(2)

    for inst in instances:
        where = f"{model.name} ({inst.sample_label})" if inst.env else model.name
        p = inst.presentation
        diag = validate_presentation(p)
        issues.extend(f"{where}: {x}" for x in diag.issues)
        if not diag:
            continue
        info.append(
            f"{where}: nilpotent={str(is_nilpotent(p)).lower()} "
            f"unimodular={str(is_unimodular(p)).lower()}"
        )
        if inst.omega is not None:
            try:
                s = inst.symplectic
            except SymplecticError as err:
                issues.append(f"{where}: {err}")
            else:
                if inst.weighted is not None:
                    bad = [m for m in s.omega.terms if not inst.weighted.is_gamma_trivial(m)]
                    if bad:
                        issues.append(f"{where}: omega is not in A_Γ")
        for label, t in inst.twists.items():
            diag = validate_flat(p, t)
            issues.extend(f"{where}: twist {label}: {x}" for x in diag.issues)

    for line in info:
        typer.echo(line)
    if issues:
        for line in issues:
            typer.secho(line, err=True, fg="red")
        raise typer.Exit(1)
    typer.echo(f"{model.name}: ok")


@cli.command("cohomology", no_args_is_help=True)
def cohomology(
    file: Path = Argument(..., exists=True, file_okay=True, dir_okay=False, readable=True),
    reps: bool = Option(False, "--reps", help="list canonical representatives"),
    twist: Optional[List[str]] = Option(None, "--twist", help="twist label (repeatable)"),
    subcomplex: bool = Option(False, "--subcomplex", help="restrict to A_Γ"),
    output_format: OutputFormat = Option(OutputFormat.TEXT, "--format"),
    raw: bool = Option(False, "--raw", help="file is a raw matrix complex"),
):
    """compute dR, dLambda, BC and Aeppli cohomologies with verdicts"""
    from symplex.report import compute_report
    from symplex.report import render_report

    if raw:
        _raw_cohomology(file, output_format)
        return

    model = _load(file)
    try:
        report = compute_report(
            model, twists=twist or (), subcomplex=subcomplex, reps=reps
        )
    except (ValueError, KeyError) as err:
        typer.secho(f"ERROR: {err}", err=True, fg="red")
        raise typer.Exit(1)
    typer.echo(render_report(report, output_format), nl=False)
    if not report.samplesAgree:
        raise typer.Exit(1)


def _raw_cohomology(file: Path, output_format: OutputFormat) -> None:
    import pandas as pd

    from symplex.cohomology.complex import ComplexError
    from symplex.cohomology.complex import load_raw_complex
    from symplex.cohomology.spaces import cohomology as cohomology_space
    from symplex.files import read_text
    from symplex.report import REPORT_KINDS

    try:
        c = load_raw_complex(read_text(file), name=file.stem)
    except ComplexError as err:
        typer.secho(f"ERROR: {err}", err=True, fg="red")
        raise typer.Exit(1)
    df = pd.DataFrame({"degree": c.degrees})
    for kind in REPORT_KINDS:
        df[kind.value] = [cohomology_space(c, kind, k).dim for k in c.degrees]
    df["delta"] = df["BC"] + df["A"] - 2 * df["dR"]
    if output_format == OutputFormat.JSON:
        data = {"model": c.name, "degrees": c.degrees}
        data["cohomology"] = {k.value: df[k.value].tolist() for k in REPORT_KINDS}
        data["delta"] = df["delta"].tolist()
        typer.echo(orjson_dumps(data, option=OPT_SORT_KEYS | OPT_INDENT_2).decode())
    elif output_format == OutputFormat.CSV:
        typer.echo(df.to_csv(index=False), nl=False)
    else:
        table = Table(title=c.name)
        for col in df.columns:
            table.add_column(str(col), justify="right")
        for row in df.itertuples(index=False):
            table.add_row(*map(str, row))
        Console().print(table)


@cli.command("lefschetz", no_args_is_help=True)
def lefschetz(
    file: Path = Argument(..., exists=True, file_okay=True, dir_okay=False, readable=True),
):
    """print the ranks of [ω^k]: H^{n-k} -> H^{n+k} and primitive dimensions"""
    from symplex.cohomology.complex import from_presentation
    from symplex.cohomology.verdicts import lefschetz_map
    from symplex.symplectic import primitive_dims
    from symplex.types import CohomologyKind

    model = _load(file)
    try:
        inst = next(model.instances())
        s = inst.symplectic
        c = from_presentation(inst.presentation, s)
    except ValueError as err:
        typer.secho(f"ERROR: {err}", err=True, fg="red")
        raise typer.Exit(1)

    prim = primitive_dims(s)
    table = Table(title=f"{model.name} Lefschetz")
    for col in ("k", "map", "rank dR", "source", "target", "rank BC", "primitive"):
        table.add_column(col, justify="right")
    n = s.n_half
    for k in range(n + 1):
        m = lefschetz_map(c, s, k)
        b = lefschetz_map(c, s, k, kind=CohomologyKind.BC)
        table.add_row(
            str(k),
            f"H^{n - k} -> H^{n + k}",
            str(m.rank),
            str(m.source.dim),
            str(m.target.dim),
            f"{b.rank}/{b.source.dim}",
            str(prim[n - k]),
        )
    Console().print(table)


# --- corpus ----------------------------------------------------------

cli_corpus = typer.Typer(no_args_is_help=True)
cli.add_typer(cli_corpus, name="corpus", help="the bundled golden model corpus")


@cli_corpus.command("run")
def corpus_run(
    filter_: Optional[str] = Option(None, "--filter", help="glob on model file names"),
    corpus_dir: Optional[Path] = Option(None, "--corpus-dir"),
    workers: Optional[int] = Option(None, "--workers", min=1),
):
    """run every corpus model against its golden expectations"""
    from symplex.corpus import CorpusError
    from symplex.corpus import run_corpus

    try:
        run = run_corpus(corpus_dir, pattern=filter_, workers=workers)
    except CorpusError as err:
        typer.secho(str(err), err=True, fg="red")
        raise typer.Exit(2)

    table = Table(title="corpus")
    table.add_column("model", justify="left")
    table.add_column("result", justify="left")
    table.add_column("seconds", justify="right")
    for r in run.results:
        table.add_row(r.name, "pass" if r.passed else "FAIL", f"{r.seconds:.2f}")
    Console().print(table)
    passed = sum(r.passed for r in run.results)
    typer.echo(f"{passed} of {len(run.results)} models pass")
    if not run.passed:
        for line in run.mismatches():
            typer.secho(line, err=True, fg="red")
        raise typer.Exit(1)


@cli_corpus.command("list")
def corpus_list(
    corpus_dir: Optional[Path] = Option(None, "--corpus-dir"),
):
    """list the bundled model files"""
    from symplex.corpus import CorpusError
    from symplex.corpus import list_models

    try:
        paths = list_models(corpus_dir)
    except CorpusError as err:
        typer.secho(str(err), err=True, fg="red")
        raise typer.Exit(2)
    for pth in paths:
        typer.echo(pth)


# --- config ----------------------------------------------------------

cli_config = typer.Typer(no_args_is_help=True)
cli.add_typer(cli_config, name="config", help="symplex configuration")


@cli_config.command("show")
def config_show():
    """print the resolved settings as json"""
    from symplex.settings import settings

    data = {
        "config_path": str(settings.config_path),
        "corpus_dir": str(settings.corpus_dir),
        "workers": int(settings.workers),
        "progress": bool(settings.progress),
    }
    typer.echo(orjson_dumps(data, option=OPT_SORT_KEYS | OPT_INDENT_2).decode())


if __name__ == "__main__":  # pragma: no cover
    cli()
