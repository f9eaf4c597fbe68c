"""a place to collect some common settings functionality

A user can override the settings via dynaconf, either in ``~/.symplex.toml``
or with ``SYMPLEX_`` prefixed environment variables.
"""
from __future__ import annotations

import os
from pathlib import Path

from dynaconf import Dynaconf
from dynaconf import ValidationError
from dynaconf import Validator
from platformdirs import user_config_path

__all__ = [
    "settings",
    "symplex_config_path",
    "symplex_corpus_path",
]


def _as_path(value):
    return os.fspath(Path(value))


def _default_config_path(*_):
    return os.fspath(user_config_path("symplex"))


def _default_corpus_dir(*_):
    return os.fspath(Path(__file__).parent.joinpath("data", "corpus"))


def validate_workers(value: int) -> bool:
    if int(value) < 1:
        raise ValidationError(f"workers must be a positive integer, got: {value!r}")
    return True


settings = Dynaconf(
    envvar_prefix="SYMPLEX",
    settings_file=[".symplex.toml"],
    root_path=Path.home(),
    core_loaders=["TOML"],
    validators=[
        Validator("config_path", cast=_as_path, default=_default_config_path),
        Validator("corpus_dir", cast=_as_path, default=_default_corpus_dir),
        Validator("workers", cast=int, default=4, condition=validate_workers),
        Validator("progress", cast=bool, default=True),
    ],
)


def symplex_config_path(pkg: str | None = None, *, ensure_dir: bool = False) -> Path:
    """return the common path for symplex config files"""
    pth = Path(settings.config_path)
    if pkg is not None:
        pth = pth.joinpath(pkg)
    if ensure_dir and not pth.is_dir():
        pth.mkdir(parents=True, exist_ok=True)
    return pth


def symplex_corpus_path() -> Path:
    """return the directory of the model corpus"""
    return Path(settings.corpus_dir)
