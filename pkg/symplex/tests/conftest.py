from __future__ import annotations

import shutil

import pytest

from symplex.algebra.parser import parse_form
from symplex.algebra.parser import parse_structure
from symplex.cohomology.complex import from_presentation
from symplex.modelfile import load_model
from symplex.settings import settings
from symplex.settings import symplex_corpus_path
from symplex.symplectic import build_symplectic


def _structure(text, omega, n=4, name=""):
    p = parse_structure(text, n, name=name)
    s = build_symplectic(p, parse_form(omega, n))
    return p, s


@pytest.fixture(scope="function")
def torus():
    yield _structure("(0,0,0,0)", "12+34", name="4g1")


@pytest.fixture(scope="function")
def kodaira():
    yield _structure("(0,0,0,23)", "12+34", name="g3.1+g1")


@pytest.fixture(scope="function")
def g41():
    yield _structure("(0,0,12,13)", "14+23", name="g4.1")


@pytest.fixture(scope="function")
def kodaira_complex(kodaira):
    p, s = kodaira
    yield from_presentation(p, s)


@pytest.fixture(scope="function")
def g41_complex(g41):
    p, s = g41
    yield from_presentation(p, s)


@pytest.fixture(scope="session")
def corpus_dir():
    yield symplex_corpus_path()


@pytest.fixture(scope="session")
def corpus_model(corpus_dir):
    """load a bundled model by file stem"""

    def _load(name):
        return load_model(corpus_dir.joinpath(f"{name}.model"))

    yield _load


@pytest.fixture(scope="function")
def corpus_copy(tmp_path):
    """a writable copy of the bundled corpus"""
    dst = tmp_path.joinpath("corpus")
    shutil.copytree(symplex_corpus_path(), dst)
    yield dst


@pytest.fixture(scope="function")
def quiet_settings():
    # no progress bars and a small pool during tests
    old = settings.progress, settings.workers
    settings.configure(progress=False, workers=2)
    try:
        yield settings
    finally:
        settings.configure(progress=old[0], workers=old[1])


@pytest.fixture(scope="function", autouse=True)
def mock_delete_pathlib_glob(monkeypatch):
    """pathlib.Path.glob suffers from a bug regarding symlinks:

    https://bugs.python.org/issue33428

    let's enforce that we do not use it in symplex and use fsspec globbing instead.
    """
    with monkeypatch.context() as m:
        # remove pathlib.Path.glob so that tests fail if used unintentionally
        m.delattr("pathlib.Path.glob")
        yield
