"""file system helpers for model files and corpus directories"""
from __future__ import annotations

import os
from typing import Any
from typing import List
from typing import Tuple

import fsspec
from fsspec import AbstractFileSystem

from symplex.types import PathLike

__all__ = [
    "urlpath_to_fs_and_path",
    "find_files",
    "read_text",
]


def urlpath_to_fs_and_path(
    urlpath: PathLike,
    *,
    storage_options: dict[str, Any] | None = None,
) -> Tuple[AbstractFileSystem, str]:
    """return an fsspec filesystem and a path for a path or url"""
    if isinstance(urlpath, os.PathLike):
        urlpath = os.fspath(urlpath)
    if not isinstance(urlpath, str):
        raise TypeError(f"got {urlpath!r} of type {type(urlpath)!r}")
    fs, _, (path,) = fsspec.get_fs_token_paths(
        urlpath, storage_options=storage_options or {}
    )
    return fs, path


def find_files(
    urlpath: PathLike,
    *,
    glob: str = "*.model",
    storage_options: dict[str, Any] | None = None,
) -> List[str]:
    """sorted paths below a directory matching a glob"""
    fs, pth = urlpath_to_fs_and_path(urlpath, storage_options=storage_options)
    if not fs.isdir(pth):
        raise NotADirectoryError(pth)
    return sorted(fs.glob(os.path.join(pth, glob)))


def read_text(
    urlpath: PathLike,
    *,
    storage_options: dict[str, Any] | None = None,
) -> str:
    fs, pth = urlpath_to_fs_and_path(urlpath, storage_options=storage_options)
    with fs.open(pth, mode="rt", encoding="utf-8") as f:
        return f.read()
