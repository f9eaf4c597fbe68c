"""bounded bi-differential graded complexes

A complex carries a degree +1 map ``del_`` and a degree -1 map
``debar`` with del² = debar² = del∘debar + debar∘del = 0. For the
symplectic complex of a Lie algebra these are d and d^Λ.
"""
from __future__ import annotations

import logging
import re
from typing import TYPE_CHECKING
from typing import Any
from typing import Dict
from typing import List
from typing import Mapping
from typing import Optional
from typing import Sequence

from symplex.algebra.forms import Monomial
from symplex.algebra.forms import basis
from symplex.algebra.linalg import GradedMap
from symplex.algebra.linalg import Matrix
from symplex.algebra.presentation import Diagnostic
from symplex.algebra.presentation import LieAlgebraPresentation
from symplex.algebra.scalars import parse_scalar

if TYPE_CHECKING:
    from symplex.symplectic import SymplecticStructure

__all__ = [
    "ComplexError",
    "BiDifferentialComplex",
    "from_presentation",
    "load_raw_complex",
]

_log = logging.getLogger(__name__)


class ComplexError(ValueError):
    """raised for malformed complexes or violated complex identities"""


class BiDifferentialComplex:
    """a bounded graded space with two anticommuting differentials

    ``lefschetz`` optionally holds the degree +2 map L used for the
    Lefschetz verdicts, ``n_half`` the middle degree.
    """

    def __init__(
        self,
        dims: Mapping[int, int],
        del_: GradedMap,
        debar: GradedMap,
        *,
        labels: Optional[Mapping[int, Sequence[str]]] = None,
        lefschetz: Optional[GradedMap] = None,
        n_half: Optional[int] = None,
        name: str = "",
    ) -> None:
        if not dims:
            raise ComplexError("complex has no degrees")
        self.min_degree = min(dims)
        self.max_degree = max(dims)
        self.dims = {
            k: int(dims.get(k, 0)) for k in range(self.min_degree, self.max_degree + 1)
        }
        if del_.shift != 1 or del_.mirror is not None:
            raise ComplexError("del must raise the degree by one")
        if debar.shift != -1 or debar.mirror is not None:
            raise ComplexError("debar must lower the degree by one")
        for op_name, op in (("del", del_), ("debar", debar)):
            for k in op.degrees:
                if op.dim(k) != self.dim(k):
                    raise ComplexError(f"{op_name} disagrees on dim of degree {k}")
        if labels is not None:
            for k, lab in labels.items():
                if len(lab) != self.dim(k):
                    raise ComplexError(f"expected {self.dim(k)} labels in degree {k}")
        self.del_ = del_
        self.debar = debar
        self.labels = {k: tuple(v) for k, v in labels.items()} if labels else None
        self.lefschetz = lefschetz
        self.n_half = n_half
        self.name = name
        self._ddbar: Optional[GradedMap] = None
        self.cache: Dict[Any, Any] = {}

    @property
    def degrees(self) -> List[int]:
        return list(range(self.min_degree, self.max_degree + 1))

    def dim(self, k: int) -> int:
        return self.dims.get(k, 0)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def ddbar(self) -> GradedMap:
        """del∘debar, a degree preserving map"""
        if self._ddbar is None:
            self._ddbar = self.del_ @ self.debar
        return self._ddbar

    def label(self, k: int, i: int) -> str:
        if self.labels is None:
            return f"v{k}.{i}"
        return self.labels[k][i]

    def validate(self) -> Diagnostic:
        """check the three complex identities degree by degree"""
        issues = []
        for k in self.degrees:
            if not (self.del_[k + 1] @ self.del_[k]).is_zero():
                issues.append(f"del² ≠ 0 on degree {k}")
            if not (self.debar[k - 1] @ self.debar[k]).is_zero():
                issues.append(f"debar² ≠ 0 on degree {k}")
            anti = self.del_[k - 1] @ self.debar[k] + self.debar[k + 1] @ self.del_[k]
            if not anti.is_zero():
                issues.append(f"del debar + debar del ≠ 0 on degree {k}")
        return Diagnostic.collect(issues)

    def __repr__(self) -> str:
        dims = [self.dim(k) for k in self.degrees]
        return f"BiDifferentialComplex({self.name!r}, dims={dims})"


def monomial_labels(n: int) -> Dict[int, List[str]]:
    return {k: [Monomial(m).to_str(compact=True) for m in basis(n, k)] for k in range(n + 1)}


def from_presentation(
    p: LieAlgebraPresentation, s: SymplecticStructure
) -> BiDifferentialComplex:
    """the symplectic complex (∧g*, d, d^Λ)"""
    d = p.differential
    c = BiDifferentialComplex(
        p.dims,
        d,
        s.d_lambda,
        labels=monomial_labels(p.n),
        lefschetz=s.lefschetz,
        n_half=s.n_half,
        name=p.name,
    )
    diag = c.validate()
    if not diag:
        raise ComplexError("; ".join(diag.issues))
    _log.debug("symplectic complex %s: dims %s", p.name, list(c.dims.values()))
    return c


# --- raw matrix files ------------------------------------------------

_RE_HEADER = re.compile(r"^(del|debar)\s+(-?\d+)\s*$")
# a real part and a signed imaginary coefficient still waiting for its `i`
_RE_OPEN_GAUSSIAN = re.compile(r"^[+-]?\d+(?:/\d+)?[+-]\d+(?:/\d+)?$")


def _split_row(line: str) -> List[str]:
    """split a matrix row, keeping `p/q+r/s i` together"""
    out: List[str] = []
    for tok in line.split():
        if tok == "i" and out and _RE_OPEN_GAUSSIAN.match(out[-1]):
            out[-1] += tok
        else:
            out.append(tok)
    return out


def load_raw_complex(text: str, *, name: str = "") -> BiDifferentialComplex:
    """parse a complex given by explicit matrices

    The format is line oriented, ``#`` starts a comment::

        dims 1 2 1          # dimensions of degrees 0, 1, 2
        min_degree 0        # optional
        del 0               # block from degree 0 to degree 1 follows,
        1                   # one row per target basis vector
        0
        debar 2             # block from degree 2 to degree 1
        1/2
        i

    Blocks which are not given are zero.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    dims_list: Optional[List[int]] = None
    min_degree = 0
    blocks: Dict[str, Dict[int, List[List[str]]]] = {"del": {}, "debar": {}}
    current: Optional[List[List[str]]] = None
    for lineno, line in lines:
        head, _, rest = line.partition(" ")
        if head == "dims":
            dims_list = [int(x) for x in rest.split()]
            current = None
        elif head == "min_degree":
            min_degree = int(rest)
            current = None
        elif _RE_HEADER.match(line):
            kind, deg = _RE_HEADER.match(line).groups()  # type: ignore[union-attr]
            current = blocks[kind].setdefault(int(deg), [])
        elif current is not None:
            current.append(_split_row(line))
        else:
            raise ComplexError(f"line {lineno}: unexpected {line!r}")
    if dims_list is None:
        raise ComplexError("missing `dims` line")
    dims = {min_degree + i: d for i, d in enumerate(dims_list)}

    def _block(kind: str, shift: int) -> GradedMap:
        out = {}
        for k, rows in blocks[kind].items():
            src, tgt = dims.get(k, 0), dims.get(k + shift, 0)
            if len(rows) != tgt or any(len(r) != src for r in rows):
                raise ComplexError(f"{kind} {k} must be a {tgt}x{src} block")
            out[k] = Matrix(
                {i: {j: parse_scalar(x) for j, x in enumerate(r)} for i, r in enumerate(rows)},
                (tgt, src),
            )
        return GradedMap(dims, out, shift=shift)

    c = BiDifferentialComplex(dims, _block("del", 1), _block("debar", -1), name=name)
    diag = c.validate()
    if not diag:
        raise ComplexError("; ".join(diag.issues))
    return c
