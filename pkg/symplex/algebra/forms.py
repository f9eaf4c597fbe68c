"""sparse elements of the exterior algebra

Monomials e^{i1}∧...∧e^{ip} with i1 < ... < ip are stored as integer
bitmasks (bit ``i - 1`` set for generator ``i``), which limits the
number of generators to 64.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from types import MappingProxyType
from typing import Dict
from typing import Iterable
from typing import Iterator
from typing import Mapping
from typing import Optional
from typing import Sequence
from typing import Tuple

from symplex.algebra.scalars import K
from symplex.algebra.scalars import Scalar
from symplex.algebra.scalars import ScalarLike
from symplex.algebra.scalars import format_scalar
from symplex.algebra.scalars import scalar

__all__ = [
    "MAX_GENERATORS",
    "Monomial",
    "Form",
    "Bivector",
    "wedge",
    "interior_product",
    "basis",
    "basis_index",
    "mask_indices",
    "indices_mask",
    "to_vector",
    "from_vector",
]

MAX_GENERATORS = 64


# --- bitmask helpers -------------------------------------------------


def mask_indices(mask: int) -> Tuple[int, ...]:
    """return the sorted generator indices of a monomial bitmask"""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if not 1 <= i <= MAX_GENERATORS:
            raise ValueError(f"generator index {i} out of range 1..{MAX_GENERATORS}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"duplicate index {i} in monomial")
        mask |= bit
    return mask


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _wedge_sign(a: int, b: int) -> int:
    """sign of sorting e^a ∧ e^b for disjoint masks"""
    swaps = 0
    while b:
        low = b & -b
        swaps += _popcount(a & ~((low << 1) - 1))
        b ^= low
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def basis(n: int, k: int) -> Tuple[int, ...]:
    """lexicographically ordered degree-k monomial masks over n generators"""
    if k < 0 or k > n:
        return ()
    return tuple(indices_mask(c) for c in combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def basis_index(n: int, k: int) -> Mapping[int, int]:
    """position of each degree-k monomial mask in `basis(n, k)`, shared across calls"""
    return MappingProxyType({m: idx for idx, m in enumerate(basis(n, k))})


# --- monomials -------------------------------------------------------


class Monomial:
    """a wedge product of distinct generators"""

    __slots__ = ("mask",)

    def __init__(self, mask: int) -> None:
        if mask < 0 or mask >> MAX_GENERATORS:
            raise ValueError(f"invalid monomial mask: {mask}")
        self.mask = mask

    @classmethod
    def from_indices(cls, indices: Sequence[int]) -> Monomial:
        if any(a >= b for a, b in zip(indices, indices[1:])):
            raise ValueError(f"indices must be strictly increasing: {indices!r}")
        return cls(indices_mask(indices))

    @property
    def indices(self) -> Tuple[int, ...]:
        return mask_indices(self.mask)

    @property
    def degree(self) -> int:
        return _popcount(self.mask)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.mask == other.mask

    def __lt__(self, other: Monomial) -> bool:
        return (self.degree, self.indices) < (other.degree, other.indices)

    def __hash__(self) -> int:
        return hash((Monomial, self.mask))

    def __repr__(self) -> str:
        return f"Monomial({self.indices!r})"

    def to_str(self, compact: bool = False) -> str:
        """render as `e1.2.4`, or `e124` when compact and all indices < 10"""
        idx = self.indices
        if not idx:
            return "1"
        if compact and max(idx) < 10:
            return "e" + "".join(map(str, idx))
        return "e" + ".".join(map(str, idx))


# --- forms -----------------------------------------------------------


class Form:
    """a finite linear combination of monomials"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Scalar] | None = None) -> None:
        zero = K.zero
        self._terms: Dict[int, Scalar] = {
            m: c for m, c in (terms or {}).items() if c != zero
        }

    # constructors

    @classmethod
    def zero(cls) -> Form:
        return cls()

    @classmethod
    def one(cls) -> Form:
        return cls({0: K.one})

    @classmethod
    def generator(cls, i: int) -> Form:
        return cls({indices_mask([i]): K.one})

    @classmethod
    def monomial(cls, indices: Sequence[int], coefficient: ScalarLike = 1) -> Form:
        """signed monomial for an arbitrary ordering of distinct indices"""
        f = cls.one()
        for i in indices:
            f = f ^ cls.generator(i)
        if not f._terms:
            raise ValueError(f"duplicate index in monomial {indices!r}")
        return f * scalar(coefficient)

    # accessors

    @property
    def terms(self) -> Mapping[int, Scalar]:
        return self._terms

    def items(self) -> Iterator[Tuple[int, Scalar]]:
        yield from sorted(self._terms.items(), key=lambda t: _sort_key(t[0]))

    def coefficient(self, mask: int) -> Scalar:
        return self._terms.get(mask, K.zero)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({_popcount(m) for m in self._terms}))

    @property
    def degree(self) -> Optional[int]:
        """homogeneous degree, or None for the zero or mixed form"""
        d = self.degrees
        return d[0] if len(d) == 1 else None

    @property
    def max_index(self) -> int:
        return max((m.bit_length() for m in self._terms), default=0)

    def component(self, k: int) -> Form:
        return Form({m: c for m, c in self._terms.items() if _popcount(m) == k})

    # arithmetic

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: Form) -> Form:
        if not isinstance(other, Form):
            return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, K.zero) + c
        return Form(terms)

    def __neg__(self) -> Form:
        return Form({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Form) -> Form:
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: ScalarLike) -> Form:
        if isinstance(other, Form):
            return NotImplemented
        c = scalar(other)
        return Form({m: v * c for m, v in self._terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other: Form) -> Form:
        return wedge(self, other)

    def __repr__(self) -> str:
        return f"Form({self.to_str()!r})"

    def to_str(self, compact: bool = False) -> str:
        """render in the long form grammar, e.g. `e1.2 - 1/2*e3.4`"""
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            mono = Monomial(m).to_str(compact)
            txt = format_scalar(c)
            if mono == "1":
                term = txt if "+" not in txt[1:] else f"({txt})"
            elif txt == "1":
                term = mono
            elif txt == "-1":
                term = f"-{mono}"
            elif "+" in txt[1:] or ("-" in txt[1:]):
                term = f"({txt})*{mono}"
            else:
                term = f"{txt}*{mono}"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _sort_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    return _popcount(mask), mask_indices(mask)


def wedge(a: Form, b: Form) -> Form:
    """exterior product with the Koszul sign"""
    terms: Dict[int, Scalar] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            if ma & mb:
                continue
            m = ma | mb
            v = ca * cb
            if _wedge_sign(ma, mb) < 0:
                v = -v
            terms[m] = terms.get(m, K.zero) + v
    return Form(terms)


# --- bivectors and contraction ---------------------------------------


class Bivector:
    """an element of ∧²g stored over index pairs i < j

    ``Bivector({(1, 2): c})`` is c·X1∧X2
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Tuple[int, int], Scalar] | None = None):
        zero = K.zero
        clean: Dict[Tuple[int, int], Scalar] = {}
        for (i, j), c in (terms or {}).items():
            if i == j:
                raise ValueError(f"degenerate pair ({i}, {j})")
            if i > j:
                i, j, c = j, i, -c
            clean[(i, j)] = clean.get((i, j), K.zero) + c
        self._terms = {k: v for k, v in clean.items() if v != zero}

    @property
    def terms(self) -> Mapping[Tuple[int, int], Scalar]:
        return self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Bivector):
            return NotImplemented
        return self._terms == other._terms

    def __neg__(self) -> Bivector:
        return Bivector({k: -v for k, v in self._terms.items()})

    def __repr__(self) -> str:
        inner = ", ".join(
            f"({i}, {j}): {format_scalar(c)}" for (i, j), c in sorted(self._terms.items())
        )
        return f"Bivector({{{inner}}})"


def _contract_vector(i: int, mask: int) -> Tuple[int, int]:
    """ι_{X_i} on a monomial: returns (sign, new mask), sign 0 if it vanishes"""
    bit = 1 << (i - 1)
    if not mask & bit:
        return 0, 0
    sign = -1 if _popcount(mask & (bit - 1)) & 1 else 1
    return sign, mask ^ bit


def interior_product(b: Bivector, a: Form) -> Form:
    """contraction ι_b a with ι_{X_i∧X_j} := ι_{X_j} ∘ ι_{X_i}"""
    terms: Dict[int, Scalar] = {}
    for (i, j), cb in b.terms.items():
        for m, ca in a.terms.items():
            s1, m1 = _contract_vector(i, m)
            if not s1:
                continue
            s2, m2 = _contract_vector(j, m1)
            if not s2:
                continue
            v = cb * ca
            if s1 * s2 < 0:
                v = -v
            terms[m2] = terms.get(m2, K.zero) + v
    return Form(terms)


# --- coordinates -----------------------------------------------------


def to_vector(a: Form, n: int, k: int) -> Dict[int, Scalar]:
    """coordinates of the degree-k part of a in the lexicographic basis"""
    index = basis_index(n, k)
    out = {}
    for m, c in a.terms.items():
        if _popcount(m) != k:
            continue
        if m not in index:
            raise ValueError(f"monomial {Monomial(m).to_str()} outside e1..e{n}")
        out[index[m]] = c
    return out


def from_vector(v: Mapping[int, Scalar], n: int, k: int) -> Form:
    monomials = basis(n, k)
    return Form({monomials[i]: c for i, c in v.items()})
