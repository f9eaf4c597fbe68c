"""exact gaussian rational scalars

All linear algebra in symplex runs over the field QQ(i). Elements are
sympy ``GaussianRational`` instances living in the ``QQ_I`` domain, so
``DomainMatrix`` can operate on them directly.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Any
from typing import Union

from sympy.polys.domains import QQ
from sympy.polys.domains import QQ_I
from typing_extensions import TypeAlias

__all__ = [
    "K",
    "Scalar",
    "ScalarLike",
    "scalar",
    "parse_scalar",
    "format_scalar",
    "is_zero",
    "is_real",
    "real_fraction",
]

K = QQ_I
Scalar: TypeAlias = Any  # sympy.polys.domains.gaussiandomains.GaussianRational
ScalarLike: TypeAlias = Union[int, str, Fraction, Scalar]

_RE_RATIONAL = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")
_RE_GAUSSIAN = re.compile(
    r"""^
    (?:(?P<re>[+-]?\d+(?:/\d+)?)(?=[+-]|$))?     # real part
    (?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i)?          # imaginary part
    $""",
    re.VERBOSE,
)


def _rational(value: int | str | Fraction) -> Any:
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    m = _RE_RATIONAL.match(value)
    if m is None:
        raise ValueError(f"not a rational number: {value!r}")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ZeroDivisionError(f"zero denominator in {value!r}")
    return QQ(int(num), int(den or 1))


def scalar(re_part: ScalarLike = 0, im_part: int | str | Fraction = 0) -> Scalar:
    """create a scalar from a real and an imaginary part"""
    if not isinstance(re_part, (int, str, Fraction)):
        if im_part != 0:
            raise TypeError("imaginary part only allowed with rational real part")
        return K.convert(re_part)
    if isinstance(re_part, str) and im_part == 0:
        return parse_scalar(re_part)
    return K(_rational(re_part), _rational(im_part))


def parse_scalar(token: str) -> Scalar:
    """parse `p/q`, `p/q+r/s i`, `i`, `-3/2i`, ... into a scalar"""
    text = "".join(token.split())
    m = _RE_GAUSSIAN.match(text)
    if not text or m is None or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"not a gaussian rational: {token!r}")
    re_txt, im_txt = m.group("re"), m.group("im")
    re_val = _rational(re_txt) if re_txt else QQ(0)
    if im_txt is None:
        im_val = QQ(0)
    elif im_txt in {"", "+"}:
        im_val = QQ(1)
    elif im_txt == "-":
        im_val = QQ(-1)
    else:
        im_val = _rational(im_txt)
    return K(re_val, im_val)


def _format_rational(q: Any) -> str:
    num, den = int(q.numerator), int(q.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_scalar(s: Scalar) -> str:
    """inverse of parse_scalar"""
    x, y = s.x, s.y
    if not y:
        return _format_rational(x)
    if y == QQ(1):
        im = "i"
    elif y == QQ(-1):
        im = "-i"
    else:
        im = f"{_format_rational(y)}i"
    if not x:
        return im
    sign = "" if im.startswith("-") else "+"
    return f"{_format_rational(x)}{sign}{im}"


def is_zero(s: Scalar) -> bool:
    return s == K.zero


def is_real(s: Scalar) -> bool:
    return not s.y


def real_fraction(s: Scalar) -> Fraction:
    """return the real part as a Fraction (raises for non-real scalars)"""
    if s.y:
        raise ValueError(f"scalar {format_scalar(s)} is not real")
    return Fraction(int(s.x.numerator), int(s.x.denominator))
