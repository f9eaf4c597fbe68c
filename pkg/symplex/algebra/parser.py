"""structure equation grammar

Two notations are understood:

shorthand
    ``(0,0,0,12)`` lists d e^k for every generator; ``ij`` stands for
    e^i∧e^j (n ≤ 9 only), coefficients are written ``2×34``, ``1/2*13``
    or ``½×13`` and ``i`` is the imaginary unit.

long form
    one ``d e<k> = <expr>`` line per generator with terms like
    ``-1/2*e1.3``; ``e1.3`` stands for e^1∧e^3. Below ten generators the
    compact ``e13`` means the same, otherwise it is the generator e^13.

Parameter symbols may appear as coefficient factors when a value
environment is passed.
"""
from __future__ import annotations

import re
from typing import TYPE_CHECKING
from typing import List
from typing import Mapping
from typing import NamedTuple
from typing import Optional
from typing import Tuple

from symplex.algebra.forms import Form
from symplex.algebra.forms import Monomial
from symplex.algebra.scalars import K
from symplex.algebra.scalars import Scalar
from symplex.algebra.scalars import parse_scalar
from symplex.algebra.scalars import scalar

if TYPE_CHECKING:
    from symplex.algebra.presentation import LieAlgebraPresentation

__all__ = [
    "StructureSyntaxError",
    "parse_form",
    "parse_structure",
    "format_structure",
    "is_shorthand",
]


class StructureSyntaxError(ValueError):
    """raised for malformed structure equations"""

    def __init__(self, msg: str, position: int = -1, line: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position >= 0:
            where.append(f"position {position}")
        super().__init__(f"{msg} ({', '.join(where)})" if where else msg)
        self.msg = msg
        self.position = position
        self.line = line


# --- tokenizer -------------------------------------------------------


class _Token(NamedTuple):
    kind: str
    text: str
    pos: int


_TOKEN_SPEC = [
    ("MONO", r"e\d+(?:\.\d+)*"),
    ("NUMBER", r"\d+"),
    ("NAME", r"[A-Za-z_][A-Za-z_0-9]*"),
    ("HALF", r"½"),
    ("TIMES", r"[*×·]"),
    ("SLASH", r"/"),
    ("PLUS", r"\+"),
    ("MINUS", r"[-−]"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("COMMA", r","),
    ("SKIP", r"\s+"),
    ("MISMATCH", r"."),
]
_RE_TOKEN = re.compile("|".join(f"(?P<{k}>{p})" for k, p in _TOKEN_SPEC))


def _tokenize(text: str, offset: int = 0) -> List[_Token]:
    tokens = []
    for m in _RE_TOKEN.finditer(text):
        kind = m.lastgroup or "MISMATCH"
        if kind == "SKIP":
            continue
        if kind == "MISMATCH":
            raise StructureSyntaxError(
                f"unexpected character {m.group()!r}", offset + m.start()
            )
        tokens.append(_Token(kind, m.group(), offset + m.start()))
    return tokens


# --- expression parser -----------------------------------------------


class _ExprParser:
    """recursive descent over a token list

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (TIMES factor)*
    factor := NUMBER ['/' NUMBER] | '½' | NAME | MONO | '(' scalar ')'
    """

    def __init__(
        self,
        tokens: List[_Token],
        n: int,
        *,
        shorthand: bool,
        env: Mapping[str, Scalar] | None,
        end: int,
    ) -> None:
        self.tokens = tokens
        self.i = 0
        self.n = n
        self.shorthand = shorthand
        self.env = env or {}
        self.end = end

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, kind: str) -> _Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            pos = tok.pos if tok else self.end
            found = repr(tok.text) if tok else "end of input"
            raise StructureSyntaxError(f"expected {kind.lower()}, got {found}", pos)
        self.i += 1
        return tok

    def parse(self) -> Form:
        out = Form()
        sign = K.one
        tok = self.peek()
        if tok is None:
            raise StructureSyntaxError("empty expression", self.end)
        if tok.kind in {"PLUS", "MINUS"}:
            sign = -K.one if tok.kind == "MINUS" else K.one
            self.i += 1
        out = out + self.term() * sign
        while True:
            tok = self.peek()
            if tok is None:
                return out
            if tok.kind not in {"PLUS", "MINUS"}:
                raise StructureSyntaxError(f"unexpected {tok.text!r}", tok.pos)
            self.i += 1
            sign = -K.one if tok.kind == "MINUS" else K.one
            out = out + self.term() * sign

    def _monomial(self, indices: List[int], pos: int) -> Form:
        for i in indices:
            if not 1 <= i <= self.n:
                raise StructureSyntaxError(f"index {i} out of range 1..{self.n}", pos)
        if len(set(indices)) != len(indices):
            raise StructureSyntaxError(f"duplicate index in monomial {indices}", pos)
        return Form.monomial(indices)

    def factor(self) -> Tuple[Optional[Scalar], Optional[Form], _Token]:
        tok = self.peek()
        if tok is None:
            raise StructureSyntaxError("unexpected end of input", self.end)
        self.i += 1
        if tok.kind == "NUMBER":
            nxt = self.peek()
            if nxt is not None and nxt.kind == "SLASH":
                self.i += 1
                den = self.take("NUMBER")
                if int(den.text) == 0:
                    raise StructureSyntaxError("zero denominator", den.pos)
                return scalar(f"{tok.text}/{den.text}"), None, tok
            return scalar(int(tok.text)), None, tok
        if tok.kind == "HALF":
            return scalar("1/2"), None, tok
        if tok.kind == "NAME":
            if tok.text == "i":
                return K(0, 1), None, tok
            if tok.text not in self.env:
                raise StructureSyntaxError(f"unknown symbol {tok.text!r}", tok.pos)
            return self.env[tok.text], None, tok
        if tok.kind == "MONO":
            body = tok.text[1:]
            if "." not in body and len(body) > 1 and self.n <= 9:
                idx = [int(x) for x in body]
            else:
                idx = [int(x) for x in body.split(".")]
            return None, self._monomial(idx, tok.pos), tok
        if tok.kind == "LPAREN":
            start = self.i
            while self.peek() is not None and self.peek().kind != "RPAREN":  # type: ignore
                self.i += 1
            self.take("RPAREN")
            inner = "".join(t.text for t in self.tokens[start : self.i - 1])
            try:
                return parse_scalar(inner), None, tok
            except ValueError:
                raise StructureSyntaxError(f"bad coefficient {inner!r}", tok.pos)
        raise StructureSyntaxError(f"unexpected {tok.text!r}", tok.pos)

    def term(self) -> Form:
        coeff = K.one
        mono: Optional[Form] = None
        factors = [self.factor()]
        while self.peek() is not None and self.peek().kind == "TIMES":  # type: ignore
            self.i += 1
            factors.append(self.factor())

        if self.shorthand:
            # the last bare integer of a term is an index pair
            c, m, tok = factors[-1]
            if m is None:
                if tok.kind != "NUMBER" or self.tokens[self.i - 1] is not tok:
                    raise StructureSyntaxError("expected an index pair", tok.pos)
                if len(tok.text) != 2:
                    if len(factors) == 1 and int(tok.text) == 0:
                        return Form()
                    raise StructureSyntaxError(
                        f"expected two digit index pair, got {tok.text!r}", tok.pos
                    )
                factors[-1] = (
                    None,
                    self._monomial([int(tok.text[0]), int(tok.text[1])], tok.pos),
                    tok,
                )

        for c, m, tok in factors:
            if m is not None:
                if mono is not None:
                    raise StructureSyntaxError("more than one monomial in term", tok.pos)
                mono = m
            else:
                coeff = coeff * c
        return (mono if mono is not None else Form.one()) * coeff


def is_shorthand(text: str) -> bool:
    """true if a form expression uses bare index pairs instead of e-monomials"""
    return "e" not in text and any(len(t) >= 2 for t in re.findall(r"\d+", text))


def parse_form(
    text: str,
    n: int,
    *,
    env: Mapping[str, Scalar] | None = None,
    shorthand: bool | None = None,
    offset: int = 0,
) -> Form:
    """parse a single form expression over generators 1..n"""
    if shorthand is None:
        shorthand = is_shorthand(text)
    tokens = _tokenize(text, offset)
    p = _ExprParser(tokens, n, shorthand=shorthand, env=env, end=offset + len(text))
    return p.parse()


# --- structure equations ---------------------------------------------

_RE_LONG_LINE = re.compile(r"^\s*d\s*e(\d+)\s*=\s*(.*?)\s*$")


def _split_entries(text: str) -> List[Tuple[str, int]]:
    stripped = text.strip()
    start = text.index("(") if "(" in text else -1
    if start < 0 or not stripped.endswith(")"):
        raise StructureSyntaxError("shorthand must be enclosed in parentheses", 0)
    body_start = start + 1
    body_end = text.rindex(")")
    entries = []
    pos = body_start
    depth = 0
    cur_start = pos
    for j in range(body_start, body_end):
        ch = text[j]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            entries.append((text[cur_start:j], cur_start))
            cur_start = j + 1
    entries.append((text[cur_start:body_end], cur_start))
    return entries


def parse_structure(
    text: str,
    n: int,
    *,
    name: str = "",
    env: Mapping[str, Scalar] | None = None,
) -> LieAlgebraPresentation:
    """parse structure equations into a presentation"""
    from symplex.algebra.presentation import LieAlgebraPresentation

    if n < 1:
        raise ValueError("n must be positive")
    text = text.strip()
    if text.startswith("("):
        entries = _split_entries(text)
        if len(entries) != n:
            raise StructureSyntaxError(
                f"expected {n} entries, got {len(entries)}", len(text)
            )
        if n > 9:
            raise StructureSyntaxError("shorthand notation requires n <= 9", 0)
        d_of = []
        for entry, pos in entries:
            if not entry.strip():
                raise StructureSyntaxError("empty entry", pos)
            d_of.append(parse_form(entry, n, env=env, shorthand=True, offset=pos))
    else:
        d_map = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0]
            if not line.strip():
                continue
            m = _RE_LONG_LINE.match(line)
            if m is None:
                raise StructureSyntaxError("expected `d e<k> = <expr>`", 0, lineno)
            k = int(m.group(1))
            if not 1 <= k <= n:
                raise StructureSyntaxError(f"generator e{k} out of range", 0, lineno)
            if k in d_map:
                raise StructureSyntaxError(f"d e{k} defined twice", 0, lineno)
            try:
                d_map[k] = parse_form(
                    m.group(2), n, env=env, shorthand=False, offset=m.start(2)
                )
            except StructureSyntaxError as err:
                raise StructureSyntaxError(err.msg, err.position, lineno) from None
        d_of = [d_map.get(k, Form()) for k in range(1, n + 1)]
    for k, f in enumerate(d_of, start=1):
        if f and f.degree != 2:
            raise StructureSyntaxError(f"d e{k} must be a 2-form, got {f.to_str()}")
    return LieAlgebraPresentation(name=name, n=n, d_of_generator=d_of)


def _shorthand_entry(f: Form) -> str:
    if not f:
        return "0"
    out = ""
    for mask, c in f.items():
        i, j = Monomial(mask).indices
        pair = f"{i}{j}"
        txt = Form({0: c}).to_str()
        if txt == "1":
            term = pair
        elif txt == "-1":
            term = f"-{pair}"
        else:
            term = f"{txt}×{pair}"
        if out and not term.startswith("-"):
            out += "+"
        out += term
    return out


def format_structure(p: LieAlgebraPresentation, *, shorthand: bool | None = None):
    """print a presentation back into the structure equation grammar"""
    if shorthand is None:
        shorthand = p.n <= 9
    if shorthand:
        return "(" + ",".join(_shorthand_entry(f) for f in p.d_of_generator) + ")"
    return "\n".join(
        f"d e{k} = {f.to_str() if f else '0'}"
        for k, f in enumerate(p.d_of_generator, start=1)
    )
