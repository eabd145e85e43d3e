"""Exact Laurent polynomials in ``u`` with integer coefficients.

Three value types live here:

* :class:`LaurentU` -- an element of ``Z[u, u^-1]``.
* :class:`JPoly` -- ``v^k * body``; ``v`` only ever appears as a global power.
* :class:`ClassPoly` -- a ``Z[u, u^-1]``-linear combination of monomials in
  homology-class generators, also carrying a global ``v`` power.

Text grammar (whitespace-insensitive)::

    v^<k>*(<term> {+|- <term>})      term = [<int>][*]u^<int> | <int>

All values are immutable and hashable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "LaurentU",
    "JPoly",
    "ClassKey",
    "ClassPoly",
    "PolyParseError",
    "add",
    "mul",
    "substitute_u_inverse",
    "canonical_pair",
    "serialize",
    "parse",
    "LOOP",
]


class PolyParseError(ValueError):
    """Malformed polynomial text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


def _clean(terms: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    acc: dict[int, int] = {}
    for e, c in terms:
        acc[e] = acc.get(e, 0) + c
    return tuple(sorted((e, c) for e, c in acc.items() if c != 0))


@dataclass(frozen=True)
class LaurentU:
    """Element of ``Z[u, u^-1]`` stored as sorted ``(exponent, coefficient)`` pairs."""

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _clean(self.terms))

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "LaurentU":
        return cls(tuple(d.items()))

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentU":
        return cls(((exp, coeff),))

    @classmethod
    def const(cls, c: int) -> "LaurentU":
        return cls(((0, c),))

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "LaurentU") -> "LaurentU":
        if isinstance(other, int):
            other = LaurentU.const(other)
        return LaurentU(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentU":
        return LaurentU(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentU") -> "LaurentU":
        if isinstance(other, int):
            other = LaurentU.const(other)
        return self + (-other)

    def __mul__(self, other) -> "LaurentU":
        if isinstance(other, int):
            return LaurentU(tuple((e, c * other) for e, c in self.terms))
        out: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentU.from_dict(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentU":
        if n < 0:
            if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
                raise ValueError("only unit monomials have negative powers")
            (e, c), = self.terms
            return LaurentU.monomial(e * n, c ** (-n))
        result = LaurentU.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentU":
        """Multiply by ``u^k``."""
        return LaurentU(tuple((e + k, c) for e, c in self.terms))

    def inverted(self) -> "LaurentU":
        """The image under ``u -> u^-1``."""
        return LaurentU(tuple((-e, c) for e, c in self.terms))

    def exact_div(self, divisor: "LaurentU") -> "LaurentU":
        """Exact division; raises ``ValueError`` if ``divisor`` does not divide."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentU()
        lead_e, lead_c = divisor.terms[-1]
        lowest_k = self.terms[0][0] - divisor.terms[0][0]
        rem = self.as_dict()
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            k = top - lead_e
            q, r = divmod(rem[top], lead_c)
            if k < lowest_k or r:
                raise ValueError("polynomial is not divisible")
            quot[k] = q
            for e, c in divisor.terms:
                v = rem.get(e + k, 0) - q * c
                if v:
                    rem[e + k] = v
                else:
                    rem.pop(e + k, None)
        return LaurentU.from_dict(quot)

    def __call__(self, value):
        return sum(c * value ** e for e, c in self.terms)

    def __str__(self) -> str:
        return _format_terms(self.terms)

    def __repr__(self) -> str:
        return f"LaurentU({_format_terms(self.terms)!r})"


# -u^2 - u^-2, the value of one extra circle
LOOP = LaurentU(((-2, -1), (2, -1)))
ONE = LaurentU.const(1)


def add(a: LaurentU, b: LaurentU) -> LaurentU:
    return a + b


def mul(a: LaurentU, b: LaurentU) -> LaurentU:
    return a * b


@dataclass(frozen=True)
class JPoly:
    """``v^v_exp * body``.  The zero polynomial always has ``v_exp == 0``."""

    v_exp: int
    body: LaurentU

    def __post_init__(self):
        if self.v_exp < 0:
            raise ValueError("v exponent must be nonnegative")
        if self.body.is_zero() and self.v_exp:
            object.__setattr__(self, "v_exp", 0)

    def __str__(self) -> str:
        return f"v^{self.v_exp}*({_format_terms(self.body.terms)})"


ClassKey = tuple[int, int]
"""``(hv, hh)``: parity of passes through the left/right and top/bottom walls."""

Monomial = tuple[ClassKey, ...]


def _gen_name(key: ClassKey) -> str:
    return f"g{key[0]}{key[1]}"


@dataclass(frozen=True)
class ClassPoly:
    """Linear combination of generator monomials with ``LaurentU`` coefficients.

    ``terms`` maps a sorted tuple of nonzero :data:`ClassKey` values (a monomial
    in the generators; the empty tuple is the scalar part) to its coefficient.
    """

    terms: tuple[tuple[Monomial, LaurentU], ...] = ()
    v_exp: int = 0

    def __post_init__(self):
        acc: dict[Monomial, LaurentU] = {}
        for mono, coeff in self.terms:
            mono = tuple(sorted(tuple(k) for k in mono))
            if any(k == (0, 0) for k in mono):
                raise ValueError("(0, 0) is not a generator")
            acc[mono] = acc.get(mono, LaurentU()) + coeff
        clean = tuple(sorted((m, c) for m, c in acc.items() if not c.is_zero()))
        object.__setattr__(self, "terms", clean)
        if not clean:
            object.__setattr__(self, "v_exp", 0)

    def as_dict(self) -> dict[Monomial, LaurentU]:
        return dict(self.terms)

    def inverted(self) -> "ClassPoly":
        return ClassPoly(tuple((m, c.inverted()) for m, c in self.terms), self.v_exp)

    def specialize(self, value: LaurentU = LOOP) -> LaurentU:
        """Replace every generator by ``value`` and sum."""
        total = LaurentU()
        for mono, coeff in self.terms:
            total = total + coeff * (value ** len(mono))
        return total

    def __str__(self) -> str:
        parts = []
        for mono, coeff in self.terms:
            s = f"({_format_terms(coeff.terms)})"
            for key in sorted(set(mono)):
                p = mono.count(key)
                s += f"*{_gen_name(key)}" + (f"^{p}" if p > 1 else "")
            parts.append(s)
        return f"v^{self.v_exp}*[" + " + ".join(parts) + "]"


def substitute_u_inverse(a):
    """``u -> u^-1`` on a LaurentU, JPoly or ClassPoly."""
    if isinstance(a, LaurentU):
        return a.inverted()
    if isinstance(a, JPoly):
        return JPoly(a.v_exp, a.body.inverted())
    if isinstance(a, ClassPoly):
        return a.inverted()
    raise TypeError(f"cannot substitute into {type(a).__name__}")


def _order_key(a):
    if isinstance(a, LaurentU):
        return a.terms
    if isinstance(a, JPoly):
        return a.body.terms
    return tuple((m, c.terms) for m, c in a.terms)


def canonical_pair(a):
    """The smaller of ``a`` and its ``u -> u^-1`` image.

    Order: term lists sorted by ascending exponent, compared lexicographically
    on ``(exponent, coefficient)``.
    """
    b = substitute_u_inverse(a)
    return b if _order_key(b) < _order_key(a) else a


# ---------------------------------------------------------------- text format

def _format_terms(terms) -> str:
    if not terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        elif mag == 1:
            body = f"u^{e}"
        else:
            body = f"{mag}*u^{e}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<op>[-+*^()\[\]])|(?P<id>[uv]|g[01][01]))")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.toks: list[tuple[str, str, int]] = []
        while True:
            while self.pos < len(text) and text[self.pos].isspace():
                self.pos += 1
            if self.pos >= len(text):
                break
            m = _TOKEN.match(text, self.pos)
            if not m:
                raise PolyParseError(f"unexpected character {text[self.pos]!r}", text, self.pos)
            kind = m.lastgroup
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), start))
            self.pos = m.end()
        self.toks.append(("eof", "", len(text)))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise PolyParseError(f"expected {value!r}, got {val or 'end of input'!r}", self.text, pos)

    def error(self, msg):
        _, _, pos = self.peek()
        raise PolyParseError(msg, self.text, pos)


def _parse_int(lx: _Lexer) -> int:
    sign = 1
    while lx.peek()[1] in "+-" and lx.peek()[0] == "op":
        if lx.next()[1] == "-":
            sign = -sign
    kind, val, pos = lx.next()
    if kind != "num":
        raise PolyParseError("expected integer", lx.text, pos)
    return sign * int(val)


def _parse_laurent(lx: _Lexer, stop: str) -> LaurentU:
    terms = []
    first = True
    while True:
        kind, val, pos = lx.peek()
        if val == stop or kind == "eof":
            if first:
                lx.error("empty polynomial")
            break
        sign = 1
        if kind == "op" and val in "+-":
            lx.next()
            sign = -1 if val == "-" else 1
        elif not first:
            lx.error("expected '+' or '-' between terms")
        first = False
        kind, val, pos = lx.peek()
        coeff = None
        star = False
        if kind == "num":
            lx.next()
            coeff = int(val)
            if lx.peek()[1] == "*":
                lx.next()
                star = True
        if star and lx.peek()[1] != "u":
            lx.error("expected 'u' after '*'")
        if lx.peek()[1] == "u":
            lx.next()
            lx.expect("^")
            exp = _parse_int(lx)
            terms.append((exp, sign * (1 if coeff is None else coeff)))
        elif coeff is not None:
            terms.append((0, sign * coeff))
        else:
            lx.error("expected a term")
    return LaurentU(tuple(terms))


def _parse_v(lx: _Lexer) -> int:
    lx.expect("v")
    lx.expect("^")
    k = _parse_int(lx)
    if k < 0:
        lx.error("v exponent must be nonnegative")
    lx.expect("*")
    return k


def _parse_text(text: str):
    lx = _Lexer(text)
    kind, val, _ = lx.peek()
    if val != "v":
        p = _parse_laurent(lx, "")
        if lx.peek()[0] != "eof":
            lx.error("trailing input")
        return p
    k = _parse_v(lx)
    if lx.peek()[1] == "(":
        lx.next()
        body = _parse_laurent(lx, ")")
        lx.expect(")")
        if lx.peek()[0] != "eof":
            lx.error("trailing input")
        return JPoly(k, body)
    lx.expect("[")
    terms = []
    while lx.peek()[1] != "]":
        if terms:
            lx.expect("+")
        lx.expect("(")
        coeff = _parse_laurent(lx, ")")
        lx.expect(")")
        mono: list[ClassKey] = []
        while lx.peek()[1] == "*":
            lx.next()
            kind, val, pos = lx.next()
            if kind != "id" or not val.startswith("g"):
                raise PolyParseError("expected generator g<hv><hh>", text, pos)
            key = (int(val[1]), int(val[2]))
            if key == (0, 0):
                raise PolyParseError("g00 is not a generator", text, pos)
            power = 1
            if lx.peek()[1] == "^":
                lx.next()
                power = _parse_int(lx)
                if power < 1:
                    lx.error("generator power must be positive")
            mono.extend([key] * power)
        terms.append((tuple(mono), coeff))
    lx.expect("]")
    if lx.peek()[0] != "eof":
        lx.error("trailing input")
    return ClassPoly(tuple(terms), k)


def _terms_json(p: LaurentU):
    return [[e, c] for e, c in p.terms]


def _check_terms(raw) -> LaurentU:
    if not isinstance(raw, list):
        raise PolyParseError("u_terms must be a list")
    exps = []
    for item in raw:
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)):
            raise PolyParseError(f"bad term {item!r}")
        if item[1] == 0:
            raise PolyParseError("zero coefficient in u_terms")
        exps.append(item[0])
    if any(a >= b for a, b in zip(exps, exps[1:])):
        raise PolyParseError("u_terms exponents must be strictly ascending")
    return LaurentU(tuple((e, c) for e, c in raw))


def _to_json(a) -> dict:
    if isinstance(a, LaurentU):
        return {"u_terms": _terms_json(a)}
    if isinstance(a, JPoly):
        return {"v": a.v_exp, "u_terms": _terms_json(a.body)}
    return {
        "v": a.v_exp,
        "classes": [
            {"gens": [list(k) for k in mono], "u_terms": _terms_json(coeff)}
            for mono, coeff in a.terms
        ],
    }


def _from_json(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        err = PolyParseError(exc.msg, text, exc.pos)
        raise err from exc
    if not isinstance(obj, dict):
        raise PolyParseError("expected a JSON object")
    v = obj.get("v")
    if v is not None and (not isinstance(v, int) or v < 0):
        raise PolyParseError("'v' must be a nonnegative integer")
    if "classes" in obj:
        terms = []
        for entry in obj["classes"]:
            gens = tuple(tuple(g) for g in entry["gens"])
            if any(len(g) != 2 or g == (0, 0) or any(b not in (0, 1) for b in g) for g in gens):
                raise PolyParseError(f"bad generator list {entry['gens']!r}")
            terms.append((gens, _check_terms(entry["u_terms"])))
        return ClassPoly(tuple(terms), v or 0)
    body = _check_terms(obj.get("u_terms"))
    if v is None:
        return body
    return JPoly(v, body)


def serialize(a, format: str = "text") -> str:
    """Render a LaurentU, JPoly or ClassPoly as text or JSON."""
    if format == "json":
        return json.dumps(_to_json(a), separators=(", ", ": "))
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    return str(a)


def parse(text: str, format: str = "text"):
    """Inverse of :func:`serialize`."""
    if format == "json":
        return _from_json(text)
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    return _parse_text(text)
