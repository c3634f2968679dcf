"""Exact scalars: rationals, prime fields GF(p) and rational functions in s.

Every field element is a :class:`FieldElem` carrying its :class:`Field` tag.
Values are immutable and always stored in canonical form, so equality is a
plain structural comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import DivisionByZero, FieldMismatch, ParseError

__all__ = [
    "Poly",
    "RatFunc",
    "Field",
    "FieldElem",
    "QQ",
    "QS",
    "GF",
    "field_from_name",
    "poly_gcd",
    "ratfunc_canonical",
    "scalar_arith",
    "parse_scalar",
    "format_scalar",
]


class Poly:
    """Polynomial in s with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> Poly:
        return cls((c,))

    @classmethod
    def s(cls) -> Poly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> Poly:
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            k = Fraction(other)
            return Poly([c * k for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        if len(rem) <= dq:
            return Poly(), Poly(rem)
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = c / lead
            quot[k - dq] = f
            for j, y in enumerate(other.coeffs):
                rem[k - dq + j] -= f * y
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if not self.coeffs or self.lead == 1:
            return self
        return self * (1 / self.lead)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _primitive(coeffs) -> list[int]:
    """Integer multiple of ``coeffs`` with content 1 (lowest degree first)."""
    lcm = 1
    for c in coeffs:
        d = Fraction(c).denominator
        lcm = lcm * d // math.gcd(lcm, d)
    ints = [int(c * lcm) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor; ``poly_gcd(0, 0)`` is 0."""
    if q.is_zero() or p.is_zero():
        return (p if q.is_zero() else q).monic()
    # remainders are reduced to primitive integer polynomials, which keeps
    # coefficients from blowing up the way plain Euclid over Q does
    a, b = _primitive(p.coeffs), _primitive(q.coeffs)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = list(a)
        lb = b[-1]
        while len(r) >= len(b):
            lr = r[-1]
            shift = len(r) - len(b)
            r = [x * lb for x in r]
            for j, y in enumerate(b):
                r[shift + j] -= lr * y
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        a, b = b, (_primitive(r) if r else [])
    return Poly(a).monic()


class RatFunc:
    """Reduced quotient of polynomials with a monic denominator.

    Build instances with :func:`ratfunc_canonical`; the constructor trusts its
    arguments.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c) -> RatFunc:
        return cls(Poly.const(c), Poly.const(1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: RatFunc) -> RatFunc:
        if self.den == other.den:
            return ratfunc_canonical(self.num + other.num, self.den)
        return ratfunc_canonical(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: RatFunc) -> RatFunc:
        return self + (-other)

    def __mul__(self, other: RatFunc) -> RatFunc:
        return ratfunc_canonical(self.num * other.num, self.den * other.den)

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        return ratfunc_canonical(self.den, self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash(("RatFunc", self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)!r})"

    def __str__(self):
        return format_ratfunc(self)


def ratfunc_canonical(num: Poly, den: Poly) -> RatFunc:
    if den.is_zero():
        raise DivisionByZero("rational function with zero denominator")
    if num.is_zero():
        return RatFunc(Poly(), Poly.const(1))
    if den.degree > 0:
        g = poly_gcd(num, den)
        if not g.is_one():
            num = num // g
            den = den // g
    lc = den.lead
    if lc != 1:
        num = num * (1 / lc)
        den = den * (1 / lc)
    return RatFunc(num, den)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True, eq=False)
class Field:
    """Field tag: ``"Q"``, ``"Qs"`` or ``"GF"`` with a prime ``p``."""

    kind: str
    p: Union[int, None] = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Field):
            return NotImplemented
        return self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __post_init__(self):
        if self.kind == "GF":
            if not isinstance(self.p, int) or not (_is_prime(self.p) and self.p < 2**31):
                raise ValueError(f"GF(p) needs a prime p < 2^31, got {self.p!r}")
        elif self.kind in ("Q", "Qs"):
            if self.p is not None:
                raise ValueError(f"field {self.kind} takes no modulus")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    def __str__(self):
        return f"GF({self.p})" if self.kind == "GF" else self.kind

    def __repr__(self):
        return f"Field({self})"

    @property
    def has_variable(self) -> bool:
        return self.kind == "Qs"

    def zero(self) -> FieldElem:
        return self(0)

    def one(self) -> FieldElem:
        return self(1)

    def variable(self) -> FieldElem:
        """The indeterminate s of Q(s)."""
        if self.kind != "Qs":
            raise FieldMismatch(f"no variable s in {self}")
        return FieldElem(self, RatFunc(Poly.s(), Poly.const(1)))

    def __call__(self, x) -> FieldElem:
        """Coerce an int, Fraction, scalar literal or FieldElem into this field."""
        if isinstance(x, FieldElem):
            if x.field == self:
                return x
            if x.field.kind == "Q":
                return self(x.value)
            raise FieldMismatch(f"cannot convert an element of {x.field} to {self}")
        if isinstance(x, str):
            return parse_scalar(x, self)
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot convert {x!r} to a field element")
        q = Fraction(x)
        if self.kind == "Q":
            return FieldElem(self, q)
        if self.kind == "Qs":
            return FieldElem(self, RatFunc.const(q))
        den = q.denominator % self.p
        if den == 0:
            raise DivisionByZero(f"{q} has no image in {self}")
        return FieldElem(self, q.numerator * pow(den, -1, self.p) % self.p)

    def parse(self, text: str) -> FieldElem:
        return parse_scalar(text, self)


QQ = Field("Q")
QS = Field("Qs")


@lru_cache(maxsize=None)
def GF(p: int) -> Field:
    return Field("GF", p)


def field_from_name(name: str) -> Field:
    """Accepts ``Q``, ``Qs`` and ``GF:p`` / ``GFp`` / ``GF(p)`` / ``GF p``."""
    t = name.strip()
    if t == "Q":
        return QQ
    if t == "Qs":
        return QS
    if t.startswith("GF"):
        rest = t[2:].strip().lstrip(":").strip()
        if rest.startswith("(") and rest.endswith(")"):
            rest = rest[1:-1].strip()
        if rest.isdigit():
            try:
                return GF(int(rest))
            except ValueError as e:
                raise ParseError(str(e), 0) from None
    raise ParseError(f"unknown field {name!r} (expected Q, Qs or GF:p)", 0)


class FieldElem:
    """An exact scalar tagged with the field it lives in.

    Arithmetic operators work between elements of the same field; plain ints
    and Fractions are coerced.  Mixing fields raises :class:`FieldMismatch`.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _other(self, other) -> Union[FieldElem, None]:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field(other)
        return None

    def is_zero(self) -> bool:
        v = self.value
        return v.is_zero() if self.field.kind == "Qs" else v == 0

    def is_one(self) -> bool:
        if self.field.kind == "Qs":
            return self.value.num.is_one() and self.value.den.is_one()
        return self.value == 1

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.field.kind == "GF":
            return FieldElem(self.field, (self.value + o.value) % self.field.p)
        return FieldElem(self.field, self.value + o.value)

    __radd__ = __add__

    def __neg__(self):
        if self.field.kind == "GF":
            return FieldElem(self.field, -self.value % self.field.p)
        return FieldElem(self.field, -self.value)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.field.kind == "GF":
            return FieldElem(self.field, self.value * o.value % self.field.p)
        return FieldElem(self.field, self.value * o.value)

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        if self.is_zero():
            raise DivisionByZero(f"inverse of zero in {self.field}")
        kind = self.field.kind
        if kind == "GF":
            return FieldElem(self.field, pow(self.value, -1, self.field.p))
        if kind == "Q":
            return FieldElem(self.field, 1 / self.value)
        return FieldElem(self.field, self.value.inverse())

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self == self.field(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.field}({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def scalar_arith(op: str, a: FieldElem, b: Union[FieldElem, None] = None) -> FieldElem:
    """Apply one of ``add``, ``mul``, ``neg``, ``inv``."""
    if op in ("add", "mul"):
        if b is None:
            raise TypeError(f"{op} needs two operands")
        if a.field != b.field:
            raise FieldMismatch(f"{a.field} vs {b.field}")
        return a + b if op == "add" else a * b
    if op in ("neg", "inv"):
        if b is not None:
            raise TypeError(f"{op} takes one operand")
        return -a if op == "neg" else a.inverse()
    raise ValueError(f"unknown operation {op!r}")


# Scalar literals
#
#   scalar  := polyexpr ('/' polyexpr)?
#   polyexpr:= term (('+'|'-') term)*
#   term    := factor ('*' factor)*
#   factor  := 's' ('^' uint)? | int ('/' int)? | '(' polyexpr ')' | '-' factor
#
# A plain rational a/b is read as a single factor, so it is covered by the
# polyexpr alternative.


def _tokenize(text: str, base: int) -> list[tuple[str, str, int]]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j], base + i))
            i = j
        elif ch in "+-*/^()s":
            toks.append((ch, ch, base + i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r} in scalar", base + i)
    toks.append(("end", "", base + n))
    return toks


class _ScalarParser:
    def __init__(self, text: str, field: Field, base: int):
        self.toks = _tokenize(text, base)
        self.i = 0
        self.field = field

    def peek(self, k: int = 0) -> tuple[str, str, int]:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r} but found {what}", tok[2])
        self.i += 1
        return tok

    def scalar(self) -> FieldElem:
        x = self.polyexpr()
        if self.peek()[0] == "/":
            tok = self.take("/")
            y = self.polyexpr()
            if y.is_zero():
                raise ParseError("division by zero in scalar", tok[2])
            x = x / y
        self.take("end")
        return x

    def polyexpr(self) -> FieldElem:
        x = self.term()
        while self.peek()[0] in "+-":
            op = self.take(self.peek()[0])[0]
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self) -> FieldElem:
        x = self.factor()
        while self.peek()[0] == "*":
            self.take("*")
            x = x * self.factor()
        return x

    def factor(self) -> FieldElem:
        kind, text, pos = self.peek()
        if kind == "s":
            self.take("s")
            if not self.field.has_variable:
                raise FieldMismatch(f"variable s is not allowed over {self.field} (offset {pos})")
            x = self.field.variable()
            if self.peek()[0] == "^":
                self.take("^")
                e = int(self.take("int")[1])
                x = FieldElem(self.field, RatFunc(Poly([0] * e + [1]), Poly.const(1)))
            return x
        if kind == "int":
            self.take("int")
            num = int(text)
            if self.peek()[0] == "/" and self.peek(1)[0] == "int":
                self.take("/")
                den_tok = self.take("int")
                if int(den_tok[1]) == 0:
                    raise ParseError("zero denominator in rational literal", den_tok[2])
                try:
                    return self.field(Fraction(num, int(den_tok[1])))
                except DivisionByZero:
                    raise ParseError(f"denominator vanishes in {self.field}", den_tok[2]) from None
            return self.field(num)
        if kind == "(":
            self.take("(")
            x = self.polyexpr()
            self.take(")")
            return x
        if kind == "-":
            self.take("-")
            return -self.factor()
        what = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"expected a number, 's' or '(' but found {what}", pos)


def parse_scalar(text: str, field: Field, base: int = 0) -> FieldElem:
    """Parse a scalar literal; ``base`` offsets reported error positions."""
    return _ScalarParser(text, field, base).scalar()


def _format_monomial(c: Fraction, d: int) -> str:
    if d == 0:
        return str(c)
    mono = "s" if d == 1 else f"s^{d}"
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def format_poly(p: Poly) -> str:
    parts = [_format_monomial(c, d) for d, c in reversed(list(enumerate(p.coeffs))) if c != 0]
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def _nterms(p: Poly) -> int:
    return sum(1 for c in p.coeffs if c != 0)


def format_ratfunc(r: RatFunc) -> str:
    num = format_poly(r.num)
    if r.den.is_one():
        return num
    den = format_poly(r.den)
    if _nterms(r.num) > 1:
        num = f"({num})"
    if _nterms(r.den) > 1:
        den = f"({den})"
    return f"{num}/{den}"


def format_scalar(x: FieldElem) -> str:
    if x.field.kind == "Qs":
        return format_ratfunc(x.value)
    return str(x.value)
