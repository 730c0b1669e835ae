"""Exact arithmetic in an absolute number field L = Q[x]/(m).

Elements are stored as an integer numerator vector over one positive common
denominator, reduced to lowest terms, so equality is coefficientwise and
hashing is cheap.  Rational literals in interchange files are strings
``"p/q"`` or ``"p"``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import FieldMismatchError, InputError, NotInvertibleError, StructuralError

Rat = Fraction
RatLike = Union[int, Fraction, str]

_RAT_RE = re.compile(r"^-?[0-9]+(/[0-9]+)?$")


def parse_rat(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (base 10, optional leading minus)."""
    if not isinstance(text, str):
        raise InputError(f"rational literal must be a string, got {text!r}")
    s = text.strip()
    if not _RAT_RE.match(s):
        raise InputError(f"malformed rational literal {text!r}")
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rat(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _as_fraction(c: RatLike) -> Fraction:
    if isinstance(c, str):
        return parse_rat(c)
    return Fraction(c)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-v for v in num]
        den = -den
    g = math.gcd(den, *num)
    if g > 1:
        num = [v // g for v in num]
        den //= g
    if not any(num):
        den = 1
    return tuple(num), den


class NumberField:
    """The field Q[x]/(m) for a monic irreducible m with rational coefficients.

    ``modulus`` is constant-term first and includes the leading 1.
    """

    def __init__(self, modulus: Iterable[RatLike], *, check_irreducible: bool = True, variable: str = "x"):
        coeffs = tuple(_as_fraction(c) for c in modulus)
        if len(coeffs) < 2:
            raise InputError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise InputError("minimal polynomial must be monic")
        self.modulus = coeffs
        self.degree = len(coeffs) - 1
        self.variable = variable
        if check_irreducible and self.degree > 1:
            from .factor import is_irreducible_over_q

            if not is_irreducible_over_q(coeffs):
                raise InputError(f"minimal polynomial {self._poly_str(coeffs)} is reducible over Q")
        self._build_reduction()

    def _build_reduction(self) -> None:
        N = self.degree
        low = [-c for c in self.modulus[:N]]  # x^N in the power basis
        rows = [low]
        for _ in range(N - 2):
            prev = rows[-1]
            nxt = [Fraction(0)] + prev[:-1]
            top = prev[-1]
            if top:
                nxt = [a + top * b for a, b in zip(nxt, low)]
            rows.append(nxt)
        D = 1
        for row in rows:
            for c in row:
                D = D * c.denominator // math.gcd(D, c.denominator)
        self._red_den = D
        self._red = [tuple(int(c * D) for c in row) for row in rows] if N > 1 else []

    def __eq__(self, other: object) -> bool:
        return self is other or (isinstance(other, NumberField) and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash(self.modulus)

    def __repr__(self) -> str:
        return f"NumberField({self._poly_str(self.modulus)})"

    def _poly_str(self, coeffs: Sequence[Fraction]) -> str:
        return _poly_repr(coeffs, self.variable) or "0"

    def __call__(self, value: Union[RatLike, Sequence[RatLike], "NFElem"]) -> "NFElem":
        if isinstance(value, NFElem):
            _check_same(self, value.field)
            return value
        if isinstance(value, (int, Fraction, str)):
            value = [value]
        return self.from_fractions([_as_fraction(c) for c in value])

    def from_fractions(self, coeffs: Sequence[Fraction]) -> "NFElem":
        if len(coeffs) > self.degree:
            return self.from_polynomial(coeffs)
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [int(c * den) for c in coeffs] + [0] * (self.degree - len(coeffs))
        return NFElem._make(self, *_normalize(num, den))

    def from_polynomial(self, coeffs: Sequence[RatLike]) -> "NFElem":
        """Reduce an arbitrary-degree polynomial modulo m."""
        x = self.gen
        acc = self.zero
        for c in reversed([_as_fraction(c) for c in coeffs]):
            acc = acc * x + c
        return acc

    @cached_property
    def zero(self) -> "NFElem":
        return NFElem._make(self, (0,) * self.degree, 1)

    @cached_property
    def one(self) -> "NFElem":
        return NFElem._make(self, (1,) + (0,) * (self.degree - 1), 1)

    @cached_property
    def gen(self) -> "NFElem":
        if self.degree == 1:
            return self(-self.modulus[0])
        return NFElem._make(self, (0, 1) + (0,) * (self.degree - 2), 1)

    def basis(self) -> list["NFElem"]:
        out = []
        for i in range(self.degree):
            num = [0] * self.degree
            num[i] = 1
            out.append(NFElem._make(self, tuple(num), 1))
        return out

    def evaluate_modulus(self, a: "NFElem") -> "NFElem":
        """m(a) computed in L; zero exactly when a is a root of m."""
        acc = self.zero
        for c in reversed(self.modulus):
            acc = acc * a + c
        return acc


def _check_same(f: NumberField, g: NumberField) -> None:
    if f is not g and f != g:
        raise FieldMismatchError(f"elements live in different fields: {f!r} vs {g!r}")


class NFElem:
    """An element of a NumberField, immutable."""

    __slots__ = ("field", "num", "den", "_hash")

    field: NumberField
    num: tuple[int, ...]
    den: int

    @classmethod
    def _make(cls, field: NumberField, num: tuple[int, ...], den: int) -> "NFElem":
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("NFElem is immutable")

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise StructuralError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def _coerce(self, other) -> "NFElem":
        if isinstance(other, NFElem):
            _check_same(self.field, other.field)
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, NFElem):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.num, self.den)) if not self.is_rational() else hash(Fraction(self.num[0], self.den))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other) -> "NFElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return NFElem._make(a.field, *_normalize(num, a.den * b.den))

    __radd__ = __add__

    def __neg__(self) -> "NFElem":
        return NFElem._make(self.field, tuple(-v for v in self.num), self.den)

    def __sub__(self, other) -> "NFElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "NFElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other) -> "NFElem":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return NFElem._make(self.field, *_normalize([v * q.numerator for v in self.num], self.den * q.denominator))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        N = F.degree
        a, b = self.num, other.num
        conv = [0] * (2 * N - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        D = F._red_den
        res = conv[:N] if D == 1 else [D * v for v in conv[:N]]
        for j, c in enumerate(conv[N:]):
            if c:
                row = F._red[j]
                res = [r + c * t for r, t in zip(res, row)]
        return NFElem._make(F, *_normalize(res, self.den * other.den * D))

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if self.is_zero():
            raise NotInvertibleError("inverse of zero in a number field")
        F = self.field
        if self.is_rational():
            return F(1 / Fraction(self.num[0], self.den))
        # solve a * c = 1 for the coordinates c of the inverse: column j of the
        # integer matrix holds a * x^j over a common denominator
        N = F.degree
        cols = [self]
        for _ in range(N - 1):
            cols.append(cols[-1] * F.gen)
        D = 1
        for c in cols:
            D = D * c.den // math.gcd(D, c.den)
        A = [[cols[j].num[i] * (D // cols[j].den) for j in range(N)] for i in range(N)]
        sol = _bareiss_solve(A, [D] + [0] * (N - 1))
        if sol is None:
            raise StructuralError("modulus is not irreducible: singular multiplication matrix")
        return F.from_fractions(sol)

    def __truediv__(self, other) -> "NFElem":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise NotInvertibleError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "NFElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int) -> "NFElem":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def substitute(self, image: "NFElem") -> "NFElem":
        """Evaluate this element's polynomial at ``image`` (Horner)."""
        acc = image.field.zero
        for c in reversed(self.coeffs):
            acc = acc * image + c
        return acc

    def __repr__(self) -> str:
        return _poly_repr(self.coeffs, self.field.variable) or "0"

    def to_strings(self) -> list[str]:
        return [format_rat(c) for c in self.coeffs]


def _poly_repr(coeffs: Sequence[Fraction], var: str) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = format_rat(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{format_rat(abs(c))}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return ""
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# small dense polynomial helpers over Q, constant-term first


def _bareiss_solve(A: list[list[int]], b: list[int]) -> list[Fraction] | None:
    """Solve the square integer system A v = b by fraction-free elimination."""
    n = len(A)
    M = [row[:] + [bi] for row, bi in zip(A, b)]
    prev = 1
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k]), None)
        if p is None:
            return None
        M[k], M[p] = M[p], M[k]
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    v = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(M[i][n])
        for j in range(i + 1, n):
            if M[i][j]:
                acc -= M[i][j] * v[j]
        v[i] = acc / M[i][i]
    return v


# functional aliases


def nf_add(a: NFElem, b: NFElem) -> NFElem:
    return a + b


def nf_mul(a: NFElem, b: NFElem) -> NFElem:
    return a * b


def nf_inv(a: NFElem) -> NFElem:
    return a.inverse()
