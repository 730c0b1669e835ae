"""Certified complex embeddings of L = Q[x]/(m).

An ordering of the real base field is realised by embedding L into C via a
chosen root r of m.  The root is enclosed in a dyadic box whose radius is a
rigorous a-posteriori bound (a disk of radius N|m(z)/m'(z)| around any z
contains a root of m); elements are then evaluated with outward-rounded
interval arithmetic.  Zero is only ever decided symbolically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import mpmath

from .errors import DomainError, InputError, PrecisionExhausted
from .numfield import NFElem, NumberField

DEFAULT_PRECISION_BITS = 128
DEFAULT_MAX_PRECISION_BITS = 4096


class Sign(enum.IntEnum):
    NEG = -1
    ZERO = 0
    POS = 1


# ---------------------------------------------------------------- intervals


@dataclass(frozen=True)
class RealInterval:
    """[lo, hi] * 2**-prec with integer endpoints."""

    lo: int
    hi: int
    prec: int

    @classmethod
    def from_fraction(cls, q: Fraction, prec: int) -> "RealInterval":
        scaled = q * (1 << prec)
        lo = scaled.numerator // scaled.denominator
        hi = -((-scaled.numerator) // scaled.denominator)
        return cls(lo, hi, prec)

    @classmethod
    def around(cls, center: Fraction, radius: Fraction, prec: int) -> "RealInterval":
        lo = cls.from_fraction(center - radius, prec).lo
        hi = cls.from_fraction(center + radius, prec).hi
        return cls(lo, hi, prec)

    @property
    def lower(self) -> Fraction:
        return Fraction(self.lo, 1 << self.prec)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.hi, 1 << self.prec)

    @property
    def width(self) -> Fraction:
        return Fraction(self.hi - self.lo, 1 << self.prec)

    @property
    def mid(self) -> Fraction:
        return Fraction(self.lo + self.hi, 1 << (self.prec + 1))

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains(self, q: Fraction) -> bool:
        return self.lower <= q <= self.upper

    def overlaps(self, other: "RealInterval") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def __add__(self, other: "RealInterval") -> "RealInterval":
        return RealInterval(self.lo + other.lo, self.hi + other.hi, self.prec)

    def __sub__(self, other: "RealInterval") -> "RealInterval":
        return RealInterval(self.lo - other.hi, self.hi - other.lo, self.prec)

    def __neg__(self) -> "RealInterval":
        return RealInterval(-self.hi, -self.lo, self.prec)

    def __mul__(self, other: "RealInterval") -> "RealInterval":
        p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        s = self.prec
        return RealInterval(min(p) >> s, -((-max(p)) >> s), s)

    def square(self) -> "RealInterval":
        a, b = self.lo * self.lo, self.hi * self.hi
        lo = 0 if self.contains_zero() else min(a, b)
        s = self.prec
        return RealInterval(lo >> s, -((-max(a, b)) >> s), s)

    def magnitude(self) -> Fraction:
        """Upper bound on |t| for t in the interval."""
        return max(abs(self.lower), abs(self.upper))

    def __repr__(self) -> str:
        return f"[{float(self.lower):.17g}, {float(self.upper):.17g}]"


@dataclass(frozen=True)
class ComplexBox:
    re: RealInterval
    im: RealInterval

    @classmethod
    def exact(cls, q: Fraction, prec: int) -> "ComplexBox":
        return cls(RealInterval.from_fraction(q, prec), RealInterval(0, 0, prec))

    @property
    def prec(self) -> int:
        return self.re.prec

    def __add__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexBox":
        return ComplexBox(-self.re, -self.im)

    def __mul__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    def conjugate(self) -> "ComplexBox":
        return ComplexBox(self.re, -self.im)

    def abs2(self) -> RealInterval:
        return self.re.square() + self.im.square()

    def overlaps(self, other: "ComplexBox") -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    @property
    def diameter(self) -> Fraction:
        """Upper bound on the distance between two points of the box."""
        return self.re.width + self.im.width

    def magnitude(self) -> Fraction:
        """Upper bound on |z| (l1 bound, cheap and rigorous)."""
        return self.re.magnitude() + self.im.magnitude()

    def mid(self) -> complex:
        return complex(float(self.re.mid), float(self.im.mid))

    def __repr__(self) -> str:
        return f"{self.re!r} + i{self.im!r}"


# ------------------------------------------------------- exact root bounds


def _gauss_poly_eval(coeffs: Sequence[Fraction], zr: Fraction, zi: Fraction):
    """p(z) and p'(z) for z = zr + i zi, exact; coeffs constant-term first."""
    pr, pi_ = Fraction(0), Fraction(0)
    dr, di = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        dr, di = dr * zr - di * zi + pr, dr * zi + di * zr + pi_
        pr, pi_ = pr * zr - pi_ * zi + c, pr * zi + pi_ * zr
    return (pr, pi_), (dr, di)


def _sqrt_upper(q: Fraction, bits: int) -> Fraction:
    scale = 1 << (2 * bits)
    v = q * scale
    s = math.isqrt(-((-v.numerator) // v.denominator))
    if s * s * v.denominator < v.numerator:
        s += 1
    return Fraction(s, 1 << bits)


def _sqrt_lower(q: Fraction, bits: int) -> Fraction:
    if q <= 0:
        return Fraction(0)
    v = q * (1 << (2 * bits))
    return Fraction(math.isqrt(v.numerator // v.denominator), 1 << bits)


def _root_radius(coeffs: Sequence[Fraction], zr: Fraction, zi: Fraction, bits: int) -> Fraction:
    """Rigorous radius r such that the disk D(z, r) contains a root."""
    (pr, pi_), (dr, di) = _gauss_poly_eval(coeffs, zr, zi)
    num = pr * pr + pi_ * pi_
    if num == 0:
        return Fraction(0)
    den = dr * dr + di * di
    if den == 0:
        return Fraction(10**6)
    n = len(coeffs) - 1
    return _sqrt_upper(n * n * num / den, bits + 8)


def _to_dyadic(ctx, v, bits: int) -> Fraction:
    return Fraction(int(ctx.nint(ctx.ldexp(v, bits))), 1 << bits)


def _newton(coeffs: Sequence[Fraction], zr: Fraction, zi: Fraction, bits: int):
    ctx = mpmath.MPContext()
    ctx.prec = bits + 64
    poly = [ctx.mpf(c.numerator) / c.denominator for c in reversed(coeffs)]
    z = ctx.mpc(ctx.mpf(zr.numerator) / zr.denominator, ctx.mpf(zi.numerator) / zi.denominator)
    tol = ctx.ldexp(1, -(bits + 8))
    for _ in range(4 * bits.bit_length() + 40):
        val, der = ctx.polyval(poly, z, derivative=True)
        if der == 0:
            break
        step = val / der
        z -= step
        if abs(step) < tol:
            break
    return _to_dyadic(ctx, z.real, bits), _to_dyadic(ctx, z.imag, bits)


@lru_cache(maxsize=256)
def _isolate_all(modulus: tuple[Fraction, ...], bits: int = 256):
    """Approximate every root of m with a rigorous enclosing disk.

    Returns a list of ((re, im), radius) with pairwise disjoint disks; this
    certifies that each disk holds exactly one root.
    """
    n = len(modulus) - 1
    ctx = mpmath.MPContext()
    ctx.prec = bits + 64
    approx = ctx.polyroots([ctx.mpf(c.numerator) / c.denominator for c in reversed(modulus)],
                           maxsteps=400, extraprec=4 * bits)
    out = []
    for z in approx:
        zr, zi = _to_dyadic(ctx, ctx.re(z), bits), _to_dyadic(ctx, ctx.im(z), bits)
        zr, zi = _newton(modulus, zr, zi, bits)
        out.append(((zr, zi), _root_radius(modulus, zr, zi, bits)))
    for i in range(n):
        for j in range(i + 1, n):
            (a, b), r1 = out[i]
            (c, d), r2 = out[j]
            if (a - c) ** 2 + (b - d) ** 2 <= (r1 + r2) ** 2:
                raise InputError("could not isolate the roots of the minimal polynomial")
    return tuple(out)


# --------------------------------------------------------- the context


@dataclass(frozen=True)
class EmbeddingContext:
    """A certified embedding L -> C selecting one root of the minimal polynomial.

    ``conjugation`` is the image of the generator under the automorphism of L
    that complex conjugation induces (when known); it is what lets
    :func:`sign_of` certify that an element is real.
    """

    field: NumberField = dc_field(repr=False)
    center: tuple[Fraction, Fraction]
    radius: Fraction
    precision_bits: int = DEFAULT_PRECISION_BITS
    max_precision_bits: int = DEFAULT_MAX_PRECISION_BITS
    root_index: int = 0
    separation: Fraction = Fraction(0)
    conjugation: Optional[NFElem] = dc_field(default=None, repr=False)

    @classmethod
    def from_hint(cls, L: NumberField, hint: complex | Sequence, precision_bits: int = DEFAULT_PRECISION_BITS,
                  max_precision_bits: int = DEFAULT_MAX_PRECISION_BITS) -> "EmbeddingContext":
        if precision_bits <= 0 or max_precision_bits < precision_bits:
            raise InputError("need 0 < precision_bits <= max_precision_bits")
        if not isinstance(hint, complex):
            re_s, im_s = hint
            hint = complex(float(re_s), float(im_s))
        roots = _isolate_all(L.modulus)
        dists = [abs(complex(float(zr), float(zi)) - hint) for (zr, zi), _ in roots]
        idx = min(range(len(roots)), key=dists.__getitem__)
        sep = _min_separation(roots)
        (zr, zi), rad = roots[idx]
        ctx = cls(L, (zr, zi), rad, precision_bits, max_precision_bits, idx, sep)
        return ctx.with_precision(precision_bits)

    def with_precision(self, bits: int) -> "EmbeddingContext":
        if bits > self.max_precision_bits:
            raise PrecisionExhausted(f"requested {bits} bits exceeds cap {self.max_precision_bits}")
        (zr, zi), rad = _refine(self.field.modulus, self.root_index, bits)
        return replace(self, center=(zr, zi), radius=rad, precision_bits=bits)

    def with_conjugation(self, image: NFElem) -> "EmbeddingContext":
        return replace(self, conjugation=image)

    @property
    def root_box(self) -> ComplexBox:
        p = self.precision_bits + 4
        zr, zi = self.center
        return ComplexBox(RealInterval.around(zr, self.radius, p), RealInterval.around(zi, self.radius, p))

    def approx_root(self) -> complex:
        return complex(float(self.center[0]), float(self.center[1]))

    def is_real_root(self) -> bool:
        """Certified: the isolating disk meets the real axis and m is real,
        so the unique root inside equals its own conjugate."""
        return abs(self.center[1]) + self.radius < self.separation / 2


def _min_separation(roots) -> Fraction:
    best = None
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            (a, b), r1 = roots[i]
            (c, d), r2 = roots[j]
            lower = _sqrt_lower((a - c) ** 2 + (b - d) ** 2, 64) - r1 - r2
            best = lower if best is None else min(best, lower)
    return best if best is not None else Fraction(10**6)


@lru_cache(maxsize=512)
def _refine(modulus: tuple[Fraction, ...], idx: int, bits: int):
    roots = _isolate_all(modulus)
    (z0r, z0i), r0 = roots[idx]
    sep = _min_separation(roots)
    zr, zi = _newton(modulus, z0r, z0i, bits + 4)
    rad = _root_radius(modulus, zr, zi, bits + 4)
    drift = _sqrt_upper((zr - z0r) ** 2 + (zi - z0i) ** 2, bits + 8)
    if rad + drift + r0 >= sep:
        raise PrecisionExhausted("refinement drifted away from the designated root")
    return (zr, zi), rad


# ------------------------------------------------------------ operations


def embed(a: NFElem, ctx: EmbeddingContext) -> ComplexBox:
    """Box guaranteed to contain the image of ``a`` under the embedding."""
    if a.field != ctx.field:
        from .errors import FieldMismatchError

        raise FieldMismatchError("embedding context belongs to another field")
    p = ctx.precision_bits + 4
    r = ctx.root_box
    acc = ComplexBox.exact(Fraction(0), p)
    for c in reversed(a.coeffs):
        acc = acc * r + ComplexBox.exact(c, p)
    return acc


def sign_of(a: NFElem, ctx: EmbeddingContext) -> Sign:
    """Sign of a real element, escalating precision by doubling.

    Realness is certified exactly: the element must be fixed by the
    conjugation automorphism recorded in ``ctx`` (rationals always pass).
    """
    if a.is_zero():
        return Sign.ZERO
    if a.is_rational():
        return Sign.POS if a.num[0] > 0 else Sign.NEG
    if ctx.conjugation is None:
        raise DomainError("no conjugation recorded in the context; cannot certify realness")
    if a.substitute(ctx.conjugation) != a:
        raise DomainError(f"{a!r} is not fixed by complex conjugation")
    bits = ctx.precision_bits
    while True:
        box = embed(a, ctx)
        if not box.im.contains_zero():
            raise DomainError(f"{a!r} embeds off the real axis")
        if box.re.lo > 0:
            return Sign.POS
        if box.re.hi < 0:
            return Sign.NEG
        bits *= 2
        if bits > ctx.max_precision_bits:
            raise PrecisionExhausted(f"sign of {a!r} undecided at {ctx.max_precision_bits} bits")
        ctx = ctx.with_precision(bits)


def verify_alpha_is_conjugation(alpha_image: NFElem, ctx: EmbeddingContext) -> bool:
    """Does the automorphism x -> alpha_image act as complex conjugation?

    Both embed(alpha(x)) and conj(embed(x)) enclose roots of m.  Disjoint
    boxes certify different roots; overlapping boxes whose combined diameter
    is below the root separation certify the same root.
    """
    if ctx.field.evaluate_modulus(alpha_image):
        raise DomainError("alpha image is not a root of the minimal polynomial")
    bits = ctx.precision_bits
    while True:
        a = embed(alpha_image, ctx)
        c = ctx.root_box.conjugate()
        if not a.overlaps(c):
            return False
        if a.diameter + c.diameter < ctx.separation:
            return True
        bits *= 2
        if bits > ctx.max_precision_bits:
            raise PrecisionExhausted("conjugation check undecided at the precision cap")
        ctx = ctx.with_precision(bits)
