"""Bridge to sympy for exact factorisation.

Only two things are delegated: irreducibility of a rational polynomial and
factoring a polynomial over L = Q[x]/(m) (Trager's algorithm in sympy).
Everything sympy returns is converted back and re-verified with our own
arithmetic by the callers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy
from sympy import QQ, CRootOf, Poly


_X = sympy.Symbol("x")
_Y = sympy.Symbol("Y")


def _qq(c: Fraction):
    return QQ(c.numerator, c.denominator)


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def is_irreducible_over_q(coeffs: Sequence[Fraction]) -> bool:
    """``coeffs`` is constant-term first."""
    if len(coeffs) < 2:
        return False
    p = Poly([_qq(Fraction(c)) for c in reversed(coeffs)], _X, domain=QQ)
    return bool(p.is_irreducible)


@lru_cache(maxsize=64)
def _algebraic_field(modulus: tuple[Fraction, ...]):
    expr = sum(sympy.Rational(c.numerator, c.denominator) * _X**i for i, c in enumerate(modulus))
    K = QQ.algebraic_field(CRootOf(Poly(expr, _X), 0))
    # our generator x must be sympy's primitive element, otherwise the
    # coordinates returned below would refer to a different basis
    if [_frac(c) for c in K.mod.to_list()] != list(reversed(modulus)):
        raise RuntimeError("sympy chose a different primitive element")
    return K


def factor_over_field(modulus: tuple[Fraction, ...], poly: Sequence[Sequence[Fraction]]):
    """Factor ``poly`` over Q[x]/(modulus).

    ``poly`` lists its coefficients constant-term first; each coefficient is
    itself the constant-first coordinate vector of a field element.  Returns
    ``(lead, [(factor, multiplicity), ...])`` in the same encoding, factors monic.
    """
    K = _algebraic_field(tuple(modulus))
    dense = [K.new([_qq(c) for c in reversed(coeff)]) for coeff in reversed(poly)]
    p = Poly(dense, _Y, domain=K)
    # stay at the domain level: Poly.factor_list() would round-trip through
    # symbolic expressions, which is very slow for algebraic coefficients
    lead, facs = p.rep.factor_list()
    out = []
    for f, mult in facs:
        cs = f.monic().to_list()
        out.append(([_anp_coords(K, c, len(modulus) - 1) for c in reversed(cs)], mult))
    return _anp_coords(K, lead, len(modulus) - 1), out


def _anp_coords(K, c, degree: int) -> list[Fraction]:
    vals = [_frac(v) for v in reversed(c.to_list())]
    return vals + [Fraction(0)] * (degree - len(vals))
