from fractions import Fraction

import mpmath
import pytest
from hypothesis import given

from cpinv.embedding import (ComplexBox, EmbeddingContext, RealInterval, Sign, embed, sign_of,
                             verify_alpha_is_conjugation)
from cpinv.errors import DomainError, InputError, PrecisionExhausted
from cpinv.numfield import NumberField

from .conftest import nf_elems
from .oracles import complex_root, evaluate

E8 = NumberField([1, 0, 0, 0, 1])
x = E8.gen
HINT = ("0.7071067811865476", "0.7071067811865476")


@pytest.fixture(scope="module")
def ctx():
    return EmbeddingContext.from_hint(E8, HINT).with_conjugation(x ** 7)


def near(box: ComplexBox, z, slack=Fraction(1, 10 ** 45)) -> bool:
    """The box, widened by slack, contains the high-precision reference value z."""
    with mpmath.workdps(60):
        zr = Fraction(mpmath.nstr(z.real, 55, min_fixed=-1000, max_fixed=1000, strip_zeros=False))
        zi = Fraction(mpmath.nstr(z.imag, 55, min_fixed=-1000, max_fixed=1000, strip_zeros=False))
    return (box.re.lower - slack <= zr <= box.re.upper + slack
            and box.im.lower - slack <= zi <= box.im.upper + slack)


def test_embed_rational_is_exact(ctx):
    b = embed(E8(Fraction(3, 2)), ctx)
    assert b.re.contains(Fraction(3, 2)) and b.im.contains(Fraction(0))
    assert b.re.width == 0


def test_embed_generator(ctx):
    ref = complex_root(E8.modulus, complex(0.7071, 0.7071))
    box = embed(x, ctx)
    assert near(box, ref)
    assert box.re.width < Fraction(1, 2 ** 100)


def test_embed_sqrt_minus_one(ctx):
    box = embed(x ** 2, ctx)
    assert box.re.contains_zero() and box.im.contains(Fraction(1))


def test_sign_examples(ctx):
    assert sign_of(E8.zero, ctx) is Sign.ZERO
    assert sign_of(E8(Fraction(-7, 3)), ctx) is Sign.NEG
    assert sign_of(x - x ** 3, ctx) is Sign.POS
    assert sign_of(x ** 3 - x, ctx) is Sign.NEG


def test_sign_rejects_non_real(ctx):
    with pytest.raises(DomainError):
        sign_of(x, ctx)
    bare = EmbeddingContext.from_hint(E8, HINT)
    with pytest.raises(DomainError):
        sign_of(x - x ** 3, bare)


def test_sign_precision_exhaustion():
    # sqrt(2) - 665857/470832 is about -1.6e-12: invisible at 16 bits
    L = NumberField([-2, 0, 1])
    c = EmbeddingContext.from_hint(L, ("1.41", "0"), 16, 32).with_conjugation(L.gen)
    with pytest.raises(PrecisionExhausted):
        sign_of(L.gen - Fraction(665857, 470832), c)
    wide = EmbeddingContext.from_hint(L, ("1.41", "0"), 16, 4096).with_conjugation(L.gen)
    assert sign_of(L.gen - Fraction(665857, 470832), wide) is Sign.NEG


def test_verify_alpha_examples(ctx):
    assert verify_alpha_is_conjugation(x ** 7, ctx) is True
    assert verify_alpha_is_conjugation(-x ** 3, ctx) is True
    assert verify_alpha_is_conjugation(x ** 5, ctx) is False
    assert verify_alpha_is_conjugation(x ** 3, ctx) is False
    L = NumberField([-2, 0, 1])
    real = EmbeddingContext.from_hint(L, ("1.414", "0"))
    assert real.is_real_root()
    assert verify_alpha_is_conjugation(L.gen, real) is True
    assert verify_alpha_is_conjugation(-L.gen, real) is False


def test_verify_alpha_rejects_non_root(ctx):
    with pytest.raises(DomainError):
        verify_alpha_is_conjugation(x + 1, ctx)


def test_bad_precision_settings():
    with pytest.raises(InputError):
        EmbeddingContext.from_hint(E8, HINT, 64, 32)
    c = EmbeddingContext.from_hint(E8, HINT, 64, 128)
    with pytest.raises(PrecisionExhausted):
        c.with_precision(256)


def test_hint_selects_nearest_root():
    for hint, ref in [(("-0.7", "0.7"), complex(-1, 1)), (("0.7", "-0.7"), complex(1, -1))]:
        c = EmbeddingContext.from_hint(E8, hint)
        z = c.approx_root()
        assert abs(z - ref / abs(ref)) < 1e-12


def test_interval_arithmetic():
    a = RealInterval.from_fraction(Fraction(1, 3), 20)
    assert a.contains(Fraction(1, 3))
    assert (a * a).contains(Fraction(1, 9))
    assert (a - a).contains_zero()
    assert RealInterval.around(Fraction(1), Fraction(1, 4), 10).contains(Fraction(5, 4))


@given(nf_elems(E8), nf_elems(E8))
def test_embed_is_a_homomorphism(a, b):
    c = EmbeddingContext.from_hint(E8, HINT)
    assert embed(a + b, c).overlaps(embed(a, c) + embed(b, c))
    assert embed(a * b, c).overlaps(embed(a, c) * embed(b, c))


@given(nf_elems(NumberField([1, -1, 0, 1, -1, 1, 0, -1, 1])))
def test_embed_matches_mpmath(a):
    L = a.field
    c = EmbeddingContext.from_hint(L, ("0.9135454576426009", "0.4067366430758002"))
    z = complex_root(L.modulus, complex(0.9135, 0.4067))
    assert near(embed(a, c), evaluate(a.coeffs, z))
