
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpinv import linalg
from cpinv.crossed import (CocycleTable, CrossedProduct, cocycle_unitary, cocycle_validate, inverse, is_invertible,
                           mul, reduced_trace, regular_rep)
from cpinv.errors import NotInvertibleError
from cpinv.galois import apply

from .conftest import ALL_FIXTURES, algebra, alg_elems
from .oracles import CrossedOracle


def e8():
    a = algebra("FIX-E8")
    return a.tower, a.cocycle, CrossedProduct(a.tower, a.cocycle)


def oracle_for(B: CrossedProduct) -> CrossedOracle:
    t = B.tower
    return CrossedOracle(t.field.modulus, {a.name: list(a.image.coeffs) for a in t.autos}, B.names,
                         {(s, r): list(B.xi[i][j].coeffs) for i, s in enumerate(B.names)
                          for j, r in enumerate(B.names)})


def as_dict(a):
    return {nm: list(c.coeffs) for nm, c in zip(a.alg.names, a.coeffs)}


def test_cocycle_validate_examples():
    t, c, _ = e8()
    assert cocycle_validate(t, CocycleTable.trivial(t)).ok
    rep = cocycle_validate(t, c)
    assert rep.ok and rep.details["normalized"]
    L = t.field
    zero = CocycleTable({**c.entries, ("sigma", "sigma"): L.zero})
    assert "entries nonzero" in {i.name for i in cocycle_validate(t, zero).failures()}


def test_cocycle_validate_catches_broken_identity():
    t, c, _ = e8()
    x = t.field.gen
    # xi[sigma,sigma] must be fixed by sigma for n = 2; x is not
    bad = CocycleTable({**c.entries, ("sigma", "sigma"): x})
    rep = cocycle_validate(t, bad)
    assert "2-cocycle identity" in {i.name for i in rep.failures()}


def test_cocycle_unitary_examples():
    t, c, _ = e8()
    assert cocycle_unitary(t, CocycleTable.trivial(t))
    assert cocycle_unitary(t, c)
    assert not cocycle_unitary(t, CocycleTable({**c.entries, ("sigma", "sigma"): t.field(2)}))


def test_mul_examples():
    t, _, B = e8()
    x = t.field.gen
    b = B.element({"id": x + 3, "sigma": x ** 3})
    assert mul(B.one, b) == b == mul(b, B.one)
    es = B.gen("sigma")
    assert mul(es, es) == B.scalar(x ** 2)
    assert mul(es, B.scalar(x)) == B.element({"sigma": x ** 5})


def test_regular_rep_examples():
    t, _, B = e8()
    L = t.field
    x = L.gen
    assert regular_rep(B.one) == [[L.one, L.zero], [L.zero, L.one]]
    assert regular_rep(B.gen("sigma")) == [[L.zero, x ** 2], [L.one, L.zero]]
    assert regular_rep(B.scalar(x)) == [[x, L.zero], [L.zero, x ** 5]]


def test_reduced_trace_examples():
    t, _, B = e8()
    x = t.field.gen
    assert reduced_trace(B.one) == 2
    assert reduced_trace(B.gen("sigma")) == 0
    assert reduced_trace(B.scalar(x)) == x + x ** 5


def test_inverse_examples():
    t, _, B = e8()
    x = t.field.gen
    assert inverse(B.one) == B.one
    assert inverse(B.gen("sigma")) == B.element({"sigma": -x ** 2})
    with pytest.raises(NotInvertibleError):
        inverse(B.zero)


def test_zero_divisor_in_split_algebra():
    # FIX-E8 is split: u = zeta8 e_sigma squares to 1, so 1 - u is a zero divisor
    t, _, B = e8()
    u = B.element({"sigma": t.field.gen})
    assert mul(u, u) == B.one
    assert not is_invertible(B.one - u)
    with pytest.raises(NotInvertibleError):
        inverse(B.one - u)


def test_rescaling_normalizes_unit():
    t, c, _ = e8()
    L = t.field
    scaled = CocycleTable({k: v * 3 for k, v in c.entries.items()})
    assert cocycle_validate(t, scaled).ok
    B = CrossedProduct(t, scaled)
    assert B.rescaling == L(3)
    b = B.element({"id": L.gen, "sigma": L.gen ** 2 + 1})
    assert mul(B.one, b) == b == mul(b, B.one)
    # rescaled xi[s, r] = xi[s, r] * 3 / s(3)
    assert B.xi[1][1] == c["sigma", "sigma"]


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_center_is_k(name):
    a = algebra(name)
    assert CrossedProduct(a.tower, a.cocycle).center_dimension_over_k() == 1


@pytest.mark.parametrize("name", ["FIX-E8", "FIX-S3", "FIX-C16"])
def test_mul_matches_oracle(name):
    a = algebra(name)
    B = CrossedProduct(a.tower, a.cocycle)
    orc = oracle_for(B)

    @given(alg_elems(B), alg_elems(B))
    def check(p, q):
        assert as_dict(mul(p, q)) == orc.mul(as_dict(p), as_dict(q))

    check()


@pytest.mark.parametrize("name", ["FIX-E8-DIV", "FIX-S3"])
def test_algebra_laws(name):
    a = algebra(name)
    B = CrossedProduct(a.tower, a.cocycle)

    @given(alg_elems(B), alg_elems(B), alg_elems(B))
    def check(p, q, r):
        assert mul(mul(p, q), r) == mul(p, mul(q, r))
        assert mul(p, q + r) == mul(p, q) + mul(p, r)
        assert regular_rep(mul(p, q)) == linalg.matmul(regular_rep(p), regular_rep(q))
        assert reduced_trace(mul(p, q)) == reduced_trace(mul(q, p))
        assert reduced_trace(p + q) == reduced_trace(p) + reduced_trace(q)
        tr = reduced_trace(p)
        assert all(apply(g, tr) == tr for g in a.tower.group)

    check()


@given(alg_elems(CrossedProduct(algebra("FIX-E8-DIV").tower, algebra("FIX-E8-DIV").cocycle)))
def test_division_algebra_inverse(p):
    B = p.alg
    if p.is_zero():
        return
    q = inverse(p)
    assert mul(p, q) == B.one == mul(q, p)


@given(st.sampled_from(ALL_FIXTURES), st.data())
def test_q_vector_round_trip(name, data):
    a = algebra(name)
    B = CrossedProduct(a.tower, a.cocycle)
    p = data.draw(alg_elems(B))
    assert B.from_q_vector(B.to_q_vector(p)) == p
    assert len(B.q_basis()) == B.q_dim
