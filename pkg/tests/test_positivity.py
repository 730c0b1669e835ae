from fractions import Fraction

import pytest

from cpinv.crossed import CocycleTable
from cpinv.embedding import EmbeddingContext
from cpinv.involution import build_tau
from cpinv.positivity import (GramMatrix, Kind, TransportMatrix, compare_methods, cor24_check, definiteness,
                              iff_check, is_positive, prop22_check, prop23_check, trace_form_gram,
                              transport_definiteness, transport_hermitian, transport_to_trace_signature)
from cpinv.reports import NOT_MET, PASS

from .conftest import ALL_FIXTURES, INVALID_TAU, VALID_TAU, algebra, tau_of
from .test_involution import hyperbolic_e8

F = Fraction


def test_gram_examples():
    assert trace_form_gram(tau_of("FIX-TRIV")).entries == [[1, 0], [0, 1]]
    assert trace_form_gram(tau_of("FIX-REAL")).entries == [[1, 0], [0, -2]]
    for name in ("FIX-E8", "FIX-C15"):
        tau = tau_of(name)
        gm = trace_form_gram(tau, [tau.algebra.one])
        assert gm.entries == [[tau.algebra.n]]


@pytest.mark.parametrize("name", VALID_TAU)
def test_gram_is_symmetric_and_rational(name):
    gm = trace_form_gram(tau_of(name))
    size = gm.size
    assert size == 2 * tau_of(name).algebra.n ** 2
    assert all(gm.entries[i][j] == gm.entries[j][i] for i in range(size) for j in range(size))


def test_definiteness_examples():
    d = definiteness(GramMatrix([[F(1), F(0)], [F(0), F(1)]], ["1", "i"]))
    assert d.kind is Kind.POS_DEF and d.signature == (2, 0)
    d = definiteness(GramMatrix([[F(1), F(0)], [F(0), F(-2)]], ["1", "r"]))
    assert d.kind is Kind.INDEFINITE and d.signature == (1, 1)
    d = definiteness(GramMatrix([[F(-1), F(0)], [F(0), F(-3)]], ["a", "b"]))
    assert d.kind is Kind.NEG_DEF
    d = definiteness(GramMatrix([[F(1), F(1)], [F(1), F(1)]], ["a", "b"]))
    assert d.kind is Kind.DEGENERATE and d.zeros == 1


def test_e8_trace_form_positive():
    tau = tau_of("FIX-E8")
    ctx = algebra("FIX-E8").ctx
    d = definiteness(trace_form_gram(tau), ctx)
    assert d.kind is Kind.POS_DEF and d.signature == (8, 0)


@pytest.mark.parametrize("name,expected", [("FIX-E8", True), ("FIX-REAL", False), ("FIX-TRIV", True),
                                           ("FIX-E8-DIV", True), ("FIX-C15", True)])
def test_is_positive_examples(name, expected):
    assert is_positive(tau_of(name), algebra(name).ctx) is expected


def test_transport_examples():
    L = algebra("FIX-TRIV").field
    tm = transport_hermitian(tau_of("FIX-TRIV"))
    assert tm.A == [[L.one]] and tm.hermitian_normalized
    tm = transport_hermitian(tau_of("FIX-REAL"))
    assert tm.A == [[algebra("FIX-REAL").field.one]]
    d = transport_definiteness(tm, algebra("FIX-REAL").ctx, tau_of("FIX-REAL"))
    assert d.kind is Kind.INDEFINITE


def test_transport_e8_is_hermitian_and_positive():
    tau = tau_of("FIX-E8")
    ctx = algebra("FIX-E8").ctx
    tm = transport_hermitian(tau)
    a = tau.tower.alpha_auto
    assert all(tm.A[i][j] == a(tm.A[j][i]) for i in range(2) for j in range(2))
    d = transport_definiteness(tm, ctx, tau)
    assert d.kind is Kind.POS_DEF and d.signature == (2, 0)


def test_transport_definiteness_examples():
    ctx = algebra("FIX-E8").ctx
    L = algebra("FIX-E8").field
    ident = TransportMatrix([[L.one, L.zero], [L.zero, L.one]], True)
    assert transport_definiteness(ident, ctx).kind is Kind.POS_DEF
    hyp = TransportMatrix([[L.one, L.zero], [L.zero, -L.one]], True)
    d = transport_definiteness(hyp, ctx)
    assert d.kind is Kind.INDEFINITE and d.signature == (1, 1)
    neg = TransportMatrix([[-L.one, L.zero], [L.zero, -L.one]], True)
    assert transport_definiteness(neg, ctx).kind is Kind.POS_DEF
    # zero leading minor: [[0, 1], [1, 0]] has signature (1, 1)
    swap = TransportMatrix([[L.zero, L.one], [L.one, L.zero]], True)
    d = transport_definiteness(swap, ctx)
    assert d.signature == (1, 1) and "characteristic polynomial" in d.note


def test_signature_map():
    assert transport_to_trace_signature((1, 0)) == (2, 0)
    assert transport_to_trace_signature((2, 0)) == (8, 0)
    assert transport_to_trace_signature((1, 1)) == (4, 4)


@pytest.mark.parametrize("name", VALID_TAU)
def test_methods_agree(name):
    rep = compare_methods(tau_of(name), algebra(name).ctx)
    assert rep.ok, rep.to_text()


def test_methods_agree_on_hyperbolic_tau():
    tau = hyperbolic_e8()
    ctx = EmbeddingContext.from_hint(tau.algebra.L, ("0.7071067811865476", "0.7071067811865476"))
    ctx = ctx.with_conjugation(tau.algebra.L.gen ** 7)
    rep = compare_methods(tau, ctx)
    assert rep.ok
    assert rep.details["trace_form"]["signature"] == [4, 4]
    assert not is_positive(tau, ctx)


def test_positivity_invariant_under_unitary_rescaling():
    a = algebra("FIX-E8-DIV")
    L = a.field
    u = L([F(3, 5), 0, F(-4, 5)])
    scaled = CocycleTable({k: v * u for k, v in a.cocycle.entries.items()})
    tau = build_tau(a.tower, scaled)
    assert tau.algebra.rescaling == u
    assert is_positive(tau, a.ctx) == is_positive(tau_of("FIX-E8-DIV"), a.ctx) is True


def test_prop22_examples():
    for name, instance in (("FIX-E8", "direct"), ("FIX-REAL", "contrapositive")):
        a = algebra(name)
        rep = prop22_check(a.tower, a.ctx, a.cocycle)
        assert rep.status == PASS and rep.details["instance"] == instance


def test_prop22_not_met_without_valid_tau():
    a = algebra("FIX-S3")
    assert prop22_check(a.tower, a.ctx, a.cocycle).status == NOT_MET


def test_prop23_examples():
    rep = prop23_check(tau_of("FIX-E8"), algebra("FIX-E8").ctx)
    assert rep.status == PASS
    assert rep.details["minimal polynomial"] == ["-2", "0", "1"]
    assert prop23_check(tau_of("FIX-REAL"), algebra("FIX-REAL").ctx).status == NOT_MET


def test_cor24_examples():
    assert cor24_check(tau_of("FIX-E8"), algebra("FIX-E8").ctx).status == PASS
    assert cor24_check(tau_of("FIX-TRIV"), algebra("FIX-TRIV").ctx).status == PASS
    assert cor24_check(tau_of("FIX-S3"), algebra("FIX-S3").ctx).status == NOT_MET


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_iff(name):
    a = algebra(name)
    rep = iff_check(a.tower, a.cocycle, a.ctx)
    if name == "FIX-REAL":
        assert rep.status == NOT_MET
        assert rep.details["LHS"] is False and rep.details["RHS"] is True
        return
    assert rep.status == PASS
    expected = name in VALID_TAU
    assert rep.details["LHS"] is expected and rep.details["RHS"] is expected
    if name in INVALID_TAU:
        assert rep.details["involution witnesses"]


@pytest.mark.parametrize("name", ["FIX-E8", "FIX-C16", "FIX-C15"])
def test_theorem_checkers_pass_on_positive_fixtures(name):
    a = algebra(name)
    tau = tau_of(name)
    assert prop23_check(tau, a.ctx).status == PASS
    assert cor24_check(tau, a.ctx).status == PASS
