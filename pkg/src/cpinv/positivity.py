"""Positivity of tau at the ordering given by a complex embedding.

Two independent routes:

* the involution trace form T(z, w) = (Trd(tau(z) w) + Trd(tau(w) z)) / 2 on
  the Q-basis of B, whose signature is read from its exact characteristic
  polynomial;
* the transport matrix A with lambda(tau(b)) = A^-1 lambda(b)^* A, whose
  signature comes from the signs of its leading principal minors.

The theorem checkers at the bottom combine these with the tower data.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .crossed import AlgElem, CocycleTable
from .embedding import EmbeddingContext, Sign, sign_of, verify_alpha_is_conjugation
from .errors import InternalConsistencyError, StructuralError
from .galois import (Tower, apply, condition_commute, commute_violations, galois_group_over_k0,
                     minimal_polynomial, primitive_element, roots_in_subfield)
from .involution import Involution, build_tau, validate_involution
from .numfield import NFElem
from .reports import NOT_MET, Report


class Kind(str, enum.Enum):
    POS_DEF = "POS_DEF"
    NEG_DEF = "NEG_DEF"
    INDEFINITE = "INDEFINITE"
    DEGENERATE = "DEGENERATE"


@dataclass(frozen=True)
class Definiteness:
    kind: Kind
    signature: tuple[int, int]
    zeros: int = 0
    method: str = ""
    note: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "signature": list(self.signature), "zeros": self.zeros,
               "method": self.method}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric Gram matrix over k0 = Q of the trace form."""

    entries: list[list[Fraction]] = field(repr=False)
    labels: list[str]

    @property
    def size(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class TransportMatrix:
    A: list[list[NFElem]]
    hermitian_normalized: bool
    twist: str = "none"

    def to_json(self) -> dict:
        return {"A": [[e.to_strings() for e in row] for row in self.A],
                "hermitian_normalized": self.hermitian_normalized, "twist": self.twist}


# ------------------------------------------------------------- trace form


def trace_form_gram(tau: Involution, basis: Sequence[AlgElem] | None = None) -> GramMatrix:
    B = tau.algebra
    basis = B.q_basis() if basis is None else list(basis)
    images = [tau(b) for b in basis]
    size = len(basis)
    G = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            t1 = B.reduced_trace(B.mul(images[i], basis[j]))
            t2 = t1 if i == j else B.reduced_trace(B.mul(images[j], basis[i]))
            v = (t1 + t2) / 2
            if not v.is_rational():
                raise InternalConsistencyError(f"trace form entry ({i}, {j}) = {v!r} is not in k0")
            G[i][j] = G[j][i] = v.rational_value()
    labels = [repr(b) for b in basis]
    return GramMatrix(G, labels)


def _sign_variations(signs: Sequence[int]) -> int:
    s = [x for x in signs if x]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _real_rooted_signature(coeffs: Sequence, sign) -> tuple[int, int, int]:
    """(positive, negative, zero) root counts of a polynomial known to have
    only real roots; Descartes' rule is exact in that case."""
    z = next(i for i, c in enumerate(coeffs) if c)
    signs = [int(sign(c)) for c in coeffs]
    p = _sign_variations(signs)
    q = _sign_variations([s if i % 2 == 0 else -s for i, s in enumerate(signs)])
    if p + q + z != len(coeffs) - 1:
        raise InternalConsistencyError("characteristic polynomial is not real-rooted")
    return p, q, z


def _classify(p: int, q: int, z: int, method: str, note: str = "") -> Definiteness:
    if z:
        kind = Kind.DEGENERATE
    elif q == 0:
        kind = Kind.POS_DEF
    elif p == 0:
        kind = Kind.NEG_DEF
    else:
        kind = Kind.INDEFINITE
    return Definiteness(kind, (p, q), z, method, note)


def definiteness(gm: GramMatrix, ctx: EmbeddingContext | None = None) -> Definiteness:
    """Signature from the exact characteristic polynomial over k0 = Q."""
    cp = linalg.charpoly(gm.entries)

    def sign(c: Fraction) -> int:
        if ctx is None:
            return (c > 0) - (c < 0)
        return int(sign_of(ctx.field(c), ctx))

    p, q, z = _real_rooted_signature(cp, sign)
    return _classify(p, q, z, "trace-form")


def is_positive(tau: Involution, ctx: EmbeddingContext | None = None) -> bool:
    return definiteness(trace_form_gram(tau), ctx).kind is Kind.POS_DEF


# -------------------------------------------------------------- transport


def _alpha_adjoint(tau: Involution, M: list[list[NFElem]]) -> list[list[NFElem]]:
    a = tau.tower.alpha_auto
    return [[apply(a, M[j][i]) for j in range(len(M))] for i in range(len(M))]


def transport_hermitian(tau: Involution) -> TransportMatrix:
    """Solve A lambda(tau(g)) = lambda(g)^* A over L for the algebra
    generators g; the solution space must be a line."""
    B = tau.algebra
    L = B.L
    n = B.n
    gens = [B.scalar(L.gen)] + [B.gen(nm) for nm in B.names[1:]]
    rows = []
    for g in gens:
        M = B.regular_rep(tau(g))
        H = _alpha_adjoint(tau, B.regular_rep(g))
        for i in range(n):
            for j in range(n):
                row = [L.zero] * (n * n)
                for k in range(n):
                    # (A M)[i][j] - (H A)[i][j]
                    row[i * n + k] = row[i * n + k] + M[k][j]
                    row[k * n + j] = row[k * n + j] - H[i][k]
                if any(row):
                    rows.append(row)
    sol = linalg.nullspace(rows, n * n, L.zero, L.one)
    if len(sol) != 1:
        raise InternalConsistencyError(f"transport solution space has dimension {len(sol)} over L, expected 1")
    A = [sol[0][i * n:(i + 1) * n] for i in range(n)]
    H = _alpha_adjoint(tau, A)
    twist = "none"
    if H != A:
        neg = [[-e for e in row] for row in A]
        if H == neg:
            s = tau.tower.sqrt_md
            A = [[s * e for e in row] for row in A]
            twist = "sqrt(-d)"
        else:
            A = [[a + h for a, h in zip(ra, rh)] for ra, rh in zip(A, H)]
            twist = "A + A^*"
    if _alpha_adjoint(tau, A) != A:
        raise StructuralError("could not normalize the transport matrix to be Hermitian")
    # a nonzero diagonal entry is alpha-fixed, so dividing by it keeps A Hermitian
    piv = next((A[i][i] for i in range(n) if A[i][i]), None)
    if piv is not None:
        inv = piv.inverse()
        A = [[e * inv for e in row] for row in A]
    return TransportMatrix(A, True, twist)


def transport_definiteness(tm: TransportMatrix, ctx: EmbeddingContext, tau: Involution | None = None) -> Definiteness:
    """Signature of the Hermitian matrix A via Jacobi's rule on leading
    principal minors (which lie in the alpha-fixed subfield).

    With a tower whose d is negative, k is real and the split form is the
    exchange involution, whose trace form is hyperbolic; that case is
    reported as INDEFINITE with signature (n^2, n^2) on the trace-form scale.
    """
    A = tm.A
    n = len(A)
    if tau is not None:
        if sign_of(tau.tower.d, ctx) is Sign.NEG:
            return Definiteness(Kind.INDEFINITE, (n * n, n * n), 0, "transport",
                                "d < 0: k is real, tau splits as the exchange involution (hyperbolic)")
        if ctx.conjugation is None:
            ctx = ctx.with_conjugation(tau.tower.alpha_auto.image)
    minors = [linalg.det([row[:k] for row in A[:k]]) for k in range(1, n + 1)]
    if all(minors):
        signs = [1] + [int(sign_of(m, ctx)) for m in minors]
        q = _sign_variations(signs)
        res = _classify(n - q, q, 0, "transport")
    else:
        cp = linalg.charpoly(A)
        p, q, z = _real_rooted_signature(cp, lambda c: sign_of(c, ctx))
        res = _classify(p, q, z, "transport", "zero leading minor; used the characteristic polynomial")
    if res.kind is Kind.NEG_DEF:
        # A is only determined up to a real scalar
        res = Definiteness(Kind.POS_DEF, (n, 0), 0, "transport", "sign flipped: -A is positive definite")
    return res


def transport_to_trace_signature(sig: tuple[int, int]) -> tuple[int, int]:
    """Trace-form signature of tau when B (x) R = M_n(C) and tau is the adjoint
    for a Hermitian form of signature (p, q)."""
    p, q = sig
    return 2 * (p * p + q * q), 4 * p * q


def compare_methods(tau: Involution, ctx: EmbeddingContext) -> Report:
    rep = Report("positivity cross-check")
    t0 = time.perf_counter()
    tf = definiteness(trace_form_gram(tau), ctx)
    rep.timings["trace-form"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    tm = transport_hermitian(tau)
    tr = transport_definiteness(tm, ctx, tau)
    rep.timings["transport"] = time.perf_counter() - t0
    predicted = tr.signature if tr.note.startswith("d < 0") else transport_to_trace_signature(tr.signature)
    agree = predicted == tf.signature and (tf.kind is Kind.POS_DEF) == (tr.kind is Kind.POS_DEF)
    rep.add("trace-form and transport agree", agree,
            f"trace form {tf.kind.value} {tf.signature}, transport {tr.kind.value} {tr.signature} -> {predicted}",
            witness=None if agree else {"trace_form": tf.to_json(), "transport": tr.to_json()})
    rep.details.update({"trace_form": tf.to_json(), "transport": tr.to_json(), "A": tm.to_json()})
    return rep


# ------------------------------------------------------------ theorems


_EXISTENTIAL_NOTE = ("'B carries a positive unitary involution' is evaluated on the involution that "
                     "inverts the generators and restricts to alpha on L")


def _tau_or_none(t: Tower, c: CocycleTable) -> tuple[Involution | None, Report | None]:
    try:
        tau = build_tau(t, c)
    except StructuralError:
        return None, None
    return tau, validate_involution(tau)


def prop22_check(t: Tower, ctx: EmbeddingContext, cocycle: CocycleTable | None = None) -> Report:
    """is_positive(tau) implies d > 0 at the ordering."""
    rep = Report("prop22_check")
    tau, vr = _tau_or_none(t, cocycle or CocycleTable.trivial(t))
    if tau is None or not vr.ok:
        rep.status = NOT_MET
        rep.details["reason"] = "no validated unitary involution on this fixture"
        return rep
    d_sign = sign_of(t.d, ctx)
    pos = is_positive(tau, ctx)
    rep.add("is_positive => d in P", (not pos) or d_sign is Sign.POS,
            f"d sign {d_sign.name}, is_positive {pos}",
            witness=None if (not pos) or d_sign is Sign.POS else {"d": t.d.to_strings()})
    rep.details["instance"] = "direct" if pos else "contrapositive" if d_sign is not Sign.POS else "neither"
    rep.details["observation: d in P => built tau positive"] = (d_sign is not Sign.POS) or pos
    return rep


def prop23_check(tau: Involution, ctx: EmbeddingContext) -> Report:
    """For positive tau, L0 = Fix(alpha) is Galois over k0."""
    rep = Report("prop23_check")
    if not validate_involution(tau).ok or not is_positive(tau, ctx):
        rep.status = NOT_MET
        rep.details["reason"] = "tau is not a positive unitary involution"
        return rep
    t = tau.tower
    L0 = t.L0_basis
    a = primitive_element(L0)
    mp = minimal_polynomial(a)
    deg = len(mp) - 1
    rep.add("primitive element degree = [L0:k0]", deg == len(L0) // len(t.k0_basis),
            f"deg = {deg}, [L0:Q] = {len(L0)}")
    nroots = roots_in_subfield(mp, L0)
    rep.add("minimal polynomial splits in L0", nroots == deg, f"{nroots} of {deg} roots in L0",
            witness=None if nroots == deg else {"element": a.to_strings()})
    rep.details.update({"primitive element": repr(a), "minimal polynomial": [repr(c) for c in mp]})
    return rep


def cor24_check(tau: Involution, ctx: EmbeddingContext | None = None) -> Report:
    """alpha commutes with every automorphism of L over k0."""
    rep = Report("cor24_check")
    if ctx is not None and (not validate_involution(tau).ok or not is_positive(tau, ctx)):
        rep.status = NOT_MET
        rep.details["reason"] = "tau is not a positive unitary involution"
        return rep
    t = tau.tower
    group = galois_group_over_k0(t)
    bad = commute_violations(t, group)
    rep.add("alpha commutes with Aut(L/k0)", not bad, f"{len(group)} automorphisms", witness=bad or None)
    return rep


def iff_check(t: Tower, c: CocycleTable, ctx: EmbeddingContext) -> Report:
    """(tau validates and is positive) <=> alpha commutes with G."""
    rep = Report("iff_check")
    rep.details["note"] = _EXISTENTIAL_NOTE
    conj = verify_alpha_is_conjugation(t.alpha_auto.image, ctx)
    rhs = condition_commute(t)
    tau = build_tau(t, c)
    vr = validate_involution(tau)
    if vr.ok:
        lhs = is_positive(tau, ctx)
    else:
        lhs = False
        rep.details["involution witnesses"] = vr.witnesses
    rep.details.update({"LHS": lhs, "RHS": rhs})
    if not conj:
        rep.status = NOT_MET
        rep.details["reason"] = "alpha is not induced by complex conjugation at this embedding"
        return rep
    rep.add("LHS <=> RHS", lhs == rhs, f"LHS {lhs}, RHS {rhs}",
            witness=None if lhs == rhs else {"LHS": lhs, "RHS": rhs, "commute violations": commute_violations(t)})
    return rep
