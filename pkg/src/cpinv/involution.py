"""The unitary involution tau on B that inverts the generators and restricts to alpha on L."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import sympy

from . import linalg
from .crossed import AlgElem, CocycleTable, CrossedProduct, cocycle_unitary, cocycle_validate
from .errors import DomainError, InternalConsistencyError, NotInvertibleError, StructuralError
from .galois import Tower, apply, roots_in_field
from .numfield import NFElem, NumberField
from .reports import Report


@dataclass(frozen=True, eq=False)
class Involution:
    """tau(sum x_s e_s) = sum e_s^-1 alpha(x_s)."""

    algebra: CrossedProduct
    alpha: str
    gen_images: dict[str, AlgElem] = field(repr=False)

    @property
    def tower(self) -> Tower:
        return self.algebra.tower

    @cached_property
    def _alpha(self):
        return self.tower.auto(self.alpha)

    def __call__(self, a: AlgElem) -> AlgElem:
        B = self.algebra
        out = B.zero
        for i, x in enumerate(a.coeffs):
            if x:
                out = out + B.mul(self.gen_images[B.names[i]], B.scalar(apply(self._alpha, x)))
        return out

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "gen_images": {k: v.to_json() for k, v in self.gen_images.items()}}


def build_tau(t: Tower, c: CocycleTable) -> Involution:
    """Construct tau without checking the involution axioms."""
    if not cocycle_validate(t, c).ok:
        raise StructuralError("cocycle does not validate")
    if not cocycle_unitary(t, c):
        raise StructuralError("cocycle is not unitary: alpha(xi) * xi != 1 somewhere")
    B = CrossedProduct(t, c)
    images = {}
    for nm in B.names:
        try:
            images[nm] = B.inverse(B.gen(nm))
        except NotInvertibleError as exc:
            raise StructuralError(f"generator e_{nm} is not invertible") from exc
    return Involution(B, t.alpha, images)


def _violation(tag: str, a: AlgElem, b: AlgElem | None = None) -> dict:
    w = {"axiom": tag, "a": a.to_json()}
    if b is not None:
        w["b"] = b.to_json()
    return w


def validate_involution(tau: Involution) -> Report:
    """Exact checks of the involution axioms on the Q-basis {x^i e_s}."""
    rep = Report("validate_involution")
    B = tau.algebra
    basis = B.q_basis()
    images = [tau(b) for b in basis]

    anti = None
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if tau(B.mul(a, b)) != B.mul(images[j], images[i]):
                anti = _violation("anti-multiplicative", a, b)
                break
        if anti:
            break
    rep.add("anti-multiplicative", anti is None,
            "" if anti is None else f"tau(ab) != tau(b)tau(a) for a = {anti['a']}, b = {anti['b']}", witness=anti)

    invol = next((_violation("involutive", a) for a, ta in zip(basis, images) if tau(ta) != a), None)
    rep.add("involutive", invol is None, witness=invol)

    s = B.scalar(tau.tower.sqrt_md)
    rep.add("tau(sqrt(-d)) = -sqrt(-d)", tau(s) == -s)

    k0_bad = next((b.to_strings() for b in tau.tower.k0_basis if tau(B.scalar(b)) != B.scalar(b)), None)
    rep.add("tau fixes k0", k0_bad is None, witness=k0_bad)
    rep.details["pairs checked"] = len(basis) ** 2
    return rep


def replay_witness(tau: Involution, witness: dict) -> bool:
    """True when the recorded violation still reproduces."""
    B = tau.algebra
    a = B.element({k: B.L(v) for k, v in witness["a"].items()})
    if witness["axiom"] == "anti-multiplicative":
        b = B.element({k: B.L(v) for k, v in witness["b"].items()})
        return tau(B.mul(a, b)) != B.mul(tau(b), tau(a))
    if witness["axiom"] == "involutive":
        return tau(tau(a)) != a
    raise ValueError(f"unknown axiom {witness['axiom']!r}")


def _eigen_basis(tau: Involution, sign: int) -> list[AlgElem]:
    B = tau.algebra
    basis = B.q_basis()
    cols = []
    for k, b in enumerate(basis):
        v = B.to_q_vector(tau(b))
        v[k] -= sign
        cols.append(v)
    rows = [list(r) for r in zip(*cols)]
    kernel = linalg.nullspace(rows, len(basis), Fraction(0), Fraction(1))
    echelon, _ = linalg.rref(kernel) if kernel else ([], [])
    if len(echelon) != B.n ** 2:
        raise InternalConsistencyError(
            f"{'Sym' if sign == 1 else 'Skew'} has dimension {len(echelon)} over k0, expected {B.n ** 2}")
    return [B.from_q_vector(v) for v in echelon]


def symmetric_basis(tau: Involution) -> list[AlgElem]:
    """k0-basis of Sym(B, tau) = ker(tau - id)."""
    return _eigen_basis(tau, 1)


def skew_basis(tau: Involution) -> list[AlgElem]:
    """k0-basis of Skew(B, tau) = ker(tau + id)."""
    return _eigen_basis(tau, -1)


def is_unitary_element(tau: Involution, u: AlgElem) -> bool:
    return tau.algebra.mul(tau(u), u) == tau.algebra.one


def cayley(tau: Involution, s: AlgElem) -> AlgElem:
    """(1 - s)(1 + s)^-1 for a skew element s."""
    if tau(s) != -s:
        raise DomainError("Cayley transform needs a skew element (tau(s) = -s)")
    B = tau.algebra
    one = B.one
    try:
        inv = B.inverse(one + s)
    except NotInvertibleError as exc:
        raise NotInvertibleError("1 + s is singular") from exc
    return B.mul(one - s, inv)


def random_skew(tau: Involution, rng: random.Random, height: int, basis: Sequence[AlgElem] | None = None) -> AlgElem:
    """Random rational combination of the skew basis, numerators and
    denominators bounded by ``height``."""
    basis = skew_basis(tau) if basis is None else basis
    out = tau.algebra.zero
    for b in basis:
        q = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if q:
            out = out + b * q
    return out


def _phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


@lru_cache(maxsize=32)
def _roots_of_unity(L: NumberField) -> tuple[tuple[int, NFElem], ...]:
    N = L.degree
    X = sympy.Symbol("X")
    found: dict[NFElem, int] = {}
    for m in range(1, 2 * N * N + 3):
        if N % _phi(m):
            continue
        coeffs = [L(int(c)) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(m, X), X).all_coeffs())]
        for r in roots_in_field(L, coeffs):
            found.setdefault(r, m)
    return tuple(sorted(((m, r) for r, m in found.items()), key=lambda p: (p[0], p[1].num, p[1].den)))


def torsion_unitaries(tau: Involution) -> list[AlgElem]:
    """zeta * 1 for every root of unity zeta in L with alpha(zeta) zeta = 1,
    ordered by multiplicative order."""
    B = tau.algebra
    alpha = tau._alpha
    out = []
    for _, z in _roots_of_unity(B.L):
        if apply(alpha, z) * z == 1:
            u = B.scalar(z)
            if not is_unitary_element(tau, u):
                raise InternalConsistencyError(f"torsion element {z!r} is not unitary")
            out.append(u)
    return out
