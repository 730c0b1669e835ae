"""The field chain k0 = Q  <  k = Q(sqrt(-d))  <  L with its automorphisms.

L is a single absolute extension Q[x]/(m); every subfield is cut out as the
fixed field of a set of automorphisms.  An automorphism is stored as the
image of the generator x and acts on an element by substitution.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .errors import ClosureViolation, InputError, StructuralError
from .factor import factor_over_field
from .numfield import NFElem, NumberField
from .reports import Report


@dataclass(frozen=True, eq=False)
class Automorphism:
    name: str
    image: NFElem

    @cached_property
    def _matrix(self) -> tuple[list[tuple[int, ...]], int]:
        # column i holds image**i over a common denominator
        L = self.image.field
        powers = [L.one]
        for _ in range(L.degree - 1):
            powers.append(powers[-1] * self.image)
        den = 1
        for p in powers:
            den = den * p.den // math.gcd(den, p.den)
        cols = [tuple(v * (den // p.den) for v in p.num) for p in powers]
        return cols, den

    def __call__(self, a: NFElem) -> NFElem:
        return apply(self, a)

    def __eq__(self, other) -> bool:
        return isinstance(other, Automorphism) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return f"{self.name}: x -> {self.image!r}"


def apply(f: Automorphism, a: NFElem) -> NFElem:
    """f(a): evaluate a's polynomial at f.image, reduced."""
    L = f.image.field
    if a.field != L:
        from .errors import FieldMismatchError

        raise FieldMismatchError("automorphism and element belong to different fields")
    cols, den = f._matrix
    out = [0] * L.degree
    for ai, col in zip(a.num, cols):
        if ai:
            out = [o + ai * c for o, c in zip(out, col)]
    from .numfield import _normalize

    return NFElem._make(L, *_normalize(out, a.den * den))


def compose(f: Automorphism, g: Automorphism, tower: "Tower | None" = None) -> Automorphism:
    """x -> f(g(x)).  With a tower, the result is looked up among its autos."""
    image = apply(f, g.image)
    if tower is None:
        return Automorphism(f"{f.name}*{g.name}", image)
    found = tower.by_image(image)
    if found is None:
        raise ClosureViolation(f"{f.name}*{g.name} (x -> {image!r}) is not among the declared automorphisms")
    return found


def identity_automorphism(L: NumberField, name: str = "id") -> Automorphism:
    return Automorphism(name, L.gen)


@dataclass(frozen=True, eq=False)
class Tower:
    """k0 < k = k0(sqrt(-d)) < L with Aut data.

    ``G`` lists names of the Galois group of L/k (identity first after
    construction); ``alpha`` names the distinguished automorphism that
    plays complex conjugation.
    """

    field: NumberField
    sqrt_md: NFElem
    d: NFElem
    autos: tuple[Automorphism, ...]
    G: tuple[str, ...]
    alpha: str

    def __post_init__(self):
        names = [a.name for a in self.autos]
        if len(set(names)) != len(names):
            raise InputError("duplicate automorphism names")
        for g in list(self.G) + [self.alpha]:
            if g not in names:
                raise InputError(f"unknown automorphism name {g!r}")
        ident = [g for g in self.G if self.auto(g).image == self.field.gen]
        if ident:
            ordered = ident[:1] + [g for g in self.G if g != ident[0]]
            object.__setattr__(self, "G", tuple(ordered))

    @cached_property
    def _by_name(self) -> dict[str, Automorphism]:
        return {a.name: a for a in self.autos}

    @cached_property
    def _by_image(self) -> dict[NFElem, Automorphism]:
        return {a.image: a for a in reversed(self.autos)}

    def auto(self, name: str) -> Automorphism:
        return self._by_name[name]

    def by_image(self, image: NFElem) -> Automorphism | None:
        return self._by_image.get(image)

    @property
    def alpha_auto(self) -> Automorphism:
        return self.auto(self.alpha)

    @property
    def group(self) -> list[Automorphism]:
        return [self.auto(g) for g in self.G]

    @property
    def identity(self) -> Automorphism | None:
        return self.by_image(self.field.gen)

    @property
    def N(self) -> int:
        return self.field.degree

    @property
    def n(self) -> int:
        return len(self.G)

    def compose(self, f: Automorphism, g: Automorphism) -> Automorphism:
        return compose(f, g, self)

    def inverse_of(self, f: Automorphism) -> Automorphism:
        ident = self.field.gen
        for g in self.autos:
            if apply(f, g.image) == ident:
                return g
        raise ClosureViolation(f"{f.name} has no inverse among the declared automorphisms")

    @cached_property
    def L0_basis(self) -> list[NFElem]:
        return fixed_field_basis(self, [self.alpha_auto])

    @cached_property
    def k0_basis(self) -> list[NFElem]:
        return fixed_field_basis(self, self.group + [self.alpha_auto])

    @cached_property
    def k_basis(self) -> list[NFElem]:
        return fixed_field_basis(self, self.group)


# --------------------------------------------------------------- subfields


def _q_matrix(f: Automorphism) -> list[list[Fraction]]:
    cols, den = f._matrix
    N = len(cols)
    return [[Fraction(cols[j][i], den) for j in range(N)] for i in range(N)]


def fixed_field_basis(t: Tower | NumberField, S: Iterable[Automorphism]) -> list[NFElem]:
    """Q-basis of {a in L : f(a) = a for all f in S}, in reduced echelon form."""
    L = t.field if isinstance(t, Tower) else t
    N = L.degree
    rows = []
    for f in S:
        M = _q_matrix(f)
        for i in range(N):
            row = list(M[i])
            row[i] -= 1
            if any(row):
                rows.append(row)
    kernel = linalg.nullspace(rows, N, Fraction(0), Fraction(1))
    echelon, _ = linalg.rref(kernel) if kernel else ([], [])
    return [L.from_fractions(v) for v in echelon]


def coordinates_in(a: NFElem, basis: Sequence[NFElem]) -> list[Fraction] | None:
    """Rational coordinates of a in span(basis), or None when a is outside."""
    if not basis:
        return [] if a.is_zero() else None
    A = [[b.coeffs[i] for b in basis] for i in range(a.field.degree)]
    return linalg.solve(A, list(a.coeffs))


def in_subfield(a: NFElem, basis: Sequence[NFElem]) -> bool:
    return coordinates_in(a, basis) is not None


# -------------------------------------------------------------- validation


def _rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    a, b = q.numerator, q.denominator
    return math.isqrt(a) ** 2 == a and math.isqrt(b) ** 2 == b


def validate_tower(t: Tower) -> Report:
    rep = Report("validate_tower")
    L = t.field
    N = L.degree
    rep.add("degree even", N % 2 == 0, f"[L:Q] = {N}")

    for a in t.autos:
        residue = L.evaluate_modulus(a.image)
        rep.add(f"root check {a.name}", residue.is_zero(),
                "" if residue.is_zero() else f"m({a.image!r}) = {residue!r}",
                witness=None if residue.is_zero() else {"automorphism": a.name, "image": a.image.to_strings()})
    images = [a.image for a in t.autos]
    rep.add("distinct images", len(set(images)) == len(images))
    ident = t.identity
    rep.add("identity present", ident is not None)

    closure_ok, missing = True, []
    inverse_ok = True
    for f, g in itertools.product(t.autos, t.autos):
        if t.by_image(apply(f, g.image)) is None:
            closure_ok = False
            missing.append(f"{f.name}*{g.name}")
    rep.add("closure under composition", closure_ok, ", ".join(missing[:5]),
            witness=missing[:5] if missing else None)
    for f in t.autos:
        if not any(apply(f, g.image) == L.gen for g in t.autos):
            inverse_ok = False
            rep.add(f"inverse of {f.name}", False, "no inverse among the declared automorphisms", witness=f.name)
    if inverse_ok:
        rep.add("inverses", True)

    group = t.group
    sub_ok = all(t.by_image(apply(f, g.image)) is not None and t.by_image(apply(f, g.image)).name in t.G
                 for f in group for g in group)
    rep.add("G is a subgroup", sub_ok and ident is not None and ident.name in t.G)

    s, d = t.sqrt_md, t.d
    rep.add("sqrt(-d)^2 = -d", s * s == -d, f"({s!r})^2 = {(s * s)!r}")
    d_fixed = all(apply(a, d) == d for a in t.autos)
    rep.add("d in k0", d.is_rational() and d_fixed, f"d = {d!r}")
    if d.is_rational():
        dq = d.rational_value()
        rep.add("k/k0 quadratic", dq != 0 and not _rational_square(-dq), f"-d = {-dq}")
    rep.add("G fixes sqrt(-d)", all(apply(g, s) == s for g in group))

    alpha = t.alpha_auto
    rep.add("alpha(sqrt(-d)) = -sqrt(-d)", apply(alpha, s) == -s)
    rep.add("alpha^2 = id", apply(alpha, alpha.image) == L.gen)
    rep.add("|G| = [L:k]", 2 * len(group) == N, f"|G| = {len(group)}, [L:k] = {N // 2 if N % 2 == 0 else N / 2}")
    kdim = len(fixed_field_basis(t, group))
    rep.add("[Fix(G):Q] = [k:Q]", kdim == 2, f"dim Fix(G) = {kdim}")
    rep.details.update({"[L:Q]": N, "|G|": len(group), "[L:k]": N // 2, "|autos|": len(t.autos)})
    return rep


def condition_commute(t: Tower) -> bool:
    """alpha o sigma == sigma o alpha for every sigma in G."""
    return not commute_violations(t)


def commute_violations(t: Tower, among: Iterable[Automorphism] | None = None) -> list[dict]:
    alpha = t.alpha_auto
    out = []
    for g in (t.group if among is None else among):
        ag = apply(alpha, g.image)
        ga = apply(g, alpha.image)
        if ag != ga:
            out.append({"sigma": g.name, "alpha*sigma": ag.to_strings(), "sigma*alpha": ga.to_strings()})
    return out


# ------------------------------------------------------------- root finding


def roots_in_field(L: NumberField, poly: Sequence[NFElem]) -> list[NFElem]:
    """Roots in L (with multiplicity) of a polynomial with coefficients in L,
    constant term first.  Each root is re-checked exactly."""
    while poly and poly[-1].is_zero():
        poly = poly[:-1]
    if len(poly) < 2:
        return []
    _, facs = factor_over_field(L.modulus, [list(c.coeffs) for c in poly])
    roots = []
    for fac, mult in facs:
        if len(fac) == 2:
            r = -L.from_fractions(fac[0]) / L.from_fractions(fac[1])
            roots.extend([r] * mult)
    for r in roots:
        acc = L.zero
        for c in reversed(poly):
            acc = acc * r + c
        if acc:
            raise StructuralError("factorisation backend returned a non-root")
    return roots


def discover_automorphisms(L: NumberField) -> list[NFElem]:
    """Images of x under every automorphism of L (roots of m in L), sorted canonically."""
    m = [L(c) for c in L.modulus]
    roots = sorted(set(roots_in_field(L, m)), key=lambda r: (r != L.gen, r.num, r.den))
    return roots


def minimal_polynomial(a: NFElem, subfield: Sequence[NFElem] | None = None) -> list[NFElem]:
    """Monic minimal polynomial of a over the subfield spanned by ``subfield``
    (default Q), constant term first, found from the first linear dependency
    among powers of a."""
    L = a.field
    sub = list(subfield) if subfield else [L.one]
    powers = [L.one]
    for deg in range(1, L.degree + 1):
        powers.append(powers[-1] * a)
        cols = [s * powers[j] for j in range(deg) for s in sub]
        A = [[c.coeffs[i] for c in cols] for i in range(L.degree)]
        sol = linalg.solve(A, list(powers[deg].coeffs))
        if sol is not None:
            coeffs = []
            for j in range(deg):
                c = L.zero
                for k, s in enumerate(sub):
                    c = c + s * sol[j * len(sub) + k]
                coeffs.append(-c)
            return coeffs + [L.one]
    raise StructuralError("no annihilating polynomial found (not a field?)")


def roots_in_subfield(p: Sequence[NFElem], subfield: Sequence[NFElem]) -> int:
    """Number of roots of p (with multiplicity) lying in the subfield."""
    L = p[0].field
    return sum(1 for r in roots_in_field(L, list(p)) if in_subfield(r, subfield))


def primitive_element(basis: Sequence[NFElem], height: int = 3) -> NFElem:
    """A small-height combination of ``basis`` generating its span over Q."""
    from .errors import CpinvError

    target = len(basis)
    if target == 1:
        return basis[0]
    for b in basis:
        if len(minimal_polynomial(b)) - 1 == target:
            return b
    rng = range(-height, height + 1)
    for combo in itertools.product(rng, repeat=target):
        if not any(combo):
            continue
        a = sum((b * c for b, c in zip(basis, combo) if c), basis[0].field.zero)
        if len(minimal_polynomial(a)) - 1 == target:
            return a
    raise CpinvError(f"no primitive element of height <= {height}; raise the bound")


# ------------------------------------------------- lifting G to Aut(L/k0)


def decompose(t: Tower, a: NFElem) -> tuple[NFElem, NFElem]:
    """a = u + v*sqrt(-d) with u, v fixed by alpha."""
    alpha = t.alpha_auto
    s = t.sqrt_md
    aa = apply(alpha, a)
    u = (a + aa) / 2
    v = (a - aa) / (2 * s)
    if apply(alpha, u) != u or apply(alpha, v) != v or u + v * s != a:
        raise StructuralError("L is not L0(sqrt(-d)): decomposition failed")
    return u, v


def _linear_map_from_basis_images(L: NumberField, images: Sequence[NFElem]):
    def F(z: NFElem) -> NFElem:
        acc = L.zero
        for c, img in zip(z.coeffs, images):
            if c:
                acc = acc + img * c
        return acc

    return F


def lemma21_check(t: Tower) -> Report:
    """Build f' and f'' for every f in G, check that they are automorphisms
    fixing k0, and that |Aut(L/k0)| = [L:k0] = 2|G|."""
    rep = Report("lemma21_check")
    L = t.field
    s = t.sqrt_md
    try:
        parts = [decompose(t, b) for b in L.basis()]
    except StructuralError as exc:
        raise StructuralError(f"lemma21_check: {exc}") from exc
    rep.add("L = L0 + L0*sqrt(-d)", 2 * len(t.L0_basis) == L.degree, f"[L0:Q] = {len(t.L0_basis)}")

    built: dict[NFElem, str] = {}
    basis = L.basis()
    for f in t.group:
        for tag, sign in (("'", 1), ("''", -1)):
            images = [apply(f, u) + apply(f, v) * s * sign for u, v in parts]
            F = _linear_map_from_basis_images(L, images)
            mult_ok = all(F(basis[i] * basis[j]) == F(basis[i]) * F(basis[j])
                          for i in range(L.degree) for j in range(i, L.degree))
            fixes = all(F(b) == b for b in t.k0_basis)
            bij = linalg.rank([list(img.coeffs) for img in images]) == L.degree
            name = f"{f.name}{tag}"
            rep.add(f"{name} is a ring automorphism fixing k0", mult_ok and fixes and bij,
                    witness=None if (mult_ok and fixes and bij) else name)
            built.setdefault(F(L.gen), name)

    found = discover_automorphisms(L)
    k0_fixing = [r for r in found if all(_subst(b, r) == b for b in t.k0_basis)]
    N, k0dim = L.degree, len(t.k0_basis)
    degree_over_k0 = N // k0dim
    rep.add("|{f', f''}| = 2|G|", len(built) == 2 * t.n, f"{len(built)} distinct maps from |G| = {t.n}")
    rep.add("|Aut(L/k0)| = [L:k0]", len(k0_fixing) == degree_over_k0,
            f"{len(k0_fixing)} automorphisms found, [L:k0] = {degree_over_k0}")
    rep.add("constructed maps exhaust Aut(L/k0)", set(built) == set(k0_fixing))
    rep.details.update({"constructed": sorted(built.values()), "aut_count": len(k0_fixing),
                        "degree_over_k0": degree_over_k0})
    return rep


def _subst(b: NFElem, image: NFElem) -> NFElem:
    return b.substitute(image)


def galois_group_over_k0(t: Tower) -> list[Automorphism]:
    """All automorphisms of L fixing k0, named after the tower's autos where possible."""
    out = []
    for img in discover_automorphisms(t.field):
        if all(_subst(b, img) == b for b in t.k0_basis):
            known = t.by_image(img)
            out.append(known if known is not None else Automorphism(f"aut[{img!r}]", img))
    return out
