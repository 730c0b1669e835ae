"""Regenerate the bundled algebra-description fixtures.

Automorphisms are discovered as the roots of m in L.  sqrt(-d) is the root
of X^2 + d in L lying in the upper half plane (positive for d < 0) at the
hinted embedding, G is the set of automorphisms fixing it, and alpha is the
automorphism induced by complex conjugation (the nontrivial one on k when
the root is real).

    python3 tools/build_fixtures.py [outdir]
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import sympy

from cpinv.crossed import CocycleTable, cocycle_unitary, cocycle_validate
from cpinv.embedding import EmbeddingContext, embed, verify_alpha_is_conjugation
from cpinv.galois import Automorphism, Tower, discover_automorphisms, roots_in_field, validate_tower
from cpinv.io import description_from
from cpinv.numfield import NumberField

X = sympy.Symbol("x")


def _minpoly(expr) -> list[Fraction]:
    p = sympy.Poly(sympy.minimal_polynomial(expr, X), X)
    return [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]


def _tower(L: NumberField, d: int, hint, names: dict[str, str] | None = None):
    ctx = EmbeddingContext.from_hint(L, hint)
    roots = roots_in_field(L, [L(d), L.zero, L.one])
    if d > 0:
        s = next(r for r in roots if embed(r, ctx).im.lo > 0)
    else:
        s = next(r for r in roots if embed(r, ctx).re.lo > 0)
    images = discover_automorphisms(L)
    if ctx.is_real_root():
        alpha_img = next(img for img in images if s.substitute(img) == -s)
    else:
        alpha_img = next(img for img in images if verify_alpha_is_conjugation(img, ctx))
    names = dict(names or {})
    autos, G = [], []
    counter = 0
    for img in images:
        key = repr(img)
        if key in names:
            nm = names[key]
        elif img == L.gen:
            nm = "id"
        elif img == alpha_img:
            nm = "alpha"
        else:
            counter += 1
            nm = f"g{counter}"
        autos.append(Automorphism(nm, img))
        if s.substitute(img) == s:
            G.append(nm)
    alpha = next(a.name for a in autos if a.image == alpha_img)
    return Tower(L, s, L(d), tuple(autos), tuple(G), alpha)


def _power_names(L: NumberField, N: int) -> dict[str, str]:
    x = L.gen
    return {repr(x ** k): ("id" if k == 1 else f"p{k}") for k in range(1, N)}


def build_all() -> dict[str, tuple]:
    out = {}

    L = NumberField([1, 0, 1])
    t = _tower(L, 1, ("0", "1"))
    out["fix-triv"] = (t, CocycleTable.trivial(t), ("0", "1"),
                       "B = k = Q(i), G trivial; tau is complex conjugation")

    L = NumberField([-2, 0, 1])
    t = _tower(L, -2, ("1.4142135623730951", "0"), {"-x": "alpha"})
    out["fix-real"] = (t, CocycleTable.trivial(t), ("1.4142135623730951", "0"),
                       "k = Q(sqrt 2) is real (d = -2); alpha is not complex conjugation")

    L = NumberField([1, 0, 0, 0, 1])
    x = L.gen
    e8_names = {repr(x): "id", repr(-x): "sigma", repr(-x ** 3): "alpha", repr(x ** 3): "beta"}
    t = _tower(L, 1, ("0.7071067811865476", "0.7071067811865476"), e8_names)
    c = CocycleTable({("id", "id"): L.one, ("id", "sigma"): L.one, ("sigma", "id"): L.one,
                      ("sigma", "sigma"): x ** 2})
    hint = ("0.7071067811865476", "0.7071067811865476")
    out["fix-e8"] = (t, c, hint, "L = Q(zeta8), k = Q(i), xi(sigma,sigma) = i; this algebra is split")
    c = CocycleTable.cyclic(t, "sigma", L([Fraction(3, 5), 0, Fraction(4, 5)]))
    out["fix-e8-div"] = (t, c, hint, "as FIX-E8 with xi(sigma,sigma) = (3+4i)/5, a division algebra")

    cbrt2 = sympy.root(2, 3)
    L = NumberField(_minpoly(cbrt2 + sympy.sqrt(-3)))
    t = _tower(L, 3, ("1.2599210498948732", "1.7320508075688772"))
    out["fix-s3"] = (t, CocycleTable.trivial(t), ("1.2599210498948732", "1.7320508075688772"),
                     "L = Q(cbrt 2, sqrt -3), G = Gal(L/Q(sqrt -3)) cyclic of order 3; alpha does not commute with G")

    L = NumberField(_minpoly(sympy.root(2, 4) + sympy.I))
    t = _tower(L, 1, ("1.189207115002721", "1"))
    out["fix-d4"] = (t, CocycleTable.trivial(t), ("1.189207115002721", "1"),
                     "L = Q(2^(1/4), i), G = Gal(L/Q(i)) cyclic of order 4; alpha does not commute with G")

    L = NumberField([1, 0, 0, 0, 0, 0, 0, 0, 1])
    hint = ("0.9238795325112867", "0.3826834323650898")
    t = _tower(L, 1, hint, _power_names(L, 16))
    gamma = L([Fraction(3, 5), 0, 0, 0, Fraction(4, 5)])
    out["fix-c16"] = (t, CocycleTable.cyclic(t, "p5", gamma), hint,
                      "L = Q(zeta16), k = Q(i), cyclic cocycle with gamma = (3+4i)/5")

    L = NumberField([1, -1, 0, 1, -1, 1, 0, -1, 1])
    hint = ("0.9135454576426009", "0.4067366430758002")
    t = _tower(L, 3, hint, _power_names(L, 15))
    out["fix-c15"] = (t, CocycleTable.cyclic(t, "p7", L.gen ** 5), hint,
                      "L = Q(zeta15), k = Q(sqrt -3), cyclic cocycle with gamma = zeta3")
    return out


def main(argv: list[str]) -> int:
    outdir = Path(argv[1]) if len(argv) > 1 else Path(__file__).resolve().parents[1] / "src" / "cpinv" / "fixtures"
    outdir.mkdir(parents=True, exist_ok=True)
    for name, (t, c, hint, notes) in build_all().items():
        rep = validate_tower(t)
        crep = cocycle_validate(t, c)
        if not (rep.ok and crep.ok and cocycle_unitary(t, c)):
            raise SystemExit(f"{name}: generated data does not validate\n{rep.to_text()}\n{crep.to_text()}")
        desc = description_from(name.upper(), t, c, hint, notes=notes)
        (outdir / f"{name}.json").write_text(desc.dumps())
        print(f"{name}: [L:Q] = {t.N}, |G| = {t.n}, alpha = {t.alpha_auto.image!r}, sqrt(-d) = {t.sqrt_md!r}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
