"""Algebra-description files: JSON with rationals as strings.

A field element literal is a list of rational strings, constant term first,
in the power basis of Q[x]/(m); a bare rational string is also accepted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path
from typing import Any

from .crossed import CocycleTable
from .embedding import (DEFAULT_MAX_PRECISION_BITS, DEFAULT_PRECISION_BITS, EmbeddingContext,
                        verify_alpha_is_conjugation)
from .errors import InputError
from .galois import Automorphism, Tower
from .numfield import NFElem, NumberField, parse_rat

_FIELDS = ("name", "min_poly", "sqrt_minus_d", "d", "automorphisms", "group_G", "alpha", "cocycle",
           "embedding_hint", "precision")


@dataclass(frozen=True)
class AlgebraDescription:
    name: str
    min_poly: list[str]
    sqrt_minus_d: list[str]
    d: str
    automorphisms: dict[str, list[str]]
    group_G: list[str]
    alpha: str
    cocycle: dict[str, list[str]]
    embedding_hint: list[str]
    precision: dict[str, int]
    notes: str = ""

    def to_dict(self) -> dict[str, Any]:
        out = {k: getattr(self, k) for k in _FIELDS}
        if self.notes:
            out["notes"] = self.notes
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _literal(value: Any, where: str) -> list[str]:
    if isinstance(value, str):
        value = [value]
    if not isinstance(value, list) or not value or not all(isinstance(v, str) for v in value):
        raise InputError(f"{where}: expected a list of rational strings")
    for v in value:
        parse_rat(v)
    return list(value)


def parse_description(data: Any) -> AlgebraDescription:
    """Validate the JSON structure and every rational literal; no mathematics yet."""
    if not isinstance(data, dict):
        raise InputError("algebra description must be a JSON object")
    missing = [k for k in _FIELDS if k not in data and k != "name"]
    if missing:
        raise InputError(f"missing fields: {', '.join(missing)}")
    mp = _literal(data["min_poly"], "min_poly")
    if len(mp) < 3:
        raise InputError("min_poly must have degree at least 2")
    autos = data["automorphisms"]
    if not isinstance(autos, dict) or not autos:
        raise InputError("automorphisms must be a non-empty object")
    autos = {str(k): _literal(v, f"automorphisms[{k}]") for k, v in autos.items()}
    G = data["group_G"]
    if not isinstance(G, list) or not G or not all(isinstance(g, str) for g in G):
        raise InputError("group_G must be a list of names")
    unknown = [g for g in G + [data["alpha"]] if g not in autos]
    if unknown:
        raise InputError(f"undefined automorphism names: {unknown}")
    if len(set(G)) != len(G):
        raise InputError("group_G has repeated names")
    coc = data["cocycle"]
    if not isinstance(coc, dict):
        raise InputError("cocycle must be an object keyed by 'sigma,rho'")
    keys = set()
    for k in coc:
        parts = k.split(",")
        if len(parts) != 2 or not all(p.strip() in G for p in parts):
            raise InputError(f"cocycle key {k!r} is not a pair of names from group_G")
        keys.add(tuple(p.strip() for p in parts))
    if keys != {(a, b) for a in G for b in G}:
        raise InputError("cocycle must cover exactly G x G")
    hint = data["embedding_hint"]
    if not isinstance(hint, list) or len(hint) != 2:
        raise InputError("embedding_hint must be [re, im]")
    try:
        [float(h) for h in hint]
    except (TypeError, ValueError) as exc:
        raise InputError(f"embedding_hint: {exc}") from exc
    prec = data["precision"]
    if not isinstance(prec, dict) or not {"default_bits", "max_bits"} <= set(prec):
        raise InputError("precision must have default_bits and max_bits")
    if not all(isinstance(prec[k], int) and prec[k] > 0 for k in ("default_bits", "max_bits")):
        raise InputError("precision bits must be positive integers")
    if prec["max_bits"] < prec["default_bits"]:
        raise InputError("precision.max_bits is below default_bits")
    d = data["d"]
    if not isinstance(d, str):
        raise InputError("d must be a rational string")
    parse_rat(d)
    return AlgebraDescription(
        name=str(data.get("name", "")), min_poly=mp,
        sqrt_minus_d=_literal(data["sqrt_minus_d"], "sqrt_minus_d"), d=d, automorphisms=autos,
        group_G=list(G), alpha=data["alpha"],
        cocycle={k: _literal(v, f"cocycle[{k}]") for k, v in coc.items()},
        embedding_hint=[str(h) for h in hint],
        precision={"default_bits": prec["default_bits"], "max_bits": prec["max_bits"]},
        notes=str(data.get("notes", "")))


def loads(text: str) -> AlgebraDescription:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return parse_description(data)


def fixture_names() -> list[str]:
    root = resources.files("cpinv") / "fixtures"
    return sorted(p.name[:-5].upper() for p in root.iterdir() if p.name.endswith(".json"))


def load(source: str | Path) -> AlgebraDescription:
    """Read a description from a path, or from a bundled fixture name such as FIX-E8."""
    path = Path(source)
    if path.is_file():
        try:
            return loads(path.read_text())
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
    key = str(source).lower()
    if not key.startswith("fix-"):
        key = "fix-" + key
    res = resources.files("cpinv") / "fixtures" / f"{key}.json"
    if res.is_file():
        return loads(res.read_text())
    raise InputError(f"no such file or bundled fixture: {source}")


@dataclass(frozen=True)
class Algebra:
    """Everything derived from a description: field, tower, cocycle, embedding."""

    description: AlgebraDescription
    field: NumberField = dc_field(repr=False)
    tower: Tower = dc_field(repr=False)
    cocycle: CocycleTable = dc_field(repr=False)
    ctx: EmbeddingContext = dc_field(repr=False)
    alpha_is_conjugation: bool = False


def _elem(L: NumberField, lit: list[str], where: str) -> NFElem:
    if len(lit) > L.degree:
        raise InputError(f"{where}: {len(lit)} coefficients for a degree-{L.degree} field")
    return L([parse_rat(v) for v in lit])


def build(desc: AlgebraDescription, precision_bits: int | None = None, max_precision_bits: int | None = None) -> Algebra:
    mp = [parse_rat(c) for c in desc.min_poly]
    if mp[-1] != 1:
        raise InputError("min_poly must be monic")
    try:
        L = NumberField(mp)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    autos = tuple(Automorphism(nm, _elem(L, lit, f"automorphisms[{nm}]")) for nm, lit in desc.automorphisms.items())
    tower = Tower(L, _elem(L, desc.sqrt_minus_d, "sqrt_minus_d"), L(parse_rat(desc.d)), autos,
                  tuple(desc.group_G), desc.alpha)
    coc = CocycleTable({tuple(p.strip() for p in k.split(",")): _elem(L, v, f"cocycle[{k}]")
                        for k, v in desc.cocycle.items()})
    bits = precision_bits or desc.precision.get("default_bits", DEFAULT_PRECISION_BITS)
    cap = max_precision_bits or desc.precision.get("max_bits", DEFAULT_MAX_PRECISION_BITS)
    cap = max(cap, bits)
    ctx = EmbeddingContext.from_hint(L, desc.embedding_hint, bits, cap)
    is_conj = False
    if ctx.is_real_root():
        ctx = ctx.with_conjugation(L.gen)
        is_conj = tower.alpha_auto.image == L.gen
    elif L.evaluate_modulus(tower.alpha_auto.image).is_zero() and verify_alpha_is_conjugation(tower.alpha_auto.image, ctx):
        ctx = ctx.with_conjugation(tower.alpha_auto.image)
        is_conj = True
    else:
        for a in autos:
            if L.evaluate_modulus(a.image).is_zero() and verify_alpha_is_conjugation(a.image, ctx):
                ctx = ctx.with_conjugation(a.image)
                break
    return Algebra(desc, L, tower, coc, ctx, is_conj)


def description_from(name: str, tower: Tower, cocycle: CocycleTable, hint: tuple[str, str],
                     precision: dict[str, int] | None = None, notes: str = "") -> AlgebraDescription:
    """Serialize in-memory data back to a description."""
    L = tower.field
    return AlgebraDescription(
        name=name, min_poly=[_fmt(c) for c in L.modulus], sqrt_minus_d=tower.sqrt_md.to_strings(),
        d=_fmt(tower.d.rational_value()),
        automorphisms={a.name: a.image.to_strings() for a in tower.autos},
        group_G=list(tower.G), alpha=tower.alpha,
        cocycle={f"{s},{r}": cocycle[s, r].to_strings() for s in tower.G for r in tower.G},
        embedding_hint=list(hint),
        precision=precision or {"default_bits": DEFAULT_PRECISION_BITS, "max_bits": DEFAULT_MAX_PRECISION_BITS},
        notes=notes)


def _fmt(q) -> str:
    from .numfield import format_rat

    return format_rat(q)
