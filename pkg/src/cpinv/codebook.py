"""Finite unitary codebooks in (B, tau): generation, exact diversity, export."""

from __future__ import annotations

import csv
import io as _io
import json
import math
import random
import warnings
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Sequence

from sympy import integer_nthroot

from . import linalg
from .crossed import AlgElem
from .embedding import ComplexBox, EmbeddingContext, RealInterval, embed
from .errors import NotInvertibleError, ParameterError, PrecisionExhausted, StructuralError
from .involution import Involution, cayley, is_unitary_element, random_skew, skew_basis, torsion_unitaries
from .numfield import NFElem

STRATEGIES = ("products", "cayley", "mixed")


@dataclass
class Codebook:
    """Pairwise distinct unitary elements of (B, tau)."""

    tau: Involution = field(repr=False)
    codewords: list[AlgElem] = field(repr=False)
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for k, u in enumerate(self.codewords):
            if u in seen:
                raise StructuralError(f"codeword {k} is a duplicate")
            seen.add(u)
            if not is_unitary_element(self.tau, u):
                raise StructuralError(f"codeword {k} is not unitary: tau(u) u != 1")

    def __len__(self) -> int:
        return len(self.codewords)

    @property
    def n(self) -> int:
        return self.tau.algebra.n


@dataclass(frozen=True)
class DiversityReport:
    fully_diverse: bool
    diversity_product: RealInterval | None
    pairs_checked: int
    zero_pairs: list[tuple[int, int]]
    minimizing_pair: tuple[int, int] | None = None

    def to_json(self) -> dict:
        dp = self.diversity_product
        return {
            "fully_diverse": self.fully_diverse,
            "diversity_product": None if dp is None else [str(float(dp.lower)), str(float(dp.upper))],
            "pairs_checked": self.pairs_checked,
            "zero_pairs": [list(p) for p in self.zero_pairs],
            "minimizing_pair": None if self.minimizing_pair is None else list(self.minimizing_pair),
        }


# -------------------------------------------------------------- generation


class _Collector:
    def __init__(self, limit: int):
        self.limit = limit
        self.items: list[AlgElem] = []
        self._seen: set[AlgElem] = set()

    def add(self, u: AlgElem) -> bool:
        if len(self.items) >= self.limit or u in self._seen:
            return False
        self._seen.add(u)
        self.items.append(u)
        return True

    @property
    def full(self) -> bool:
        return len(self.items) >= self.limit


def _products(tau: Involution, out: _Collector) -> None:
    B = tau.algebra
    gens = [B.gen(nm) for nm in B.names[1:]] + torsion_unitaries(tau)
    out.add(B.one)
    for g in gens:
        out.add(g)
    i = 0
    # breadth-first: right-multiply every word by every generator, in order
    while not out.full and i < len(out.items):
        w = out.items[i]
        for g in gens:
            out.add(B.mul(w, g))
            if out.full:
                break
        i += 1


def _cayley(tau: Involution, out: _Collector, height: int, seed: int) -> None:
    B = tau.algebra
    rng = random.Random(seed)
    basis = skew_basis(tau)
    out.add(cayley(tau, B.zero))
    attempts = 0
    while not out.full and attempts < 50 * out.limit:
        attempts += 1
        s = random_skew(tau, rng, height, basis)
        try:
            out.add(cayley(tau, s))
        except NotInvertibleError:
            continue


def generate(tau: Involution, strategy: str = "products", size_limit: int = 32, height_bound: int = 8,
             seed: int = 0, ctx: EmbeddingContext | None = None) -> Codebook:
    """Deterministic in (strategy, size_limit, height_bound, seed)."""
    if strategy not in STRATEGIES:
        raise ParameterError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")
    if size_limit < 2:
        raise ParameterError("size_limit must be at least 2")
    if height_bound < 1:
        raise ParameterError("height_bound must be at least 1")
    meta: dict[str, Any] = {"strategy": strategy, "size_limit": size_limit, "height_bound": height_bound,
                            "seed": seed, "normalization": "regular representation, no 1/sqrt(n) scaling"}
    if ctx is not None:
        from .positivity import is_positive

        if not is_positive(tau, ctx):
            meta["warning"] = "tau is not positive at this embedding"
            warnings.warn(meta["warning"], stacklevel=2)
    out = _Collector(size_limit)
    if strategy == "products":
        _products(tau, out)
    elif strategy == "cayley":
        _cayley(tau, out, height_bound, seed)
    else:
        half = _Collector(size_limit - size_limit // 2)
        _products(tau, half)
        for u in half.items:
            out.add(u)
        _cayley(tau, out, height_bound, seed)
    return Codebook(tau, out.items, meta)


# ---------------------------------------------------------------- diversity


def _root_interval(iv: RealInterval, k: int) -> RealInterval:
    """Outward-rounded enclosure of t^(1/k) for t in iv (t >= 0)."""
    p = iv.prec
    lo = max(iv.lower, Fraction(0)) * (1 << (k * p))
    hi = iv.upper * (1 << (k * p))
    r_lo, _ = integer_nthroot(lo.numerator // lo.denominator, k)
    hi_int = -((-hi.numerator) // hi.denominator)
    r_hi, exact = integer_nthroot(hi_int, k)
    return RealInterval(int(r_lo), int(r_hi) + (0 if exact else 1), p)


def pair_determinant(cb: Codebook, i: int, j: int) -> NFElem:
    B = cb.tau.algebra
    return linalg.det(B.regular_rep(cb.codewords[i] - cb.codewords[j]))


def diversity(cb: Codebook, ctx: EmbeddingContext | None = None) -> DiversityReport:
    """Exact pairwise determinants; the diversity product min |det|^(1/n)
    is enclosed in an interval when an embedding is supplied."""
    if len(cb) < 2:
        raise ParameterError("diversity needs at least two codewords")
    zero_pairs = []
    best: RealInterval | None = None
    best_pair = None
    count = 0
    for i in range(len(cb)):
        for j in range(i + 1, len(cb)):
            count += 1
            dt = pair_determinant(cb, i, j)
            if not dt:
                zero_pairs.append((i, j))
                continue
            if ctx is not None:
                root = _root_interval(embed(dt, ctx).abs2(), 2 * cb.n)
                if best is None:
                    best, best_pair = root, (i, j)
                else:
                    if root.lower < best.lower:
                        best_pair = (i, j)
                    # the minimum of enclosed values lies between the minima of the endpoints
                    best = RealInterval(min(best.lo, root.lo), min(best.hi, root.hi), root.prec)
    if zero_pairs:
        best, best_pair = None, None
    return DiversityReport(not zero_pairs, best, count, zero_pairs, best_pair)


# ------------------------------------------------------------------ matrices


def _embed_matrix(M: Sequence[Sequence[NFElem]], ctx: EmbeddingContext) -> list[list[ComplexBox]]:
    return [[embed(e, ctx) for e in row] for row in M]


def unitarity_residual(M: Sequence[Sequence[ComplexBox]]) -> Fraction:
    """Upper bound on max |(M^* M - I)_ij| over the boxes."""
    n = len(M)
    p = M[0][0].prec
    worst = Fraction(0)
    for i in range(n):
        for j in range(n):
            acc = ComplexBox.exact(Fraction(-1 if i == j else 0), p)
            for k in range(n):
                acc = acc + M[k][i].conjugate() * M[k][j]
            worst = max(worst, acc.magnitude())
    return worst


def to_matrices(cb: Codebook, ctx: EmbeddingContext) -> list[list[list[ComplexBox]]]:
    """Embedded regular representations, with certified unitarity residual
    below 2^-(precision_bits/2); precision is doubled until that holds."""
    B = cb.tau.algebra
    exact = [B.regular_rep(u) for u in cb.codewords]
    while True:
        mats = [_embed_matrix(M, ctx) for M in exact]
        bound = Fraction(1, 1 << (ctx.precision_bits // 2))
        if all(unitarity_residual(M) < bound for M in mats):
            return mats
        bits = ctx.precision_bits * 2
        if bits > ctx.max_precision_bits:
            raise PrecisionExhausted("unitarity residual not certified at the precision cap")
        ctx = ctx.with_precision(bits)


# ------------------------------------------------------------------- export


def _decimal(q: Fraction, digits: int) -> str:
    with localcontext() as dctx:
        dctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def export(cb: Codebook, ctx: EmbeddingContext, report: DiversityReport | None = None,
           field_description: dict | None = None) -> dict:
    """JSON-ready dict; decimal strings carry about precision_bits of accuracy."""
    mats = to_matrices(cb, ctx)
    digits = max(1, math.floor(ctx.precision_bits * math.log10(2)))
    L = cb.tau.algebra.L
    return {
        "n": cb.n,
        "field_description": field_description or {
            "min_poly": [str(c) for c in L.modulus],
            "root": [_decimal(ctx.center[0], digits), _decimal(ctx.center[1], digits)],
        },
        "codewords": [[[_decimal(b.re.mid, digits), _decimal(b.im.mid, digits)] for row in M for b in row]
                      for M in mats],
        "exact": [u.to_json() for u in cb.codewords],
        "metadata": {**cb.metadata, "precision_bits": ctx.precision_bits, "count": len(cb),
                     **({"diversity": report.to_json()} if report is not None else {})},
    }


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def to_csv(data: dict) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["codeword", "row", "col", "re", "im"])
    n = data["n"]
    for k, entries in enumerate(data["codewords"]):
        for idx, (re, im) in enumerate(entries):
            w.writerow([k, idx // n, idx % n, re, im])
    return buf.getvalue()


def load_codewords(tau: Involution, data: dict) -> Codebook:
    """Rebuild a codebook from the exact section of an export."""
    B = tau.algebra
    words = [B.element({k: B.L([Fraction(s) for s in v]) for k, v in w.items()}) for w in data["exact"]]
    return Codebook(tau, words, dict(data.get("metadata", {})))
