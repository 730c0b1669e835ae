"""The crossed product B = (xi, L/k, G).

B has L-basis {e_s : s in G} with  e_s * y = s(y) e_s  and
e_s * e_r = xi[s, r] e_{sr}.  Elements are stored with coefficients on the
left of the generators, sum_s x_s e_s.  For the regular representation B is
viewed as a right L-space with basis {e_s}; left multiplication is then
right-L-linear and gives an n x n matrix over L.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from . import linalg
from .errors import InputError, InternalConsistencyError, NotInvertibleError, StructuralError
from .galois import Automorphism, Tower, apply
from .numfield import NFElem
from .reports import Report


@dataclass(frozen=True)
class CocycleTable:
    """xi as a map (s-name, r-name) -> nonzero element of L."""

    entries: Mapping[tuple[str, str], NFElem]

    def __getitem__(self, key: tuple[str, str]) -> NFElem:
        return self.entries[key]

    @classmethod
    def trivial(cls, t: Tower) -> "CocycleTable":
        return cls({(s, r): t.field.one for s in t.G for r in t.G})

    @classmethod
    def cyclic(cls, t: Tower, generator: str, gamma: NFElem) -> "CocycleTable":
        """Cocycle of the cyclic algebra (L/k, s, gamma): xi[s^a, s^b] is
        gamma when a + b >= n and 1 otherwise."""
        s = t.auto(generator)
        powers = [t.identity]
        for _ in range(t.n - 1):
            powers.append(t.compose(s, powers[-1]))
        if len({p.image for p in powers}) != t.n or {p.name for p in powers} != set(t.G):
            raise InputError(f"{generator} does not generate G")
        n = t.n
        return cls({(powers[a].name, powers[b].name): (gamma if a + b >= n else t.field.one)
                    for a in range(n) for b in range(n)})


def cocycle_validate(t: Tower, c: CocycleTable) -> Report:
    rep = Report("cocycle_validate")
    G = t.group
    missing = [(s.name, r.name) for s in G for r in G if (s.name, r.name) not in c.entries]
    extra = [k for k in c.entries if k[0] not in t.G or k[1] not in t.G]
    rep.add("covers G x G", not missing and not extra,
            f"missing {missing[:4]} extra {extra[:4]}" if missing or extra else "")
    if missing:
        return rep
    zeros = [k for k, v in c.entries.items() if v.is_zero()]
    rep.add("entries nonzero", not zeros, witness=[list(z) for z in zeros] or None)
    one_name = t.G[0]
    u = c[one_name, one_name]
    normalized = all(c[one_name, s.name] == u and c[s.name, one_name] == u for s in G)
    rep.details["normalized"] = normalized
    if not normalized:
        rep.details["rescaling"] = f"e_s -> ({u!r})^-1 e_s makes xi[id,id] = 1"
    bad = []
    for s, r, q in itertools.product(G, G, G):
        rq = t.compose(r, q)
        sr = t.compose(s, r)
        lhs = apply(s, c[r.name, q.name]) * c[s.name, rq.name]
        rhs = c[s.name, r.name] * c[sr.name, q.name]
        if lhs != rhs:
            bad.append([s.name, r.name, q.name])
    rep.add("2-cocycle identity", not bad, f"{len(bad)} of {len(G) ** 3} triples fail" if bad else
            f"{len(G) ** 3} triples", witness=bad[:3] or None)
    return rep


def cocycle_unitary(t: Tower, c: CocycleTable) -> bool:
    """alpha(xi[s, r]) * xi[s, r] == 1 for all pairs."""
    alpha = t.alpha_auto
    return all(apply(alpha, v) * v == 1 for v in c.entries.values())


Scalar = Union[int, Fraction, NFElem]


class AlgElem:
    """sum_s coeffs[s] e_s, indexed by the algebra's ordering of G."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: "CrossedProduct", coeffs: Sequence[NFElem]):
        if len(coeffs) != alg.n:
            raise StructuralError("coefficient count does not match |G|")
        self.alg = alg
        self.coeffs = tuple(coeffs)

    def _check(self, other: "AlgElem") -> None:
        if other.alg is not self.alg and other.alg != self.alg:
            raise StructuralError("elements of different algebras")

    def __add__(self, other):
        other = self.alg.coerce(other)
        self._check(other)
        return AlgElem(self.alg, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.alg, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self.alg.coerce(other))

    def __rsub__(self, other):
        return self.alg.coerce(other) - self

    def __mul__(self, other):
        return self.alg.mul(self, self.alg.coerce(other))

    def __rmul__(self, other):
        return self.alg.mul(self.alg.coerce(other), self)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, NFElem)):
            other = self.alg.coerce(other)
        return isinstance(other, AlgElem) and self.coeffs == other.coeffs and other.alg == self.alg

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def terms(self) -> dict[str, NFElem]:
        return {self.alg.names[i]: c for i, c in enumerate(self.coeffs) if c}

    def to_json(self) -> dict[str, list[str]]:
        return {self.alg.names[i]: c.to_strings() for i, c in enumerate(self.coeffs)}

    def __repr__(self) -> str:
        parts = [f"({c!r})*e_{self.alg.names[i]}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) or "0"


class CrossedProduct:
    """B = (xi, L/k, G) for a validated tower and 2-cocycle.

    A cocycle with xi[id, id] != 1 is rescaled (e_s -> xi[id,id]^-1 e_s);
    the rescaling factor is kept in ``rescaling`` and ``cocycle`` holds the
    normalized table, so the unit of B is e_id.
    """

    def __init__(self, tower: Tower, cocycle: CocycleTable):
        if tower.identity is None or tower.G[0] != tower.identity.name:
            raise StructuralError("G must contain the identity")
        self.tower = tower
        self.L = tower.field
        self.group: list[Automorphism] = tower.group
        self.names: list[str] = list(tower.G)
        self.n = len(self.group)
        self.index = {name: i for i, name in enumerate(self.names)}
        self.prod = [[self.index[tower.compose(s, r).name] for r in self.group] for s in self.group]
        self.inv = [self.index[tower.inverse_of(s).name] for s in self.group]
        xi = [[cocycle[s, r] for r in self.names] for s in self.names]
        u = xi[0][0]
        self.rescaling = None if u == 1 else u
        if self.rescaling is not None:
            xi = [[row[j] / apply(s, u) for j in range(self.n)] for s, row in zip(self.group, xi)]
            cocycle = CocycleTable({(a, b): xi[i][j] for i, a in enumerate(self.names)
                                    for j, b in enumerate(self.names)})
        self.cocycle = cocycle
        self.xi = xi

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (isinstance(other, CrossedProduct) and self.tower is other.tower
                and self.names == other.names and self.xi == other.xi)

    def __hash__(self) -> int:
        return hash((id(self.tower), tuple(self.names)))

    # construction ---------------------------------------------------

    def coerce(self, value) -> AlgElem:
        if isinstance(value, AlgElem):
            return value
        if isinstance(value, (int, Fraction, NFElem)):
            return self.scalar(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into the algebra")

    def element(self, coeffs: Mapping[str, Scalar] | Sequence[Scalar]) -> AlgElem:
        if isinstance(coeffs, Mapping):
            unknown = set(coeffs) - set(self.names)
            if unknown:
                raise InputError(f"unknown generators {sorted(unknown)}")
            vals = [self.L(coeffs.get(nm, 0)) if not isinstance(coeffs.get(nm, 0), NFElem)
                    else coeffs[nm] for nm in self.names]
        else:
            vals = [c if isinstance(c, NFElem) else self.L(c) for c in coeffs]
        return AlgElem(self, vals)

    @property
    def zero(self) -> AlgElem:
        return AlgElem(self, [self.L.zero] * self.n)

    @property
    def one(self) -> AlgElem:
        return self.scalar(self.L.one)

    def scalar(self, y: Scalar) -> AlgElem:
        y = y if isinstance(y, NFElem) else self.L(y)
        return AlgElem(self, [y] + [self.L.zero] * (self.n - 1))

    def gen(self, name: str) -> AlgElem:
        c = [self.L.zero] * self.n
        c[self.index[name]] = self.L.one
        return AlgElem(self, c)

    def gens(self) -> list[AlgElem]:
        return [self.gen(nm) for nm in self.names]

    @property
    def q_dim(self) -> int:
        return self.L.degree * self.n

    def q_basis(self) -> list[AlgElem]:
        """Q-basis {x^i e_s}, grouped by s."""
        out = []
        for nm in self.names:
            for b in self.L.basis():
                out.append(AlgElem(self, [b if j == self.index[nm] else self.L.zero for j in range(self.n)]))
        return out

    def to_q_vector(self, a: AlgElem) -> list[Fraction]:
        return [q for c in a.coeffs for q in c.coeffs]

    def from_q_vector(self, v: Sequence[Fraction]) -> AlgElem:
        N = self.L.degree
        return AlgElem(self, [self.L.from_fractions(list(v[i * N:(i + 1) * N])) for i in range(self.n)])

    # arithmetic -----------------------------------------------------

    def mul(self, a: AlgElem, b: AlgElem) -> AlgElem:
        """(x e_s)(y e_r) = x s(y) xi[s,r] e_{sr}, extended bilinearly."""
        a._check(b)
        out = [self.L.zero] * self.n
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            s = self.group[i]
            for j, y in enumerate(b.coeffs):
                if not y:
                    continue
                k = self.prod[i][j]
                out[k] = out[k] + x * apply(s, y) * self.xi[i][j]
        return AlgElem(self, out)

    def regular_rep(self, b: AlgElem) -> list[list[NFElem]]:
        """Matrix of z -> b z on B as a right L-space with basis (e_s).

        Column r holds the right coordinates of b e_r; the right coordinate
        of x e_p is p^-1(x) because x e_p = e_p p^-1(x).
        """
        M = [[self.L.zero] * self.n for _ in range(self.n)]
        for k, x in enumerate(b.coeffs):
            if not x:
                continue
            for r in range(self.n):
                row = self.prod[k][r]
                M[row][r] = apply(self.group[self.inv[row]], x * self.xi[k][r])
        return M

    def from_right_coords(self, c: Sequence[NFElem]) -> AlgElem:
        return AlgElem(self, [apply(self.group[p], c[p]) for p in range(self.n)])

    def reduced_trace(self, b: AlgElem) -> NFElem:
        """Trace of the regular representation; lies in k."""
        x = b.coeffs[0]
        tr = self.L.zero
        for r in range(self.n):
            # diagonal entry (r, r) of the regular representation comes from e_id only
            tr = tr + apply(self.group[self.inv[r]], x * self.xi[0][r])
        if any(apply(g, tr) != tr for g in self.group):
            raise InternalConsistencyError(f"reduced trace {tr!r} is not in k")
        return tr

    def reduced_norm(self, b: AlgElem) -> NFElem:
        return linalg.det(self.regular_rep(b))

    def is_invertible(self, b: AlgElem) -> bool:
        return bool(self.reduced_norm(b))

    def inverse(self, b: AlgElem) -> AlgElem:
        if b.is_zero():
            raise NotInvertibleError("zero is not invertible")
        M = self.regular_rep(b)
        rhs = [self.L.one] + [self.L.zero] * (self.n - 1)
        c = linalg.solve(M, rhs)
        if c is None or not self.is_invertible(b):
            raise NotInvertibleError(f"{b!r} is a zero divisor")
        return self.from_right_coords(c)

    def center_dimension_over_k(self) -> int:
        """dim_k of {z : z g = g z for all algebra generators g}."""
        gens = [self.scalar(self.L.gen)] + [self.gen(nm) for nm in self.names[1:]]
        basis = self.q_basis()
        rows: list[list[Fraction]] = []
        for g in gens:
            cols = [self.to_q_vector(self.mul(z, g) - self.mul(g, z)) for z in basis]
            rows.extend([list(r) for r in zip(*cols)])
        kernel = linalg.nullspace(rows, len(basis), Fraction(0), Fraction(1))
        return len(kernel) // 2


def mul(a: AlgElem, b: AlgElem) -> AlgElem:
    return a.alg.mul(a, b)


def regular_rep(b: AlgElem) -> list[list[NFElem]]:
    return b.alg.regular_rep(b)


def reduced_trace(b: AlgElem) -> NFElem:
    return b.alg.reduced_trace(b)


def is_invertible(b: AlgElem) -> bool:
    return b.alg.is_invertible(b)


def inverse(b: AlgElem) -> AlgElem:
    return b.alg.inverse(b)
