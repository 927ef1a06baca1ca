"""The Coxeter complex of type A_n with an exact spherical realization.

Vertices are the proper nonempty subsets S of {1..n+1}; chambers are maximal
chains of such subsets.  Vertex S is realized by the integer vector

    u_S = (n+1) e_S - |S| * (1, ..., 1)

which lies in the sum-zero hyperplane.  Every comparison of an angle with
pi/2 is then the sign of an integer inner product.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .complex import SimplicialComplex

MAX_RANK = 5


class SizeBoundError(ValueError):
    """Raised when a construction would exceed its configured size bound."""


class Sign(enum.IntEnum):
    NEG = -1
    ZERO = 0
    POS = 1


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def sign(x) -> Sign:
    return Sign((x > 0) - (x < 0))


def subset_label(S: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(S)) + "}"


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class CoxeterDatum:
    """Type A_n: the symmetric group on n+1 letters."""

    n: int
    family: str = "A"

    @property
    def order(self) -> int:
        return math.factorial(self.n + 1)

    @property
    def generators(self) -> list[tuple[int, ...]]:
        """Adjacent transpositions s_1..s_n in one-line notation (1-based values)."""
        gens = []
        for i in range(self.n):
            w = list(range(1, self.n + 2))
            w[i], w[i + 1] = w[i + 1], w[i]
            gens.append(tuple(w))
        return gens

    @property
    def longest_element(self) -> tuple[int, ...]:
        return tuple(range(self.n + 1, 0, -1))


def perm_length(w: Sequence[int]) -> int:
    """Number of inversions; equals the Coxeter length for type A."""
    return sum(1 for i, j in combinations(range(len(w)), 2) if w[i] > w[j])


def perm_inverse(w: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(w)
    for i, wi in enumerate(w, start=1):
        inv[wi - 1] = i
    return tuple(inv)


def perm_compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """(a o b)(i) = a(b(i))."""
    return tuple(a[bi - 1] for bi in b)


class CoxeterComplex:
    """The A_n Coxeter complex together with its integer realization."""

    def __init__(self, n: int, bound: int = MAX_RANK):
        if n < 1:
            raise ValueError("rank must be positive")
        if n > bound:
            raise SizeBoundError(f"A_{n} exceeds the configured rank bound {bound}")
        self.n = n
        self.datum = CoxeterDatum(n)
        N = n + 1
        subsets = [frozenset(c) for k in range(1, N) for c in combinations(range(1, N + 1), k)]
        self.subsets: tuple[frozenset, ...] = tuple(subsets)
        self.vid: dict[frozenset, int] = {S: i for i, S in enumerate(subsets)}
        facets = []
        for perm in permutations(range(1, N + 1)):
            facets.append(frozenset(self.vid[frozenset(perm[:k])] for k in range(1, N)))
        self.complex = SimplicialComplex(
            facets,
            {i: len(S) for i, S in enumerate(subsets)},
            {i: subset_label(S) for i, S in enumerate(subsets)},
            range(1, N),
        )

    def __repr__(self) -> str:
        return f"CoxeterComplex(A_{self.n})"

    def subset(self, v: int) -> frozenset:
        return self.subsets[v]

    def vector(self, S: Iterable[int]) -> tuple[int, ...]:
        S = frozenset(S)
        N = self.n + 1
        return tuple(N * (i in S) - len(S) for i in range(1, N + 1))

    @cached_property
    def vectors(self) -> dict[int, tuple[int, ...]]:
        return {v: self.vector(S) for v, S in enumerate(self.subsets)}

    def gram(self, S: frozenset, T: frozenset) -> int:
        """<u_S, u_T> divided by the positive constant n+1."""
        N = self.n + 1
        return N * len(S & T) - len(S) * len(T)

    def chamber_of_perm(self, perm: Sequence[int]) -> frozenset:
        return frozenset(self.vid[frozenset(perm[:k])] for k in range(1, self.n + 1))

    def perm_of_chamber(self, C: Iterable[int]) -> tuple[int, ...]:
        chain = sorted((self.subsets[v] for v in C), key=len)
        if len(chain) != self.n:
            raise ValueError("not a chamber")
        perm = []
        prev: frozenset = frozenset()
        for S in chain + [frozenset(range(1, self.n + 2))]:
            (new,) = S - prev
            perm.append(new)
            prev = S
        return tuple(perm)

    # -- roots ---------------------------------------------------------------
    def roots(self) -> list[tuple[int, int]]:
        N = self.n + 1
        return [(i, j) for i in range(1, N + 1) for j in range(1, N + 1) if i != j]

    @staticmethod
    def in_root(S: frozenset, root: tuple[int, int]) -> bool:
        i, j = root
        return i in S or j not in S

    def root_vertices(self, root: tuple[int, int]) -> frozenset:
        return frozenset(v for v, S in enumerate(self.subsets) if self.in_root(S, root))

    def root_complex(self, root: tuple[int, int]) -> SimplicialComplex:
        return self.complex.full_subcomplex(self.root_vertices(root))

    def wall_vertices(self, root: tuple[int, int]) -> frozenset:
        i, j = root
        return frozenset(v for v, S in enumerate(self.subsets) if (i in S) == (j in S))

    def conv(self, M: Iterable[Iterable[int]]) -> SimplicialComplex:
        """Intersection of all roots containing every simplex of M."""
        verts = set()
        for s in M:
            verts.update(s)
        if not verts:
            raise ValueError("conv needs a nonempty simplex")
        keep = set(range(len(self.subsets)))
        for r in self.roots():
            if all(self.in_root(self.subsets[v], r) for v in verts):
                keep &= self.root_vertices(r)
        return self.complex.full_subcomplex(keep)

    # -- opposition -------------------------------------------------------------
    def opposite_vertex(self, v: int) -> int:
        return self.vid[frozenset(range(1, self.n + 2)) - self.subsets[v]]

    def opposition(self, sigma: Iterable[int]) -> frozenset:
        return frozenset(self.opposite_vertex(v) for v in sigma)

    # -- points -----------------------------------------------------------------
    def point(self, weights: dict[int, Fraction | int | str]) -> "RationalPoint":
        return RationalPoint.make(self, weights)

    def vertex_point(self, v: int) -> "RationalPoint":
        return RationalPoint.make(self, {v: 1})

    def barycenter(self, sigma: Iterable[int]) -> "RationalPoint":
        sigma = sorted(sigma)
        return RationalPoint.make(self, {v: Fraction(1, len(sigma)) for v in sigma})


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in vec:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    g = g or 1
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class RationalPoint:
    """A point with positive rational barycentric weights on a carrier simplex.

    ``direction`` is the primitive integer vector on the ray of
    sum(w_v * u_v); all metric predicates only need the direction.
    """

    n: int
    carrier: frozenset
    weights: tuple[tuple[int, Fraction], ...]
    direction: tuple[int, ...]

    @classmethod
    def make(cls, cx: CoxeterComplex, weights: dict) -> "RationalPoint":
        ws = {int(v): Fraction(w) for v, w in weights.items()}
        if not ws or any(w <= 0 for w in ws.values()):
            raise ValueError("weights must be positive")
        total = sum(ws.values())
        ws = {v: w / total for v, w in ws.items()}
        carrier = frozenset(ws)
        if carrier not in cx.complex:
            raise ValueError("carrier is not a simplex of the Coxeter complex")
        vec = [Fraction(0)] * (cx.n + 1)
        for v, w in ws.items():
            for k, c in enumerate(cx.vectors[v]):
                vec[k] += w * c
        return cls(cx.n, carrier, tuple(sorted(ws.items())), _primitive(vec))

    @classmethod
    def from_vector(cls, n: int, vec: Sequence[int]) -> "RationalPoint":
        """Bare direction (no carrier bookkeeping); used for vertex images."""
        return cls(n, frozenset(), (), _primitive([Fraction(x) for x in vec]))

    @property
    def norm2(self) -> int:
        return dot(self.direction, self.direction)


def cos_sign(p: RationalPoint | Sequence[int], q: RationalPoint | Sequence[int]) -> Sign:
    """Sign of cos d(p, q): POS iff d < pi/2, ZERO iff d = pi/2, NEG iff d > pi/2."""
    a = p.direction if isinstance(p, RationalPoint) else p
    b = q.direction if isinstance(q, RationalPoint) else q
    return sign(dot(a, b))


def _vec(p) -> tuple:
    return p.direction if isinstance(p, RationalPoint) else tuple(p)


def cmp_cos_threshold(p, q, t) -> Cmp:
    """Exact comparison of cos d(p, q) with the rational t."""
    a, b = _vec(p), _vec(q)
    t = Fraction(t)
    ip = dot(a, b)
    n2 = dot(a, a) * dot(b, b)
    # compare ip with t * sqrt(n2)
    s_ip, s_t = sign(ip), sign(t)
    if s_ip != s_t:
        return Cmp(1 if s_ip > s_t else -1)
    if s_ip == 0:
        return Cmp.EQ
    lhs, rhs = Fraction(ip * ip), t * t * n2
    c = (lhs > rhs) - (lhs < rhs)
    return Cmp(c if s_ip > 0 else -c)


def cmp_cos_pairs(p, q, r, s) -> Cmp:
    """Exact comparison of cos d(p, q) with cos d(r, s)."""
    a, b, c, d = map(_vec, (p, q, r, s))
    x, X = dot(a, b), dot(a, a) * dot(b, b)
    y, Y = dot(c, d), dot(c, c) * dot(d, d)
    # compare x/sqrt(X) with y/sqrt(Y)
    sx, sy = sign(x), sign(y)
    if sx != sy:
        return Cmp(1 if sx > sy else -1)
    if sx == 0:
        return Cmp.EQ
    lhs, rhs = x * x * Y, y * y * X
    cmp = (lhs > rhs) - (lhs < rhs)
    return Cmp(cmp if sx > 0 else -cmp)


def antipodal_test(p, q) -> bool:
    """True iff q's direction is a negative multiple of p's."""
    a, b = _vec(p), _vec(q)
    # directions are primitive, so a negative multiple is exactly the negation
    return any(a) and all(x == -y for x, y in zip(a, b))


def apartment_angle_oracle(x, y, z) -> tuple[float, float, float]:
    """Floating-point (d(x,y), d(x,z), angle at x between y and z).

    Test oracle only; decisions never depend on it.
    """
    vx, vy, vz = (tuple(float(c) for c in _vec(p)) for p in (x, y, z))
    for u, w in ((vx, vy), (vx, vz)):
        if _parallel(u, w):
            raise ValueError("angle undefined for coincident or antipodal points")

    def unit(v):
        r = math.sqrt(sum(c * c for c in v))
        return tuple(c / r for c in v)

    ux, uy, uz = unit(vx), unit(vy), unit(vz)
    dxy = math.acos(max(-1.0, min(1.0, dot(ux, uy))))
    dxz = math.acos(max(-1.0, min(1.0, dot(ux, uz))))
    ty = unit(tuple(a - dot(ux, uy) * b for a, b in zip(uy, ux)))
    tz = unit(tuple(a - dot(ux, uz) * b for a, b in zip(uz, ux)))
    ang = math.acos(max(-1.0, min(1.0, dot(ty, tz))))
    return dxy, dxz, ang


def _parallel(u, w) -> bool:
    cross = max(abs(u[i] * w[j] - u[j] * w[i]) for i in range(len(u)) for j in range(len(u)))
    return cross == 0.0


def distance(p, q) -> float:
    """Floating-point distance; diagnostics only."""
    a, b = _vec(p), _vec(q)
    c = dot(a, b) / math.sqrt(dot(a, a) * dot(b, b))
    return math.acos(max(-1.0, min(1.0, c)))


def generate(n: int, bound: int = MAX_RANK) -> CoxeterComplex:
    return CoxeterComplex(n, bound)


__all__ = [
    "CoxeterComplex", "CoxeterDatum", "RationalPoint", "Sign", "Cmp", "SizeBoundError",
    "cos_sign", "cmp_cos_threshold", "cmp_cos_pairs", "antipodal_test",
    "apartment_angle_oracle", "generate", "perm_length", "perm_inverse", "perm_compose",
]
