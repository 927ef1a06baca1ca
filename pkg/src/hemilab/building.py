"""Spherical buildings of type A_n.

Two concrete models share one interface:

* ``FlagBuilding``: the flag complex of PG(n, q), q prime.  Vertices are the
  proper nonzero subspaces of F_q^{n+1} (type = dimension), chambers are
  complete flags, apartments come from frames of n+1 independent lines.
* ``ThinBuilding``: the A_n Coxeter complex regarded as a building with a
  single apartment.

``JoinBuilding`` glues such factors into a reducible building.  Most
geometric operations (charts, retraction, projection) act on irreducible
factors; the join only carries the combinatorics needed by the hemisphere
machinery.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import gf
from .complex import ComplexError, SimplicialComplex, join, sorted_simplex
from .coxeter import CoxeterComplex, SizeBoundError, perm_compose, perm_inverse, perm_length

DEFAULT_MAX_CHAMBERS = 50000


@lru_cache(maxsize=None)
def coxeter(n: int) -> CoxeterComplex:
    return CoxeterComplex(n, bound=max(n, 5))


@dataclass(eq=False)
class ApartmentChart:
    """A type-preserving isomorphism from the A_n Coxeter complex onto an apartment.

    ``to_b`` maps Coxeter vertex ids to building vertex ids, ``from_b`` is its
    inverse on the image.  For flag buildings, ``frame`` lists the n+1 frame
    vectors; Coxeter vertex S goes to the span of the frame vectors indexed by S.
    """

    building: "FlagBuilding | ThinBuilding"
    frame: tuple | None
    to_b: dict[int, int]
    from_b: dict[int, int] = field(init=False)

    def __post_init__(self):
        self.from_b = {b: c for c, b in self.to_b.items()}

    @property
    def cx(self) -> CoxeterComplex:
        return coxeter(self.building.n)

    @property
    def image(self) -> frozenset:
        return frozenset(self.from_b)

    def contains(self, sigma: Iterable[int]) -> bool:
        return all(v in self.from_b for v in sigma)

    def pull(self, sigma: Iterable[int]) -> frozenset:
        return frozenset(self.from_b[v] for v in sigma)

    def push(self, sigma: Iterable[int]) -> frozenset:
        return frozenset(self.to_b[v] for v in sigma)

    def push_complex(self, X: SimplicialComplex) -> SimplicialComplex:
        return self.building.complex.subcomplex(self.push(f) for f in X.facets)

    def image_complex(self) -> SimplicialComplex:
        return self.building.complex.full_subcomplex(self.image)

    def key(self) -> frozenset:
        return self.image

    def __repr__(self) -> str:
        return f"ApartmentChart(image={sorted(self.image)})"


class _BuildingBase:
    """Operations shared by thin and flag buildings (irreducible type A_n)."""

    n: int
    complex: SimplicialComplex

    @property
    def N(self) -> int:
        return self.n + 1

    @property
    def type_paths(self) -> list[list[int]]:
        return [list(range(1, self.n + 1))]

    @property
    def factors(self) -> list:
        return [self]

    def dimcap(self, u: int, v: int) -> int:
        raise NotImplementedError

    def type_of(self, v: int) -> int:
        return self.complex.vtype[v]

    def flag(self, C: Iterable[int]) -> list[int]:
        """Vertices of a simplex ordered by type."""
        return sorted(C, key=self.type_of)

    def some_chamber(self, sigma: Iterable[int]) -> frozenset:
        cs = self.complex.facets_containing(sigma)
        if not cs:
            raise ComplexError(f"{sorted_simplex(sigma)} is not a simplex")
        return cs[0]

    def chambers_containing(self, sigma: Iterable[int]) -> list[frozenset]:
        return self.complex.facets_containing(sigma)

    # -- relative position -----------------------------------------------
    def _cap_table(self, C, D):
        U, V = self.flag(C), self.flag(D)
        N = self.N

        def d(i, j):
            if i == 0 or j == 0:
                return 0
            if i == N:
                return j
            if j == N:
                return i
            return self.dimcap(U[i - 1], V[j - 1])

        return d

    def weyl_distance(self, C: Iterable[int], D: Iterable[int]) -> tuple[int, ...]:
        """Relative position w of two chambers: w(i) is where U_i first jumps against V."""
        d = self._cap_table(C, D)
        N = self.N
        w = []
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                if d(i, j) - d(i - 1, j) - d(i, j - 1) + d(i - 1, j - 1) == 1:
                    w.append(j)
                    break
        return tuple(w)

    def gallery_distance(self, C, D) -> int:
        return perm_length(self.weyl_distance(C, D))

    # -- opposition ---------------------------------------------------------
    def opposite(self, sigma: Iterable[int], tau: Iterable[int]) -> bool:
        """Transversality: complementary types and trivial intersections."""
        sigma, tau = frozenset(sigma), frozenset(tau)
        ts = sorted(self.type_of(v) for v in sigma)
        tt = sorted(self.N - self.type_of(v) for v in tau)
        if ts != tt:
            return False
        by_type = {self.type_of(v): v for v in tau}
        return all(self.dimcap(u, by_type[self.N - self.type_of(u)]) == 0 for u in sigma)

    def opposite_via_chart(self, sigma, tau) -> bool:
        """Independent route: opposite iff the common apartment maps one to the other."""
        chart = self.common_apartment(sigma, tau)
        return chart.cx.opposition(chart.pull(sigma)) == chart.pull(tau)

    def opposites_of(self, sigma: Iterable[int]) -> list[frozenset]:
        sigma = frozenset(sigma)
        types = sorted(self.N - self.type_of(v) for v in sigma)
        cands = [s for s in self.complex.simplices()
                 if sorted(self.type_of(v) for v in s) == types]
        return [s for s in cands if self.opposite(sigma, s)]

    def opposite_chambers(self, C: Iterable[int]) -> list[frozenset]:
        return [D for D in self.complex.facets if self.opposite(C, D)]

    # -- apartments ----------------------------------------------------------
    def common_apartment(self, sigma: Iterable[int], tau: Iterable[int]) -> ApartmentChart:
        return self.chart_through(self.some_chamber(sigma), self.some_chamber(tau))

    def chart_through(self, C, D) -> ApartmentChart:
        raise NotImplementedError

    def retraction(self, chart: ApartmentChart, C: Iterable[int], sigma: Iterable[int],
                   D: Iterable[int] | None = None) -> frozenset:
        """Image of sigma under the retraction onto ``chart`` centred at chamber C."""
        return chart.push(self.retract_to_coxeter(chart, C, sigma, D))

    def retract_to_coxeter(self, chart, C, sigma, D=None) -> frozenset:
        sigma = frozenset(sigma)
        C = frozenset(C)
        if not chart.contains(C):
            raise ValueError("centre chamber is not in the apartment")
        if chart.contains(sigma):
            return chart.pull(sigma)
        if D is None:
            D = self.some_chamber(sigma)
        elif not sigma <= frozenset(D):
            raise ValueError("D must contain sigma")
        w = self.weyl_distance(C, D)
        cx = chart.cx
        pc = cx.perm_of_chamber(chart.pull(C))
        E = cx.chamber_of_perm(perm_compose(pc, perm_inverse(w)))
        types = {self.type_of(v) for v in sigma}
        return frozenset(v for v in E if cx.complex.vtype[v] in types)

    def proj(self, sigma: Iterable[int], tau: Iterable[int]) -> frozenset:
        """Maximal simplex of st(sigma) within conv(sigma, tau)."""
        sigma, tau = frozenset(sigma), frozenset(tau)
        if not sigma:
            return tau
        chart = self.common_apartment(sigma, tau)
        return chart.push(coxeter_proj(chart.cx, chart.pull(sigma), chart.pull(tau)))

    def conv(self, sigma: Iterable[int], tau: Iterable[int]) -> SimplicialComplex:
        """Convex hull of two simplices, computed in a common apartment."""
        chart = self.common_apartment(sigma, tau)
        return chart.push_complex(chart.cx.conv([chart.pull(sigma), chart.pull(tau)]))

    def is_thick(self) -> bool:
        return min(self.panel_multiplicities()) >= 3

    def panel_multiplicities(self) -> list[int]:
        seen = {}
        for C in self.complex.facets:
            for v in C:
                P = C - {v}
                if P not in seen:
                    seen[P] = len(self.complex.facet_ids_containing(P))
        return sorted(set(seen.values()))

    def apartments_containing(self, simplices: Sequence[Iterable[int]]) -> list[ApartmentChart]:
        """Every apartment containing all given simplices (exhaustive over chambers and opposites)."""
        simplices = [frozenset(s) for s in simplices]
        anchor = max(simplices, key=len)
        out: dict[frozenset, ApartmentChart] = {}
        for D in self.chambers_containing(anchor):
            for E in self.opposite_chambers(D):
                chart = self.chart_through(D, E)
                if chart.key() not in out and all(chart.contains(s) for s in simplices):
                    out[chart.key()] = chart
        return [out[k] for k in sorted(out, key=sorted)]

    def find_apartment_containing(self, simplices) -> ApartmentChart:
        simplices = [frozenset(s) for s in simplices]
        anchor = max(simplices, key=len)
        for D in self.chambers_containing(anchor):
            for E in self.opposite_chambers(D):
                chart = self.chart_through(D, E)
                if all(chart.contains(s) for s in simplices):
                    return chart
        raise LookupError("no apartment contains the given simplices")


def coxeter_proj(cx: CoxeterComplex, sigma: frozenset, tau: frozenset) -> frozenset:
    hull = cx.conv([sigma, tau])
    extra = {v for v in hull.vertices if v not in sigma and (sigma | {v}) in hull}
    out = sigma | extra
    if out not in hull:
        raise AssertionError("projection is not a simplex")
    return out


class ThinBuilding(_BuildingBase):
    """The Coxeter complex of type A_n as a thin building."""

    def __init__(self, n: int):
        self.n = n
        self.cx = coxeter(n)
        self.complex = self.cx.complex
        self._chart = ApartmentChart(self, None, {v: v for v in self.complex.vertices})

    def __repr__(self) -> str:
        return f"ThinBuilding(A_{self.n})"

    def spec(self) -> dict:
        return {"thin": {"family": "A", "n": self.n}}

    def dimcap(self, u: int, v: int) -> int:
        return len(self.cx.subsets[u] & self.cx.subsets[v])

    def chart_through(self, C, D) -> ApartmentChart:
        return self._chart

    def enumerate_apartments(self, **kw) -> list[ApartmentChart]:
        return [self._chart]


class FlagBuilding(_BuildingBase):
    """Flag complex of PG(n, q) for prime q."""

    def __init__(self, n: int, q: int, max_chambers: int = DEFAULT_MAX_CHAMBERS):
        if n < 1:
            raise ValueError("n must be at least 1")
        if not gf.is_prime(q):
            raise NotImplementedError(f"q={q}: only prime fields are supported")
        nch = 1
        for k in range(1, n + 2):
            nch *= (q ** k - 1) // (q - 1)
        if nch > max_chambers:
            raise SizeBoundError(f"Flag(PG({n},{q})) has {nch} chambers > bound {max_chambers}")
        self.n, self.q = n, q
        N = n + 1
        bases = []
        for k in range(1, N):
            bases.extend(gf.enumerate_subspaces(N, k, q))
        self.bases: tuple = tuple(bases)
        self.vid: dict = {b: i for i, b in enumerate(bases)}
        self.vecs: tuple = tuple(gf.span(b, q, N) for b in bases)
        self._whole = gf.span([tuple(int(i == j) for j in range(N)) for i in range(N)], q, N)
        self._size_dim = {q ** k: k for k in range(N + 1)}
        by_dim: dict[int, list[int]] = {}
        for i, b in enumerate(bases):
            by_dim.setdefault(len(b), []).append(i)
        up: dict[int, list[int]] = {i: [] for i in range(len(bases))}
        for k in range(1, N - 1):
            for a in by_dim[k]:
                for b in by_dim[k + 1]:
                    if self.vecs[a] <= self.vecs[b]:
                        up[a].append(b)
        chains = [[a] for a in by_dim[1]]
        for _ in range(n - 1):
            chains = [c + [b] for c in chains for b in up[c[-1]]]
        labels = {i: self._label(b) for i, b in enumerate(bases)}
        self.complex = SimplicialComplex(chains, {i: len(b) for i, b in enumerate(bases)},
                                         labels, range(1, N))
        self._charts: dict = {}

    def __repr__(self) -> str:
        return f"FlagBuilding(PG({self.n},{self.q}))"

    def spec(self) -> dict:
        return {"family": "A", "n": self.n, "q": self.q}

    @staticmethod
    def _label(basis) -> str:
        return "<" + ";".join("".join(str(x) for x in r) for r in basis) + ">"

    def dimcap(self, u: int, v: int) -> int:
        return self._size_dim[len(self.vecs[u] & self.vecs[v])]

    def _space(self, i: int, flag: list[int]) -> frozenset:
        """Vectors of the i-th member of a complete flag (0 and N included)."""
        if i == 0:
            return frozenset([tuple([0] * self.N)])
        if i == self.N:
            return self._whole
        return self.vecs[flag[i - 1]]

    def span_id(self, vectors: Iterable[Sequence[int]]) -> int:
        return self.vid[gf.rref(vectors, self.q)]

    def lines(self) -> list[int]:
        return [i for i, b in enumerate(self.bases) if len(b) == 1]

    def chart_from_frame(self, frame: Sequence[Sequence[int]]) -> ApartmentChart:
        frame = tuple(tuple(v) for v in frame)
        if gf.rank(frame, self.q) != self.N:
            raise ValueError("frame vectors are not independent")
        cx = coxeter(self.n)
        to_b = {}
        for c, S in enumerate(cx.subsets):
            to_b[c] = self.span_id([frame[s - 1] for s in sorted(S)])
        return ApartmentChart(self, frame, to_b)

    def chart_through(self, C, D) -> ApartmentChart:
        """Apartment through two chambers, from a basis adapted to both flags."""
        key = (frozenset(C), frozenset(D))
        if key in self._charts:
            return self._charts[key]
        U, V = self.flag(C), self.flag(D)
        w = self.weyl_distance(C, D)
        basis = []
        for i in range(1, self.N + 1):
            cands = (self._space(i, U) & self._space(w[i - 1], V)) - self._space(i - 1, U)
            basis.append(min(cands))
        chart = self.chart_from_frame(basis)
        self._charts[key] = chart
        return chart

    def enumerate_apartments(self, exhaustive_limit: tuple[int, int] = (3, 3),
                             samples: int = 200, seed: int = 0) -> list[ApartmentChart]:
        """All apartments (frames of independent lines) at desk scale, else a seeded sample."""
        lines = self.lines()
        vec = {l: self.bases[l][0] for l in lines}
        if self.n <= exhaustive_limit[0] and self.q <= exhaustive_limit[1]:
            frames = [c for c in combinations(lines, self.N)
                      if gf.rank([vec[l] for l in c], self.q) == self.N]
        else:
            rng = random.Random(seed)
            found = set()
            tries = 0
            while len(found) < samples and tries < 50 * samples:
                tries += 1
                c = tuple(sorted(rng.sample(lines, self.N)))
                if gf.rank([vec[l] for l in c], self.q) == self.N:
                    found.add(c)
            frames = sorted(found)
        return [self.chart_from_frame([vec[l] for l in c]) for c in frames]


def build_flag(n: int, q: int, max_chambers: int = DEFAULT_MAX_CHAMBERS) -> FlagBuilding:
    return FlagBuilding(n, q, max_chambers)


class JoinBuilding:
    """Spherical join of irreducible factors, on disjoint vertex ids and types."""

    def __init__(self, factors: Sequence[_BuildingBase]):
        if len(factors) < 1:
            raise ValueError("need at least one factor")
        self.parts = list(factors)
        self.voff, self.toff = [], []
        vo = to = 0
        X = None
        for f in self.parts:
            self.voff.append(vo)
            self.toff.append(to)
            perm = {v: v + vo for v in f.complex.vertices}
            Y = SimplicialComplex([frozenset(perm[v] for v in F) for F in f.complex.facets],
                                  {perm[v]: t + to for v, t in f.complex.vtype.items()},
                                  {perm[v]: f"{len(self.voff) - 1}:{l}" for v, l in f.complex.labels.items()},
                                  [t + to for t in f.complex.typeset])
            X = Y if X is None else join(X, Y)
            vo += len(f.complex.vertices)
            to += f.n
        self.complex = X
        self.n = sum(f.n for f in self.parts)

    def __repr__(self) -> str:
        return f"JoinBuilding({', '.join(map(repr, self.parts))})"

    def spec(self) -> dict:
        return {"join": [f.spec() for f in self.parts]}

    @property
    def factors(self) -> list:
        return self.parts

    @property
    def type_paths(self) -> list[list[int]]:
        return [[t + off for t in range(1, f.n + 1)] for f, off in zip(self.parts, self.toff)]

    def factor_of(self, v: int) -> tuple[int, int]:
        """(factor index, local vertex id) of a global vertex."""
        for k in range(len(self.parts) - 1, -1, -1):
            if v >= self.voff[k]:
                return k, v - self.voff[k]
        raise KeyError(v)

    def factor_vertices(self, k: int) -> frozenset:
        off = self.voff[k]
        return frozenset(v + off for v in self.parts[k].complex.vertices)

    def is_thick(self) -> bool:
        return all(f.is_thick() for f in self.parts)

    def split(self, sigma: Iterable[int]) -> list[frozenset]:
        out = [set() for _ in self.parts]
        for v in sigma:
            k, lv = self.factor_of(v)
            out[k].add(lv)
        return [frozenset(s) for s in out]

    def opposite(self, sigma, tau) -> bool:
        return all(f.opposite(a, b) for f, a, b in zip(self.parts, self.split(sigma), self.split(tau)))


def irreducible_factors(building) -> list:
    return list(building.factors)


def link_components(building, sigma: Iterable[int]) -> list[frozenset]:
    """Vertex sets of the irreducible join factors of lk(sigma), grouped by type runs."""
    X = building.complex
    sigma = frozenset(sigma)
    used = {X.vtype[v] for v in sigma}
    runs = []
    for path in building.type_paths:
        cur: list[int] = []
        for t in path:
            if t in used:
                if cur:
                    runs.append(cur)
                cur = []
            else:
                cur.append(t)
        if cur:
            runs.append(cur)
    lk = X.link(sigma)
    out = []
    for r in runs:
        rs = set(r)
        out.append(frozenset(v for v in lk.vertices if lk.vtype[v] in rs))
    return out


def coxeter_order_of_runs(runs: Sequence[Sequence[int]]) -> int:
    from math import factorial

    out = 1
    for r in runs:
        out *= factorial(len(r) + 1)
    return out


# -- retraction and apartment search ---------------------------------------------

def search_apartment_with_intersection(building, chart: ApartmentChart, K: SimplicialComplex,
                                       exhaustive: bool = True) -> tuple[ApartmentChart, str]:
    """Find an apartment meeting ``chart`` exactly in K; also report which route found it.

    Steered route: every apartment containing K contains a fixed chamber C of K
    and is spanned by C and one of its opposite chambers, so scanning the
    opposites of C is complete.  The exhaustive fallback scans all frames.
    """
    if not K.facets or K.is_empty():
        raise ValueError("K must be a nonempty chamber subcomplex")
    full = building.complex.dim() + 1
    if any(len(F) != full for F in K.facets):
        raise ValueError("K must be a chamber subcomplex")
    if not all(chart.contains(F) for F in K.facets):
        raise ValueError("K must lie in the given apartment")
    target = K.vertices
    sigma_img = chart.image

    def meets_exactly(other: ApartmentChart) -> bool:
        common = sigma_img & other.image
        if set(common) != set(target):
            return False
        return building.complex.full_subcomplex(common) == K

    if set(target) == set(sigma_img) and chart.image_complex() == K:
        return chart, "identity"
    C = K.facets[0]
    for E in building.opposite_chambers(C):
        cand = building.chart_through(C, E)
        if meets_exactly(cand):
            return cand, "steered"
    if exhaustive:
        for cand in building.enumerate_apartments():
            if meets_exactly(cand):
                return cand, "exhaustive"
    raise LookupError("no apartment meets the chart in exactly K")


def find_apartment_with_intersection(building, chart: ApartmentChart,
                                     K: SimplicialComplex) -> ApartmentChart:
    return search_apartment_with_intersection(building, chart, K)[0]


def chart_star(chart: ApartmentChart, sigma: Iterable[int]) -> SimplicialComplex:
    """Closed star of sigma inside the apartment, as a building subcomplex."""
    return chart.push_complex(chart.cx.complex.star(chart.pull(sigma)))


def chart_opposite(chart: ApartmentChart, sigma: Iterable[int]) -> frozenset:
    return chart.push(chart.cx.opposition(chart.pull(sigma)))
