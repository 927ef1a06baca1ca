"""Supported subcomplexes for finitely described supports.

Every support handled here yields a full subcomplex, so extraction is a
vertex selection followed by ``full_subcomplex``.  For cap complements with a
nonzero threshold fullness is audited on retracted simplices; see
``audit_cap_fullness``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .building import JoinBuilding, ThinBuilding, link_components
from .complex import SimplicialComplex, empty_complex, join
from .coxeter import dot
from .metric import JoinPole, Pole, VertexClassification, classify, classify_cap

log = logging.getLogger(__name__)

KINDS = {">": "GT", ">=": "GE", "=": "EQ", "GT": "GT", "GE": "GE", "EQ": "EQ"}


class SupportError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Hemisphere:
    pole: Pole | JoinPole
    kind: str = "GE"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SupportError(f"unknown hemisphere kind {self.kind!r}")
        object.__setattr__(self, "kind", KINDS[self.kind])

    def describe(self) -> dict:
        return {"hemisphere": {"pole": self.pole.describe(), "kind": self.kind}}


@dataclass(frozen=True, eq=False)
class CapComplement:
    """Complement of the ball of radius arccos(t) around the pole.

    ``closed`` says whether the removed ball is closed (then the boundary
    sphere is removed too).
    """

    pole: Pole | JoinPole
    t: Fraction
    closed: bool = False

    def describe(self) -> dict:
        return {"cap_complement": {"pole": self.pole.describe(), "t": str(self.t),
                                   "closed_ball": self.closed}}


@dataclass(frozen=True)
class RootComplement:
    """Complement of a root (i, j) of the thin building: the opposite half-apartment.

    With ``closed`` the removed root is closed and the wall goes with it.
    """

    root: tuple[int, int]
    closed: bool = False

    def describe(self) -> dict:
        return {"root_complement": {"root": list(self.root), "closed_root": self.closed}}


SupportSpec = Union[Hemisphere, CapComplement, RootComplement]


@dataclass
class SupportedSubcomplex:
    complex: SimplicialComplex
    spec: SupportSpec
    classification: VertexClassification | None
    exact: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def vertices(self) -> frozenset:
        return frozenset(self.complex.vertices)


def hemisphere(building, x, kind: str = "GE", cls: VertexClassification | None = None
               ) -> SupportedSubcomplex:
    spec = Hemisphere(x, kind)
    cls = classify(building, x) if cls is None else cls
    verts = {"GT": cls.gt, "GE": cls.ge, "EQ": cls.eq}[spec.kind]
    return SupportedSubcomplex(building.complex.full_subcomplex(verts), spec, cls)


def open_hemisphere(building, x, cls=None) -> SimplicialComplex:
    return hemisphere(building, x, "GT", cls).complex


def closed_hemisphere(building, x, cls=None) -> SimplicialComplex:
    return hemisphere(building, x, "GE", cls).complex


def equator(building, x, cls=None) -> SimplicialComplex:
    return hemisphere(building, x, "EQ", cls).complex


def cap_complement(building, x, t, closed: bool = False) -> SupportedSubcomplex:
    """Full subcomplex on vertices with cos d(x, v) <= t (or < t if the ball is closed)."""
    t = Fraction(t)
    spec = CapComplement(x, t, closed)
    cls = classify_cap(building, x, t)
    verts = cls.gt if closed else cls.ge
    out = SupportedSubcomplex(building.complex.full_subcomplex(verts), spec, cls)
    if t < 0:
        out.notes.append("support not guaranteed coconvex; verification proceeds but "
                         "theorem checks are advisory")
        out.exact = False
    elif t != 0:
        bad = audit_cap_fullness(building, x, t, closed, out.complex)
        if bad:
            out.exact = False
            out.notes.append(f"vertex-hull approximation: {len(bad)} simplices leave the support")
    return out


def root_complement(building, root: tuple[int, int], closed: bool = False) -> SupportedSubcomplex:
    if not isinstance(building, ThinBuilding):
        raise SupportError("root complements are defined for thin buildings")
    cx = building.cx
    i, j = root
    if closed:
        verts = [v for v, S in enumerate(cx.subsets) if i not in S and j in S]
    else:
        verts = cx.root_vertices((j, i))
    return SupportedSubcomplex(building.complex.full_subcomplex(verts),
                               RootComplement(tuple(root), closed), None)


def supported(building, spec: SupportSpec) -> SupportedSubcomplex:
    if isinstance(spec, Hemisphere):
        return hemisphere(building, spec.pole, spec.kind)
    if isinstance(spec, CapComplement):
        return cap_complement(building, spec.pole, spec.t, spec.closed)
    if isinstance(spec, RootComplement):
        return root_complement(building, spec.root, spec.closed)
    raise SupportError(f"unsupported spec {spec!r}")


# -- fullness audit for caps ----------------------------------------------------

def _solve(G: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    n = len(b)
    M = [row[:] + [bi] for row, bi in zip(G, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * bb for a, bb in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


def max_cos_squared(x_vec, vertex_vecs) -> Fraction | None:
    """Largest cos^2 d(x, y) over the closed spherical simplex with the given vertices.

    Only meaningful when that maximum cosine is positive: it is attained at the
    metric projection of x onto the cone, which lies in the relative interior
    of some face.  Returns None if x is orthogonal or obtuse to the whole cone.
    """
    from itertools import combinations

    xx = dot(x_vec, x_vec)
    best = None
    vs = list(vertex_vecs)
    for k in range(1, len(vs) + 1):
        for face in combinations(vs, k):
            G = [[Fraction(dot(a, b)) for b in face] for a in face]
            rhs = [Fraction(dot(a, x_vec)) for a in face]
            coef = _solve(G, rhs)
            if coef is None or any(c <= 0 for c in coef):
                continue
            # |P x|^2 = rhs . coef
            val = sum(r * c for r, c in zip(rhs, coef)) / xx
            if best is None or val > best:
                best = val
    return best


def audit_cap_fullness(building, x, t: Fraction, closed: bool, K: SimplicialComplex) -> list:
    """Facets of K whose closed realization meets the removed ball."""
    if isinstance(building, JoinBuilding):
        active = [k for k, p in enumerate(x.parts) if p is not None]
        if len(active) != 1:
            raise NotImplementedError("cap audit needs a pole in a single join factor")
        (k,) = active
        f, pole, off = building.parts[k], x.parts[k], building.voff[k]
        facets = [frozenset(v - off for v in F if building.factor_of(v)[0] == k) for F in K.facets]
        return audit_cap_fullness(f, pole, t, closed, f.complex.subcomplex(
            [F for F in facets if F] or [frozenset()]))
    bad = []
    from .metric import _centre_chamber

    C = _centre_chamber(x)
    for F in K.facets:
        if not F:
            continue
        D = building.some_chamber(F)
        img = building.retract_to_coxeter(x.chart, C, F, D)
        vecs = [x.chart.cx.vectors[c] for c in sorted(img)]
        m = max_cos_squared(x.point.direction, vecs)
        if m is None:
            continue
        if t > 0 and (m > t * t or (closed and m == t * t)):
            bad.append(sorted(F))
    return bad


# -- join structure ---------------------------------------------------------------

def hor_ver(building, x, cls: VertexClassification | None = None
            ) -> tuple[SimplicialComplex, SimplicialComplex]:
    """Split into the largest join factor inside the equator and its complement."""
    cls = classify(building, x) if cls is None else cls
    X = building.complex
    if isinstance(building, JoinBuilding):
        blocks = [building.factor_vertices(k) for k in range(len(building.parts))]
    else:
        blocks = [frozenset(X.vertices)]
    hor = frozenset().union(*[b for b in blocks if b <= cls.eq])
    ver = frozenset().union(*[b for b in blocks if not b <= cls.eq])
    H = X.full_subcomplex(hor) if hor else empty_complex()
    V = X.full_subcomplex(ver) if ver else empty_complex()
    if join(H, V) != X:
        raise AssertionError("building is not the join of its hor and ver parts")
    return H, V


def induced_link_classification(building, cls: VertexClassification, sigma: Iterable[int]
                                ) -> VertexClassification:
    """Classification of lk(sigma) vertices against the induced pole; sigma must be in the equator."""
    sigma = frozenset(sigma)
    if not sigma <= cls.eq:
        raise SupportError("sigma is not a simplex of the equator complex")
    lk = building.complex.link(sigma)
    return cls.restrict(lk.vertices)


def link_hor(building, cls: VertexClassification, sigma: Iterable[int]) -> SimplicialComplex:
    """(lk sigma)_hor for the induced pole: join of link factors lying in the equator."""
    sigma = frozenset(sigma)
    lk = building.complex.link(sigma)
    comps = link_components(building, sigma)
    hor = frozenset().union(*[c for c in comps if c and c <= cls.eq])
    return lk.full_subcomplex(hor) if hor else empty_complex()


def link_open_hemisphere(building, cls: VertexClassification, sigma: Iterable[int]) -> SimplicialComplex:
    lk = building.complex.link(frozenset(sigma))
    return lk.full_subcomplex(set(lk.vertices) & cls.gt)


def is_reducible_by_chambers(building) -> bool:
    """Reducible iff some chamber has two vertices at distance pi/2."""
    from .coxeter import Sign
    from .metric import vertex_cos_sign

    for C in building.complex.facets:
        vs = sorted(C)
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                if vertex_cos_sign(building, u, v) == Sign.ZERO:
                    return True
    return False
