"""Geodesic cone complexes K'', K', K and the search for good opposites.

All hulls are computed in a common apartment, where convexity reduces to
root membership in the Coxeter complex.  Cones are only built inside
irreducible buildings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .building import (JoinBuilding, chart_opposite, chart_star, coxeter_order_of_runs,
                       link_components, search_apartment_with_intersection)
from .complex import SimplicialComplex, empty_complex, from_simplices, join, union
from .filtration import Filtration, faces
from .supports import link_hor, link_open_hemisphere


class ConeError(ValueError):
    pass


def without_open_star(K: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    sigma = frozenset(sigma)
    keep = [s for s in K.simplices() if not sigma <= s]
    return from_simplices(keep, K.vtype, K.labels) if keep else empty_complex()


def cone_pp(building, sigma, theta, tau) -> SimplicialComplex:
    """K''(sigma, theta, tau) = conv(sigma + theta, proj_tau(sigma + theta))."""
    sigma, theta, tau = frozenset(sigma), frozenset(theta), frozenset(tau)
    if isinstance(building, JoinBuilding):
        raise ConeError("cones are built in irreducible buildings")
    if not building.opposite(sigma, tau):
        raise ConeError(f"{sorted(sigma)} and {sorted(tau)} are not opposite")
    lam = sigma | theta
    if lam not in building.complex:
        raise ConeError(f"{sorted(theta)} is not in the closed star of {sorted(sigma)}")
    return building.conv(lam, building.proj(tau, lam))


def cone(building, sigma, theta_or_L, tau, variant: str = "K''") -> SimplicialComplex:
    """K'', K' or K for a simplex theta or a subcomplex L of the closed star."""
    sigma, tau = frozenset(sigma), frozenset(tau)
    if isinstance(theta_or_L, SimplicialComplex):
        thetas = theta_or_L.simplices()
    else:
        thetas = [frozenset(theta_or_L)]
    K = union(*[cone_pp(building, sigma, th, tau) for th in thetas])
    if variant in ("K'", "K"):
        K = without_open_star(K, sigma)
    if variant == "K":
        K = without_open_star(K, tau)
    elif variant not in ("K''", "K'"):
        raise ConeError(f"unknown cone variant {variant!r}")
    return K


def boundary_lemma_witnesses(building, sigma, theta, tau) -> list:
    """Simplices violating K* meet bd st(sigma) = bd(sigma+theta) minus st(sigma)."""
    sigma, theta, tau = frozenset(sigma), frozenset(theta), frozenset(tau)
    X = building.complex
    lam = sigma | theta
    expected = {f for f in faces(lam) if not sigma <= f}
    bad = []
    for variant in ("K''", "K'", "K"):
        K = cone(building, sigma, theta, tau, variant)
        got = {s for s in K.simplices() if not sigma <= s and (s | sigma) in X}
        if got != expected:
            bad.append({"variant": variant, "sigma": sorted(sigma), "theta": sorted(theta),
                        "tau": sorted(tau), "extra": sorted(sorted(s) for s in got - expected),
                        "missing": sorted(sorted(s) for s in expected - got)})
    return bad


# -- good opposites --------------------------------------------------------------

def equator_part(F: Filtration, K: SimplicialComplex) -> list[frozenset]:
    return [s for s in K.simplices() if s and s <= F.cls.eq]


def _containment_ok(F: Filtration, sigma, L, tau) -> tuple[bool, SimplicialComplex]:
    K = cone(F.building, sigma, L, tau, "K''")
    X = F.X
    ok = all((s | sigma) in X for s in equator_part(F, K))
    return ok, K


def proj_condition_witness(F: Filtration, sigma, L, tau) -> frozenset | None:
    """A simplex theta of the equator in cl(sigma + L) minus st(sigma) with proj_theta tau in the equator."""
    sigma, tau = frozenset(sigma), frozenset(tau)
    cands = set()
    for th in L.simplices():
        for f in faces(sigma | th):
            if not sigma <= f and f <= F.cls.eq:
                cands.add(f)
    for th in sorted(cands, key=lambda s: (len(s), sorted(s))):
        if F.building.proj(th, tau) <= F.cls.eq:
            return th
    return None


@dataclass
class GoodOpposite:
    tau: frozenset
    route: str
    cone: SimplicialComplex
    checked: int = 0
    failures: list = field(default_factory=list)


def find_good_opposite(F: Filtration, sigma, L: SimplicialComplex, pole=None,
                       apartment=None) -> GoodOpposite:
    """An opposite tau of sigma with K''(sigma, L, tau) meeting the equator inside cl st(sigma).

    The constructive route takes an apartment through x, sigma and the equator
    part of L, then an apartment meeting it exactly in the closed star of
    sigma; tau is the opposite of sigma there.  Otherwise all opposites are
    scanned.  Every rejected opposite must come with a projection witness.
    """
    B = F.building
    sigma = frozenset(sigma)
    checked = 0
    failures = []
    if apartment is None and pole is not None:
        need = [pole.carrier, sigma] + [s for s in equator_part(F, L)]
        try:
            apartment = B.find_apartment_containing(need)
        except LookupError:
            apartment = None
    if apartment is not None:
        try:
            other, how = search_apartment_with_intersection(B, apartment, chart_star(apartment, sigma))
        except LookupError:
            other = None
        if other is not None:
            tau = chart_opposite(other, sigma)
            ok, K = _containment_ok(F, sigma, L, tau)
            checked += 1
            if ok:
                return GoodOpposite(tau, f"apartment-intersection/{how}", K, checked)
            failures.append({"tau": sorted(tau), "witness": _witness(F, sigma, L, tau)})
    for tau in sorted(B.opposites_of(sigma), key=sorted):
        ok, K = _containment_ok(F, sigma, L, tau)
        checked += 1
        if ok:
            return GoodOpposite(tau, "scan", K, checked, failures)
        failures.append({"tau": sorted(tau), "witness": _witness(F, sigma, L, tau)})
    raise LookupError(f"no good opposite for {sorted(sigma)} among {checked} candidates")


def _witness(F, sigma, L, tau):
    w = proj_condition_witness(F, sigma, L, tau)
    return None if w is None else sorted(w)


# -- the complexes K_sigma of the non-contractibility argument -------------------

@dataclass
class KSigma:
    sigma: frozenset
    K: SimplicialComplex
    K_prime: SimplicialComplex
    opposites: list[GoodOpposite]
    pieces: list  # the L or L * A used for each opposite
    case: str


def hor_apartments(F: Filtration, sigma: frozenset, Lh: SimplicialComplex) -> list[SimplicialComplex]:
    """Apartments of L_h through a fixed chamber, found as links of hulls in Delta."""
    B = F.building
    C = Lh.facets[0]
    hor_types = sorted({Lh.vtype[v] for v in Lh.vertices})
    runs = _runs(B, sigma, set(Lh.vertices))
    order = coxeter_order_of_runs(runs)
    seen: dict[frozenset, SimplicialComplex] = {}
    for D in Lh.facets:
        H = B.conv(sigma | C, sigma | D)
        A = H.link(sigma).full_subcomplex(set(Lh.vertices)) if sigma in H else None
        if A is None or A.is_empty() or len(A.facets) != order:
            continue
        if not all(len(f) == len(hor_types) for f in A.facets):
            continue
        key = frozenset(A.facets)
        seen.setdefault(key, A)
    return [seen[k] for k in sorted(seen, key=lambda k: sorted(sorted(f) for f in k))]


def _runs(B, sigma, verts) -> list[list[int]]:
    types = {B.complex.vtype[v] for v in verts}
    out = []
    for comp in link_components(B, sigma):
        ts = sorted({B.complex.vtype[v] for v in comp})
        if ts and set(ts) <= types:
            out.append(ts)
    return out


def build_k_sigma(F: Filtration, sigma, pole) -> KSigma:
    B = F.building
    sigma = frozenset(sigma)
    L = link_open_hemisphere(B, F.cls, sigma)
    Lh = link_hor(B, F.cls, sigma)
    if Lh.is_empty():
        g = find_good_opposite(F, sigma, L, pole)
        K = g.cone
        return KSigma(sigma, K, without_open_star(K, sigma), [g], [L], "hor-empty")
    goods, pieces = [], []
    for A in hor_apartments(F, sigma, Lh):
        LA = join(L, A)
        lamA = [sigma | f for f in A.facets]
        try:
            SigmaA = B.find_apartment_containing([pole.carrier] + lamA)
        except LookupError:
            SigmaA = None
        goods.append(find_good_opposite(F, sigma, LA, pole, SigmaA))
        pieces.append(LA)
    K = union(*[g.cone for g in goods])
    return KSigma(sigma, K, without_open_star(K, sigma), goods, pieces, "hor-nonempty")


# -- two opposites in the open hemisphere ------------------------------------------

def antipode_pair(F: Filtration, y: int, pole) -> dict:
    """Two distinct opposites of a height-1 vertex inside the open hemisphere complex.

    Constructive route: z' from an apartment meeting one through x and y in
    the closed star of y, z'' from an apartment meeting that one in
    conv(C, D).  The scan route lists every opposite classified GT.
    """
    B = F.building
    Y = frozenset([y])
    out: dict = {"vertex": y}
    scan = sorted(next(iter(z)) for z in B.opposites_of(Y) if z <= F.cls.gt)
    out["gt_opposites"] = scan
    try:
        S = B.find_apartment_containing([pole.carrier, Y])
        S1, _ = search_apartment_with_intersection(B, S, chart_star(S, Y))
        (z1,) = chart_opposite(S1, Y)
        xi = pole.carrier
        P = B.proj(Y, xi)
        C = next(c for c in B.chambers_containing(P) if S.contains(c))
        D = B.proj(frozenset([z1]), C) - {z1}
        H = B.conv(C, D)
        S2, _ = search_apartment_with_intersection(B, S1, H)
        (z2,) = chart_opposite(S2, Y)
        out["constructed"] = [z1, z2]
        out["constructed_ok"] = z1 != z2 and {z1, z2} <= F.cls.gt
    except (LookupError, ValueError, StopIteration) as exc:
        out["constructed"] = None
        out["constructed_ok"] = False
        out["error"] = str(exc)
    return out
