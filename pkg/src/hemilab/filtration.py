"""Restriction map, the order on its image, heights and the filtration stages.

Everything here is combinatorial: a pure complex X together with the set of
its equator vertices determines the restriction map, so the same code runs
on a building and on links inside it (with the inherited classification).
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable

from .complex import EMPTY, SimplicialComplex, empty_complex, from_simplices, join
from .metric import VertexClassification, classify
from .supports import hor_ver, link_hor, link_open_hemisphere


class FiltrationError(ValueError):
    pass


def faces(sigma: frozenset) -> list[frozenset]:
    s = sorted(sigma)
    return [frozenset(c) for k in range(len(s) + 1) for c in combinations(s, k)]


class Restriction:
    """The restriction map of a pure complex X with respect to an equator vertex set.

    A vertex v of the equator face s of sigma survives iff some chamber C of
    st(s) has a panel C - v whose link leaves the equator.
    """

    def __init__(self, X: SimplicialComplex, eq: Iterable[int]):
        if not X.is_pure():
            raise FiltrationError("restriction needs a pure complex")
        self.X = X
        self.eq = frozenset(eq)
        self._panel: dict[frozenset, bool] = {}
        self._cache: dict[frozenset, frozenset] = {}

    def eq_face(self, sigma: Iterable[int]) -> frozenset:
        return frozenset(sigma) & self.eq

    def panel_in_equator(self, P: frozenset) -> bool:
        hit = self._panel.get(P)
        if hit is None:
            hit = all(F - P <= self.eq for F in self.X.facets_containing(P))
            self._panel[P] = hit
        return hit

    def __call__(self, sigma: Iterable[int]) -> frozenset:
        s = self.eq_face(sigma)
        out = self._cache.get(s)
        if out is None:
            chambers = self.X.facets_containing(s)
            out = frozenset(v for v in s
                            if any(not self.panel_in_equator(C - {v}) for C in chambers))
            self._cache[s] = out
        return out


class Filtration:
    """Restriction, order, heights and stages for Delta^>=(x).

    ``building`` is only needed for the join-factor structure of links (the
    independent relative-link route and the lemma about equal restrictions).
    """

    def __init__(self, building, x=None, cls: VertexClassification | None = None):
        if cls is None:
            cls = classify(building, x)
        self.building = building
        self.cls = cls
        self.X: SimplicialComplex = building.complex
        self.ge = self.X.full_subcomplex(cls.ge)
        self.gt = self.X.full_subcomplex(cls.gt)
        self.equator = self.X.full_subcomplex(cls.eq)
        self.hor, self.ver = hor_ver(building, None, cls)
        self.restr = Restriction(self.X, cls.eq)

    # -- restriction image and order ---------------------------------------
    def restriction(self, sigma: Iterable[int]) -> frozenset:
        sigma = frozenset(sigma)
        if sigma not in self.ge:
            raise FiltrationError(f"{sorted(sigma)} is not a simplex of the closed hemisphere complex")
        return self.restr(sigma)

    @cached_property
    def image(self) -> list[frozenset]:
        # restr only looks at the equator face, so scanning equator simplices suffices
        im = {self.restr(s) for s in self.equator.simplices()}
        return sorted(im, key=lambda s: (len(s), sorted(s)))

    @cached_property
    def _image_set(self) -> frozenset:
        return frozenset(self.image)

    def preceq(self, sigma: frozenset, tau: frozenset) -> bool:
        sigma, tau = frozenset(sigma), frozenset(tau)
        if sigma not in self._image_set or tau not in self._image_set:
            raise FiltrationError("order is defined on the restriction image only")
        up = sigma | tau
        return up in self.X and self.restr(up) == tau

    @cached_property
    def order(self) -> dict[frozenset, list[frozenset]]:
        """For each image simplex, the image simplices strictly below it."""
        below: dict[frozenset, list[frozenset]] = {t: [] for t in self.image}
        for s in self.image:
            for t in self.image:
                if s != t and self.preceq(s, t) and not self.preceq(t, s):
                    below[t].append(s)
        return below

    @cached_property
    def heights(self) -> dict[frozenset, int]:
        memo: dict[frozenset, int] = {}
        state: dict[frozenset, int] = {}

        def h(t):
            if t in memo:
                return memo[t]
            if state.get(t) == 1:
                raise FiltrationError("cycle in the strict order")
            state[t] = 1
            memo[t] = max((h(s) + 1 for s in self.order[t]), default=0)
            state[t] = 2
            return memo[t]

        for t in self.image:
            h(t)
        return memo

    def height(self, sigma: Iterable[int]) -> int:
        return self.heights[self.restriction(sigma)]

    @cached_property
    def N(self) -> int:
        """rank of the ver part of the equator complex."""
        ver = set(self.ver.vertices)
        return max((len(s & ver) for s in self.equator.facets), default=0)

    # -- stages ----------------------------------------------------------------
    @cached_property
    def _ge_heights(self) -> dict[frozenset, int]:
        return {s: self.heights[self.restr(s)] for s in self.ge.simplices()}

    def stage_simplices(self, k: int) -> list[frozenset]:
        return [s for s, h in self._ge_heights.items() if h <= k]

    def stage(self, k: int) -> SimplicialComplex:
        if not 0 <= k <= self.N:
            raise FiltrationError(f"stage index {k} outside 0..{self.N}")
        simp = self.stage_simplices(k)
        return from_simplices(simp, self.X.vtype, self.X.labels) if simp else empty_complex()

    def I(self, k: int) -> list[frozenset]:
        return [t for t in self.image if self.heights[t] == k]

    def relative_star(self, tau: frozenset) -> list[frozenset]:
        """restr-preimage of an image simplex, as a list of (open) simplices."""
        tau = frozenset(tau)
        return sorted((s for s in self.ge.simplices() if self.restr(s) == tau),
                      key=lambda s: (len(s), sorted(s)))

    def relative_link(self, tau: frozenset) -> SimplicialComplex:
        k = self.heights[frozenset(tau)]
        return self.stage(k).link(tau)

    def relative_link_via_induced(self, tau: frozenset) -> SimplicialComplex:
        """Join of the induced open hemisphere complex and the induced hor factor of lk tau."""
        return join(link_open_hemisphere(self.building, self.cls, tau),
                    link_hor(self.building, self.cls, tau))

    def summary(self) -> dict:
        stages = []
        for k in range(self.N + 1):
            Fk = self.stage(k)
            stages.append({
                "k": k,
                "f_vector": list(Fk.f_vector()) if not Fk.is_empty() else [],
                "I_k": [sorted(t) for t in self.I(k)],
                "relative": [{"simplex": sorted(t),
                              "star_size": len(self.relative_star(t)),
                              "link_f_vector": list(self.relative_link(t).f_vector())}
                             for t in self.I(k) if t],
            })
        return {"N": self.N, "image_size": len(self.image), "stages": stages}


# -- lemma checks --------------------------------------------------------------
# Each returns a list of witnesses (empty means the property holds) and the
# number of instances examined.

def check_idempotent(F: Filtration) -> tuple[list, int]:
    bad, n = [], 0
    for s in F.ge.simplices():
        r = F.restr(s)
        for f in faces(r):
            n += 1
            if F.restr(f) != f:
                bad.append({"simplex": sorted(s), "face": sorted(f)})
    ver = set(F.ver.vertices)
    for t in F.image:
        if not t <= ver:
            bad.append({"image_outside_ver": sorted(t)})
    return bad, n


def check_poset(F: Filtration) -> tuple[list, int]:
    bad = []
    im = F.image
    rel = {(s, t): F.preceq(s, t) for s in im for t in im}
    for s in im:
        if not rel[s, s]:
            bad.append({"not_reflexive": sorted(s)})
        if not rel[EMPTY, s]:
            bad.append({"empty_not_below": sorted(s)})
    for s in im:
        for t in im:
            if s != t and rel[s, t] and rel[t, s]:
                bad.append({"not_antisymmetric": [sorted(s), sorted(t)]})
            if rel[s, t]:
                for u in im:
                    if rel[t, u] and not rel[s, u]:
                        bad.append({"not_transitive": [sorted(s), sorted(t), sorted(u)]})
    minimal = [t for t in im if not F.order[t]]
    if minimal != [EMPTY]:
        bad.append({"minimal_elements": [sorted(t) for t in minimal]})
    if F.heights.get(EMPTY) != 0:
        bad.append({"height_of_empty": F.heights.get(EMPTY)})
    if max(F.heights.values()) > F.N:
        bad.append({"height_exceeds_rank": max(F.heights.values())})
    return bad, len(im) ** 2


def check_faceheight(F: Filtration) -> tuple[list, int]:
    bad, n = [], 0
    for t in F.ge.simplices():
        ht, rt = F.height(t), F.restr(t)
        for s in faces(t):
            n += 1
            hs, rs = F.height(s), F.restr(s)
            if hs > ht or ((hs == ht) != (rs == rt)):
                bad.append({"face": sorted(s), "simplex": sorted(t), "heights": [hs, ht]})
    return bad, n


def check_link_lemma(F: Filtration) -> tuple[list, int]:
    """restr in lk(sigma) of tau - sigma equals restr(tau) - sigma, for sigma <= tau in the equator."""
    bad, n = [], 0
    for sigma in F.equator.simplices():
        lk = F.X.link(sigma)
        local = Restriction(lk, F.cls.eq & set(lk.vertices))
        for tau in F.equator.simplices():
            if not sigma <= tau:
                continue
            n += 1
            got = local(tau - sigma)
            if got != F.restr(tau) - sigma:
                bad.append({"sigma": sorted(sigma), "tau": sorted(tau),
                            "link": sorted(got), "ambient": sorted(F.restr(tau) - sigma)})
    return bad, n


def check_equal_restriction(F: Filtration) -> tuple[list, int]:
    bad, n = [], 0
    hor_cache: dict[frozenset, SimplicialComplex] = {}
    for tau in F.ge.simplices():
        te = tau & F.cls.eq
        rt = F.restr(tau)
        for sigma in faces(te):
            n += 1
            if sigma not in hor_cache:
                hor_cache[sigma] = link_hor(F.building, F.cls, sigma)
            a = ((tau - sigma) & F.cls.eq) in hor_cache[sigma]
            b = rt <= sigma
            c = rt == F.restr(sigma)
            if not a == b == c:
                bad.append({"tau": sorted(tau), "sigma": sorted(sigma), "abc": [a, b, c]})
    return bad, n


def check_order_lemma(F: Filtration) -> tuple[list, int]:
    bad, n = [], 0
    for sigma in F.equator.simplices():
        r = F.restr(sigma)
        for tau in F.image:
            if not F.preceq(r, tau):
                continue
            n += 1
            up = sigma | tau
            if up not in F.X or F.restr(up) != tau:
                bad.append({"sigma": sorted(sigma), "tau": sorted(tau)})
    return bad, n


def check_empty_lemma(F: Filtration) -> tuple[list, int]:
    bad = []
    for s in F.ge.simplices():
        lhs = not F.restr(s)
        rhs = (s & F.cls.eq) in F.hor
        if lhs != rhs:
            bad.append({"simplex": sorted(s)})
    return bad, len(F.ge.simplices())


def check_stages(F: Filtration) -> tuple[list, int]:
    """F_0 = Delta^> * Delta_hor, F_N = Delta^>=, nested stages and disjoint relative stars."""
    bad = []
    if F.stage(0) != join(F.gt, F.hor):
        bad.append({"stage": 0, "issue": "F_0 differs from the join of the open hemisphere and hor"})
    if F.stage(F.N) != F.ge:
        bad.append({"stage": F.N, "issue": "top stage differs from the closed hemisphere complex"})
    n = 0
    prev = set(F.stage(0).simplices()) if not F.stage(0).is_empty() else {EMPTY}
    for k in range(F.N + 1):
        Fk = F.stage(k)
        cur = set(Fk.simplices())
        # stages are subcomplexes: the closure adds nothing of larger height
        if cur != set(F.stage_simplices(k)):
            bad.append({"stage": k, "issue": "not closed under faces"})
        if not prev <= cur:
            bad.append({"stage": k, "issue": "not nested"})
        if k == 0:
            prev = cur
            continue
        new = cur - prev
        seen: set = set()
        for t in F.I(k):
            n += 1
            rs = set(F.relative_star(t))
            open_star = {s for s in cur if t <= s}
            if rs != open_star:
                bad.append({"stage": k, "simplex": sorted(t), "issue": "preimage is not the open star"})
            if rs & seen:
                bad.append({"stage": k, "simplex": sorted(t), "issue": "relative stars overlap"})
            seen |= rs
            if F.relative_link(t) != F.relative_link_via_induced(t):
                bad.append({"stage": k, "simplex": sorted(t), "issue": "relative link identity"})
        if seen != new:
            bad.append({"stage": k, "issue": "relative stars do not cover the new simplices"})
        prev = cur
    return bad, n


LEMMA_CHECKS = {
    "restriction-idempotent": check_idempotent,
    "order-poset": check_poset,
    "face-height": check_faceheight,
    "link-restriction": check_link_lemma,
    "equal-restriction": check_equal_restriction,
    "order-upper-bound": check_order_lemma,
    "empty-restriction": check_empty_lemma,
    "stage-decomposition": check_stages,
}
