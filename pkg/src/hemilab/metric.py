"""Poles and the exact trichotomy of vertices against a distance threshold.

The distance from a pole x to a vertex v is read off after retracting v onto an
apartment containing x, centred at a chamber whose closure holds x; such
retractions preserve distances from x.  Only signs are ever computed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .building import ApartmentChart, JoinBuilding, ThinBuilding
from .coxeter import Cmp, RationalPoint, Sign, antipodal_test, cmp_cos_threshold, cos_sign

LT, EQ, GT = Cmp.LT, Cmp.EQ, Cmp.GT


@dataclass(frozen=True, eq=False)
class Pole:
    """A rational point of an irreducible building, given in an apartment chart."""

    chart: ApartmentChart
    point: RationalPoint

    @property
    def carrier(self) -> frozenset:
        return self.chart.push(self.point.carrier)

    @property
    def weights_by_type(self) -> dict[int, Fraction]:
        cx = self.chart.cx
        return {cx.complex.vtype[v]: w for v, w in self.point.weights}

    def moved_to(self, chart: ApartmentChart) -> "Pole":
        """The same point expressed in another chart containing its carrier."""
        cx = chart.cx
        by_vertex = dict(self.point.weights)
        weights = {chart.from_b[self.chart.to_b[v]]: w for v, w in by_vertex.items()}
        return Pole(chart, RationalPoint.make(cx, weights))

    def describe(self) -> dict:
        return {
            "carrier": sorted(self.carrier),
            "weights": [str(w) for _, w in sorted(
                ((self.chart.to_b[v], w) for v, w in self.point.weights))],
        }


@dataclass(frozen=True, eq=False)
class JoinPole:
    """Pole of a join building: one optional factor pole per factor.

    Points of different factors are at distance pi/2, so for the trichotomy a
    vertex of factor k only sees the component of x in that factor.
    """

    parts: tuple

    @property
    def carrier_parts(self):
        return [None if p is None else p.carrier for p in self.parts]

    def describe(self) -> dict:
        return {"parts": [None if p is None else p.describe() for p in self.parts]}


def vertex_pole(building, v: int) -> Pole | JoinPole:
    if isinstance(building, JoinBuilding):
        k, lv = building.factor_of(v)
        parts = [None] * len(building.parts)
        parts[k] = vertex_pole(building.parts[k], lv)
        return JoinPole(tuple(parts))
    chart = building.common_apartment([v], [v])
    return Pole(chart, chart.cx.vertex_point(chart.from_b[v]))


def barycenter_pole(building, sigma: Iterable[int], weights: Sequence | None = None) -> Pole | JoinPole:
    """Pole at a point of the open simplex sigma; equal weights on the realization vectors by default."""
    sigma = sorted(sigma)
    if weights is None:
        weights = [Fraction(1, len(sigma))] * len(sigma)
    if isinstance(building, JoinBuilding):
        parts: list = [None] * len(building.parts)
        local: dict[int, dict] = {}
        for v, w in zip(sigma, weights):
            k, lv = building.factor_of(v)
            local.setdefault(k, {})[lv] = w
        for k, ws in local.items():
            vs = sorted(ws)
            parts[k] = barycenter_pole(building.parts[k], vs, [ws[v] for v in vs])
        return JoinPole(tuple(parts))
    chart = building.common_apartment(sigma, sigma)
    return Pole(chart, chart.cx.point({chart.from_b[v]: Fraction(w) for v, w in zip(sigma, weights)}))


def pole_from_frame(building, frame, carrier_subsets, weights) -> Pole:
    """Pole given by a frame, carrier vertices as subsets of frame indices, and weights."""
    if isinstance(building, ThinBuilding):
        chart = building.chart_through(None, None)
    else:
        chart = building.chart_from_frame(frame)
    cx = chart.cx
    ws = {cx.vid[frozenset(S)]: Fraction(w) for S, w in zip(carrier_subsets, weights)}
    return Pole(chart, cx.point(ws))


@dataclass(frozen=True)
class VertexClassification:
    """Per-vertex comparison of d(x, v) with a radius (pi/2 unless stated)."""

    cls: Mapping[int, Cmp]
    antipodal: frozenset = field(default_factory=frozenset)

    def of(self, kind: Cmp) -> frozenset:
        return frozenset(v for v, c in self.cls.items() if c == kind)

    @property
    def gt(self) -> frozenset:
        return self.of(GT)

    @property
    def eq(self) -> frozenset:
        return self.of(EQ)

    @property
    def lt(self) -> frozenset:
        return self.of(LT)

    @property
    def ge(self) -> frozenset:
        return self.gt | self.eq

    def restrict(self, vertices: Iterable[int]) -> "VertexClassification":
        vs = set(vertices)
        return VertexClassification({v: c for v, c in self.cls.items() if v in vs},
                                    self.antipodal & vs)

    def counts(self) -> dict[str, int]:
        return {"LT": len(self.lt), "EQ": len(self.eq), "GT": len(self.gt)}

    def to_json(self) -> dict:
        return {"classes": {str(v): self.cls[v].name for v in sorted(self.cls)},
                "antipodal": sorted(self.antipodal)}


def _centre_chamber(pole: Pole) -> frozenset:
    cx = pole.chart.cx
    return pole.chart.push(cx.complex.facets_containing(pole.point.carrier)[0])


def retracted_vector(building, pole: Pole, v: int, C=None, D=None) -> tuple[int, ...]:
    chart = pole.chart
    if v in chart.from_b:
        c = chart.from_b[v]
    else:
        C = _centre_chamber(pole) if C is None else C
        (c,) = building.retract_to_coxeter(chart, C, [v], D)
    return chart.cx.vectors[c]


def _sign_to_cmp(s) -> Cmp:
    # cos > 0 means d < pi/2
    return Cmp(-int(s))


def classify(building, x: Pole | JoinPole) -> VertexClassification:
    """LT / EQ / GT of d(x, v) against pi/2 for every vertex."""
    if isinstance(building, JoinBuilding):
        return _classify_join(building, x, None)
    C = _centre_chamber(x)
    cls, anti = {}, set()
    for v in building.complex.vertices:
        vec = retracted_vector(building, x, v, C)
        cls[v] = _sign_to_cmp(cos_sign(x.point, vec))
        if antipodal_test(x.point, vec):
            anti.add(v)
    return VertexClassification(cls, frozenset(anti))


def classify_cap(building, x: Pole | JoinPole, t) -> VertexClassification:
    """LT / EQ / GT of d(x, v) against the radius arccos(t), i.e. cos d > t, = t, < t."""
    t = Fraction(t)
    if not -1 < t < 1:
        raise ValueError("threshold must lie in (-1, 1)")
    if isinstance(building, JoinBuilding):
        return _classify_join(building, x, t)
    C = _centre_chamber(x)
    cls, anti = {}, set()
    for v in building.complex.vertices:
        vec = retracted_vector(building, x, v, C)
        cls[v] = Cmp(-int(cmp_cos_threshold(x.point, vec, t)))
        if antipodal_test(x.point, vec):
            anti.add(v)
    return VertexClassification(cls, frozenset(anti))


def _classify_join(building: JoinBuilding, x: JoinPole, t) -> VertexClassification:
    active = [k for k, p in enumerate(x.parts) if p is not None]
    if not active:
        raise ValueError("join pole has no component")
    if t is not None and t != 0 and len(active) > 1:
        raise NotImplementedError("cap thresholds need a pole inside a single factor")
    cls, anti = {}, set()
    for k, f in enumerate(building.parts):
        off = building.voff[k]
        if x.parts[k] is None:
            # cos d = 0 for vertices of a factor the pole does not meet
            c0 = EQ if t is None or t == 0 else (LT if t < 0 else GT)
            for v in f.complex.vertices:
                cls[v + off] = c0
            continue
        sub = classify(f, x.parts[k]) if t is None else classify_cap(f, x.parts[k], t)
        for v, c in sub.cls.items():
            cls[v + off] = c
        if len(active) == 1:
            anti.update(v + off for v in sub.antipodal)
    return VertexClassification(cls, frozenset(anti))


def classify_with_choices(building, x: Pole, v: int, C, D, t=None) -> tuple[Cmp, bool]:
    vec = retracted_vector(building, x, v, C, D) if v not in x.chart.from_b else \
        x.chart.cx.vectors[x.chart.from_b[v]]
    if t is None:
        c = _sign_to_cmp(cos_sign(x.point, vec))
    else:
        c = Cmp(-int(cmp_cos_threshold(x.point, vec, t)))
    return c, antipodal_test(x.point, vec)


def wellposedness_audit(building, x: Pole | JoinPole, sample: int | None = None,
                        seed: int = 0, t=None) -> dict:
    """Recompute every vertex class under all admissible (D, C) choices."""
    if isinstance(building, JoinBuilding):
        reports = [wellposedness_audit(f, p, sample, seed, t)
                   for f, p in zip(building.parts, x.parts) if p is not None]
        return {
            "vertices": sum(r["vertices"] for r in reports),
            "choices": sum(r["choices"] for r in reports),
            "disagreements": [d for r in reports for d in r["disagreements"]],
        }
    verts = list(building.complex.vertices)
    if sample is not None and sample < len(verts):
        verts = sorted(random.Random(seed).sample(verts, sample))
    cx = x.chart.cx
    centres = [x.chart.push(F) for F in cx.complex.facets_containing(x.point.carrier)]
    reference = classify(building, x) if t is None else classify_cap(building, x, t)
    choices = 0
    bad = []
    for v in verts:
        seen = set()
        for C in centres:
            for D in building.complex.facets_containing([v]):
                seen.add(classify_with_choices(building, x, v, C, D, t))
                choices += 1
        expected = (reference.cls[v], v in reference.antipodal)
        if seen != {expected}:
            bad.append({"vertex": v, "outcomes": sorted((c.name, a) for c, a in seen)})
    return {"vertices": len(verts), "choices": choices, "disagreements": bad}


def vertex_cos_sign(building, u: int, v: int):
    """Sign of cos d(u, v) for two vertices, via a common apartment."""

    if isinstance(building, JoinBuilding):
        ku, lu = building.factor_of(u)
        kv, lv = building.factor_of(v)
        if ku != kv:
            return Sign.ZERO
        return vertex_cos_sign(building.parts[ku], lu, lv)
    chart = building.common_apartment([u], [v])
    cx = chart.cx
    return cos_sign(cx.vectors[chart.from_b[u]], cx.vectors[chart.from_b[v]])
