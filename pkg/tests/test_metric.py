import random
from fractions import Fraction

import numpy as np
import pytest

from hemilab.coxeter import Sign
from hemilab.metric import (barycenter_pole, classify, classify_cap, pole_from_frame, vertex_pole,
                            vertex_cos_sign, wellposedness_audit)


def float_classes(B, x):
    """Classes from floating-point cosines in a common apartment with every vertex."""
    out = {}
    for v in B.complex.vertices:
        chart = B.find_apartment_containing([x.carrier, {v}])
        y = x.moved_to(chart)
        a = np.array(y.point.direction, float)
        b = np.array(chart.cx.vectors[chart.from_b[v]], float)
        c = a @ b / np.linalg.norm(a) / np.linalg.norm(b)
        out[v] = "GT" if c < -1e-12 else ("LT" if c > 1e-12 else "EQ")
    return out


def test_hexagon_vertex_pole(hexagon):
    cls = classify(hexagon, vertex_pole(hexagon, 0))
    assert cls.counts() == {"LT": 3, "EQ": 0, "GT": 3}
    assert len(cls.antipodal) == 1


def test_fano_counts(fano):
    for v in fano.complex.vertices:
        assert classify(fano, vertex_pole(fano, v)).counts() == {"LT": 4, "EQ": 0, "GT": 10}
    for e in fano.complex.simplices_of_dim(1):
        assert classify(fano, barycenter_pole(fano, e)).counts() == {"LT": 2, "EQ": 4, "GT": 8}


@pytest.mark.parametrize("which", ["vertex", "edge"])
def test_classes_match_float_oracle(pg32, which):
    rng = random.Random(7)
    X = pg32.complex
    for _ in range(3):
        if which == "vertex":
            x = vertex_pole(pg32, rng.choice(X.vertices))
        else:
            x = barycenter_pole(pg32, rng.choice(X.simplices_of_dim(1)))
        cls = classify(pg32, x)
        ref = float_classes(pg32, x)
        assert {v: c.name for v, c in cls.cls.items()} == ref


def test_weighted_barycenter(fano):
    e = sorted(fano.complex.simplices_of_dim(1)[0])
    heavy = classify(fano, barycenter_pole(fano, e, [Fraction(9, 10), Fraction(1, 10)]))
    # close to a vertex: no equator vertex, like the vertex pole
    assert heavy.counts()["EQ"] == 0


def test_frame_pole_matches_vertex_pole(fano):
    frame = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    x = pole_from_frame(fano, frame, [{1}], [1])
    v = next(iter(x.carrier))
    assert classify(fano, x).cls == classify(fano, vertex_pole(fano, v)).cls


def test_edge_length_exhaustive(fano, pg32, pg23):
    for B in (fano, pg32, pg23):
        for e in B.complex.simplices_of_dim(1):
            u, v = sorted(e)
            assert vertex_cos_sign(B, u, v) != Sign.NEG


def test_wellposedness(fano, pg32):
    for B, x in ((fano, barycenter_pole(fano, fano.complex.simplices_of_dim(1)[0])),
                 (pg32, vertex_pole(pg32, 0))):
        audit = wellposedness_audit(B, x, sample=40)
        assert audit["disagreements"] == []
        assert audit["choices"] > audit["vertices"]


def test_cap_classification_thresholds(fano):
    x = vertex_pole(fano, 0)
    at0 = classify_cap(fano, x, 0)
    assert at0.cls == classify(fano, x).cls
    # cos d in {1, 1/2, -1/2, -1} for a vertex pole on the hexagon
    half = classify_cap(fano, x, Fraction(1, 2))
    assert half.counts()["EQ"] == 3
    assert half.counts()["LT"] == 1


def test_join_pole_factors(s0_fano):
    x = vertex_pole(s0_fano, 0)
    cls = classify(s0_fano, x)
    assert cls.counts() == {"LT": 1, "EQ": 14, "GT": 1}
