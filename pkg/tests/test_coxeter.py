import math
import random
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hemilab.coxeter import (Cmp, CoxeterComplex, Sign, SizeBoundError, antipodal_test,
                             apartment_angle_oracle, cmp_cos_pairs, cmp_cos_threshold, cos_sign,
                             distance, perm_compose, perm_inverse, perm_length)


def cosine(a, b):
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(a @ b / np.linalg.norm(a) / np.linalg.norm(b))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_counts(n):
    cx = CoxeterComplex(n)
    assert len(cx.complex.facets) == math.factorial(n + 1)
    assert len(cx.complex.vertices) == 2 ** (n + 1) - 2
    assert cx.datum.order == math.factorial(n + 1)


def test_rank_bound():
    with pytest.raises(SizeBoundError):
        CoxeterComplex(6)


def test_hexagon_distances():
    cx = CoxeterComplex(2)
    u = cx.vectors[cx.vid[frozenset({1})]]
    got = sorted(round(distance(u, cx.vectors[v]) / (math.pi / 3)) for v in cx.complex.vertices)
    assert got == [0, 1, 1, 2, 2, 3]


def test_vectors_sum_to_zero_and_opposition():
    cx = CoxeterComplex(3)
    for v in cx.complex.vertices:
        assert sum(cx.vectors[v]) == 0
        w = cx.opposite_vertex(v)
        assert antipodal_test(cx.vectors[v], cx.vectors[w])


def test_longest_element_has_max_length():
    for n in (2, 3):
        cx = CoxeterComplex(n)
        w0 = cx.datum.longest_element
        assert perm_length(w0) == n * (n + 1) // 2
        for p in permutations(range(1, n + 2)):
            assert perm_compose(p, perm_inverse(p)) == tuple(range(1, n + 2))


def test_chamber_perm_roundtrip():
    cx = CoxeterComplex(3)
    for C in cx.complex.facets:
        assert cx.chamber_of_perm(cx.perm_of_chamber(C)) == C


vec = st.lists(st.integers(-6, 6), min_size=4, max_size=4).filter(any)


@given(vec, vec)
@settings(max_examples=300)
def test_cos_sign_matches_float(a, b):
    c = cosine(a, b)
    s = cos_sign(a, b)
    if abs(c) > 1e-12:
        assert s == (Sign.POS if c > 0 else Sign.NEG)
    else:
        assert s == Sign.ZERO


@given(vec, vec, st.fractions(min_value=-1, max_value=1, max_denominator=12))
@settings(max_examples=300)
def test_threshold_matches_float(a, b, t):
    c = cosine(a, b)
    got = cmp_cos_threshold(a, b, t)
    if abs(c - float(t)) > 1e-9:
        assert got == (Cmp.GT if c > t else Cmp.LT)


@given(vec, vec, vec, vec)
@settings(max_examples=300)
def test_pairs_matches_float(a, b, c, d):
    x, y = cosine(a, b), cosine(c, d)
    got = cmp_cos_pairs(a, b, c, d)
    if abs(x - y) > 1e-9:
        assert got == (Cmp.GT if x > y else Cmp.LT)


def test_threshold_exact_on_ties():
    # cos of the hexagon edge is exactly 1/2
    cx = CoxeterComplex(2)
    u, v = cx.vectors[cx.vid[frozenset({1})]], cx.vectors[cx.vid[frozenset({1, 2})]]
    assert cmp_cos_threshold(u, v, Fraction(1, 2)) == Cmp.EQ
    assert cmp_cos_pairs(u, v, v, u) == Cmp.EQ


def test_points_and_angle_oracle():
    cx = CoxeterComplex(3)
    rng = random.Random(3)
    for _ in range(200):
        C = sorted(rng.choice(cx.complex.facets))
        p = cx.point({v: rng.randint(1, 5) for v in C})
        assert p.carrier == frozenset(C)
        # the point is a positive combination of its carrier vectors
        M = np.array([cx.vectors[v] for v in C], float).T
        coef, *_ = np.linalg.lstsq(M, np.array(p.direction, float), rcond=None)
        assert (coef > 0).all()
    x, y = cx.vertex_point(0), cx.vertex_point(cx.opposite_vertex(0))
    with pytest.raises(ValueError):
        apartment_angle_oracle(x, y, cx.vertex_point(1))
