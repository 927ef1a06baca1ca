import random

import networkx as nx
import pytest

from hemilab.building import (FlagBuilding, chart_opposite,
                              chart_star, find_apartment_with_intersection,
                              search_apartment_with_intersection)
from hemilab.coxeter import SizeBoundError


def chamber_graph(B):
    G = nx.Graph()
    X = B.complex
    G.add_nodes_from(X.facets)
    for C in X.facets:
        for v in C:
            for D in X.facets_containing(C - {v}):
                if D != C:
                    G.add_edge(C, D)
    return G


@pytest.fixture(scope="module")
def fano_graph(fano):
    return chamber_graph(fano), dict(nx.all_pairs_shortest_path_length(chamber_graph(fano)))


def test_fano_counts(fano):
    X = fano.complex
    assert X.f_vector() == (14, 21)
    assert sorted(X.vtype.values()).count(1) == 7
    assert fano.panel_multiplicities() == [3]
    assert fano.is_thick()


def test_pg32_counts(pg32):
    assert pg32.complex.f_vector()[0] == 15 + 35 + 15
    assert len(pg32.complex.facets) == 15 * 7 * 3
    assert pg32.panel_multiplicities() == [3]


def test_pg23_panels(pg23):
    assert pg23.panel_multiplicities() == [4]
    assert len(pg23.complex.facets) == 13 * 4


def test_thin_is_not_thick(hexagon):
    assert not hexagon.is_thick()
    assert hexagon.panel_multiplicities() == [2]


def test_prime_fields_only():
    with pytest.raises(NotImplementedError):
        FlagBuilding(2, 4)
    with pytest.raises(SizeBoundError):
        FlagBuilding(4, 3, max_chambers=1000)


def test_weyl_length_is_gallery_distance(fano, fano_graph):
    G, dist = fano_graph
    for C in fano.complex.facets:
        for D in fano.complex.facets:
            w = fano.weyl_distance(C, D)
            assert fano.gallery_distance(C, D) == dist[C][D]
            assert (dist[C][D] == 3) == fano.opposite(C, D)
            assert len(w) == 3


def test_opposite_chamber_count(fano, pg32):
    # q^(number of positive roots) opposites
    for B, k in ((fano, 3), (pg32, 6)):
        C = B.complex.facets[0]
        assert len(B.opposite_chambers(C)) == 2 ** k


def test_apartments(fano):
    charts = fano.enumerate_apartments()
    assert len(charts) == 28
    for A in charts:
        img = A.image_complex()
        assert img.f_vector() == (6, 6)
        assert A.push_complex(A.cx.complex) == img


def test_proj_is_gate(fano, fano_graph):
    G, dist = fano_graph
    X = fano.complex
    for P in X.simplices_of_dim(0):
        for D in X.facets:
            got = fano.proj(P, D)
            near = min(X.facets_containing(P), key=lambda C: dist[C][D])
            assert got == near
            for C in X.facets_containing(P):
                if C != near:
                    assert dist[C][D] == dist[near][D] + 1


def test_conv_of_chambers_is_union_of_minimal_galleries(fano, fano_graph):
    G, dist = fano_graph
    X = fano.complex
    rng = random.Random(1)
    for _ in range(60):
        C, D = rng.sample(X.facets, 2)
        hull = fano.conv(C, D)
        want = {E for E in X.facets if dist[C][E] + dist[E][D] == dist[C][D]}
        assert set(hull.facets) == want


def test_retraction_fixes_apartment_and_preserves_distance_from_centre(fano, fano_graph):
    G, dist = fano_graph
    chart = fano.enumerate_apartments()[0]
    C = chart.push(chart.cx.complex.facets[0])
    for D in fano.complex.facets:
        rho = fano.retraction(chart, C, D)
        assert chart.contains(rho)
        assert dist[C][rho] == dist[C][D]
        if chart.contains(D):
            assert rho == D


def test_opposites_in_chart_are_opposite(pg32):
    chart = pg32.enumerate_apartments(samples=5)[0]
    for s in chart.cx.complex.simplices():
        if s:
            b = chart.push(s)
            assert pg32.opposite(b, chart_opposite(chart, b))


def test_apartment_search_hits_exact_intersections(fano):
    for chart in fano.enumerate_apartments()[:6]:
        for v in sorted(chart.image)[:2]:
            K = chart_star(chart, {v})
            other = find_apartment_with_intersection(fano, chart, K)
            common = chart.image & other.image
            assert fano.complex.full_subcomplex(common) == K


def test_apartment_search_rejects_non_chamber_complexes(fano):
    chart = fano.enumerate_apartments()[0]
    v = min(chart.image)
    with pytest.raises(ValueError):
        search_apartment_with_intersection(fano, chart, fano.complex.full_subcomplex({v}))


def test_join_building(s0_fano):
    X = s0_fano.complex
    assert X.f_vector() == (16, 14 * 2 + 21, 42)
    assert not s0_fano.is_thick()
    assert len(s0_fano.parts) == 2
    for v in X.vertices:
        k, lv = s0_fano.factor_of(v)
        assert lv + s0_fano.voff[k] == v
