from fractions import Fraction

import pytest

from hemilab.building import ThinBuilding
from hemilab.complex import join
from hemilab.metric import barycenter_pole, classify, vertex_pole
from hemilab.supports import (CapComplement, Hemisphere, SupportError, cap_complement,
                              closed_hemisphere, equator, hemisphere, hor_ver,
                              induced_link_classification, is_reducible_by_chambers,
                              link_open_hemisphere, open_hemisphere, root_complement, supported)


def test_fano_vertex_pole(fano):
    x = vertex_pole(fano, 0)
    gt, ge = open_hemisphere(fano, x), closed_hemisphere(fano, x)
    assert gt == ge
    assert gt.f_vector() == (10, 12)
    assert equator(fano, x).is_empty()


def test_fano_midpoint(fano):
    e = fano.complex.simplices_of_dim(1)[0]
    x = barycenter_pole(fano, e)
    assert open_hemisphere(fano, x).f_vector() == (8, 8)
    assert closed_hemisphere(fano, x).f_vector() == (12, 16)
    eq = equator(fano, x)
    assert eq.f_vector() == (4,)
    assert len(eq.components()) == 4


def test_hexagon_open_hemisphere(hexagon):
    gt = open_hemisphere(hexagon, vertex_pole(hexagon, 0))
    assert gt.f_vector() == (3, 2)


def test_supported_subcomplexes_are_full(pg32):
    x = barycenter_pole(pg32, pg32.complex.simplices_of_dim(1)[3])
    for kind in ("GT", ">=", "="):
        S = hemisphere(pg32, x, kind)
        assert S.complex == pg32.complex.full_subcomplex(S.vertices)
    with pytest.raises(SupportError):
        Hemisphere(x, "LT")


def test_cap_at_zero_is_a_hemisphere(fano):
    for v in (0, 9):
        x = vertex_pole(fano, v)
        assert cap_complement(fano, x, 0).complex == closed_hemisphere(fano, x)
        assert cap_complement(fano, x, 0, closed=True).complex == open_hemisphere(fano, x)


def test_cap_half_removes_only_the_pole(fano):
    x = vertex_pole(fano, 0)
    S = cap_complement(fano, x, Fraction(1, 2))
    assert len(S.vertices) == 13
    assert 0 not in S.vertices
    assert S.exact


def test_negative_cap_is_advisory(fano):
    S = cap_complement(fano, vertex_pole(fano, 0), Fraction(-1, 4))
    assert not S.exact and S.notes


def test_supported_dispatch(fano):
    x = vertex_pole(fano, 3)
    assert supported(fano, CapComplement(x, Fraction(0))).complex == closed_hemisphere(fano, x)


def test_root_complements_on_hexagon():
    H = ThinBuilding(2)
    for root in H.cx.roots():
        open_half = root_complement(H, root).complex
        closed_half = root_complement(H, root, closed=True).complex
        assert open_half.f_vector() == (4, 3)
        assert closed_half.f_vector() == (2, 1)
        assert closed_half <= open_half

def test_root_complement_needs_thin(fano):
    with pytest.raises(SupportError):
        root_complement(fano, (1, 2))


def test_hor_ver_on_join(s0_fano):
    x = vertex_pole(s0_fano, 0)
    hor, ver = hor_ver(s0_fano, x)
    assert ver.f_vector() == (2,)
    assert hor.f_vector() == (14, 21)
    assert join(hor, ver) == s0_fano.complex
    assert open_hemisphere(s0_fano, x).f_vector() == (1,)


def test_hor_empty_for_irreducible(fano):
    hor, ver = hor_ver(fano, vertex_pole(fano, 0))
    assert hor.is_empty() and ver == fano.complex


def test_reducibility(fano, s0_fano, pg32):
    assert not is_reducible_by_chambers(fano)
    assert not is_reducible_by_chambers(pg32)
    assert is_reducible_by_chambers(s0_fano)


def test_induced_link_classification(fano):
    x = barycenter_pole(fano, fano.complex.simplices_of_dim(1)[0])
    cls = classify(fano, x)
    for q in sorted(cls.eq):
        sub = induced_link_classification(fano, cls, {q})
        lk = fano.complex.link({q})
        assert set(sub.cls) == set(lk.vertices)
        assert link_open_hemisphere(fano, cls, {q}) == lk.full_subcomplex(set(lk.vertices) & cls.gt)
    gt_vertex = min(cls.gt)
    with pytest.raises(SupportError):
        induced_link_classification(fano, cls, {gt_vertex})
