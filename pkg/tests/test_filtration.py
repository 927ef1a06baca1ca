import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hemilab.complex import join
from hemilab.filtration import LEMMA_CHECKS, Filtration, FiltrationError
from hemilab.metric import barycenter_pole, vertex_pole
from hemilab.specs import expand_poles, pole_from_spec


def fano_poles(fano):
    return [pole_from_spec(fano, d) for d in expand_poles(fano, "all")]


def test_fano_midpoint_structure(fano):
    e = fano.complex.simplices_of_dim(1)[0]
    F = Filtration(fano, barycenter_pole(fano, e))
    assert F.N == 1
    eq = set(F.equator.vertices)
    assert F.image == [frozenset()] + sorted((frozenset({q}) for q in eq), key=sorted)
    assert all(F.heights[frozenset({q})] == 1 for q in eq)
    assert F.stage(0) == F.gt
    assert F.stage(1) == F.ge
    # relative stars of distinct equator vertices are disjoint and cover F_1 minus F_0
    stars = [set(F.relative_star(frozenset({q}))) for q in eq]
    assert sum(len(s) for s in stars) == len(set().union(*stars))
    assert set().union(*stars) == set(F.ge.simplices()) - set(F.gt.simplices())


def test_restriction_examples(fano):
    e = fano.complex.simplices_of_dim(1)[0]
    F = Filtration(fano, barycenter_pole(fano, e))
    gt_edge = next(s for s in F.gt.simplices_of_dim(1))
    assert F.restriction(gt_edge) == frozenset()
    for q in F.equator.vertices:
        assert F.restriction({q}) == {q}
        for s in fano.complex.star({q}).simplices_of_dim(1):
            if s <= F.cls.ge:
                assert F.restriction(s) == {q}
    with pytest.raises(FiltrationError):
        F.restriction({min(F.cls.lt)})


def test_order_only_on_image(fano):
    e = fano.complex.simplices_of_dim(1)[0]
    F = Filtration(fano, barycenter_pole(fano, e))
    gt = frozenset({min(F.cls.gt)})
    with pytest.raises(FiltrationError):
        F.preceq(gt, frozenset())


def test_vertex_pole_is_trivial(fano):
    F = Filtration(fano, vertex_pole(fano, 0))
    assert F.N == 0
    assert F.image == [frozenset()]
    with pytest.raises(FiltrationError):
        F.stage(1)


@pytest.mark.parametrize("name", sorted(LEMMA_CHECKS))
def test_lemmas_exhaustive_on_fano(fano, name):
    for x in fano_poles(fano):
        bad, n = LEMMA_CHECKS[name](Filtration(fano, x))
        assert bad == []
        assert n >= 0


@pytest.mark.parametrize("sel", ["types"])
def test_lemmas_on_pg32(pg32, sel):
    for d in expand_poles(pg32, sel):
        F = Filtration(pg32, pole_from_spec(pg32, d))
        for name, fn in LEMMA_CHECKS.items():
            bad, _ = fn(F)
            assert bad == [], (d, name)


@given(st.data())
@settings(max_examples=12, deadline=None)
def test_heights_and_stages_on_random_edge_poles(pg32, data):
    e = data.draw(st.sampled_from(pg32.complex.simplices_of_dim(1)))
    F = Filtration(pg32, barycenter_pole(pg32, e))
    assert max(F.heights.values()) <= F.N
    assert F.stage(0) == F.gt
    assert F.stage(F.N) == F.ge
    for t in F.image:
        if t:
            assert F.relative_link(t) == F.relative_link_via_induced(t)


def test_join_stage_zero(s0_fano):
    x = vertex_pole(s0_fano, 0)
    F = Filtration(s0_fano, x)
    assert F.stage(0) == join(F.gt, F.hor)
    assert F.stage(F.N) == F.ge
