from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hemilab.complex import (ComplexError, SimplicialComplex, empty_complex, from_simplices,
                             intersection, join, union)

from conftest import untyped


def simplex_boundary(n):
    return untyped([frozenset(c) for c in combinations(range(n + 2), n + 1)])


def test_facets_are_maximal_and_sorted():
    X = untyped([{0, 1}, {0}, {1, 2}, {0, 1}])
    assert X.facets == (frozenset({0, 1}), frozenset({1, 2}))
    assert X.f_vector() == (3, 2)
    assert X.dim() == 1


def test_empty_complex_has_only_empty_simplex():
    E = empty_complex()
    assert E.is_empty()
    assert E.dim() == -1
    assert E.simplices() == (frozenset(),)


def test_missing_type_rejected():
    with pytest.raises(ComplexError):
        SimplicialComplex([{0, 1}], {0: 1})


def test_star_link_of_octahedron():
    # boundary of the cross-polytope: vertices i and i+3 antipodal
    facets = [frozenset({a, b, c}) for a in (0, 3) for b in (1, 4) for c in (2, 5)]
    X = SimplicialComplex(facets, {v: v % 3 for v in range(6)})
    lk = X.link({0})
    assert lk.f_vector() == (4, 4)
    assert set(X.star({0}).vertices) == {0, 1, 2, 4, 5}
    assert X.link({0, 1}).facets == (frozenset({2}), frozenset({5}))
    bd = X.boundary_of_star({0})
    assert bd == lk


def test_full_subcomplex_is_full():
    X = simplex_boundary(2)
    Y = X.full_subcomplex({0, 1, 2})
    assert Y.facets == (frozenset({0, 1, 2}),)


def test_join_of_two_s0_is_a_square():
    A = SimplicialComplex([{0}, {1}], {0: 1, 1: 1})
    B = SimplicialComplex([{2}, {3}], {2: 2, 3: 2})
    J = join(A, B)
    assert J.f_vector() == (4, 4)
    with pytest.raises(ComplexError):
        join(A, A)


def test_union_intersection():
    A = untyped([{0, 1}, {1, 2}])
    B = untyped([{1, 2}, {2, 3}])
    assert union(A, B).f_vector() == (4, 3)
    assert intersection(A, B).facets == (frozenset({1, 2}),)
    assert A <= union(A, B)


def test_json_roundtrip():
    X = simplex_boundary(3)
    Y = SimplicialComplex.from_json(X.to_json())
    assert X == Y
    assert X.dumps() == Y.dumps()


small_facets = st.lists(st.frozensets(st.integers(0, 7), min_size=1, max_size=4),
                        min_size=1, max_size=8)


@given(small_facets)
@settings(max_examples=150, deadline=None)
def test_simplices_closed_under_faces(facets):
    X = untyped(facets)
    S = set(X.simplices())
    for s in S:
        for v in s:
            assert s - {v} in S
    assert sum(X.f_vector()) == len(S) - 1


@given(small_facets)
@settings(max_examples=150, deadline=None)
def test_components_match_networkx(facets):
    X = untyped(facets)
    G = nx.Graph()
    G.add_nodes_from(X.vertices)
    for f in X.facets:
        fl = sorted(f)
        G.add_edges_from(zip(fl, fl[1:]))
    assert sorted(map(sorted, X.components())) == sorted(map(sorted, nx.connected_components(G)))


@given(small_facets, st.data())
@settings(max_examples=100, deadline=None)
def test_link_star_identity(facets, data):
    X = untyped(facets)
    s = data.draw(st.sampled_from(list(X.simplices())))
    lk, star = X.link(s), X.star(s)
    # lk(s) = { t in st(s) : t disjoint from s }, and st(s) = s * lk(s)
    want = {t for t in star.simplices() if not (t & s)}
    assert set(lk.simplices()) == want
    assert {t | s for t in lk.simplices()} == {t for t in X.simplices() if s <= t}


def test_from_simplices_keeps_given_types():
    X = from_simplices([{0, 1}, {2}], {0: 1, 1: 2, 2: 1})
    assert X.vtype == {0: 1, 1: 2, 2: 1}
