import random
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from hemilab.coxeter import SizeBoundError
from hemilab.homology import (ChainComplex, invariant_factors, is_homology_spherical,
                              is_homotopy_CM, pi1_trivial, profile_gcd_check, reduced_homology,
                              smith_normal_form)

from conftest import untyped

# 6-vertex real projective plane
RP2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1), (1, 2, 4), (2, 3, 5),
       (3, 4, 1), (4, 5, 2), (5, 1, 3)]


def torus():
    # 7-vertex Moebius torus
    return untyped([frozenset({i % 7, (i + 1) % 7, (i + 3) % 7}) for i in range(7)]
                   + [frozenset({i % 7, (i + 2) % 7, (i + 3) % 7}) for i in range(7)])


def sphere(n):
    return untyped([frozenset(c) for c in combinations(range(n + 2), n + 1)])


def matmul(A, B):
    return [[sum(a * b for a, b in zip(r, c)) for c in zip(*B)] for r in A]


def test_snf_matches_sympy():
    rng = random.Random(0)
    for _ in range(80):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        U, D, V = smith_normal_form(M)
        assert matmul(matmul(U, D), V) == M
        assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
        diag = [D[i][i] for i in range(min(m, n)) if D[i][i]]
        assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
        S = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
        ref = [abs(S[i, i]) for i in range(min(m, n)) if S[i, i]]
        assert sorted(diag) == sorted(ref)
        assert invariant_factors(M) == diag


def test_known_spaces():
    assert reduced_homology(sphere(0)).betti == {-1: 0, 0: 1}
    p = reduced_homology(sphere(2))
    assert p.betti[2] == 1 and p.betti[1] == 0 and p.betti[0] == 0
    t = reduced_homology(torus())
    assert (t.betti[0], t.betti[1], t.betti[2]) == (0, 2, 1)
    rp = reduced_homology(untyped([frozenset(f) for f in RP2]))
    assert rp.betti[1] == 0 and rp.betti[2] == 0
    assert list(rp.torsion[1]) == [2]
    assert profile_gcd_check(rp)


def test_simplex_is_contractible():
    X = untyped([frozenset(range(4))])
    assert reduced_homology(X).is_zero()
    assert is_homotopy_CM(X).homotopy_CM


def test_empty_complex_is_minus_one_sphere():
    from hemilab.complex import empty_complex
    E = empty_complex()
    assert reduced_homology(E).betti == {-1: 1}
    assert is_homology_spherical(E, -1)


def test_dd_zero():
    assert ChainComplex(torus()).check_dd()


def test_buildings(fano, pg32, hexagon):
    assert reduced_homology(fano.complex).betti == {-1: 0, 0: 0, 1: 8}
    assert reduced_homology(pg32.complex).betti[2] == 64
    assert reduced_homology(hexagon.complex).betti[1] == 1
    v = is_homotopy_CM(fano.complex)
    assert v.homotopy_CM and v.links_checked > 0


def test_cm_rejects_wedge():
    # two triangles glued at a vertex: the vertex link is two disjoint edges
    X = untyped([{0, 1, 2}, {0, 3, 4}])
    v = is_homotopy_CM(X)
    assert not v.homotopy_CM
    assert v.link_failures
    # any connected graph is CM, a disconnected one is not
    bouquet = untyped([{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}])
    assert is_homotopy_CM(bouquet).homotopy_CM
    assert not is_homotopy_CM(untyped([{0, 1}, {2, 3}])).homotopy_CM


def test_size_bound():
    with pytest.raises(SizeBoundError):
        reduced_homology(sphere(4), max_cells=10)


def test_pi1():
    assert pi1_trivial(sphere(2)) == "trivial"
    assert pi1_trivial(untyped([frozenset(range(4))])) == "trivial"
    assert pi1_trivial(torus()) == "unknown"


@given(st.lists(st.frozensets(st.integers(0, 7), min_size=1, max_size=4), min_size=1, max_size=9))
@settings(max_examples=120, deadline=None)
def test_euler_characteristic(facets):
    X = untyped(facets)
    p = reduced_homology(X)
    chi = sum((-1) ** k * f for k, f in enumerate(X.f_vector())) - 1
    assert chi == sum((-1) ** k * b for k, b in p.betti.items())
    assert p.betti.get(0, 0) == len(X.components()) - 1
