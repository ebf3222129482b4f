from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stableforms import linalg
from stableforms.simplicial import (KNOWN_BETTI, STANDARD, Cochain, ComplexError, PolyForm, SimplicialComplex,
                                    barycentric, build_splitting, coboundary, coboundary_matrix, integrate,
                                    whitney_check, whitney_integral, whitney_map, whitney_on)

NAMES = sorted(STANDARD)


@pytest.mark.parametrize("name", NAMES)
def test_betti_numbers(name):
    S = build_splitting(STANDARD[name]())
    assert S.betti() == KNOWN_BETTI[name]


def test_face_closure():
    K = SimplicialComplex([(0, 1, 2)])
    assert K.simplices[1] == [(0, 1), (0, 2), (1, 2)]
    assert K.simplices[0] == [(0,), (1,), (2,)]
    assert SimplicialComplex([(0, 1)], vertex_count=4).count(0) == 4


def test_complex_errors():
    with pytest.raises(ComplexError):
        SimplicialComplex([])
    with pytest.raises(ComplexError):
        SimplicialComplex([(0, 0, 1)])
    with pytest.raises(ComplexError):
        SimplicialComplex([(0, 3)], vertex_count=2)
    with pytest.raises(ComplexError):
        SimplicialComplex([(0, 1)], coords=[[0]])


def test_coboundary_of_vertex_indicator_on_circle():
    K = STANDARD["circle"]()
    assert K.simplices[1] == [(0, 1), (0, 2), (1, 2)]
    dc = coboundary(Cochain.indicator(K, (0,)))
    assert dc.values == (-1, -1, 0)


@pytest.mark.parametrize("name", NAMES)
def test_d_squared_vanishes(name):
    K = STANDARD[name]()
    for p in range(K.dim - 1):
        assert linalg.is_zero(linalg.matmul(coboundary_matrix(K, p + 1), coboundary_matrix(K, p)))


@pytest.mark.parametrize("name", NAMES)
def test_splitting_identities(name):
    K = STANDARD[name]()
    S = build_splitting(K)
    n = K.dim
    for p, deg in enumerate(S.degrees):
        N = deg.size
        Id = linalg.identity(N)
        assert linalg.add(linalg.add(deg.proj_harmonic, deg.proj_exact), deg.proj_coexact) == Id
        for P in (deg.proj_harmonic, deg.proj_exact, deg.proj_coexact):
            assert linalg.matmul(P, P) == P
        # d delta + delta d is the identity on the exact plus coexact part
        lap = linalg.zeros(N, N)
        if p > 0:
            lap = linalg.add(lap, linalg.matmul(S.d[p - 1], S.degrees[p - 1].delta))
        if p < n:
            lap = linalg.add(lap, linalg.matmul(deg.delta, S.d[p]))
        assert lap == linalg.add(deg.proj_exact, deg.proj_coexact)
        if 0 < p < n:
            assert linalg.is_zero(linalg.matmul(S.degrees[p - 1].delta, deg.delta))
    assert sum((-1) ** p * b for p, b in enumerate(S.betti())) == K.euler_characteristic()


@pytest.mark.parametrize("name", ["circle", "torus", "moebius"])
def test_splitting_is_deterministic(name):
    a = build_splitting(STANDARD[name]())
    b = build_splitting(STANDARD[name]())
    for x, y in zip(a.degrees, b.degrees):
        assert x.delta == y.delta and x.harmonic == y.harmonic and x.proj_exact == y.proj_exact


@st.composite
def random_complexes(draw):
    m = draw(st.integers(2, 6))
    cand = [s for r in (2, 3) for s in combinations(range(m), r)]
    chosen = draw(st.lists(st.sampled_from(cand), min_size=1, max_size=8, unique=True))
    return SimplicialComplex(chosen, vertex_count=m)


@settings(max_examples=40)
@given(random_complexes())
def test_random_complexes_split(K):
    S = build_splitting(K)  # verifies every identity
    assert S.betti()[0] >= 1
    assert sum((-1) ** p * b for p, b in enumerate(S.betti())) == K.euler_characteristic()


# -- Whitney forms ---------------------------------------------------------------------


@pytest.mark.parametrize("name", ["interval", "triangle", "tetrahedron", "octahedron"])
def test_whitney_identities(name):
    rep = whitney_check(STANDARD[name]())
    assert rep.passed, rep.failures()


def test_whitney_on_abstract_complex_uses_standard_embedding():
    rep = whitney_check(STANDARD["circle"]().with_standard_embedding())
    assert rep.passed


def test_whitney_integral_pairs_simplices():
    K = STANDARD["triangle"]()
    for s in K.simplices[1]:
        for t in K.simplices[1]:
            assert whitney_integral(K, s, t) == int(s == t)


def test_whitney_map_of_constant_is_one():
    K = STANDARD["triangle"]()
    m = len(K.coords[0])
    assert whitney_map(K, Cochain.ones(K, 0), (0, 1, 2)) == PolyForm(m, 0, {(): {(0,) * m: Fraction(1)}})


def test_barycentrics_sum_to_one_and_hit_vertices():
    K = STANDARD["tetrahedron"]()
    T = (0, 1, 2, 3)
    lam = barycentric(K, T)
    assert sum(c for c, _ in lam) == 1
    assert all(sum(l[i] for _, l in lam) == 0 for i in range(len(K.coords[0])))
    for j, v in enumerate(T):
        x = K.coords[v]
        vals = [c + sum(a * b for a, b in zip(l, x)) for c, l in lam]
        assert vals == [int(i == j) for i in range(4)]


def test_degenerate_simplex_rejected():
    K = SimplicialComplex([(0, 1, 2)], coords=[[0, 0], [1, 1], [2, 2]])
    with pytest.raises(ComplexError):
        whitney_on(K, (0, 1), (0, 1, 2))


def test_whitney_needs_coordinates():
    with pytest.raises(ComplexError):
        whitney_on(STANDARD["circle"](), (0, 1), (0, 1))


def test_integration_of_area_form():
    # dx ^ dy over the standard triangle has area 1/2
    K = SimplicialComplex([(0, 1, 2)], coords=[[0, 0], [1, 0], [0, 1]])
    area = PolyForm(2, 2, {(0, 1): {(0, 0): Fraction(1)}})
    assert integrate(K, area, (0, 1, 2)) == Fraction(1, 2)
    # x dx ^ dy integrates to 1/6
    xform = PolyForm(2, 2, {(0, 1): {(1, 0): Fraction(1)}})
    assert integrate(K, xform, (0, 1, 2)) == Fraction(1, 6)
