from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stableforms import linalg
from stableforms.builtins import (omega_plus, omega_minus, phi0, psi0, split_phi0, split_psi0, varpi_plus,
                                  varpi_minus, mu0, xi0, rho0, rho0_ambient)
from stableforms.forms import (DimensionMismatch, PForm, PseudoMetric, PVector, basis_indices, contract, epsilon_matrix,
                               epsilon_rank, evec, form, hook_volume, interior, iota_rank, power, pullback,
                               pushforward, theta, top_coefficient, unhook_volume, volume, wedge, hodge_star,
                               inner)
from stableforms.orbits import hitchin_endomorphism

from conftest import pforms, unimodular, vectors


def e(n, i):
    return [Fraction(int(j == i - 1)) for j in range(n)]


def test_canonical_form_is_structural():
    a = PForm(4, 2, {(2, 1): 3, (3, 4): 0, (1, 2): 1})
    assert a.terms == {(1, 2): Fraction(-2)}
    assert a == form(4, 2, [(-2, (1, 2))])
    assert PForm(3, 2, {(1, 1): 5}).is_zero()


def test_index_validation():
    with pytest.raises(ValueError):
        PForm(3, 2, {(1, 4): 1})
    with pytest.raises(ValueError):
        PForm(3, 2, {(1,): 1})


def test_wedge_of_basis_covectors():
    assert wedge(theta(3, 1), theta(3, 2)) == theta(3, 1, 2)
    assert wedge(theta(3, 2), theta(3, 1)) == -theta(3, 1, 2)


def test_wedge_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        wedge(theta(3, 1), theta(4, 1))


def test_wedge_past_top_degree_is_zero():
    assert wedge(theta(3, 1, 2), theta(3, 2, 3)).is_zero()
    assert wedge(theta(2, 1, 2), theta(2, 1)).p == 3


def test_omega_squared():
    assert power(omega_plus(2), 2) == 2 * theta(4, 1, 2, 3, 4)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_varpi_is_normalized_power(k):
    from math import factorial

    assert power(omega_plus(k), k - 1) / factorial(k - 1) == varpi_plus(k)
    assert -power(omega_minus(k), k - 1) / factorial(k - 1) == varpi_minus(k)


def test_interior_examples():
    assert interior(e(3, 1), theta(3, 1, 2, 3)) == theta(3, 2, 3)
    assert interior(e(7, 1), phi0()) == theta(7, 2, 3) + theta(7, 4, 5) + theta(7, 6, 7)
    with pytest.raises(ValueError):
        interior(e(3, 1), PForm(3, 0, {(): 1}))


def test_hitchin_map_of_parabolic_form():
    # (e2 -| rho0) ^ rho0 is a multiple of e5 -| theta^{234567}; expanding by hand
    # gives the two equal terms -theta^{37}^theta^{246} and theta^{46}^(-theta^{237})
    rho = rho0_ambient()
    out = wedge(interior(e(7, 2), rho), rho)
    vol6 = theta(7, 2, 3, 4, 5, 6, 7)
    assert out == 2 * interior(e(7, 5), vol6)
    K = hitchin_endomorphism(rho0())
    assert [K[r][0] for r in range(6)] == [0, 0, 0, 2, 0, 0]


@given(pforms(5, 2), pforms(5, 3), vectors(5))
def test_interior_is_an_antiderivation(a, b, v):
    lhs = interior(v, wedge(a, b))
    rhs = wedge(interior(v, a), b) + wedge(a, interior(v, b))  # deg a = 2 is even
    assert lhs == rhs


@given(pforms(5, 3), vectors(5))
def test_interior_squares_to_zero(a, v):
    assert interior(v, interior(v, a)).is_zero()


@given(st.integers(0, 4), st.integers(0, 4), st.data())
def test_graded_commutativity(p, q, data):
    n = 5
    a = data.draw(pforms(n, p))
    b = data.draw(pforms(n, q))
    assert wedge(a, b) == (-1) ** (p * q) * wedge(b, a)


@given(pforms(4, 1), pforms(4, 2), pforms(4, 1))
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(st.sampled_from([(4, 2, 3), (4, 3, 2), (5, 3, 3), (5, 2, 4), (6, 3, 4)]), st.data())
def test_swap_identity(shape, data):
    n, p, q = shape
    a = data.draw(pforms(n, p))
    b = data.draw(pforms(n, q))
    u = data.draw(vectors(n))
    assert wedge(interior(u, a), b) == (-1) ** (p - 1) * wedge(a, interior(u, b))


@given(st.integers(1, 3), st.data())
def test_hook_of_bivector_and_covector(k, data):
    n = 2 * k + 1
    vol = volume(n)
    coeffs = data.draw(st.lists(st.integers(-4, 4), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    mu = PVector(n, 2, dict(zip(basis_indices(n, 2), coeffs)))
    beta = data.draw(pforms(n, 1))
    xi = hook_volume(mu, vol)
    beta_vec = [beta.coeff((i,)) for i in range(1, n + 1)]
    assert wedge(beta, xi) == -hook_volume(interior(beta_vec, mu), vol)


def test_hook_volume_examples():
    from math import factorial

    for k in (2, 3, 4):
        n = 2 * k
        vol = power(omega_plus(k), k) / factorial(k)
        w = PVector(n, 2, {(2 * i - 1, 2 * i): 1 for i in range(1, k + 1)})
        assert hook_volume(w, vol) == varpi_plus(k)
        w_minus = PVector(n, 2, {(2 * i - 1, 2 * i): (-1 if i == 1 else 1) for i in range(1, k + 1)})
        assert vol == -power(omega_minus(k), k) / factorial(k)
        assert hook_volume(w_minus, vol) == varpi_minus(k)
    assert hook_volume(evec(4, 1, 2, 3, 4), volume(4)).terms == {(): 1}


@given(st.sampled_from([(6, 3), (7, 3), (6, 2), (5, 2)]), st.data())
def test_unhook_inverts_hook(shape, data):
    n, p = shape
    alpha = data.draw(pforms(n, n - p))
    c = data.draw(st.integers(1, 5))
    vol = volume(n, c)
    assert hook_volume(unhook_volume(alpha, vol), vol) == alpha


@given(st.sampled_from([(6, 3), (7, 3), (6, 2)]), st.data())
def test_hook_volume_equivariance(shape, data):
    n, p = shape
    F = data.draw(unimodular(n))
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(basis_indices(n, p)),
                                max_size=len(basis_indices(n, p))))
    w = PVector(n, p, dict(zip(basis_indices(n, p), coeffs)))
    vol = volume(n)
    assert hook_volume(pushforward(F, w), vol) == pullback(linalg.inverse(F), hook_volume(w, vol))


def test_pullback_examples():
    assert pullback(linalg.identity(7), phi0()) == phi0()
    lam = Fraction(5, 3)
    D = linalg.identity(3)
    D[0][0] = lam
    assert pullback(D, theta(3, 1, 2)) == lam * theta(3, 1, 2)


@given(unimodular(4), unimodular(4), pforms(4, 2))
def test_pullback_functorial(F, G, a):
    assert pullback(linalg.matmul(F, G), a) == pullback(G, pullback(F, a))


@given(unimodular(5), pforms(5, 2), pforms(5, 2))
def test_pullback_commutes_with_wedge(F, a, b):
    assert pullback(F, wedge(a, b)) == wedge(pullback(F, a), pullback(F, b))


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=4, max_size=4))
def test_pullback_of_volume_is_determinant(rows):
    F = [[Fraction(x) for x in r] for r in rows]
    assert pullback(F, volume(4)) == linalg.det(F) * volume(4)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_iota_and_epsilon_ranks(k):
    assert iota_rank(omega_plus(k)) == 2 * k
    assert iota_rank(mu0(k)) == 2 * k
    assert epsilon_rank(xi0(k)) == 2 * k
    # the kernel of beta -> beta ^ xi0 is spanned by theta^1
    ker = linalg.nullspace(epsilon_matrix(xi0(k)), 2 * k + 1)
    assert len(ker) == 1 and all(x == 0 for x in ker[0][1:])


def test_hodge_star_examples():
    g0 = PseudoMetric.diagonal([1] * 7)
    assert hodge_star(g0, phi0()) == psi0()
    sg0 = PseudoMetric.diagonal([1, 1, 1, -1, -1, -1, -1])
    assert hodge_star(sg0, split_phi0()) == split_psi0()
    assert hodge_star(PseudoMetric.diagonal([1, 1]), theta(2, 1)) == theta(2, 2)


def test_metric_rejects_degenerate():
    with pytest.raises(ValueError):
        PseudoMetric.diagonal([1, 0, 1])


@given(st.lists(st.sampled_from([1, -1, 2, -3]), min_size=4, max_size=4), st.integers(0, 4), st.data())
def test_hodge_star_defining_identity(diag, p, data):
    g = PseudoMetric.diagonal(diag)
    a = data.draw(pforms(4, p))
    b = data.draw(pforms(4, p))
    assert wedge(a, hodge_star(g, b)) == inner(g, a, b) * g.vol


@given(st.lists(st.sampled_from([1, -1]), min_size=5, max_size=5), st.integers(0, 5), st.data())
def test_double_star_sign(diag, p, data):
    g = PseudoMetric.diagonal(diag)
    a = data.draw(pforms(5, p))
    s = g.signature().neg
    assert hodge_star(g, hodge_star(g, a)) == (-1) ** (p * (5 - p) + s) * a
