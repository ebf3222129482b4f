import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stableforms import ampleness as am
from stableforms import linalg
from stableforms.acceptance import random_forward_triangular
from stableforms.builtins import (mu0, omega_plus, rho0, rho_minus, rho_plus, split_phi0, split_psi0, varpi_plus,
                                  xi0)
from stableforms.forms import (PForm, evec, form, interior, power, shift, theta, top_coefficient, wedge, wedge_all,
                               zero)
from stableforms.orbits import Family, classify, q_matrix

from conftest import pforms, vectors


def sym(*terms):
    return am.sym_product_matrix(6, terms)


# -- assembly ------------------------------------------------------------------------


@given(pforms(6, 3), pforms(6, 2))
def test_assemble_split_roundtrip(tau, nu):
    sigma = am.assemble(tau, nu)
    assert sigma.n == 7 and sigma.p == 3
    assert all(1 not in I for I in sigma.terms) or nu
    d = am.split(sigma)
    assert d.tau == tau and d.nu == nu


def test_assemble_rejects_bad_degrees():
    with pytest.raises(ValueError):
        am.assemble(theta(6, 1, 2, 3), theta(6, 1))


def test_split_g2_form_decomposes_into_standard_pieces():
    d = am.split(split_phi0())
    assert d.nu == form(6, 2, [(1, (1, 2)), (-1, (3, 4)), (-1, (5, 6))])
    assert classify(d.tau).family is Family.SL3C


# -- membership and the bilinear criteria ---------------------------------------------


def test_membership_examples():
    w1 = am.timelike_witnesses()[0]
    assert w1 == form(6, 2, [(2, (1, 4)), (-1, (2, 5)), (-1, (3, 6))])
    assert am.membership(Family.G2_TILDE, rho_plus(), w1)
    assert am.membership(Family.EMPROPLECTIC, mu0(2), theta(5, 1))
    assert not am.membership(Family.EMPROPLECTIC, mu0(2), -theta(5, 1))
    rng = random.Random(0)
    for _ in range(20):
        nu = am.random_form(5, 3, rng)
        assert not am.membership(Family.OSEMPROPLECTIC, zero(5, 4), nu)


def test_timelike_form_examples():
    w1 = am.timelike_witnesses()[0]
    M = am.timelike_form(rho_plus(), w1).matrix
    assert M == sym((4, 1, 4), (-2, 2, 5), (-2, 3, 6))
    assert linalg.signature(M) == (3, 3, 0)
    M = am.timelike_form(rho_plus(), theta(6, 1, 4)).matrix
    assert M == sym((2, 1, 4))
    assert linalg.signature(M) == (1, 1, 4)


@given(pforms(3, 2), pforms(3, 2))
def test_timelike_form_vanishes_off_the_mixed_part(a, b):
    omega = shift(a, 0, 6) + shift(b, 3)  # Lambda^{2,0} + Lambda^{0,2}
    assert linalg.is_zero(am.timelike_form(rho_plus(), omega).matrix)


def test_spacelike_form_example():
    w = am.spacelike_witnesses()[0]
    M = am.spacelike_form(rho_minus(), w).matrix
    assert M == sym((2, 1, 1), (2, 2, 2), (-1, 3, 3), (-1, 4, 4), (-1, 5, 5), (-1, 6, 6))
    assert linalg.signature(M) == (2, 4, 0)


def test_null_endomorphism_shape():
    H = am.null_endomorphism(rho0())
    expected = linalg.zeros(6, 6)
    for i in range(3):
        expected[i + 3][i] = Fraction(1)
    assert H == expected


def test_null_form_example():
    # theta^{25} with ambient labels 2..7 is theta^{14} locally; its image is -(theta^2)^2 ambient
    M = am.null_form(am.shifted_two_form([(1, (2, 5))])).matrix
    assert M == sym((-1, 1, 1))


@given(vectors(6))
def test_null_form_vanishes_on_contractions(u):
    assert linalg.is_zero(am.null_form(interior(u, rho0())).matrix)


def test_bilinear_forms_reject_wrong_types():
    with pytest.raises(am.FamilyMismatch):
        am.timelike_form(rho_minus(), theta(6, 1, 2))
    with pytest.raises(am.FamilyMismatch):
        am.spacelike_form(rho_plus(), theta(6, 1, 2))
    with pytest.raises(am.FamilyMismatch):
        am.null_form(theta(6, 1, 2), rho_plus())
    with pytest.raises(ValueError):
        am.characterize("sideways", rho_plus(), theta(6, 1, 2))


# -- Q-matrix identities behind the criteria ------------------------------------------


def q_blocks(rho, omega):
    Q = linalg.scale(q_matrix(am.assemble(rho, omega)), 6)
    return Q[0][0], [Q[0][j] for j in range(1, 7)], [row[1:] for row in Q[1:]]


@given(pforms(6, 2))
def test_q_identity_timelike(omega):
    omega = am.one_one_part(rho_plus(), omega)
    corner, cross, block = q_blocks(rho_plus(), omega)
    assert corner == top_coefficient(power(omega, 3))
    assert all(c == 0 for c in cross)
    assert block == linalg.scale(am.timelike_form(rho_plus(), omega).matrix, 3)


@given(pforms(6, 2))
def test_q_identity_spacelike(omega):
    corner, _, block = q_blocks(rho_minus(), omega)
    assert corner == top_coefficient(power(omega, 3))
    assert block == linalg.scale(am.spacelike_form(rho_minus(), omega).matrix, 6)


@given(pforms(6, 2))
def test_q_identity_null(omega):
    corner, cross, block = q_blocks(rho0(), omega)
    assert corner == top_coefficient(power(omega, 3))
    assert block == linalg.scale(am.null_form(omega).matrix, 6)
    rho7, omega7 = shift(rho0(), 1), shift(omega, 1)
    for j in range(6):
        u = [Fraction(int(i == j)) for i in range(6)]
        t = top_coefficient(wedge_all(theta(7, 1), shift(interior(u, omega), 1), omega7, rho7))
        assert cross[j] == -3 * t


@given(pforms(6, 2))
def test_one_one_part_is_a_projection(omega):
    w = am.one_one_part(rho_plus(), omega)
    assert am.one_one_part(rho_plus(), w) == w


# -- oracle equivalence (smaller runs than the acceptance gate) --------------------------


@pytest.mark.parametrize("case,rho", [("timelike", rho_plus), ("spacelike", rho_minus), ("null", rho0)])
@settings(max_examples=60)
@given(omega=pforms(6, 2))
def test_membership_equals_characterization(case, rho, omega):
    assert am.membership(Family.G2_TILDE, rho(), omega) == am.characterize(case, rho(), omega)


@settings(max_examples=60)
@given(st.sampled_from([2, 3]), st.data())
def test_emproplectic_equivalence(k, data):
    tau = data.draw(pforms(2 * k - 1, 2, st.integers(-2, 2)))
    nu = data.draw(pforms(2 * k - 1, 1))
    assert am.membership(Family.EMPROPLECTIC, tau, nu) == am.emproplectic_predicate(tau, nu)


@settings(max_examples=40)
@given(pforms(5, 4, st.integers(-3, 3)), pforms(5, 3, st.integers(-2, 2)))
def test_osemproplectic_equivalence(tau, nu):
    assert am.membership(Family.OSEMPROPLECTIC, tau, nu) == am.osemproplectic_predicate(tau, nu)


def test_degenerate_tau_has_no_emproplectic_extensions():
    tau = theta(5, 1, 2)  # tau^2 = 0
    rep = am.sample_N(Family.EMPROPLECTIC, tau, 20, seed=1, max_tries=200)
    assert rep.accepted == [] and rep.hull is None and rep.tries == 200


# -- fast signature --------------------------------------------------------------------


def test_signature_fast_examples():
    M = [[Fraction(x) for x in r] for r in [[7, -3, 1], [-3, 2, 0], [1, 0, 0]]]
    assert am.signature_fast(M) == (2, 1, 0)
    A = [[Fraction(0), Fraction(5)], [Fraction(5), Fraction(0)]]
    assert am.signature_fast(A) == (1, 1, 0)
    M[1][1] = Fraction(0)
    assert am.signature_fast(M) is None
    assert linalg.signature(M).null == 1


def test_signature_fast_rejects_non_templates():
    with pytest.raises(am.TemplateMismatch):
        am.signature_fast([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]])
    with pytest.raises(am.TemplateMismatch):
        am.signature_fast([[Fraction(0), Fraction(1)], [Fraction(2), Fraction(0)]])


@settings(max_examples=100)
@given(st.integers(2, 9), st.integers(0, 10**6), st.booleans())
def test_signature_fast_matches_exact(N, seed, zero_centre):
    M = random_forward_triangular(N, random.Random(seed), zero_centre=zero_centre)
    fast = am.signature_fast(M)
    exact = linalg.signature(M)
    if fast is None:
        assert exact.null > 0
    else:
        assert fast == exact


# -- sampling, scale invariance and negation ----------------------------------------


def test_sampled_timelike_members_contain_zero_in_hull():
    rep = am.sample_N(Family.G2_TILDE, rho_plus(), 60, seed=2)
    assert len(rep.accepted) == 60 and rep.rate >= 0.05
    assert rep.hull.contains_zero and rep.hull.verify()


@settings(max_examples=25)
@given(pforms(6, 2), st.sampled_from([2, Fraction(1, 3), 5]))
def test_members_are_scale_invariant(omega, lam):
    if am.membership(Family.G2_TILDE, rho_plus(), omega):
        assert am.membership(Family.G2_TILDE, rho_plus(), lam * omega)


@settings(max_examples=40)
@given(pforms(5, 3, st.integers(-2, 2)), pforms(5, 2))
def test_negation_closure_sl3c(tau, nu):
    # rho- has an orientation-reversing automorphism, so N(tau) = -N(tau)
    if am.membership(Family.SL3C, tau, nu):
        assert am.membership(Family.SL3C, tau, -nu)


def test_negation_closure_fails_without_reversing_symmetry():
    # G2Tilde over rho- is not closed under negation: the J-form signature flips
    omega = form(6, 2, [(1, (2, 6)), (-1, (3, 4))])
    assert am.membership(Family.G2_TILDE, rho_minus(), omega)
    assert not am.membership(Family.G2_TILDE, rho_minus(), -omega)


@settings(max_examples=25)
@given(pforms(6, 3, st.integers(-2, 2)))
def test_negation_closure_split_four_form(nu):
    tau = am.split(split_psi0()).tau
    if am.membership(Family.G2_TILDE, tau, nu):
        assert am.membership(Family.G2_TILDE, tau, -nu)


# -- witnesses ----------------------------------------------------------------------


@pytest.mark.parametrize("case,k", [("timelike", None), ("spacelike", None), ("null", None),
                                    ("osymplectic-hull", 3), ("osymplectic-hull", 4), ("ospseudo-tau0", 3),
                                    ("osempro-abundance", 3)])
def test_witnesses(case, k):
    rep = am.verify_witness(case, k)
    assert rep.passed, rep.failures()


def test_timelike_hull_coefficients():
    rep = am.verify_witness("timelike")
    assert rep.details["hull_coefficients"] == (Fraction(1, 3),) * 3


@pytest.mark.parametrize("eps", [Fraction(1, 10), Fraction(1, 50), Fraction(1, 1000)])
def test_null_witness_for_small_eps(eps):
    assert am.verify_witness("null", eps=eps).passed


def test_null_witness_needs_positive_eps():
    # the first diagonal block of the omega_0 image is -2 eps, so eps < 0 moves a sign
    checks = dict(am.verify_witness("null", eps=Fraction(-1, 20)).checks)
    assert not checks["omega_1 member"]
    assert checks["omega_2 member"] and checks["omega_3 member"]


def test_ratio_root_solves_the_quadratic():
    for k in (3, 4, 5):
        r = am.ratio_root(k)
        assert r + 1 / r == k and r > 1


# -- parabolic stabilizer and kernel of K -- ----------------------------------------


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_parabolic_elements(seed):
    from stableforms.orbits import verify_stabilizer_element

    rng = random.Random(seed)
    assert verify_stabilizer_element(am.random_parabolic_element(rng, True), rho0())
    assert not verify_stabilizer_element(am.random_parabolic_element(rng, False), rho0())
    A = am.random_sl3(rng)
    assert linalg.det(A) == 1
    assert verify_stabilizer_element(am.diagonal_sl3(A), rho0())


@settings(max_examples=60)
@given(pforms(6, 2))
def test_kernel_meets_null_block(omega):
    assert am.kernel_meets_null_block(omega)
