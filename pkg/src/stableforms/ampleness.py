"""Membership in N_sigma0(tau), the bilinear-form characterizations of the
split G2 cases, exact hull certificates, and the explicit witness sets.

Forms on the hyperplane R^{n-1} use local indices 1..n-1; the assembled form
theta ^ nu + tau lives on R^n = R e_1 + R^{n-1}, so local index i becomes i+1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import linalg
from .builtins import omega_plus, rho0, rho_minus, rho_plus, varpi_plus
from .forms import (
    PForm,
    form,
    form_matrix,
    interior,
    power,
    pullback,
    shift,
    theta,
    top_coefficient,
    volume,
    wedge,
)
from .hull import HullCertificate, zero_in_hull
from .orbits import (
    Family,
    classify,
    classify_three_form_6d,
    hitchin_endomorphism,
    positive_line_generator,
)
from .scalar import sign, sqrt


class FamilyMismatch(ValueError):
    pass


# -- split data ------------------------------------------------------------------


@dataclass(frozen=True)
class SplitData:
    tau: PForm
    nu: PForm

    def __post_init__(self):
        if self.tau.n != self.nu.n or self.tau.p != self.nu.p + 1:
            raise ValueError("tau must have degree one more than nu on the same space")

    @property
    def sigma(self) -> PForm:
        return assemble(self.tau, self.nu)


def assemble(tau: PForm, nu: PForm) -> PForm:
    """theta^1 ^ nu + tau on R^{m+1}, with nu and tau shifted to indices 2..m+1."""
    if tau.n != nu.n or tau.p != nu.p + 1:
        raise ValueError(f"degree mismatch: tau ({tau.n},{tau.p}), nu ({nu.n},{nu.p})")
    n = tau.n + 1
    return wedge(theta(n, 1), shift(nu, 1, n)) + shift(tau, 1, n)


def split(sigma: PForm) -> SplitData:
    n = sigma.n
    nu = {I[1:]: c for I, c in sigma.terms.items() if I[0] == 1}
    tau = {I: c for I, c in sigma.terms.items() if I[0] != 1}
    return SplitData(shift(PForm(n, sigma.p, tau), -1, n - 1), shift(PForm(n, sigma.p - 1, nu), -1, n - 1))


def membership(family, tau: PForm, nu: PForm) -> bool:
    fam = Family(family) if not isinstance(family, Family) else family
    return classify(assemble(tau, nu)).family == fam


# -- bilinear forms from 2-forms -----------------------------------------------------


def _symmetrized(A, Omega, factor):
    """factor * [omega(A a, b) + omega(A b, a)] as a symmetric matrix."""
    AtO = linalg.matmul(linalg.transpose(A), Omega)
    n = len(A)
    return [[factor * (AtO[a][b] + AtO[b][a]) for b in range(n)] for a in range(n)]


@dataclass(frozen=True)
class BilinearResult:
    matrix: list
    scaled: bool = False  # True when only a positive multiple is known exactly


def timelike_form(rho: PForm, omega: PForm) -> BilinearResult:
    lab = classify_three_form_6d(rho)
    if lab.family is not Family.SL3R:
        raise FamilyMismatch(f"rho is {lab.family.value}, not SL3R")
    Omega = form_matrix(omega)
    if "I" in lab.certificates:
        return BilinearResult(_symmetrized(lab.certificates["I"], Omega, Fraction(1, 2)))
    return BilinearResult(_symmetrized(lab.certificates["K"], Omega, Fraction(1, 2)), scaled=True)


def spacelike_form(rho: PForm, omega: PForm) -> BilinearResult:
    lab = classify_three_form_6d(rho)
    if lab.family is not Family.SL3C:
        raise FamilyMismatch(f"rho is {lab.family.value}, not SL3C")
    Omega = form_matrix(omega)
    if "J" in lab.certificates:
        return BilinearResult(_symmetrized(lab.certificates["J"], Omega, Fraction(-1, 2)))
    # J = -K / (2 vol): a positive multiple of -K
    return BilinearResult(_symmetrized(lab.certificates["K"], Omega, Fraction(1, 2)), scaled=True)


def null_endomorphism(rho: PForm, vol_coeff=1):
    """Nilpotent endomorphism attached to a parabolic 3-form and a volume choice.

    Normalized as K_rho / (2 vol) with vol = vol_coeff * theta^{1..6}, so that
    rho0 gives the block matrix [[0, 0], [Id, 0]].
    """
    K = hitchin_endomorphism(rho)
    return linalg.scale(K, 1 / (2 * Fraction(vol_coeff)) if isinstance(vol_coeff, int) else 1 / (2 * vol_coeff))


def null_form(omega: PForm, rho: PForm | None = None, vol_coeff=1) -> BilinearResult:
    rho = rho0() if rho is None else rho
    lab = classify_three_form_6d(rho)
    if lab.family is not Family.PARABOLIC:
        raise FamilyMismatch(f"rho is {lab.family.value}, not parabolic")
    H = null_endomorphism(rho, vol_coeff)
    return BilinearResult(_symmetrized(H, form_matrix(omega), Fraction(1, 2)))


def one_one_part(rho: PForm, omega: PForm) -> PForm:
    """Component of omega of type (1,1) for the eigenspace splitting of an SL3R form.

    Uses I^2 = Id, so the projection is (omega - I^*omega) / 2 with
    I^* = K^* / Lambda on 2-forms.
    """
    lab = classify_three_form_6d(rho)
    if lab.family is not Family.SL3R:
        raise FamilyMismatch(f"rho is {lab.family.value}, not SL3R")
    K = lab.certificates["K"]
    return (omega - pullback(K, omega) / lab.certificates["Lambda"]) / 2


CASES = ("timelike", "spacelike", "null")
TARGET_SIGNATURE = {
    "timelike": linalg.Signature(3, 3, 0),
    "spacelike": linalg.Signature(2, 4, 0),
    "null": linalg.Signature(2, 3, 1),
}


def characterize(case: str, rho: PForm, omega: PForm) -> bool:
    """The bilinear-form criterion for omega in N_{split G2}(rho)."""
    if case == "timelike":
        sig = linalg.signature(timelike_form(rho, omega).matrix)
        if sig != TARGET_SIGNATURE[case]:
            return False
        return sign(top_coefficient(power(one_one_part(rho, omega), 3))) < 0
    if case == "spacelike":
        return linalg.signature(spacelike_form(rho, omega).matrix) == TARGET_SIGNATURE[case]
    if case == "null":
        return linalg.signature(null_form(omega, rho).matrix) == TARGET_SIGNATURE[case]
    raise ValueError(f"unknown case {case!r}; expected one of {CASES}")


def sym_product_matrix(n: int, terms) -> list:
    """Matrix of sum c * theta^a . theta^b with the symmetric product carrying 1/2."""
    M = linalg.zeros(n, n)
    for c, a, b in terms:
        c = Fraction(c) if isinstance(c, int) else c
        if a == b:
            M[a - 1][a - 1] += c
        else:
            M[a - 1][b - 1] += c / 2
            M[b - 1][a - 1] += c / 2
    return M


# -- forward-triangular signature -------------------------------------------------


class TemplateMismatch(ValueError):
    pass


def signature_fast(M) -> linalg.Signature | None:
    """Closed-form signature of a symmetric forward-triangular matrix.

    Entries strictly behind the counter diagonal must vanish and the counter
    diagonal must be nonzero except possibly at the centre.  Returns None when
    the centre entry is zero (the form is then degenerate).
    """
    N = len(M)
    if not linalg.is_symmetric(M):
        raise TemplateMismatch("matrix is not symmetric")
    for i in range(N):
        for j in range(N):
            if i + j > N - 1 and M[i][j] != 0:
                raise TemplateMismatch(f"entry ({i},{j}) behind the counter diagonal is nonzero")
    half = N // 2
    for i in range(half):
        if M[i][N - 1 - i] == 0:
            raise TemplateMismatch(f"counter-diagonal entry {i} vanishes")
    if N % 2 == 0:
        return linalg.Signature(half, half, 0)
    y = M[half][half]
    s = sign(y)
    if s == 0:
        return None
    return linalg.Signature(half + 1, half, 0) if s > 0 else linalg.Signature(half, half + 1, 0)


# -- predicates -------------------------------------------------------------------


def emproplectic_predicate(tau: PForm, nu: PForm) -> bool:
    """tau pseudoplectic and nu positive on the oriented kernel line of tau."""
    if tau.n % 2 == 0 or tau.p != 2 or classify(tau).family is not Family.PSEUDOPLECTIC:
        return False
    u = positive_line_generator(tau)
    val = sum((c * u[I[0] - 1] for I, c in nu.terms.items()), Fraction(0))
    return sign(val) > 0


def osemproplectic_predicate(tau: PForm, nu: PForm) -> bool:
    """nu ospseudoplectic and tau positive on the oriented hyperplane of nu."""
    lab = classify(nu)
    if lab.family is not Family.OSPSEUDOPLECTIC:
        return False
    B = linalg.transpose(lab.certificates["hyperplane"])
    return sign(top_coefficient(pullback(B, tau))) > 0


# -- sampling ----------------------------------------------------------------------


def random_form(n: int, p: int, rng: random.Random, bound: int = 5, density: float = 1.0) -> PForm:
    from .forms import basis_indices

    terms = {}
    for I in basis_indices(n, p):
        if density >= 1.0 or rng.random() < density:
            terms[I] = rng.randint(-bound, bound)
    return PForm(n, p, terms)


@dataclass
class SampleReport:
    family: str
    tries: int
    accepted: list
    hull: HullCertificate | None = None

    @property
    def rate(self) -> float:
        return len(self.accepted) / self.tries if self.tries else 0.0


def sample_N(family, tau: PForm, count: int, seed: int = 0, bound: int = 5, max_tries: int | None = None) -> SampleReport:
    """Rejection-sample members of N(tau) and test whether 0 is in their hull."""
    if count < 1:
        raise ValueError("count must be positive")
    fam = Family(family) if not isinstance(family, Family) else family
    rng = random.Random(seed)
    max_tries = max_tries if max_tries is not None else 20 * count
    acc = []
    tries = 0
    while len(acc) < count and tries < max_tries:
        tries += 1
        nu = random_form(tau.n, tau.p - 1, rng, bound)
        if membership(fam, tau, nu):
            acc.append(nu)
    hull = zero_in_hull(acc) if acc else None
    return SampleReport(fam.value, tries, acc, hull)


# -- witnesses -----------------------------------------------------------------------


def shifted_two_form(terms) -> PForm:
    """2-form on the hyperplane written with ambient labels 2..7."""
    return form(6, 2, [(c, tuple(i - 1 for i in idx)) for c, idx in terms])


def timelike_witnesses():
    t = [(1, 4), (2, 5), (3, 6)]
    return [form(6, 2, [(2 if j == i else -1, t[j]) for j in range(3)]) for i in range(3)]


def spacelike_witnesses():
    t = [(1, 2), (3, 4), (5, 6)]
    return [form(6, 2, [(2 if j == i else -1, t[j]) for j in range(3)]) for i in range(3)]


def null_witnesses(eps=Fraction(1, 10)):
    eps = Fraction(eps)
    pert = shifted_two_form([(1, (6, 7)), (1, (2, 5)), (-1, (3, 6))])
    w0 = shifted_two_form([(-2, (4, 7))]) + 2 * eps * pert
    wp = shifted_two_form([(1, (4, 7)), (1, (5, 6))]) - eps * pert
    wm = shifted_two_form([(1, (4, 7)), (-1, (5, 6))]) - eps * pert
    return [w0, wp, wm]


def automorphism_diag(k: int, r, p: int, q: int):
    """Diagonal matrix with -r in slot 2p and -1/r in slot 2q (1-based)."""
    n = 2 * k
    F = linalg.identity(n)
    F[2 * p - 1][2 * p - 1] = -r
    F[2 * q - 1][2 * q - 1] = -1 / r
    return F


def ratio_root(k: int):
    """r >= 1 with r + 1/r = k, exact in Q(sqrt(k^2 - 4))."""
    return (k + sqrt(k * k - 4)) / 2


def ossymplectic_points(k: int):
    """varpi_+(k) with weight 2(k-1) and its pullbacks by the diagonal automorphisms."""
    r = ratio_root(k)
    base = varpi_plus(k) if k >= 3 else omega_plus(2)
    pts = [base]
    weights = [Fraction(2 * (k - 1))]
    for p in range(1, k + 1):
        for q in range(1, k + 1):
            if p != q:
                pts.append(pullback(automorphism_diag(k, r, p, q), base))
                weights.append(Fraction(1))
    return pts, weights, r


def _ossym_family(k, positive=True):
    if k == 2:
        return Family.EMPROPLECTIC if positive else Family.PISOPLECTIC
    return Family.OSEMPROPLECTIC if positive else Family.OSPISOPLECTIC


@dataclass
class WitnessReport:
    case: str
    checks: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def check(self, name: str, ok: bool):
        self.checks.append((name, bool(ok)))
        return ok

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(ok for _, ok in self.checks)


def _linear_combination(weights, pts):
    acc = PForm(pts[0].n, pts[0].p)
    for w, x in zip(weights, pts):
        acc = acc + w * x
    return acc


def _witness_case(case, rho, witnesses, expected_images, kind, rep):
    for i, w in enumerate(witnesses, 1):
        rep.check(f"omega_{i} member", membership(Family.G2_TILDE, rho, w))
        rep.check(f"omega_{i} characterized", characterize(kind, rho, w))
        if expected_images is not None:
            if kind == "timelike":
                M = timelike_form(rho, w).matrix
            elif kind == "spacelike":
                M = spacelike_form(rho, w).matrix
            else:
                M = null_form(w, rho).matrix
            rep.check(f"omega_{i} bilinear image", M == expected_images[i - 1])
    rep.check("mean is zero", _linear_combination([Fraction(1, 3)] * 3, witnesses).is_zero())
    cert = zero_in_hull(witnesses)
    rep.details["hull_coefficients"] = cert.coefficients
    rep.check("hull certificate (1/3,1/3,1/3)", cert.coefficients == (Fraction(1, 3),) * 3)


def verify_witness(case: str, k: int | None = None, eps=Fraction(1, 10)) -> WitnessReport:
    rep = WitnessReport(case)
    if case == "timelike":
        ws = timelike_witnesses()
        imgs = [sym_product_matrix(6, [(4 if j == i else -2, a, a + 3) for j, a in enumerate((1, 2, 3))]) for i in range(3)]
        _witness_case(case, rho_plus(), ws, imgs, "timelike", rep)
        for i, w in enumerate(ws, 1):
            rep.check(f"omega_{i}^3 = -12 vol", power(w, 3) == volume(6, -12))
    elif case == "spacelike":
        ws = spacelike_witnesses()
        imgs = []
        for i in range(3):
            diag = []
            for j in range(3):
                c = 2 if j == i else -1
                diag += [(c, 2 * j + 1, 2 * j + 1), (c, 2 * j + 2, 2 * j + 2)]
            imgs.append(sym_product_matrix(6, diag))
        _witness_case(case, rho_minus(), ws, imgs, "spacelike", rep)
    elif case == "null":
        eps = Fraction(eps)
        ws = null_witnesses(eps)
        rep.details["eps"] = eps
        # images in ambient labels 2..7 shifted to local indices
        e = eps
        img0 = sym_product_matrix(6, [(2, 3, 3), (2 * e, 2, 6), (-2 * e, 3, 5), (-2 * e, 1, 1), (2 * e, 2, 2)])
        pm = [(-1, 3, 3), (1, 1, 5), (-1, 2, 4)]
        imgp = sym_product_matrix(6, pm)
        imgm = sym_product_matrix(6, [(c if a == b else -c, a, b) for c, a, b in pm])
        for i, w in enumerate(ws, 1):
            rep.check(f"omega_{i} member", membership(Family.G2_TILDE, rho0(), w))
            rep.check(f"omega_{i} characterized", characterize("null", rho0(), w))
        rep.check("omega_0 bilinear image", null_form(ws[0]).matrix == img0)
        # the displayed images of omega_+- are their eps = 0 parts
        rep.check("omega_+ image at eps=0", null_form(null_witnesses(0)[1]).matrix == imgp)
        rep.check("omega_- image at eps=0", null_form(null_witnesses(0)[2]).matrix == imgm)
        rep.check("mean is zero", _linear_combination([Fraction(1, 3)] * 3, ws).is_zero())
        cert = zero_in_hull(ws)
        rep.details["hull_coefficients"] = cert.coefficients
        rep.check("hull certificate (1/3,1/3,1/3)", cert.coefficients == (Fraction(1, 3),) * 3)
    elif case == "osymplectic-hull":
        k = 3 if k is None else k
        pts, weights, r = ossymplectic_points(k)
        rep.details["r"] = r
        fam = _ossym_family(k)
        for i, x in enumerate(pts):
            rep.check(f"point {i} is {fam.value}", classify(x).family is fam)
        rep.check("weighted sum vanishes", _linear_combination(weights, pts).is_zero())
        cert = zero_in_hull(pts)
        rep.details["hull_coefficients"] = cert.coefficients
        rep.check("0 in hull", cert.contains_zero)
    elif case == "ospseudo-tau0":
        k = 2 if k is None else k
        pts, weights, r = ossymplectic_points(k)
        zero_tau = PForm(2 * k, 2 * k - 1)
        if k % 2:
            reflect = lambda x: -x
        else:
            G = linalg.identity(2 * k)
            G[0][0] = Fraction(-1)
            reflect = lambda x: pullback(G, x)
        for sgn, comp in (("+", pts), ("-", [reflect(x) for x in pts])):
            fam = _ossym_family(k, sgn == "+")
            for i, x in enumerate(comp):
                rep.check(f"{sgn} point {i} is {fam.value}", classify(x).family is fam)
                rep.check(f"{sgn} point {i} member", membership(Family.OSPSEUDOPLECTIC, zero_tau, x))
            rep.check(f"{sgn} component weighted sum vanishes", _linear_combination(weights, comp).is_zero())
            rep.check(f"{sgn} component 0 in hull", zero_in_hull(comp).contains_zero)
        # theta ^ nu is ospseudoplectic exactly when nu is ossymplectic
        rng = random.Random(k)
        samples = [random_form(2 * k, 2 * k - 2, rng, 3, density=0.5) for _ in range(20)]
        samples.append(theta(2 * k, *range(1, 2 * k - 1)))
        agree = all(
            membership(Family.OSPSEUDOPLECTIC, zero_tau, x) == (classify(x).family in (_ossym_family(k), _ossym_family(k, False)))
            for x in samples
        )
        rep.check("theta^nu ospseudoplectic iff nu ossymplectic (samples)", agree)
    elif case == "osempro-abundance":
        k = 3 if k is None else k
        m = 2 * k - 1
        tau = theta(m, *range(2, m + 1))
        pts, weights, r = ossymplectic_points(k - 1)
        nus = [wedge(theta(m, 1), shift(x, 1, m)) for x in pts]
        for i, nu in enumerate(nus):
            rep.check(f"nu_{i} member", membership(Family.OSEMPROPLECTIC, tau, nu))
            rep.check(f"nu_{i} predicate", osemproplectic_predicate(tau, nu))
        rep.check("weighted sum vanishes", _linear_combination(weights, nus).is_zero())
        rep.check("0 in hull", zero_in_hull(nus).contains_zero)
    else:
        raise ValueError(f"unknown witness case {case!r}")
    return rep


WITNESS_CASES = ("timelike", "spacelike", "null", "osymplectic-hull", "ospseudo-tau0", "osempro-abundance")


# -- stabilizer of the parabolic form -----------------------------------------------
# Basis order e_2..e_7 of the hyperplane, i.e. local indices 1..6.


def parabolic_constraint(d, e, f, k, l, m, o, s):
    return e * l / d + f * m / d - k / d**2 - s - o


def parabolic_group_element(d, e, f, k, l, m, n, o, p, q, r, s):
    """Lower block-triangular matrix of the contractible stabilizer factor."""
    d = Fraction(d)
    z = Fraction(0)
    one = Fraction(1)
    return [
        [d, z, z, z, z, z],
        [Fraction(e), 1 / d, z, z, z, z],
        [Fraction(f), z, 1 / d, z, z, z],
        [Fraction(k), Fraction(l), Fraction(m), d * d, z, z],
        [Fraction(n), Fraction(o), Fraction(p), d * e, one, z],
        [Fraction(q), Fraction(r), Fraction(s), d * f, z, one],
    ]


def random_parabolic_element(rng: random.Random, satisfy: bool = True, bound: int = 5):
    """Random element; with satisfy=False the linear constraint fails by a nonzero amount."""
    d = Fraction(rng.randint(1, bound), rng.randint(1, bound))
    e, f, k, l, m, n, o, p, q, r = (Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(10))
    s = e * l / d + f * m / d - k / d**2 - o
    if not satisfy:
        s += Fraction(rng.choice([-1, 1]) * rng.randint(1, bound), rng.randint(1, bound))
    return parabolic_group_element(d, e, f, k, l, m, n, o, p, q, r, s)


def diagonal_sl3(A):
    """Block-diagonal action of A on <e_2,e_3,e_4> + <e_5,e_6,e_7>."""
    F = linalg.zeros(6, 6)
    for i in range(3):
        for j in range(3):
            F[i][j] = F[i + 3][j + 3] = Fraction(A[i][j])
    return F


def random_sl3(rng: random.Random, steps: int = 6, bound: int = 3):
    """Product of random elementary matrices and a unimodular diagonal."""
    A = linalg.identity(3)
    for _ in range(steps):
        i, j = rng.sample(range(3), 2)
        E = linalg.identity(3)
        E[i][j] = Fraction(rng.randint(-bound, bound))
        A = linalg.matmul(A, E)
    a, b = Fraction(rng.randint(1, bound), rng.randint(1, bound)), Fraction(rng.randint(1, bound), rng.randint(1, bound))
    return linalg.matmul(A, [[a, 0, 0], [0, b, 0], [0, 0, 1 / (a * b)]])


def kernel_meets_null_block(omega: PForm) -> bool:
    """Does the bilinear form of omega under rho0 have a kernel vector in <e_5,e_6,e_7>?"""
    M = null_form(omega).matrix
    block = [[M[i][j] for j in range(3, 6)] for i in range(6)]
    return linalg.rank(block) < 3
