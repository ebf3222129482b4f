"""Stability tests and orbit classification of stable forms under GL+(n, R).

Every classifier returns an :class:`OrbitLabel` whose ``certificates`` hold the
geometric data that pins the orbit down (volume, para/complex structure,
metric, kernel line, hyperplane).  Irrational normalizations are kept exact
in a quadratic field when possible and otherwise reported as power pairs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from . import linalg
from .forms import (
    PForm,
    contract,
    epsilon_matrix,
    interior,
    iota_matrix,
    power,
    pullback,
    top_coefficient,
    action_rank,
    unhook_volume,
    volume,
    wedge,
)
from .scalar import Surd, exact_root, sign


class Family(str, enum.Enum):
    EMPROPLECTIC = "Emproplectic"
    PISOPLECTIC = "Pisoplectic"
    PSEUDOPLECTIC = "Pseudoplectic"
    OSEMPROPLECTIC = "Osemproplectic"
    OSPISOPLECTIC = "Ospisoplectic"
    OSPSEUDOPLECTIC = "Ospseudoplectic"
    SL3R = "SL3R"
    SL3C = "SL3C"
    PARABOLIC = "Parabolic6dCandidate"
    G2 = "G2"
    G2_TILDE = "G2Tilde"
    NEG_G2 = "NegG2"
    NEG_G2_TILDE = "NegG2Tilde"
    DEGENERATE = "Degenerate"
    STABLE_UNCLASSIFIED = "StableUnclassified"

    def __str__(self):
        return self.value


STABLE_FAMILIES = {f for f in Family if f not in (Family.DEGENERATE, Family.PARABOLIC)}


@dataclass(frozen=True)
class OrbitLabel:
    family: Family
    n: int
    p: int
    certificates: dict = field(default_factory=dict, compare=False)

    @property
    def stable(self) -> bool:
        return self.family in STABLE_FAMILIES

    def __str__(self):
        return f"{self.family.value} (n={self.n}, p={self.p})"


class WrongDegree(ValueError):
    pass


@dataclass(frozen=True)
class StabilizerInfo:
    dim: int
    stable: bool
    rank: int


def stabilizer_algebra_dim(sigma: PForm) -> StabilizerInfo:
    """Dimension of the stabilizer algebra, n^2 minus the rank of gl(n) -> Lambda^p."""
    n, p = sigma.n, sigma.p
    r = action_rank(sigma)
    return StabilizerInfo(dim=n * n - r, stable=(r == comb(n, p)), rank=r)


def _vol(n):
    return volume(n)


# -- 2-forms ---------------------------------------------------------------


def positive_line_generator(mu: PForm):
    """Vector u spanning ker iota_mu with u -| vol = mu^k / k!  (n = 2k+1)."""
    n = mu.n
    k = (n - 1) // 2
    top = power(mu, k) / factorial(k)
    u = unhook_volume(top, _vol(n))
    vec = [Fraction(0)] * n
    for (i,), c in u.terms.items():
        vec[i - 1] = c
    return vec


def classify_two_form(mu: PForm) -> OrbitLabel:
    if mu.p != 2:
        raise WrongDegree(f"expected a 2-form, got degree {mu.p}")
    n = mu.n
    r = linalg.rank(iota_matrix(mu))
    if n % 2 == 0:
        k = n // 2
        c = top_coefficient(power(mu, k))
        if c == 0:
            return OrbitLabel(Family.DEGENERATE, n, 2, {"rank": r})
        fam = Family.EMPROPLECTIC if sign(c) > 0 else Family.PISOPLECTIC
        return OrbitLabel(fam, n, 2, {"rank": r, "top_power": c, "volume": c / factorial(k)})
    k = (n - 1) // 2
    if r != 2 * k:
        return OrbitLabel(Family.DEGENERATE, n, 2, {"rank": r})
    u = positive_line_generator(mu)
    return OrbitLabel(Family.PSEUDOPLECTIC, n, 2, {"rank": r, "line": u})


# -- 6d 3-forms ----------------------------------------------------------------


def hitchin_endomorphism(rho: PForm):
    """Matrix K with (u -| rho) ^ rho = (K u) -| theta^{1..6} (columns are images)."""
    if (rho.n, rho.p) != (6, 3):
        raise WrongDegree("expected a 3-form on R^6")
    vol = _vol(6)
    K = linalg.zeros(6, 6)
    for j in range(6):
        u = [Fraction(int(i == j)) for i in range(6)]
        five = wedge(interior(u, rho), rho)
        v = unhook_volume(five, vol)
        for (i,), c in v.terms.items():
            K[i - 1][j] = c
    return K


def lambda_invariant(rho: PForm, K=None):
    K = hitchin_endomorphism(rho) if K is None else K
    K2 = linalg.matmul(K, K)
    return sum((K2[i][i] for i in range(6)), Fraction(0)) / 6


def _sqrt_or_none(x):
    """Rational square root of x, or None (then only scaled certificates are kept)."""
    if isinstance(x, Surd):
        return None
    return exact_root(x, 2)


def classify_three_form_6d(rho: PForm) -> OrbitLabel:
    if (rho.n, rho.p) != (6, 3):
        raise WrongDegree("expected a 3-form on R^6")
    K = hitchin_endomorphism(rho)
    lam = lambda_invariant(rho, K)
    certs = {"K": K, "Lambda": lam}
    s = sign(lam)
    if s == 0:
        if linalg.is_zero(K):
            return OrbitLabel(Family.DEGENERATE, 6, 3, certs)
        K2 = linalg.matmul(K, K)
        r = linalg.rank(K)
        certs["rank_K"] = r
        if linalg.is_zero(K2) and r == 3:
            certs["kernel"] = linalg.nullspace(K)
            return OrbitLabel(Family.PARABOLIC, 6, 3, certs)
        return OrbitLabel(Family.DEGENERATE, 6, 3, certs)
    if s > 0:
        certs["vol_squared"] = lam
        vol = _sqrt_or_none(lam)
        if vol is not None:
            I = linalg.scale(K, 1 / vol)
            certs["vol"] = vol
            certs["I"] = I
            n = 6
            Id = linalg.identity(n)
            certs["E_plus"] = linalg.nullspace(linalg.sub(I, Id))
            certs["E_minus"] = linalg.nullspace(linalg.add(I, Id))
        return OrbitLabel(Family.SL3R, 6, 3, certs)
    certs["vol_squared"] = -lam / 4
    vol = _sqrt_or_none(-lam / 4)
    if vol is not None:
        certs["vol"] = vol
        certs["J"] = linalg.scale(K, Fraction(-1, 2) / vol)
    return OrbitLabel(Family.SL3C, 6, 3, certs)


# -- 7d 3- and 4-forms ---------------------------------------------------------


def q_matrix(phi: PForm):
    """Matrix of Q_phi(u, v) = (1/6)(u -| phi)^(v -| phi)^phi against theta^{1..n}."""
    n = phi.n
    if phi.p != 3:
        raise WrongDegree("expected a 3-form")
    cs = [interior([Fraction(int(i == j)) for i in range(n)], phi) for j in range(n)]
    cphi = [wedge(c, phi) for c in cs]
    Q = linalg.zeros(n, n)
    for i in range(n):
        for j in range(i, n):
            v = top_coefficient(wedge(cs[i], cphi[j])) / 6
            Q[i][j] = Q[j][i] = v
    return Q


_SIG_TO_FAMILY = {
    (7, 0): Family.G2,
    (3, 4): Family.G2_TILDE,
    (4, 3): Family.NEG_G2_TILDE,
    (0, 7): Family.NEG_G2,
}


def _g2_certificates(Q):
    sig = linalg.signature(Q)
    d = linalg.det(Q)
    certs = {"Q": Q, "signature": sig, "det_Q": d}
    if d != 0 and not isinstance(d, Surd):
        c = exact_root(abs(d), 9)
        if c is not None:
            certs["vol"] = c
            certs["g"] = linalg.scale(Q, 1 / c)
    return sig, certs


def classify_three_form_7d(phi: PForm) -> OrbitLabel:
    if (phi.n, phi.p) != (7, 3):
        raise WrongDegree("expected a 3-form on R^7")
    sig, certs = _g2_certificates(q_matrix(phi))
    fam = _SIG_TO_FAMILY.get((sig.pos, sig.neg)) if sig.null == 0 else None
    return OrbitLabel(fam or Family.DEGENERATE, 7, 3, certs)


def classify_four_form_7d(psi: PForm) -> OrbitLabel:
    """Classify psi through the 3-vector w with w -| theta^{1..7} = psi."""
    if (psi.n, psi.p) != (7, 4):
        raise WrongDegree("expected a 4-form on R^7")
    w = unhook_volume(psi, _vol(7))
    wf = PForm(7, 3, w.terms)
    sig, certs = _g2_certificates(q_matrix(wf))
    certs["dual_trivector"] = w
    if "vol" in certs:
        c = certs.pop("vol")
        certs.pop("g")
        vol = exact_root(c, 4)
        if vol is not None:
            certs["vol"] = vol**3
            s = exact_root(c, 2)
            if s is not None:
                certs["g"] = linalg.scale(linalg.inverse(certs["Q"]), s**3)
    fam = _SIG_TO_FAMILY.get((sig.pos, sig.neg)) if sig.null == 0 else None
    return OrbitLabel(fam or Family.DEGENERATE, 7, 4, certs)


# -- (2k-2)-forms on R^2k and (2k-1)-forms on R^{2k+1} ---------------------------


def ossymplectic_data(varpi: PForm):
    """Return (w, c, omega): w -| vol = varpi, c = coefficient of w^k/k!, and the
    emproplectic representative omega = (w^{k-1}/(k-1)!) -| vol."""
    n = varpi.n
    k = n // 2
    vol = _vol(n)
    w = unhook_volume(varpi, vol)
    c = top_coefficient(power(w, k)) / factorial(k)
    omega = contract(power(w, k - 1) / factorial(k - 1), vol)
    return w, c, omega


def classify_high_degree(varpi: PForm) -> OrbitLabel:
    n, p = varpi.n, varpi.p
    if n % 2 or p != n - 2 or n < 6:
        raise WrongDegree("expected a (2k-2)-form on R^2k with k >= 3")
    r = linalg.rank(epsilon_matrix(varpi))
    if r != n:
        return OrbitLabel(Family.DEGENERATE, n, p, {"rank_epsilon": r})
    w, c, omega = ossymplectic_data(varpi)
    fam = Family.OSEMPROPLECTIC if sign(c) > 0 else Family.OSPISOPLECTIC
    return OrbitLabel(fam, n, p, {"rank_epsilon": r, "bivector": w, "top": c, "omega": omega})


def classify_ospseudo(xi: PForm) -> OrbitLabel:
    n, p = xi.n, xi.p
    if n % 2 == 0 or p != n - 2 or n < 5:
        raise WrongDegree("expected a (2k-1)-form on R^{2k+1} with k >= 2")
    k = (n - 1) // 2
    E = epsilon_matrix(xi)
    r = linalg.rank(E)
    if r != 2 * k:
        return OrbitLabel(Family.DEGENERATE, n, p, {"rank_epsilon": r})
    theta = linalg.nullspace(E)[0]
    j = next(i for i, x in enumerate(theta) if x != 0)
    u = [Fraction(0)] * n
    u[j] = 1 / theta[j]
    basis = linalg.nullspace([theta])
    frame = linalg.transpose([u] + basis)
    if sign(linalg.det(frame)) < 0:
        basis[0] = [-x for x in basis[0]]

    def restricted(u, basis):
        B = linalg.transpose(basis)
        return pullback(B, interior(u, xi))

    varpi = restricted(u, basis)
    w, c, omega = ossymplectic_data(varpi)
    if sign(c) < 0:
        theta = [-x for x in theta]
        u = [-x for x in u]
        basis[0] = [-x for x in basis[0]]
        varpi = restricted(u, basis)
        w, c, omega = ossymplectic_data(varpi)
    certs = {
        "rank_epsilon": r,
        "annihilator": theta,
        "transversal": u,
        "hyperplane": basis,
        "varpi": varpi,
        "omega": omega,
        "top": c,
        "orientation_consistent": sign(c) > 0,
    }
    return OrbitLabel(Family.OSPSEUDOPLECTIC, n, p, certs)


# -- dispatcher ------------------------------------------------------------------


def classify(sigma: PForm) -> OrbitLabel:
    """Classify any form, using the specialised invariant for known families."""
    n, p = sigma.n, sigma.p
    if sigma.is_zero():
        return OrbitLabel(Family.DEGENERATE, n, p, {})
    if p == 2 and n >= 2:
        return classify_two_form(sigma)
    if (n, p) == (6, 3):
        return classify_three_form_6d(sigma)
    if (n, p) == (7, 3):
        return classify_three_form_7d(sigma)
    if (n, p) == (7, 4):
        return classify_four_form_7d(sigma)
    if n % 2 == 0 and n >= 6 and p == n - 2:
        return classify_high_degree(sigma)
    if n % 2 == 1 and n >= 5 and p == n - 2:
        return classify_ospseudo(sigma)
    info = stabilizer_algebra_dim(sigma)
    fam = Family.STABLE_UNCLASSIFIED if info.stable else Family.DEGENERATE
    return OrbitLabel(fam, n, p, {"stab_dim": info.dim})


def verify_stabilizer_element(F, sigma: PForm) -> bool:
    d = linalg.det(F)
    return sign(d) > 0 and pullback(F, sigma) == sigma
