"""Pointwise Hitchin volume, its derivative Xi, and the homogeneity law.

A volume is reported as a coefficient of theta^{1..n}.  When the coefficient is
irrational we keep an exact power: vol^power = value with value rational.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import linalg
from .forms import PForm, PseudoMetric, basis_indices, hodge_star, power, pullback, theta, top_coefficient, volume, wedge
from .orbits import Family, classify, ossymplectic_data
from .scalar import exact_root, sign


class NotHitchin(ValueError):
    pass


HITCHIN_FAMILIES = {
    Family.EMPROPLECTIC,
    Family.PISOPLECTIC,
    Family.SL3R,
    Family.SL3C,
    Family.G2,
    Family.G2_TILDE,
    Family.NEG_G2,
    Family.NEG_G2_TILDE,
    Family.OSEMPROPLECTIC,
    Family.OSPISOPLECTIC,
}


@dataclass(frozen=True)
class VolumeCertificate:
    family: Family
    n: int
    power: int
    value: Fraction  # vol ** power == value, vol > 0

    @property
    def exact(self):
        """Rational volume coefficient, or None."""
        return exact_root(self.value, self.power)

    def __float__(self):
        return float(self.value) ** (1.0 / self.power)

    def same_volume(self, other: "VolumeCertificate") -> bool:
        # a^(1/p) == b^(1/q)  <=>  a^q == b^p for positive a, b
        return self.value**other.power == other.value**self.power

    def scaled(self, t) -> "VolumeCertificate":
        """Certificate for t * vol, t > 0 rational."""
        return VolumeCertificate(self.family, self.n, self.power, self.value * Fraction(t) ** self.power)

    def __str__(self):
        e = self.exact
        if e is not None:
            return f"{e} theta^1..{self.n}"
        return f"({self.value})^(1/{self.power}) theta^1..{self.n} ~ {float(self):.12g}"


def _volume_data(sigma: PForm, fam: Family, certs: dict):
    n, p = sigma.n, sigma.p
    if fam in (Family.EMPROPLECTIC, Family.PISOPLECTIC):
        k = n // 2
        top = top_coefficient(power(sigma, k)) / factorial(k)
        return 1, abs(top)
    if fam is Family.SL3R:
        return 2, certs["Lambda"]
    if fam is Family.SL3C:
        return 2, -certs["Lambda"] / 4
    if fam in (Family.G2, Family.G2_TILDE, Family.NEG_G2, Family.NEG_G2_TILDE):
        # det Q-hat = vol^9 for 3-forms; for 4-forms vol^12 = |det Q-hat_w|
        return (9 if p == 3 else 12), abs(certs["det_Q"])
    if fam in (Family.OSEMPROPLECTIC, Family.OSPISOPLECTIC):
        k = n // 2
        _, c, _ = ossymplectic_data(sigma)
        return k - 1, abs(c)
    raise NotHitchin(f"{fam.value} forms carry no Hitchin volume")


def hitchin_volume(sigma: PForm, family=None) -> VolumeCertificate:
    lab = classify(sigma)
    if family is not None and Family(family) is not lab.family:
        raise NotHitchin(f"form classifies as {lab.family.value}, not {Family(family).value}")
    if lab.family not in HITCHIN_FAMILIES:
        raise NotHitchin(f"{lab.family.value} forms carry no Hitchin volume")
    exponent, value = _volume_data(sigma, lab.family, lab.certificates)
    return VolumeCertificate(lab.family, sigma.n, exponent, value)


def scaling_law(sigma: PForm, lam) -> bool:
    """vol((1+lam) sigma) == (1+lam)^(n/p) vol(sigma), exactly."""
    t = 1 + Fraction(lam)
    if t <= 0:
        raise ValueError("need 1 + lambda > 0")
    factor = exact_root(t**sigma.n, sigma.p)
    if factor is None:
        raise ValueError(f"(1+lambda)^({sigma.n}/{sigma.p}) is irrational for lambda = {lam}")
    return hitchin_volume(t * sigma).same_volume(hitchin_volume(sigma).scaled(factor))


def transformation_law(sigma: PForm, F) -> bool:
    """vol(F^* sigma) == det(F) vol(sigma) for det F > 0."""
    d = linalg.det(F)
    if sign(d) <= 0:
        raise ValueError("F must preserve orientation")
    return hitchin_volume(pullback(F, sigma)).same_volume(hitchin_volume(sigma).scaled(d))


# -- Xi by central differences ----------------------------------------------------


def _sign_of_split(I, n):
    comp = tuple(j for j in range(1, n + 1) if j not in I)
    return top_coefficient(wedge(theta(n, *I), theta(n, *comp))), comp


def directional_derivative(sigma: PForm, alpha: PForm, h) -> float:
    h = Fraction(h)
    up = float(hitchin_volume(sigma + h * alpha))
    down = float(hitchin_volume(sigma - h * alpha))
    return (up - down) / (2 * float(h))


@dataclass
class XiReport:
    xi: dict  # complementary multi-index -> float coefficient
    candidate: PForm | None
    constant: float | None
    residual: float | None
    linearity_residual: float | None



def candidate_dual(sigma: PForm):
    """Closed-form direction of Xi when one is known: *phi for G2-type 3-forms,
    I^*rho or J^*rho for 6d forms."""
    lab = classify(sigma)
    c = lab.certificates
    if sigma.p == 3 and sigma.n == 7 and "g" in c:
        return hodge_star(PseudoMetric.from_matrix(c["g"], volume(7, c["vol"])), sigma)
    if lab.family in (Family.SL3R, Family.SL3C):
        # K is a positive multiple of I (resp. -J), so this fixes the direction
        return pullback(c["K"], sigma)
    return None


def xi_dual(sigma: PForm, h=Fraction(1, 10**4), probes: int = 5, seed: int = 0) -> XiReport:
    lab = classify(sigma)
    if lab.family not in HITCHIN_FAMILIES:
        raise NotHitchin(f"{lab.family.value} forms carry no Hitchin volume")
    n, p = sigma.n, sigma.p
    xi = {}
    for I in basis_indices(n, p):
        s, comp = _sign_of_split(I, n)
        xi[comp] = directional_derivative(sigma, theta(n, *I), h) / float(s)

    def pair(alpha):
        """(alpha ^ Xi, sum of |terms|) with the second used as the error scale."""
        total = scale = 0.0
        for I, c in alpha.terms.items():
            s, comp = _sign_of_split(I, n)
            t = float(c) * float(s) * xi[comp]
            total += t
            scale += abs(t)
        return total, scale

    rng = random.Random(seed)
    lin = 0.0
    for _ in range(probes):
        alpha = PForm(n, p, {I: rng.randint(-3, 3) for I in basis_indices(n, p)})
        if alpha.is_zero():
            continue
        fd = directional_derivative(sigma, alpha, h)
        val, scale = pair(alpha)
        lin = max(lin, abs(fd - val) / scale)

    cand = candidate_dual(sigma)
    const = resid = None
    if cand is not None:
        vec = {I: float(c) for I, c in cand.terms.items()}
        dot = sum(vec.get(I, 0.0) * v for I, v in xi.items())
        nn = sum(v * v for v in vec.values())
        const = dot / nn
        err = math.sqrt(sum((v - const * vec.get(I, 0.0)) ** 2 for I, v in xi.items()))
        resid = err / math.sqrt(sum(v * v for v in xi.values()))
    return XiReport(xi, cand, const, resid, lin)
