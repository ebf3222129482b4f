"""Restriction of forms to oriented hyperplanes, causal types, and surveys."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .forms import PForm, PseudoMetric, pullback
from .orbits import classify
from .scalar import sign


class DegenerateBasis(ValueError):
    pass


def _cofactor_normal(basis, n):
    """Covector N with N(x) = det(x, b_1, ..., b_{n-1})."""
    N = []
    for i in range(n):
        e = [Fraction(int(k == i)) for k in range(n)]
        N.append(linalg.det(linalg.transpose([e] + [list(b) for b in basis])))
    return N


@dataclass(frozen=True)
class OrientedHyperplane:
    """An ordered basis of a hyperplane plus a complement u with (u, basis) positive."""

    n: int
    basis: tuple
    complement: tuple

    def __post_init__(self):
        if len(self.basis) != self.n - 1 or any(len(b) != self.n for b in self.basis):
            raise DegenerateBasis("need n-1 vectors of length n")
        frame = linalg.transpose([list(self.complement)] + [list(b) for b in self.basis])
        if sign(linalg.det(frame)) <= 0:
            raise DegenerateBasis("(complement, basis) is not a positively oriented frame")

    @staticmethod
    def from_basis(basis, complement=None) -> "OrientedHyperplane":
        basis = tuple(tuple(Fraction(x) if isinstance(x, int) else x for x in b) for b in basis)
        n = len(basis[0]) if basis else 0
        if len(basis) != n - 1 or any(len(b) != n for b in basis):
            raise DegenerateBasis("need n-1 vectors of length n")
        if complement is None:
            complement = _cofactor_normal(basis, n)
            if all(x == 0 for x in complement):
                raise DegenerateBasis("basis vectors are linearly dependent")
        return OrientedHyperplane(n, basis, tuple(complement))

    def embedding(self):
        """The n x (n-1) matrix whose columns are the basis vectors."""
        return linalg.transpose([list(b) for b in self.basis])

    def normal_covector(self):
        return _cofactor_normal(self.basis, self.n)

    def reversed(self) -> "OrientedHyperplane":
        b = list(self.basis)
        b[0] = tuple(-x for x in b[0])
        return OrientedHyperplane(self.n, tuple(b), self.complement)

    def transformed(self, F) -> "OrientedHyperplane":
        """Image F.B with the induced orientation (F must have det F > 0)."""
        return OrientedHyperplane(
            self.n,
            tuple(tuple(linalg.matvec(F, list(b))) for b in self.basis),
            tuple(linalg.matvec(F, list(self.complement))),
        )


def restrict(sigma: PForm, B: OrientedHyperplane) -> PForm:
    if sigma.n != B.n:
        raise ValueError(f"form on R^{sigma.n}, hyperplane in R^{B.n}")
    return pullback(B.embedding(), sigma)


def orthogonal_line(B: OrientedHyperplane, metric: PseudoMetric):
    N = B.normal_covector()
    return linalg.matvec(metric.dual(), N)


def causal_type(B: OrientedHyperplane, metric: PseudoMetric) -> str:
    v = orthogonal_line(B, metric)
    s = sign(metric.apply(v, v))
    return "spacelike" if s > 0 else ("timelike" if s < 0 else "null")


# -- sampling ------------------------------------------------------------------------


def random_hyperplane(n: int, rng: random.Random, bound: int = 9) -> OrientedHyperplane:
    while True:
        basis = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n - 1)]
        if linalg.rank(basis) == n - 1:
            return OrientedHyperplane.from_basis(basis)


def seed_null_vector(metric: PseudoMetric):
    """A nonzero null vector for a diagonal metric with entries a, -a of opposite sign."""
    g = metric.g
    n = metric.n
    if any(g[i][j] != 0 for i in range(n) for j in range(n) if i != j):
        raise ValueError("seed null vectors are only found automatically for diagonal metrics")
    for i in range(n):
        for j in range(n):
            if sign(g[i][i]) > 0 and g[j][j] == -g[i][i]:
                v = [Fraction(0)] * n
                v[i] = v[j] = Fraction(1)
                return v
    raise ValueError("metric has no obvious rational null vector")


def random_null_vector(metric: PseudoMetric, rng: random.Random, bound: int = 9, seed=None):
    """Second intersection of a random rational line through a known null vector."""
    n0 = seed if seed is not None else seed_null_vector(metric)
    while True:
        x = [Fraction(rng.randint(-bound, bound)) for _ in range(metric.n)]
        gxx = metric.apply(x, x)
        gnx = metric.apply(n0, x)
        if gxx == 0 or gnx == 0:
            continue
        t = -2 * gnx / gxx
        v = [a + t * b for a, b in zip(n0, x)]
        if any(c != 0 for c in v):
            return v


def random_null_hyperplane(metric: PseudoMetric, rng: random.Random, bound: int = 9) -> OrientedHyperplane:
    v = random_null_vector(metric, rng, bound)
    cov = linalg.matvec([list(r) for r in metric.g], v)
    basis = linalg.nullspace([cov])
    if rng.random() < 0.5:
        basis[0] = [-x for x in basis[0]]
    return OrientedHyperplane.from_basis(basis)


def restriction_survey(sigma0: PForm, metric: PseudoMetric | None, count: int, seed: int = 0,
                       null_every: int = 5, bound: int = 9) -> Counter:
    """Histogram of (causal type, orbit family) over seeded random hyperplanes.

    When the metric is indefinite, every ``null_every``-th sample is drawn from
    the null hyperplanes, which random integer frames would otherwise miss.
    """
    if count < 1:
        raise ValueError("count must be positive")
    rng = random.Random(seed)
    n = sigma0.n
    indefinite = False
    if metric is not None:
        s = metric.signature()
        indefinite = s.pos > 0 and s.neg > 0
    hist: Counter = Counter()
    for k in range(count):
        if indefinite and null_every and k % null_every == null_every - 1:
            B = random_null_hyperplane(metric, rng, bound)
        else:
            B = random_hyperplane(n, rng, bound)
        ctype = causal_type(B, metric) if metric is not None else "untyped"
        label = classify(restrict(sigma0, B))
        hist[(ctype, label.family.value)] += 1
    return hist
