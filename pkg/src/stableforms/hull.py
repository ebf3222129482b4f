"""Exact certificates for (non-)membership of 0 in the convex hull of forms.

Phase-one simplex with Bland's rule over exact scalars.  Either convex
coefficients with sum(l_i v_i) = 0 are returned, or a linear functional that
is strictly positive on every point (Farkas alternative).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .forms import PForm
from .scalar import sign


class EmptyPointSet(ValueError):
    pass


class CertificateError(RuntimeError):
    """A computed certificate failed exact re-verification (a bug)."""


def feasible_point(A, b):
    """Return x >= 0 with A x = b, or None if the system is infeasible."""
    m = len(A)
    nvar = len(A[0]) if m else 0
    rows = []
    for i in range(m):
        row = list(A[i]) + [Fraction(0)] * m + [b[i]]
        if sign(b[i]) < 0:
            row = [-x for x in row]
        row[nvar + i] = Fraction(1)
        rows.append(row)
    width = nvar + m + 1
    basis = [nvar + i for i in range(m)]
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [Fraction(0)] * width
    for j in range(width):
        if nvar <= j < nvar + m:
            continue
        cost[j] = -sum((r[j] for r in rows), Fraction(0))
    while True:
        enter = next((j for j in range(nvar + m) if sign(cost[j]) < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(rows):
            if sign(r[enter]) > 0:
                ratio = r[-1] / r[enter]
                key = (ratio, basis[i])
                if best is None or sign(ratio - best[0]) < 0 or (ratio == best[0] and basis[i] < best[1]):
                    best = (ratio, basis[i], i)
        if best is None:
            raise CertificateError("phase-one objective is unbounded")
        piv = best[2]
        prow = rows[piv]
        inv = 1 / prow[enter]
        prow = [x * inv for x in prow]
        rows[piv] = prow
        for i in range(m):
            if i != piv and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, prow)]
        basis[piv] = enter
    if sign(-cost[-1]) > 0:
        return None
    x = [Fraction(0)] * nvar
    for i, j in enumerate(basis):
        if j < nvar:
            x[j] = rows[i][-1]
    return x


@dataclass(frozen=True)
class HullCertificate:
    points: tuple
    coefficients: tuple | None = None
    functional: dict | None = None

    @property
    def contains_zero(self) -> bool:
        return self.coefficients is not None

    def verify(self) -> bool:
        if self.coefficients is not None:
            if any(sign(c) < 0 for c in self.coefficients) or sum(self.coefficients, Fraction(0)) != 1:
                return False
            total = {}
            for c, pt in zip(self.coefficients, self.points):
                for I, v in pt.terms.items():
                    total[I] = total.get(I, 0) + c * v
            return all(v == 0 for v in total.values())
        if self.functional is not None:
            return all(sign(evaluate(self.functional, pt)) > 0 for pt in self.points)
        return False


def evaluate(functional: dict, pt: PForm):
    return sum((c * pt.terms.get(I, 0) for I, c in functional.items()), Fraction(0))


def zero_in_hull(points) -> HullCertificate:
    points = tuple(points)
    if not points:
        raise EmptyPointSet("need at least one point")
    n, p = points[0].n, points[0].p
    if any((q.n, q.p) != (n, p) for q in points):
        raise ValueError("points must share ambient dimension and degree")
    coords = sorted({I for q in points for I in q.terms})
    A = [[q.terms.get(I, Fraction(0)) for q in points] for I in coords]
    A.append([Fraction(1)] * len(points))
    b = [Fraction(0)] * len(coords) + [Fraction(1)]
    lam = feasible_point(A, b)
    if lam is not None:
        cert = HullCertificate(points, coefficients=tuple(lam))
    else:
        # f(v_i) - s_i = 1 with f = f_plus - f_minus, s >= 0
        k = len(coords)
        rows = []
        for q in points:
            vals = [q.terms.get(I, Fraction(0)) for I in coords]
            rows.append(vals + [-v for v in vals] + [Fraction(0)] * len(points))
        for i in range(len(points)):
            rows[i][2 * k + i] = Fraction(-1)
        sol = feasible_point(rows, [Fraction(1)] * len(points))
        if sol is None:
            raise CertificateError("neither alternative of the Farkas lemma was found")
        f = {I: sol[j] - sol[k + j] for j, I in enumerate(coords) if sol[j] - sol[k + j] != 0}
        cert = HullCertificate(points, functional=f)
    if not cert.verify():
        raise CertificateError("hull certificate failed re-verification")
    return cert
