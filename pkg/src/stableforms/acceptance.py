"""The acceptance checks, shared by ``stableforms selftest`` and the test suite."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import ampleness, hitchin, linalg, restriction, simplicial
from .builtins import (
    eta_c,
    eta_n,
    eta_s,
    mu0,
    omega_minus,
    omega_plus,
    phi0,
    psi0,
    rho0,
    rho_minus,
    rho_plus,
    split_metric1,
    split_phi0,
    split_phi1,
    split_psi0,
    split_psi1,
    varpi_minus,
    varpi_plus,
    xi0,
    zeta_c,
    zeta_n,
    zeta_s,
)
from .forms import (
    PForm,
    PseudoMetric,
    PVector,
    basis_indices,
    form,
    hodge_star,
    hook_volume,
    power,
    pullback,
    pushforward,
    volume,
)
from .orbits import Family, classify, stabilizer_algebra_dim, verify_stabilizer_element
from .scalar import field_of


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


def _timed(number, name):
    def wrap(fn):
        def run(**kw) -> CriterionResult:
            t0 = time.perf_counter()
            passed, detail = fn(**kw)
            return CriterionResult(number, name, bool(passed), detail, time.perf_counter() - t0)

        run.number = number
        run.title = name
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


def split_metric0():
    return PseudoMetric.diagonal([1, 1, 1, -1, -1, -1, -1])


def random_sl(n: int, rng: random.Random, steps: int = 12, bound: int = 3):
    """Random element of SL(n, Z) as a product of elementary matrices."""
    F = linalg.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        E = linalg.identity(n)
        E[i][j] = Fraction(rng.randint(-bound, bound))
        F = linalg.matmul(F, E)
    return F


# 1 -----------------------------------------------------------------------------------


def stability_table():
    rows = [(name, f(), 14) for name, f in [("phi0", phi0), ("svphi0", split_phi0), ("psi0", psi0), ("spsi0", split_psi0)]]
    rows += [("rho+", rho_plus(), 16), ("rho-", rho_minus(), 16)]
    for k in (2, 3, 4):
        for name, f in [("omega+", omega_plus), ("omega-", omega_minus), ("varpi+", varpi_plus), ("varpi-", varpi_minus)]:
            rows.append((f"{name}({k})", f(k), 2 * k * k + k))
    for k in (2, 3):
        rows += [(f"mu0({k})", mu0(k), (2 * k + 1) * (k + 1)), (f"xi0({k})", xi0(k), (2 * k + 1) * (k + 1))]
    rows += [(name, f(), 8) for name, f in [("zeta_c", zeta_c), ("zeta_s", zeta_s), ("zeta_n", zeta_n),
                                             ("eta_c", eta_c), ("eta_s", eta_s), ("eta_n", eta_n)]]
    return rows


@_timed(1, "stabilizer dimensions")
def criterion_1():
    t0 = time.perf_counter()
    bad = []
    rows = stability_table()
    for name, sigma, dim in rows:
        info = stabilizer_algebra_dim(sigma)
        if not info.stable or info.dim != dim:
            bad.append(f"{name}: got ({info.stable}, {info.dim}), want (True, {dim})")
    dt = time.perf_counter() - t0
    if dt >= 10:
        bad.append(f"runtime {dt:.1f}s >= 10s")
    return not bad, "; ".join(bad) or f"{len(rows)} forms, {dt:.2f}s"


# 2 -----------------------------------------------------------------------------------


@_timed(2, "metrics and volumes")
def criterion_2():
    bad = []
    Id7 = linalg.identity(7)
    g0 = [list(r) for r in split_metric0().g]
    for name, sigma, g, vol in [
        ("phi0", phi0(), Id7, 1),
        ("svphi0", split_phi0(), g0, 1),
        ("svphi1", split_phi1(), split_metric1(), Fraction(1, 8)),
    ]:
        c = classify(sigma).certificates
        if c.get("g") != g or c.get("vol") != vol:
            bad.append(f"{name} metric/volume")
    for name, rho in [("rho+", rho_plus()), ("rho-", rho_minus())]:
        if classify(rho).certificates.get("vol") != 1:
            bad.append(f"{name} volume")
    if hodge_star(PseudoMetric.diagonal([1] * 7), phi0()) != psi0():
        bad.append("*phi0 != psi0")
    if hodge_star(split_metric0(), split_phi0()) != split_psi0():
        bad.append("*svphi0 != spsi0")
    g1 = PseudoMetric.from_matrix(split_metric1(), volume(7, Fraction(1, 8)))
    if hodge_star(g1, split_phi1()) != split_psi1():
        bad.append("*svphi1 != spsi1")
    return not bad, "; ".join(bad) or "all certificates exact"


# 3 -----------------------------------------------------------------------------------


def duality_commutes(F, sigma: PVector) -> bool:
    """(F sigma) -| vol == det(F) (F^-1)^*(sigma -| vol), the contraction intertwining
    the left action on multivectors with the twisted right action on forms."""
    n = sigma.n
    vol = volume(n)
    lhs = hook_volume(pushforward(F, sigma), vol)
    rhs = pullback(linalg.inverse(F), hook_volume(sigma, vol)) * linalg.det(F)
    return lhs == rhs


def bivector_sum(k: int, first_sign: int = 1) -> PVector:
    terms = {(2 * i - 1, 2 * i): Fraction(first_sign if i == 1 else 1) for i in range(1, k + 1)}
    return PVector(2 * k, 2, terms)


@_timed(3, "duality diagram")
def criterion_3(samples: int = 50, seed: int = 3):
    rng = random.Random(seed)
    bad = []
    for n, p in [(6, 3), (7, 3), (6, 2)]:
        for _ in range(samples):
            F = random_sl(n, rng)
            sigma = PVector(n, p, {I: rng.randint(-3, 3) for I in basis_indices(n, p)})
            if not duality_commutes(F, sigma):
                bad.append(f"(n,p)=({n},{p})")
                break
    from math import factorial

    for k in (3, 4):
        vol = power(omega_plus(k), k) / factorial(k)
        if hook_volume(bivector_sum(k), vol) != power(omega_plus(k), k - 1) / factorial(k - 1) or \
                hook_volume(bivector_sum(k), vol) != varpi_plus(k):
            bad.append(f"positive display k={k}")
        if vol != -power(omega_minus(k), k) / factorial(k):
            bad.append(f"volume identity k={k}")
        w = hook_volume(bivector_sum(k, -1), vol)
        if w != -power(omega_minus(k), k - 1) / factorial(k - 1) or w != varpi_minus(k):
            bad.append(f"negative display k={k}")
    return not bad, "; ".join(bad) or f"{3 * samples} random SL(n) checks and both displays for k=3,4"


# 4 -----------------------------------------------------------------------------------


def _e(n, i, s=1):
    return tuple(Fraction(s if j == i else 0) for j in range(1, n + 1))


def _sum(*vs):
    return tuple(sum(x) for x in zip(*vs))


def named_restrictions():
    """(description, form, hyperplane, expected local form, expected family)."""
    B_tl = restriction.OrientedHyperplane.from_basis([_e(7, 1), _e(7, 5), _e(7, 6), _e(7, 2, -1), _e(7, 3), _e(7, 7)])
    B_27 = restriction.OrientedHyperplane.from_basis([_e(7, i) for i in range(2, 8)])
    B_16 = restriction.OrientedHyperplane.from_basis([_e(7, i) for i in range(1, 7)])
    t = lambda *pairs: form(6, len(pairs[0][1]), [(c, tuple(int(x) for x in s)) for c, s in pairs])
    return [
        ("2 svphi1 on <e1,e5,e6,-e2,e3,e7>", 2 * split_phi1(), B_tl, t((1, "123"), (1, "456")), Family.SL3R),
        ("svphi0 on <e2..e7>", split_phi0(), B_27, t((1, "135"), (-1, "146"), (-1, "236"), (-1, "245")), Family.SL3C),
        ("2 svphi1 on <e2..e7>", 2 * split_phi1(), B_27, rho0(), Family.PARABOLIC),
        ("spsi0 on <e2..e7>", split_psi0(), B_27, t((1, "3456"), (-1, "1256"), (-1, "1234")), Family.OSEMPROPLECTIC),
        ("spsi0 on <e1..e6>", split_psi0(), B_16, t((-1, "2345"), (-1, "1346"), (-1, "1256")), Family.OSPISOPLECTIC),
        ("2 spsi1 on <e1..e6>", 2 * split_psi1(), B_16, t((Fraction(1, 2), "2356"), (-1, "1456")), Family.DEGENERATE),
    ]


@_timed(4, "hyperplane restrictions")
def criterion_4(count: int = 500, seed: int = 4):
    bad = []
    for desc, sigma, B, expected, fam in named_restrictions():
        r = restriction.restrict(sigma, B)
        if r != expected:
            bad.append(f"{desc}: got {r}")
        elif classify(r).family is not fam:
            bad.append(f"{desc}: family {classify(r).family.value}")
    hist = restriction.restriction_survey(split_phi0(), split_metric0(), count, seed)
    want = {"timelike": Family.SL3R.value, "spacelike": Family.SL3C.value, "null": Family.PARABOLIC.value}
    for (ctype, fam), k in hist.items():
        if want.get(ctype) != fam:
            bad.append(f"survey bucket {ctype}->{fam} x{k}")
    if {c for c, _ in hist} != set(want):
        bad.append(f"survey missed a causal type: {dict(hist)}")
    summary = ", ".join(f"{c}->{f}: {k}" for (c, f), k in sorted(hist.items()))
    return not bad, "; ".join(bad) or f"6 named restrictions; survey {summary}"


# 5 -----------------------------------------------------------------------------------


def equivalence_run(case: str, count: int = 300, seed: int = 5):
    rho = {"timelike": rho_plus, "spacelike": rho_minus, "null": rho0}[case]()
    rng = random.Random(f"{seed}-{case}")
    members = mismatches = 0
    for _ in range(count):
        w = ampleness.random_form(6, 2, rng, 5)
        a = ampleness.membership(Family.G2_TILDE, rho, w)
        b = ampleness.characterize(case, rho, w)
        members += a
        mismatches += a != b
    return members, mismatches


@_timed(5, "ampleness characterizations")
def criterion_5(count: int = 300, seed: int = 5):
    bad, parts = [], []
    for case in ampleness.CASES:
        members, mism = equivalence_run(case, count, seed)
        parts.append(f"{case}: {mism} mismatches, {members}/{count} members")
        if mism:
            bad.append(f"{case}: {mism} mismatches")
        if members < 0.05 * count:
            bad.append(f"{case}: acceptance rate below 5%")
    return not bad, "; ".join(bad) or "; ".join(parts)


# 6 -----------------------------------------------------------------------------------


WITNESS_RUNS = [
    ("timelike", None),
    ("spacelike", None),
    ("null", None),
    ("osymplectic-hull", 3),
    ("osymplectic-hull", 4),
    ("osempro-abundance", 3),
    ("osempro-abundance", 4),
    ("ospseudo-tau0", 2),
    ("ospseudo-tau0", 3),
]


@_timed(6, "witness identities")
def criterion_6():
    bad = []
    for case, k in WITNESS_RUNS:
        rep = ampleness.verify_witness(case, k)
        if not rep.passed:
            bad.append(f"{case}({k}): {[n for n, ok in rep.checks if not ok]}")
    for k, d in ((3, 5), (4, 3)):
        r = ampleness.ratio_root(k)
        if field_of([r]) != d:
            bad.append(f"ratio for k={k} not in Q(sqrt {d})")
    return not bad, "; ".join(bad) or f"{len(WITNESS_RUNS)} witness runs exact"


# 7 -----------------------------------------------------------------------------------


@_timed(7, "symplectic-type characterizations")
def criterion_7(count: int = 300, seed: int = 7):
    bad = []
    for k in (2, 3):
        rng = random.Random(f"{seed}-em-{k}")
        mism = 0
        for i in range(count):
            # a third of the samples are sparse so degenerate tau also occur
            tau = ampleness.random_form(2 * k - 1, 2, rng, 3, density=1.0 if i % 3 == 0 else 0.4)
            nu = ampleness.random_form(2 * k - 1, 1, rng, 3)
            mism += ampleness.membership(Family.EMPROPLECTIC, tau, nu) != ampleness.emproplectic_predicate(tau, nu)
        if mism:
            bad.append(f"emproplectic k={k}: {mism} mismatches")
    rng = random.Random(f"{seed}-os")
    mism = 0
    for _ in range(count):
        tau = ampleness.random_form(5, 4, rng, 3, density=0.6)
        nu = ampleness.random_form(5, 3, rng, 3, density=0.6)
        mism += ampleness.membership(Family.OSEMPROPLECTIC, tau, nu) != ampleness.osemproplectic_predicate(tau, nu)
    if mism:
        bad.append(f"osemproplectic: {mism} mismatches")
    return not bad, "; ".join(bad) or f"{3 * count} random pairs, no mismatches"


# 8 -----------------------------------------------------------------------------------


def random_forward_triangular(N: int, rng: random.Random, bound: int = 5, zero_centre: bool = False):
    M = linalg.zeros(N, N)
    for i in range(N):
        for j in range(i, N):
            if i + j < N - 1:
                v = rng.randint(-bound, bound)
            elif i + j == N - 1:
                v = rng.choice([x for x in range(-bound, bound + 1) if x])
            else:
                continue
            M[i][j] = M[j][i] = Fraction(v)
    if N % 2 and zero_centre:
        M[N // 2][N // 2] = Fraction(0)
    return M


def eigen_signature(S, threshold: float = 1e-9):
    """Signature from floating-point eigenvalues; near-zero eigenvalues are
    resolved by the exact rank."""
    import numpy as np

    vals = np.linalg.eigvalsh(np.array(linalg.to_float(S), dtype=float))
    pos = int(np.sum(vals > threshold))
    neg = int(np.sum(vals < -threshold))
    flagged = len(vals) - pos - neg
    if flagged:
        null = len(vals) - linalg.rank(S)
        # the exact nullity fixes the count; flagged nonzero eigenvalues keep their float sign
        small = sorted(vals[np.abs(vals) <= threshold], key=abs)
        for v in small[null:]:
            if v > 0:
                pos += 1
            else:
                neg += 1
        return linalg.Signature(pos, neg, null), flagged
    return linalg.Signature(pos, neg, 0), 0


def random_symmetric(N: int, rng: random.Random, bound: int = 5, rank_deficit: int = 0):
    if rank_deficit:
        r = max(N - rank_deficit, 0)
        A = [[Fraction(rng.randint(-bound, bound)) for _ in range(N)] for _ in range(r)]
        D = [Fraction(rng.choice([-1, 1]) * rng.randint(1, bound)) for _ in range(r)]
        return [[sum((A[k][i] * D[k] * A[k][j] for k in range(r)), Fraction(0)) for j in range(N)] for i in range(N)]
    M = linalg.zeros(N, N)
    for i in range(N):
        for j in range(i, N):
            M[i][j] = M[j][i] = Fraction(rng.randint(-bound, bound))
    return M


@_timed(8, "signature computations")
def criterion_8(count: int = 500, seed: int = 8):
    rng = random.Random(seed)
    bad = []
    degenerate = 0
    for i in range(count):
        N = rng.randint(1, 9)
        M = random_forward_triangular(N, rng, zero_centre=(i % 10 == 0))
        fast = ampleness.signature_fast(M)
        exact = linalg.signature(M)
        if fast is None:
            degenerate += 1
            if not exact.degenerate:
                bad.append(f"template {i}: fast says degenerate, exact {exact}")
        elif fast != exact:
            bad.append(f"template {i}: fast {fast} vs exact {exact}")
    flagged = 0
    for i in range(count):
        N = rng.randint(1, 9)
        S = random_symmetric(N, rng, rank_deficit=(rng.randint(1, N) if i % 5 == 0 else 0))
        sig, f = eigen_signature(S)
        flagged += bool(f)
        if sig != linalg.signature(S):
            bad.append(f"dense {i}: eig {sig} vs exact {linalg.signature(S)}")
    return not bad, "; ".join(bad[:5]) or f"{count} templates ({degenerate} degenerate), {count} dense ({flagged} flagged)"


# 9 -----------------------------------------------------------------------------------


SCALING_CASES = [
    ("phi0", phi0, 7),
    ("svphi0", split_phi0, 26),
    ("rho+", rho_plus, 0),
    ("rho-", rho_minus, 3),
    ("psi0", psi0, 15),
    ("varpi+(3)", lambda: varpi_plus(3), 15),
    ("omega+(2)", lambda: omega_plus(2), Fraction(-1, 2)),
]


@_timed(9, "Hitchin volume")
def criterion_9(tol: float = 1e-6):
    bad = []
    for name, f, lam in SCALING_CASES:
        if not hitchin.scaling_law(f(), lam):
            bad.append(f"scaling {name} at {lam}")
    r = hitchin.xi_dual(phi0())
    if not r.residual < tol:
        bad.append(f"Xi(phi0) residual {r.residual}")
    q = hitchin.xi_dual(rho_plus())
    if not q.linearity_residual < tol:
        bad.append(f"Xi(rho+) linearity residual {q.linearity_residual}")
    detail = f"Xi(phi0) = {r.constant:.9f} * psi0 (residual {r.residual:.1e}); rho+ linearity {q.linearity_residual:.1e}"
    return not bad, "; ".join(bad) or detail


# 10 ----------------------------------------------------------------------------------


@_timed(10, "simplicial splitting")
def criterion_10():
    bad = []
    for name in ("interval", "circle", "octahedron", "torus", "moebius"):
        K = simplicial.STANDARD[name]()
        try:
            S = simplicial.build_splitting(K)
        except simplicial.SplittingError as exc:
            bad.append(f"{name}: {exc}")
            continue
        if S.betti() != simplicial.KNOWN_BETTI[name]:
            bad.append(f"{name}: betti {S.betti()}")
    for name in ("triangle", "tetrahedron", "octahedron"):
        rep = simplicial.whitney_check(simplicial.STANDARD[name]())
        if not rep.passed:
            bad.append(f"whitney {name}: {rep.failures()}")
    return not bad, "; ".join(bad) or "5 splittings verified, Betti numbers match, Whitney identities on 3 embeddings"


# 11 ----------------------------------------------------------------------------------


@_timed(11, "parabolic stabilizer")
def criterion_11(count: int = 100, seed: int = 11):
    rng = random.Random(seed)
    rho = rho0()
    bad = []
    good = sum(verify_stabilizer_element(ampleness.random_parabolic_element(rng), rho) for _ in range(count))
    wrong = sum(verify_stabilizer_element(ampleness.random_parabolic_element(rng, satisfy=False), rho) for _ in range(count))
    if good != count:
        bad.append(f"{count - good} constrained elements failed")
    if wrong:
        bad.append(f"{wrong} unconstrained elements stabilized rho0")
    H = ampleness.null_endomorphism(rho)
    vol = volume(6)
    ok = 0
    for _ in range(count // 2):
        A = ampleness.random_sl3(rng)
        F = ampleness.diagonal_sl3(A)
        ok += (linalg.det(A) == 1 and pullback(F, rho) == rho and pullback(F, vol) == vol
               and linalg.matmul(F, H) == linalg.matmul(H, F))
    if ok != count // 2:
        bad.append(f"{count // 2 - ok} SL(3) samples failed")
    return not bad, "; ".join(bad) or f"{count} members, {count} violations rejected, {count // 2} SL(3) samples"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def run_all(echo=None):
    results = []
    for c in CRITERIA:
        res = c()
        results.append(res)
        if echo:
            echo(res.line())
    return results
