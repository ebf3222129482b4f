"""Named standard forms, transcribed coefficient by coefficient."""

from __future__ import annotations

from fractions import Fraction

from .forms import PForm, form, shift
from .scalar import Surd

H = Fraction(1, 2)
R3H = Surd(0, Fraction(1, 2), 3)  # sqrt(3)/2


def _t(n, spec):
    """Parse ``[(coeff, "123"), ...]`` with single-digit indices."""
    return form(n, len(spec[0][1]), [(c, tuple(int(ch) for ch in idx)) for c, idx in spec])


def phi0() -> PForm:
    return _t(7, [(1, "123"), (1, "145"), (1, "167"), (1, "246"), (-1, "257"), (-1, "347"), (-1, "356")])


def split_phi0() -> PForm:
    return _t(7, [(1, "123"), (-1, "145"), (-1, "167"), (1, "246"), (-1, "257"), (-1, "347"), (-1, "356")])


def psi0() -> PForm:
    return _t(7, [(1, "4567"), (1, "2367"), (1, "2345"), (1, "1357"), (-1, "1346"), (-1, "1256"), (-1, "1247")])


def split_psi0() -> PForm:
    return _t(7, [(1, "4567"), (-1, "2367"), (-1, "2345"), (1, "1357"), (-1, "1346"), (-1, "1256"), (-1, "1247")])


def split_phi1() -> PForm:
    return _t(7, [(H, "147"), (H, "156"), (-H, "237"), (H, "246"), (-H, "345")])


def split_psi1() -> PForm:
    q = Fraction(1, 4)
    return _t(7, [(q, "2356"), (2 * q, "2347"), (-2 * q, "1456"), (q, "1357"), (-q, "1267")])


def split_metric1():
    """Matrix of -th1.th7 + th2.th6 - th3.th5 - th4.th4 (symmetric product with 1/2)."""
    g = [[Fraction(0)] * 7 for _ in range(7)]
    for a, b, c in [(1, 7, -1), (2, 6, 1), (3, 5, -1)]:
        g[a - 1][b - 1] = g[b - 1][a - 1] = H * c
    g[3][3] = Fraction(-1)
    return g


def rho_plus() -> PForm:
    return _t(6, [(1, "123"), (1, "456")])


def rho_minus() -> PForm:
    return _t(6, [(1, "135"), (-1, "146"), (-1, "236"), (-1, "245")])


def rho0_ambient() -> PForm:
    """The parabolic 3-form -th237 + th246 - th345, written on R^7 (indices 2..7)."""
    return _t(7, [(-1, "237"), (1, "246"), (-1, "345")])


def rho0() -> PForm:
    """The parabolic 3-form in local coordinates of <e2..e7> (index i -> i-1)."""
    return shift(rho0_ambient(), -1, 6)


def omega_plus(k: int) -> PForm:
    return form(2 * k, 2, [(1, (2 * i - 1, 2 * i)) for i in range(1, k + 1)])


def omega_minus(k: int) -> PForm:
    return form(2 * k, 2, [(-1 if i == 1 else 1, (2 * i - 1, 2 * i)) for i in range(1, k + 1)])


def _omit_pair(n, i):
    return tuple(j for j in range(1, n + 1) if j not in (2 * i - 1, 2 * i))


def varpi_plus(k: int) -> PForm:
    n = 2 * k
    return form(n, n - 2, [(1, _omit_pair(n, i)) for i in range(1, k + 1)])


def varpi_minus(k: int) -> PForm:
    n = 2 * k
    return form(n, n - 2, [(-1 if i == 1 else 1, _omit_pair(n, i)) for i in range(1, k + 1)])


def mu0(k: int) -> PForm:
    return form(2 * k + 1, 2, [(1, (2 * i, 2 * i + 1)) for i in range(1, k + 1)])


def xi0(k: int) -> PForm:
    n = 2 * k + 1
    terms = []
    for i in range(1, k + 1):
        terms.append((1, tuple(j for j in range(1, n + 1) if j not in (2 * i, 2 * i + 1))))
    return form(n, n - 2, terms)


def zeta_c() -> PForm:
    return _t(8, [(1, "123"), (H, "147"), (-H, "156"), (H, "246"), (H, "257"), (H, "345"), (-H, "367"),
                  (R3H, "458"), (R3H, "678")])


def zeta_s() -> PForm:
    return _t(8, [(R3H, "147"), (-R3H, "156"), (1, "238"), (H, "246"), (-H, "257"), (H, "347"), (H, "356"),
                  (H, "458"), (-H, "678")])


def zeta_n() -> PForm:
    return _t(8, [(-1, "123"), (-H, "156"), (-H, "178"), (H, "257"), (-H, "268"), (-H, "358"), (-H, "367"),
                  (-R3H, "458"), (R3H, "467")])


def eta_c() -> PForm:
    return _t(8, [(-R3H, "12345"), (-R3H, "12367"), (-H, "12458"), (H, "12678"), (H, "13468"), (H, "13578"),
                  (-H, "23478"), (H, "23568"), (1, "45678")])


def eta_s() -> PForm:
    return _t(8, [(H, "12345"), (-H, "12367"), (H, "12478"), (H, "12568"), (-H, "13468"), (H, "13578"),
                  (-1, "14567"), (-R3H, "23478"), (R3H, "23568")])


def eta_n() -> PForm:
    return _t(8, [(-R3H, "12358"), (R3H, "12367"), (-H, "12458"), (-H, "12467"), (-H, "13457"), (H, "13468"),
                  (-H, "23456"), (-H, "23478"), (-1, "45678")])


FIXED = {
    "phi0": phi0,
    "svphi0": split_phi0,
    "psi0": psi0,
    "spsi0": split_psi0,
    "svphi1": split_phi1,
    "spsi1": split_psi1,
    "rho+": rho_plus,
    "rho-": rho_minus,
    "rho0": rho0,
    "zeta_c": zeta_c,
    "zeta_s": zeta_s,
    "zeta_n": zeta_n,
    "eta_c": eta_c,
    "eta_s": eta_s,
    "eta_n": eta_n,
}

INDEXED = {
    "omega+": omega_plus,
    "omega-": omega_minus,
    "varpi+": varpi_plus,
    "varpi-": varpi_minus,
    "mu0": mu0,
    "xi0": xi0,
}


def builtin_form(name: str, k: int | None = None) -> PForm:
    """Look up a standard form; names in ``INDEXED`` take the parameter k."""
    if name in FIXED:
        return FIXED[name]()
    if name in INDEXED:
        if k is None:
            raise ValueError(f"builtin {name!r} needs a parameter k")
        return INDEXED[name](k)
    raise KeyError(f"unknown builtin form {name!r}; known: {sorted(FIXED) + sorted(INDEXED)}")
