"""Sparse exterior algebra on R^n with exact coefficients.

A p-form is stored as a map from strictly increasing 1-based index tuples to
nonzero scalars, so ``{(1, 2): 3}`` is ``3 theta^12``.  Multivectors use the
same storage with the basis ``e_I``.  Contraction of a multivector into a form
fills the leading slots: ``e_{i1..ip} -| alpha = alpha(e_i1, ..., e_ip, ...)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .scalar import exact_root, field_of


class DimensionMismatch(ValueError):
    pass


def _perm_sign(seq) -> int:
    """Sign of the permutation sorting ``seq``; 0 if it has repeats."""
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] == seq[j]:
                return 0
            if seq[i] > seq[j]:
                s = -s
    return s


def _merge(I, J):
    """Return (sign, sorted union) for theta^I wedge theta^J, sign 0 on overlap."""
    s = 1
    for j in J:
        for i in I:
            if i == j:
                return 0, None
            if i > j:
                s = -s
    return s, tuple(sorted(I + J))


class _Alternating:
    __slots__ = ("n", "p", "terms")

    def __init__(self, n: int, p: int, terms=None):
        self.n = n
        self.p = p
        clean = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != p:
                raise ValueError(f"index {idx} has degree {len(idx)}, expected {p}")
            if any(i < 1 or i > n for i in idx):
                raise ValueError(f"index {idx} out of range 1..{n}")
            if c == 0:
                continue
            if list(idx) != sorted(idx) or len(set(idx)) != p:
                s = _perm_sign(idx)
                if s == 0:
                    continue
                idx = tuple(sorted(idx))
                c = s * c
            if isinstance(c, int):
                c = Fraction(c)
            v = clean.get(idx, 0) + c if idx in clean else c
            if v == 0:
                clean.pop(idx, None)
            else:
                clean[idx] = v
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def _raw(cls, n, p, terms):
        obj = cls.__new__(cls)
        obj.n, obj.p = n, p
        obj.terms = dict(sorted((k, v) for k, v in terms.items() if v != 0))
        return obj

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n or other.p != self.p:
            raise DimensionMismatch(f"({self.n},{self.p}) vs ({other.n},{other.p})")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return self._raw(self.n, self.p, t)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._raw(self.n, self.p, {k: -v for k, v in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, _Alternating):
            return NotImplemented
        return self._raw(self.n, self.p, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c) if isinstance(c, int) else 1 / c)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, self.n, self.p, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, idx):
        idx = tuple(idx)
        s = _perm_sign(idx)
        if s == 0:
            return Fraction(0)
        return s * self.terms.get(tuple(sorted(idx)), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def field(self) -> int | None:
        return field_of(self.terms.values())

    def vector(self):
        """Dense coefficient vector in the lexicographic basis."""
        return [self.terms.get(I, Fraction(0)) for I in basis_indices(self.n, self.p)]

    def __repr__(self):
        sym = "theta" if isinstance(self, PForm) else "e"
        if not self.terms:
            return f"0 ({type(self).__name__} n={self.n} p={self.p})"
        parts = []
        for idx, c in self.terms.items():
            name = sym + ("^" if sym == "theta" else "_") + ",".join(map(str, idx)) if idx else "1"
            parts.append(f"({c})*{name}")
        return " + ".join(parts)


class PForm(_Alternating):
    """Alternating covariant tensor (an exterior form)."""

    __slots__ = ()


class PVector(_Alternating):
    """Alternating contravariant tensor (a multivector)."""

    __slots__ = ()


def basis_indices(n: int, p: int):
    return [tuple(c) for c in combinations(range(1, n + 1), p)]


def theta(n: int, *idx, coeff=1) -> PForm:
    return PForm(n, len(idx), {tuple(idx): coeff})


def evec(n: int, *idx, coeff=1) -> PVector:
    return PVector(n, len(idx), {tuple(idx): coeff})


def form(n: int, p: int, terms) -> PForm:
    """Build a PForm from ``{indices: coeff}`` or an iterable of (coeff, indices)."""
    if not isinstance(terms, dict):
        d = {}
        for c, idx in terms:
            d.setdefault(tuple(idx), []).append(c)
        acc = PForm(n, p)
        for idx, cs in d.items():
            for c in cs:
                acc = acc + PForm(n, p, {idx: c})
        return acc
    return PForm(n, p, terms)


def zero(n: int, p: int) -> PForm:
    return PForm(n, p)


def one(n: int) -> PForm:
    return PForm(n, 0, {(): 1})


def wedge(a, b):
    if type(a) is not type(b):
        raise TypeError("wedge needs two forms or two multivectors")
    if a.n != b.n:
        raise DimensionMismatch(f"ambient dimensions {a.n} and {b.n}")
    n, p = a.n, a.p + b.p
    if p > n:
        return type(a)._raw(n, p, {})
    out: dict = {}
    for I, x in a.terms.items():
        for J, y in b.terms.items():
            s, K = _merge(I, J)
            if s:
                out[K] = out.get(K, 0) + (x * y if s > 0 else -(x * y))
    return type(a)._raw(n, p, out)


def wedge_all(*items):
    out = items[0]
    for x in items[1:]:
        out = wedge(out, x)
    return out


def power(a, k: int):
    if k == 0:
        return type(a)._raw(a.n, 0, {(): Fraction(1)})
    out = a
    for _ in range(k - 1):
        out = wedge(out, a)
    return out


def top_coefficient(a) -> Fraction:
    """Coefficient of the top-degree basis element."""
    if a.p != a.n:
        raise ValueError(f"degree {a.p} is not top degree {a.n}")
    return a.terms.get(tuple(range(1, a.n + 1)), Fraction(0))


def _as_vector(v, n):
    if isinstance(v, PVector):
        if v.p != 1 or v.n != n:
            raise DimensionMismatch("expected a vector in R^n")
        out = [Fraction(0)] * n
        for (i,), c in v.terms.items():
            out[i - 1] = c
        return out
    v = list(v)
    if len(v) != n:
        raise DimensionMismatch(f"vector of length {len(v)} in R^{n}")
    return v


def interior(v, alpha):
    """Contraction ``v -| alpha`` of a vector into a form (or a covector into a multivector)."""
    if alpha.p == 0:
        raise ValueError("cannot contract into a degree-0 element")
    vec = _as_vector(v, alpha.n)
    out: dict = {}
    for I, c in alpha.terms.items():
        for pos, i in enumerate(I):
            x = vec[i - 1]
            if x != 0:
                K = I[:pos] + I[pos + 1 :]
                t = c * x
                out[K] = out.get(K, 0) + (t if pos % 2 == 0 else -t)
    return type(alpha)._raw(alpha.n, alpha.p - 1, out)


def contract(w, alpha):
    """Contract every basis multivector of w into the leading slots of alpha.

    Works for a multivector into a form and, symmetrically, a form into a
    multivector.  Degree of the result is ``alpha.p - w.p``.
    """
    if w.n != alpha.n:
        raise DimensionMismatch(f"ambient dimensions {w.n} and {alpha.n}")
    if w.p > alpha.p:
        raise ValueError(f"cannot contract degree {w.p} into degree {alpha.p}")
    out: dict = {}
    for J, x in w.terms.items():
        Jset = set(J)
        for I, y in alpha.terms.items():
            if not Jset.issubset(I):
                continue
            R = tuple(i for i in I if i not in Jset)
            s = _perm_sign(J + R)
            out[R] = out.get(R, 0) + s * x * y
    return type(alpha)._raw(alpha.n, alpha.p - w.p, out)


def hook_volume(w: PVector, vol: PForm) -> PForm:
    """The isomorphism w -> w -| vol from p-vectors to (n-p)-forms."""
    if vol.p != vol.n:
        raise ValueError("volume must be a top-degree form")
    if vol.is_zero():
        raise ValueError("volume form is zero")
    return contract(w, vol)


def unhook_volume(alpha: PForm, vol: PForm) -> PVector:
    """Inverse of :func:`hook_volume`: the multivector w with w -| vol = alpha."""
    if vol.is_zero() or vol.p != vol.n:
        raise ValueError("volume must be a nonzero top-degree form")
    n, q = alpha.n, alpha.n - alpha.p
    c = top_coefficient(vol)
    full = tuple(range(1, n + 1))
    out = {}
    for I, y in alpha.terms.items():
        J = tuple(i for i in full if i not in I)
        # e_J -| theta^full = sign(J, I) theta^I
        out[J] = y / (_perm_sign(J + I) * c)
    return PVector._raw(n, q, out)


def pullback(F, alpha: PForm) -> PForm:
    """Pull back alpha on R^n along the linear map F: R^m -> R^n (n x m matrix).

    Column convention: column j of F is the image of e_j, so
    ``F^* theta^i = sum_j F[i][j] theta^j``.
    """
    n = len(F)
    if n != alpha.n:
        raise DimensionMismatch(f"map has {n} rows, form lives on R^{alpha.n}")
    m = len(F[0]) if n else 0
    ones = [PForm._raw(m, 1, {(j + 1,): F[i][j] for j in range(m) if F[i][j] != 0}) for i in range(n)]
    out = PForm._raw(m, alpha.p, {})
    acc: dict = {}
    for I, c in alpha.terms.items():
        t = PForm._raw(m, 0, {(): c})
        for i in I:
            t = wedge(t, ones[i - 1])
            if not t.terms:
                break
        for K, v in t.terms.items():
            acc[K] = acc.get(K, 0) + v
    return PForm._raw(m, alpha.p, acc) if acc else out


def pushforward(F, w: PVector) -> PVector:
    """Image of a multivector under the induced map Lambda^p F (F is m x n)."""
    n = len(F[0]) if F else 0
    if n != w.n:
        raise DimensionMismatch("map and multivector dimensions disagree")
    m = len(F)
    cols = [PVector._raw(m, 1, {(i + 1,): F[i][j] for i in range(m) if F[i][j] != 0}) for j in range(n)]
    acc: dict = {}
    for J, c in w.terms.items():
        t = PVector._raw(m, 0, {(): c})
        for j in J:
            t = wedge(t, cols[j - 1])
        for K, v in t.terms.items():
            acc[K] = acc.get(K, 0) + v
    return PVector._raw(m, w.p, acc)


def embed(alpha: PForm, positions, n: int) -> PForm:
    """Relabel index i of alpha as positions[i-1] inside R^n (positions increasing)."""
    positions = list(positions)
    if len(positions) != alpha.n or positions != sorted(positions):
        raise ValueError("positions must be an increasing list of length alpha.n")
    return PForm._raw(n, alpha.p, {tuple(positions[i - 1] for i in I): c for I, c in alpha.terms.items()})


def shift(alpha: PForm, offset: int, n: int | None = None) -> PForm:
    """Add ``offset`` to every index (negative offsets drop to a smaller space)."""
    n = alpha.n + offset if n is None else n
    out = {}
    for I, c in alpha.terms.items():
        J = tuple(i + offset for i in I)
        if any(j < 1 or j > n for j in J):
            raise ValueError(f"shifted index {J} out of range 1..{n}")
        out[J] = c
    return PForm._raw(n, alpha.p, out)


def iota_matrix(sigma: PForm):
    """Matrix of u -> u -| sigma, R^n -> Lambda^{p-1}, rows in lexicographic order."""
    n, p = sigma.n, sigma.p
    rows = basis_indices(n, p - 1)
    pos = {I: k for k, I in enumerate(rows)}
    M = linalg.zeros(len(rows), n)
    for j in range(n):
        img = interior([Fraction(int(i == j)) for i in range(n)], sigma)
        for I, c in img.terms.items():
            M[pos[I]][j] = c
    return M


def epsilon_matrix(sigma: PForm):
    """Matrix of beta -> beta wedge sigma, (R^n)* -> Lambda^{p+1}."""
    n, p = sigma.n, sigma.p
    rows = basis_indices(n, p + 1)
    pos = {I: k for k, I in enumerate(rows)}
    M = linalg.zeros(len(rows), n)
    for j in range(n):
        img = wedge(theta(n, j + 1), sigma)
        for I, c in img.terms.items():
            M[pos[I]][j] = c
    return M


def iota_rank(sigma: PForm) -> int:
    return linalg.rank(iota_matrix(sigma))


def epsilon_rank(sigma: PForm) -> int:
    return linalg.rank(epsilon_matrix(sigma))


def form_matrix(omega: PForm):
    """Antisymmetric matrix omega(e_i, e_j) of a 2-form."""
    if omega.p != 2:
        raise ValueError("expected a 2-form")
    M = linalg.zeros(omega.n, omega.n)
    for (i, j), c in omega.terms.items():
        M[i - 1][j - 1] = c
        M[j - 1][i - 1] = -c
    return M


def volume(n: int, coeff=1) -> PForm:
    return PForm(n, n, {tuple(range(1, n + 1)): coeff})


@dataclass(frozen=True)
class PseudoMetric:
    """A non-degenerate symmetric bilinear form g together with a volume form."""

    g: tuple
    vol: PForm

    def __post_init__(self):
        n = len(self.g)
        if not linalg.is_symmetric(self.g):
            raise ValueError("metric is not symmetric")
        if linalg.det([list(r) for r in self.g]) == 0:
            raise ValueError("metric is degenerate")
        if self.vol.n != n or self.vol.p != n or self.vol.is_zero():
            raise ValueError("volume must be a nonzero top form on R^n")

    @staticmethod
    def diagonal(entries, vol: PForm | None = None) -> "PseudoMetric":
        n = len(entries)
        g = tuple(tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n))
        return PseudoMetric(g, vol if vol is not None else volume(n))

    @staticmethod
    def from_matrix(M, vol: PForm | None = None) -> "PseudoMetric":
        n = len(M)
        if vol is None:
            d = abs(linalg.det(M))
            r = exact_root(d, 2)
            if r is None:
                raise ValueError("sqrt|det g| is irrational; pass the volume form explicitly")
            vol = volume(n, r)
        return PseudoMetric(tuple(tuple(r) for r in M), vol)

    @property
    def n(self) -> int:
        return len(self.g)

    def dual(self):
        return linalg.inverse([list(r) for r in self.g])

    def apply(self, u, v):
        return sum((self.g[i][j] * u[i] * v[j] for i in range(self.n) for j in range(self.n)), Fraction(0))

    def signature(self) -> linalg.Signature:
        return linalg.signature([list(r) for r in self.g])


def inner(metric: PseudoMetric, a: PForm, b: PForm):
    """Induced inner product on p-forms, g(theta^I, theta^J) = det(g^{-1}[I, J])."""
    if a.p != b.p:
        raise ValueError("inner product needs equal degrees")
    ginv = metric.dual()
    total = Fraction(0)
    for I, x in a.terms.items():
        for J, y in b.terms.items():
            minor = [[ginv[i - 1][j - 1] for j in J] for i in I]
            d = linalg.det(minor) if I else Fraction(1)
            if d != 0:
                total = total + x * y * d
    return total


def hodge_star(metric: PseudoMetric, beta: PForm) -> PForm:
    """The form *beta with alpha ^ *beta = g(alpha, beta) vol for every alpha."""
    n, p = beta.n, beta.p
    if metric.n != n:
        raise DimensionMismatch("metric and form dimensions disagree")
    c = top_coefficient(metric.vol)
    full = tuple(range(1, n + 1))
    out = {}
    for I in basis_indices(n, p):
        val = inner(metric, theta(n, *I), beta)
        if val == 0:
            continue
        Ic = tuple(i for i in full if i not in I)
        out[Ic] = val * c / _perm_sign(I + Ic)
    return PForm._raw(n, n - p, out)


def stabilizer_action_matrix(sigma: PForm):
    """Matrix of gl(n) -> Lambda^p, A -> d/dt (exp tA)^* sigma at t = 0.

    The basis element E_ij (A = E_ij) acts by theta^j ^ (e_i -| sigma).
    Columns are ordered (i, j) row-major.
    """
    n, p = sigma.n, sigma.p
    rows = basis_indices(n, p)
    pos = {I: k for k, I in enumerate(rows)}
    cols = []
    contractions = [interior([Fraction(int(k == i)) for k in range(n)], sigma) if p else None for i in range(n)]
    for i in range(n):
        for j in range(n):
            col = {}
            if p:
                img = wedge(theta(n, j + 1), contractions[i])
                for I, c in img.terms.items():
                    col[pos[I]] = c
            cols.append(col)
    return rows, cols


def action_rank(sigma: PForm) -> int:
    _, cols = stabilizer_action_matrix(sigma)
    return linalg._sparse_rank([c for c in cols if c])
