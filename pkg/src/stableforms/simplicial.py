"""Finite simplicial cochain complexes, an explicit splitting

    C^p = iota H^p  (+)  d C^{p-1}  (+)  delta C^{p+1}

with delta^2 = 0, and Whitney forms with exact integration over simplices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial

from . import linalg


class ComplexError(ValueError):
    pass


class SplittingError(RuntimeError):
    """An invariant of the splitting failed; this indicates a bug."""


def _faces(s):
    return [s[:i] + s[i + 1 :] for i in range(len(s))]


class SimplicialComplex:
    """Finite abstract simplicial complex on vertices 0..m-1, optionally embedded."""

    def __init__(self, simplices, coords=None, vertex_count=None):
        closed = set()
        for s in simplices:
            s = tuple(s)
            if len(set(s)) != len(s):
                raise ComplexError(f"repeated vertex in simplex {list(s)}")
            s = tuple(sorted(s))
            for r in range(1, len(s) + 1):
                closed.update(combinations(s, r))
        if not closed:
            raise ComplexError("empty complex")
        if min(v for (v,) in (s for s in closed if len(s) == 1)) < 0:
            raise ComplexError("negative vertex label")
        top_vertex = max(s[-1] for s in closed)
        self.vertex_count = top_vertex + 1 if vertex_count is None else int(vertex_count)
        if self.vertex_count <= top_vertex:
            raise ComplexError(f"vertex label {top_vertex} exceeds vertex count {self.vertex_count}")
        for v in range(self.vertex_count):
            closed.add((v,))
        self.dim = max(len(s) for s in closed) - 1
        self.simplices = [sorted(s for s in closed if len(s) == p + 1) for p in range(self.dim + 1)]
        self.index = [{s: i for i, s in enumerate(level)} for level in self.simplices]
        self.coords = None
        if coords is not None:
            if len(coords) != self.vertex_count:
                raise ComplexError("need one coordinate row per vertex")
            width = len(coords[0])
            if any(len(r) != width for r in coords):
                raise ComplexError("coordinate rows have different lengths")
            self.coords = [[Fraction(x) if not isinstance(x, Fraction) else x for x in r] for r in coords]

    def count(self, p: int) -> int:
        return len(self.simplices[p]) if 0 <= p <= self.dim else 0

    def maximal(self):
        """Simplices not contained in a larger one."""
        out = []
        for p, level in enumerate(self.simplices):
            bigger = self.simplices[p + 1] if p < self.dim else []
            covered = {f for s in bigger for f in _faces(s)}
            out += [s for s in level if s not in covered]
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * self.count(p) for p in range(self.dim + 1))

    def with_standard_embedding(self) -> "SimplicialComplex":
        """Copy with vertex i placed at the i-th unit vector of R^m."""
        m = self.vertex_count
        coords = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
        return SimplicialComplex(self.simplices[self.dim] + self.maximal(), coords, m)

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, f={[self.count(p) for p in range(self.dim + 1)]})"


@dataclass(frozen=True)
class Cochain:
    complex: SimplicialComplex
    p: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.complex.count(self.p):
            raise ComplexError(f"{self.p}-cochain needs {self.complex.count(self.p)} values")

    @classmethod
    def indicator(cls, K, simplex):
        s = tuple(simplex)
        p = len(s) - 1
        vals = [Fraction(0)] * K.count(p)
        vals[K.index[p][s]] = Fraction(1)
        return cls(K, p, tuple(vals))

    @classmethod
    def ones(cls, K, p=0):
        return cls(K, p, (Fraction(1),) * K.count(p))

    def __call__(self, simplex):
        return self.values[self.complex.index[self.p][tuple(simplex)]]


def coboundary_matrix(K: SimplicialComplex, p: int):
    """Matrix of d: C^p -> C^{p+1}; (dc)(v_0..v_{p+1}) = sum_i (-1)^i c(face_i)."""
    rows = K.count(p + 1)
    cols = K.count(p)
    D = linalg.zeros(rows, cols)
    for r, s in enumerate(K.simplices[p + 1] if p + 1 <= K.dim else []):
        for i, f in enumerate(_faces(s)):
            D[r][K.index[p][f]] = Fraction((-1) ** i)
    return D


def coboundary(c: Cochain) -> Cochain:
    K = c.complex
    if c.p >= K.dim:
        raise ComplexError(f"no coboundary out of top degree {K.dim}")
    return Cochain(K, c.p + 1, tuple(linalg.matvec(coboundary_matrix(K, c.p), list(c.values))))


# -- linear algebra on column lists ------------------------------------------------


def _rank_of_columns(cols, length):
    if not cols:
        return 0
    return linalg.rank(linalg.transpose(cols)) if length else 0


def _image_basis(M, ncols):
    """Independent columns spanning the image of M (as column vectors)."""
    if not M or not ncols:
        return []
    cols = linalg.transpose(M)
    return [cols[i] for i in linalg.column_space_basis(cols)]


def _as_matrix(cols, length):
    """Matrix whose columns are the given vectors."""
    if not cols:
        return [[] for _ in range(length)]
    return linalg.transpose(cols)


def _mul(A, B, inner, rows, cols):
    if inner == 0:
        return linalg.zeros(rows, cols)
    return linalg.matmul(A, B)


@dataclass
class Degree:
    p: int
    size: int
    harmonic: list  # column bases
    exact: list
    coexact: list
    delta: list = field(default_factory=list)  # matrix C^{p+1} -> C^p
    proj_harmonic: list = field(default_factory=list)
    proj_exact: list = field(default_factory=list)
    proj_coexact: list = field(default_factory=list)

    @property
    def betti(self):
        return len(self.harmonic)


@dataclass
class HodgeSplitting:
    complex: SimplicialComplex
    degrees: list
    d: list  # d[p]: C^p -> C^{p+1}

    def betti(self):
        return [deg.betti for deg in self.degrees]


def cohomology(K: SimplicialComplex, p: int):
    """(betti number, representative cocycles) in degree p."""
    deg = build_splitting(K).degrees[p]
    return deg.betti, deg.harmonic


def build_splitting(K: SimplicialComplex, verify: bool = True) -> HodgeSplitting:
    n = K.dim
    d = [coboundary_matrix(K, p) for p in range(n + 1)]
    sizes = [K.count(p) for p in range(n + 1)]
    degrees = []
    for p in range(n + 1):
        N = sizes[p]
        Dp = d[p]
        # coexact part: unit vectors on the pivot columns of d_p
        piv = linalg.rref(Dp)[1] if Dp else []
        coexact = [[Fraction(int(i == j)) for i in range(N)] for j in piv]
        exact = _image_basis(d[p - 1], sizes[p - 1]) if p > 0 else []
        cycles = linalg.nullspace(Dp, N) if Dp else [[Fraction(int(i == j)) for i in range(N)] for j in range(N)]
        harmonic = []
        cur = list(exact)
        for z in cycles:
            if _rank_of_columns(cur + [z], N) > len(cur):
                cur.append(z)
                harmonic.append(z)
        degrees.append(Degree(p, N, harmonic, exact, coexact))

    for p, deg in enumerate(degrees):
        N = deg.size
        basis = deg.harmonic + deg.exact + deg.coexact
        if len(basis) != N:
            raise SplittingError(f"degree {p}: pieces have total dimension {len(basis)} != {N}")
        Binv = linalg.inverse(_as_matrix(basis, N)) if N else []
        h, e = len(deg.harmonic), len(deg.exact)

        def projector(lo, hi):
            if not N:
                return []
            P = linalg.zeros(N, N)
            for k in range(lo, hi):
                col = basis[k]
                for i in range(N):
                    if col[i]:
                        for j in range(N):
                            P[i][j] += col[i] * Binv[k][j]
            return P

        deg.proj_harmonic = projector(0, h)
        deg.proj_exact = projector(h, h + e)
        deg.proj_coexact = projector(h + e, N)

    # delta_{p+1}: C^{p+1} -> C^p is the pivot-column solve of d_p, composed with
    # the projection onto d C^p
    for p in range(n + 1):
        N = sizes[p]
        if p == n:
            degrees[p].delta = linalg.zeros(N, 0)
            continue
        M = sizes[p + 1]
        piv = linalg.rref(d[p])[1]
        sub = [[d[p][i][j] for j in piv] for i in range(M)]
        delta = linalg.zeros(N, M)
        P = degrees[p + 1].proj_exact
        for col in range(M):
            y = [P[i][col] for i in range(M)]
            if not any(y):
                continue
            x = _solve_full_column_rank(sub, y)
            for t, j in enumerate(piv):
                delta[j][col] = x[t]
        degrees[p].delta = delta

    S = HodgeSplitting(K, degrees, d)
    if verify:
        verify_splitting(S)
    return S


def _solve_full_column_rank(A, y):
    """x with A x = y for A of full column rank and y in its image."""
    rows = [list(r) + [v] for r, v in zip(A, y)]
    R, piv = linalg.rref(rows)
    k = len(A[0])
    if k in piv:
        raise SplittingError("right-hand side not in the image")
    return [R[i][k] for i in range(k)]


def verify_splitting(S: HodgeSplitting) -> None:
    """Raise SplittingError unless every structural identity holds exactly."""
    K, d, degs = S.complex, S.d, S.degrees
    n = K.dim
    sizes = [K.count(p) for p in range(n + 1)]

    def check(ok, msg):
        if not ok:
            raise SplittingError(msg)

    for p in range(n + 1):
        N = sizes[p]
        deg = degs[p]
        Id = linalg.identity(N)
        # d delta on C^{p+1}  and  delta d on C^p
        if p < n:
            M = sizes[p + 1]
            dd = linalg.matmul(d[p], deg.delta) if N else linalg.zeros(M, M)
            check(dd == degs[p + 1].proj_exact, f"d delta != projection onto exact part in degree {p + 1}")
            dl = linalg.matmul(deg.delta, d[p]) if M else linalg.zeros(N, N)
            check(dl == deg.proj_coexact, f"delta d != projection onto coexact part in degree {p}")
            if p + 1 < n and sizes[p + 2]:
                check(linalg.is_zero(linalg.matmul(d[p + 1], d[p])) if N else True, f"d^2 != 0 at degree {p}")
        else:
            check(linalg.is_zero(deg.proj_coexact) if N else True, "top degree has a coexact part")
        if p >= 1 and N:
            check(linalg.is_zero(linalg.matmul(degs[p - 1].delta, deg.delta)) if sizes[p - 1] and p < n else True,
                  f"delta^2 != 0 at degree {p}")
        if N:
            total = linalg.add(linalg.add(deg.proj_harmonic, deg.proj_exact), deg.proj_coexact)
            check(total == Id, f"projectors do not sum to the identity in degree {p}")
            check(linalg.rank(_as_matrix(deg.harmonic + deg.exact + deg.coexact, N)) == N,
                  f"pieces are dependent in degree {p}")
            # harmonic and exact pieces are cocycles
            if p < n and sizes[p + 1]:
                for z in deg.harmonic + deg.exact:
                    check(not any(linalg.matvec(d[p], z)), f"non-closed representative in degree {p}")
            # delta kills harmonic and coexact parts of C^p (as a map out of C^p)
            if p >= 1:
                for v in deg.harmonic + deg.coexact:
                    check(not any(linalg.matvec(degs[p - 1].delta, v)), f"delta nonzero off the exact part in degree {p}")
    # Betti numbers agree with rank bookkeeping
    for p in range(n + 1):
        rk = linalg.rank(d[p]) if p < n and sizes[p + 1] and sizes[p] else 0
        rk_prev = linalg.rank(d[p - 1]) if p > 0 and sizes[p] and sizes[p - 1] else 0
        check(degs[p].betti == sizes[p] - rk - rk_prev, f"betti mismatch in degree {p}")
    chi = sum((-1) ** p * degs[p].betti for p in range(n + 1))
    check(chi == K.euler_characteristic(), "Euler characteristic mismatch")


# -- standard complexes --------------------------------------------------------------


def interval():
    return SimplicialComplex([(0, 1)], coords=[[0], [1]])


def circle(m: int = 3):
    return SimplicialComplex([(i, (i + 1) % m) for i in range(m)])


def octahedron():
    """Boundary of the octahedron with vertices +-e_i in R^3."""
    pts = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]
    tris = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    return SimplicialComplex(tris, coords=pts)


def torus7():
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex(tris)


def moebius7():
    return SimplicialComplex([(i, (i + 1) % 7, (i + 2) % 7) for i in range(7)])


def triangle():
    return SimplicialComplex([(0, 1, 2)], coords=[[0, 0], [2, 0], [1, 3]])


def tetrahedron():
    return SimplicialComplex([(0, 1, 2, 3)], coords=[[0, 0, 0], [1, 0, 0], [0, 2, 0], [1, 1, 3]])


STANDARD = {
    "interval": interval,
    "circle": circle,
    "octahedron": octahedron,
    "torus": torus7,
    "moebius": moebius7,
    "triangle": triangle,
    "tetrahedron": tetrahedron,
}

KNOWN_BETTI = {
    "interval": [1, 0],
    "circle": [1, 1],
    "octahedron": [1, 0, 1],
    "torus": [1, 2, 1],
    "moebius": [1, 1, 0],
    "triangle": [1, 0, 0],
    "tetrahedron": [1, 0, 0, 0],
}


# -- polynomial differential forms ---------------------------------------------------
# A polynomial is {exponent tuple: coefficient}; a form is {sorted dx-index tuple: polynomial}.


def _padd(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pmul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _pscale(a, c):
    return {e: v * c for e, v in a.items()} if c else {}


def _affine_poly(const, lin):
    m = len(lin)
    out = {}
    if const:
        out[(0,) * m] = Fraction(const)
    for j, c in enumerate(lin):
        if c:
            e = [0] * m
            e[j] = 1
            out[tuple(e)] = Fraction(c)
    return out


def _pderiv(a, j):
    out = {}
    for e, c in a.items():
        if e[j]:
            f = list(e)
            f[j] -= 1
            out[tuple(f)] = out.get(tuple(f), 0) + c * e[j]
    return {e: c for e, c in out.items() if c}


def _merge_sign(I, J):
    if set(I) & set(J):
        return 0, None
    seq = list(I) + list(J)
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1) ** inv, tuple(sorted(seq))


@dataclass(frozen=True)
class PolyForm:
    m: int  # ambient dimension
    p: int
    terms: dict  # dx index tuple (0-based) -> polynomial

    def __add__(self, other):
        out = dict(self.terms)
        for I, f in other.terms.items():
            g = _padd(out.get(I, {}), f)
            if g:
                out[I] = g
            else:
                out.pop(I, None)
        return PolyForm(self.m, self.p, out)

    def scale(self, c):
        return PolyForm(self.m, self.p, {I: _pscale(f, c) for I, f in self.terms.items() if c})

    def wedge(self, other):
        out = {}
        for I, f in self.terms.items():
            for J, g in other.terms.items():
                s, L = _merge_sign(I, J)
                if s:
                    out[L] = _padd(out.get(L, {}), _pscale(_pmul(f, g), s))
        return PolyForm(self.m, self.p + other.p, {I: f for I, f in out.items() if f})

    def d(self):
        out = {}
        for I, f in self.terms.items():
            for j in range(self.m):
                df = _pderiv(f, j)
                if df:
                    s, L = _merge_sign((j,), I)
                    if s:
                        out[L] = _padd(out.get(L, {}), _pscale(df, s))
        return PolyForm(self.m, self.p + 1, {I: f for I, f in out.items() if f})

    def is_zero(self):
        return not self.terms


def _function(m, poly):
    return PolyForm(m, 0, {(): poly} if poly else {})


def _differential(m, lin):
    return PolyForm(m, 1, {(j,): {(0,) * m: Fraction(c)} for j, c in enumerate(lin) if c})


# -- barycentric coordinates and Whitney forms ------------------------------------


def _vertices(K, s):
    if K.coords is None:
        raise ComplexError("complex has no coordinates; use with_standard_embedding()")
    return [K.coords[v] for v in s]


def barycentric(K: SimplicialComplex, T):
    """Affine functions (const, linear coefficients) on R^m restricting to the
    barycentric coordinates of T on its affine hull."""
    pts = _vertices(K, T)
    m = len(pts[0])
    q = len(T) - 1
    E = [[pts[j + 1][i] - pts[0][i] for j in range(q)] for i in range(m)]  # m x q
    if q == 0:
        return [(Fraction(1), [Fraction(0)] * m)]
    Et = linalg.transpose(E)
    G = linalg.matmul(Et, E)
    try:
        L = linalg.matmul(linalg.inverse(G), Et)  # q x m left inverse
    except linalg.SingularMatrix as exc:
        raise ComplexError(f"simplex {list(T)} is degenerate") from exc
    coeffs = []
    for j in range(q):
        lin = L[j]
        const = -sum((lin[i] * pts[0][i] for i in range(m)), Fraction(0))
        coeffs.append((const, lin))
    const0 = 1 - sum((c for c, _ in coeffs), Fraction(0))
    lin0 = [-sum((l[i] for _, l in coeffs), Fraction(0)) for i in range(m)]
    return [(const0, lin0)] + coeffs


def whitney_on(K: SimplicialComplex, sigma, T) -> PolyForm:
    """Whitney form of sigma on the simplex T, as a polynomial form on R^m."""
    sigma, T = tuple(sigma), tuple(T)
    m = len(K.coords[0]) if K.coords else 0
    p = len(sigma) - 1
    if not set(sigma) <= set(T):
        return PolyForm(m, p, {})
    lam = dict(zip(T, barycentric(K, T)))
    total = PolyForm(m, p, {})
    for i, v in enumerate(sigma):
        piece = _function(m, _affine_poly(*lam[v]))
        for j, w in enumerate(sigma):
            if j != i:
                piece = piece.wedge(_differential(m, lam[w][1]))
        total = total + piece.scale((-1) ** i)
    return total.scale(factorial(p))


def _carrier(K, tau):
    tau = set(tau)
    for T in K.maximal():
        if tau <= set(T):
            return T
    raise ComplexError(f"{sorted(tau)} is not a simplex of the complex")


def carriers(K, tau):
    tau = set(tau)
    return [T for T in K.maximal() if tau <= set(T)]


def _compose(poly, x0, A):
    """poly(x0 + A t) as a polynomial in t (A is m x p)."""
    m = len(x0)
    p = len(A[0]) if A and A[0] else 0
    subs = [_affine_poly(x0[i], A[i]) if p else {(): Fraction(x0[i])} for i in range(m)]
    out = {}
    for e, c in poly.items():
        term = {(0,) * p: Fraction(c)}
        for i, k in enumerate(e):
            for _ in range(k):
                term = _pmul(term, subs[i])
        out = _padd(out, term)
    return out


def _simplex_integral(poly, p):
    """Integral of a polynomial in t_1..t_p over {t >= 0, sum t <= 1}."""
    total = Fraction(0)
    for e, c in poly.items():
        num = 1
        for a in e:
            num *= factorial(a)
        total += c * Fraction(num, factorial(sum(e) + p))
    return total


def integrate(K: SimplicialComplex, form: PolyForm, tau) -> Fraction:
    """Integral of a polynomial p-form over the oriented simplex tau."""
    pts = _vertices(K, tau)
    p = len(tau) - 1
    if form.p != p:
        raise ValueError(f"degree {form.p} form over a {p}-simplex")
    x0 = pts[0]
    m = len(x0)
    A = [[pts[j + 1][i] - x0[i] for j in range(p)] for i in range(m)]
    if p == 0:
        f = form.terms.get((), {})
        return sum((c * _monomial_value(e, x0) for e, c in f.items()), Fraction(0))
    acc = {}
    for I, f in form.terms.items():
        minor = linalg.det([A[i] for i in I])
        if minor:
            acc = _padd(acc, _pscale(_compose(f, x0, A), minor))
    return _simplex_integral(acc, p)


def _monomial_value(e, x):
    v = Fraction(1)
    for xi, k in zip(x, e):
        v *= Fraction(xi) ** k
    return v


def whitney_integral(K, sigma, tau, T=None) -> Fraction:
    """Integral over tau of the Whitney form of sigma, computed on the simplex T."""
    T = _carrier(K, tau) if T is None else tuple(T)
    return integrate(K, whitney_on(K, sigma, T), tau)


def whitney_map(K, cochain: Cochain, T) -> PolyForm:
    """S(c) on the simplex T."""
    m = len(K.coords[0])
    total = PolyForm(m, cochain.p, {})
    for s, c in zip(K.simplices[cochain.p], cochain.values):
        if c:
            total = total + whitney_on(K, s, T).scale(c)
    return total


@dataclass
class WhitneyReport:
    checks: list = field(default_factory=list)

    def check(self, name, ok):
        self.checks.append((name, bool(ok)))

    @property
    def passed(self):
        return bool(self.checks) and all(ok for _, ok in self.checks)

    def failures(self):
        return [n for n, ok in self.checks if not ok]


def whitney_check(K: SimplicialComplex) -> WhitneyReport:
    """Integration inverts S, S(1) = 1, integration intertwines d, and the
    result does not depend on the carrier simplex."""
    rep = WhitneyReport()
    for p in range(K.dim + 1):
        pairs_ok = True
        indep_ok = True
        for tau in K.simplices[p]:
            Ts = carriers(K, tau)
            for sigma in K.simplices[p]:
                vals = {whitney_integral(K, sigma, tau, T) for T in Ts}
                indep_ok &= len(vals) == 1
                pairs_ok &= vals == {Fraction(int(sigma == tau))}
        rep.check(f"integral of S is the identity in degree {p}", pairs_ok)
        rep.check(f"integrals independent of carrier in degree {p}", indep_ok)
    ones = Cochain.ones(K, 0)
    m = len(K.coords[0])
    const = PolyForm(m, 0, {(): {(0,) * m: Fraction(1)}})
    rep.check("S(1) = 1", all(whitney_map(K, ones, T) == const for T in K.maximal()))
    for p in range(K.dim):
        D = coboundary_matrix(K, p)
        ok = True
        for b, sigma in enumerate(K.simplices[p]):
            for a, tau in enumerate(K.simplices[p + 1]):
                T = _carrier(K, tau)
                ok &= integrate(K, whitney_on(K, sigma, T).d(), tau) == D[a][b]
        rep.check(f"integral of dW equals the coboundary in degree {p}", ok)
    return rep
