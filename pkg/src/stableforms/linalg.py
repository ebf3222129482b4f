"""Exact dense linear algebra over rationals or a single quadratic field.

Matrices are lists of rows.  All routines are pure: inputs are never mutated.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .scalar import sign


class SingularMatrix(ValueError):
    pass


class Signature(NamedTuple):
    """Counts of positive, negative and zero eigenvalues of a symmetric form."""

    pos: int
    neg: int
    null: int

    @property
    def degenerate(self) -> bool:
        return self.null > 0

    def __str__(self):
        return f"({self.pos},{self.neg},{self.null})"


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int):
    return [[Fraction(0)] * c for _ in range(r)]


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []


def matmul(A, B):
    Bt = transpose(B)
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a != 0]
        out.append([sum((a * col[k] for k, a in nz), Fraction(0)) for col in Bt])
    return out


def matvec(A, v):
    return [sum((a * x for a, x in zip(row, v) if a != 0 and x != 0), Fraction(0)) for row in A]


def scale(M, c):
    return [[c * x for x in row] for row in M]


def add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def is_zero(M) -> bool:
    return all(x == 0 for row in M for x in row)


def rank(M) -> int:
    """Exact rank by sparse row elimination (rows stored as dicts)."""
    rows = []
    for row in M:
        r = {j: x for j, x in enumerate(row) if x != 0}
        if r:
            rows.append(r)
    return _sparse_rank(rows)


def _sparse_rank(rows) -> int:
    pivots: dict[int, dict] = {}
    for r in rows:
        r = dict(r)
        while r:
            col = min(r)
            p = pivots.get(col)
            if p is None:
                inv = 1 / r[col]
                pivots[col] = {j: x * inv for j, x in r.items()}
                break
            f = r[col]
            for j, x in p.items():
                v = r.get(j, 0) - f * x
                if v == 0:
                    r.pop(j, None)
                else:
                    r[j] = v
    return len(pivots)


def rref(M):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``."""
    R = [list(row) for row in M]
    if not R:
        return R, []
    nr, nc = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(nr):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return R, pivots


def nullspace(M, ncols: int | None = None):
    """Basis of the right kernel of M, one vector per free column."""
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, piv = rref(M)
    nc = len(M[0])
    free = [c for c in range(nc) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(v)
    return basis


def det(M):
    n = len(M)
    A = [list(row) for row in M]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        piv = A[c][c]
        d = d * piv
        inv = 1 / piv
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def inverse(M):
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in R]


def solve(M, b):
    """Unique solution of ``M x = b``; raises if singular or inconsistent."""
    n = len(M[0])
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, piv = rref(aug)
    if n in piv:
        raise SingularMatrix("inconsistent system")
    if piv != list(range(n)):
        raise SingularMatrix("solution is not unique")
    return [R[i][n] for i in range(n)]


def column_space_basis(vectors):
    """Indices of a maximal independent prefix-greedy subset of ``vectors``."""
    chosen = []
    rows: list[dict] = []
    for k, v in enumerate(vectors):
        trial = rows + [{j: x for j, x in enumerate(v) if x != 0}]
        if _sparse_rank(trial) > len(rows):
            rows = trial
            chosen.append(k)
    return chosen


def is_symmetric(S) -> bool:
    n = len(S)
    return all(S[i][j] == S[j][i] for i in range(n) for j in range(i + 1, n))


def congruence_diagonal(S):
    """Diagonal entries of a form congruent to S (symmetric Gaussian elimination).

    Zero diagonals are handled by replacing e_i with e_i + e_j when the
    off-diagonal entry S[i][j] is nonzero, which produces the pivot 2*S[i][j].
    """
    if not is_symmetric(S):
        raise ValueError("matrix is not symmetric")
    A = [list(row) for row in S]
    n = len(A)
    live = list(range(n))
    diag = []
    while live:
        p = next((i for i in live if A[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in live for j in live if i < j and A[i][j] != 0), None)
            if pair is None:
                diag.extend(Fraction(0) for _ in live)
                break
            i, j = pair
            # e_i <- e_i + e_j
            for k in range(n):
                A[i][k] = A[i][k] + A[j][k]
            for k in range(n):
                A[k][i] = A[k][i] + A[k][j]
            p = i
        piv = A[p][p]
        diag.append(piv)
        live.remove(p)
        inv = 1 / piv
        row = A[p]
        for i in live:
            f = A[i][p]
            if f != 0:
                f = f * inv
                Ai = A[i]
                for k in live:
                    if row[k] != 0:
                        Ai[k] = Ai[k] - f * row[k]
                A[i][p] = Fraction(0)
    return diag


def signature(S) -> Signature:
    diag = congruence_diagonal(S)
    pos = sum(1 for x in diag if sign(x) > 0)
    neg = sum(1 for x in diag if sign(x) < 0)
    return Signature(pos, neg, len(diag) - pos - neg)


def to_float(M):
    return [[float(x) for x in row] for row in M]
