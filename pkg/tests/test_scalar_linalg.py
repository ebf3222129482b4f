from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stableforms import linalg, scalar
from stableforms.scalar import FieldMismatch, Surd

from conftest import fractions


def test_surd_arithmetic_closes():
    s5 = scalar.sqrt(5)
    assert isinstance(s5, Surd)
    assert s5 * s5 == 5
    r = (3 + s5) / 2  # root of x^2 - 3x + 1
    assert r * r - 3 * r + 1 == 0
    assert 1 / r == (3 - s5) / 2


def test_sqrt_of_square_is_rational():
    assert scalar.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert scalar.sqrt(0) == 0


def test_sqrt_of_fraction_rationalizes():
    x = scalar.sqrt(Fraction(1, 2))
    assert x * x == Fraction(1, 2)
    assert x.d == 2


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        scalar.sqrt(2) + scalar.sqrt(3)


def test_surd_sign():
    assert scalar.sign(scalar.sqrt(2) - Fraction(141, 100)) == 1
    assert scalar.sign(scalar.sqrt(2) - Fraction(142, 100)) == -1
    assert scalar.sign(1 - scalar.sqrt(3)) == -1


@given(fractions, fractions)
def test_surd_sign_matches_float(a, b):
    x = Surd.make(a, b, 7)
    assert scalar.sign(x) == (float(a) + float(b) * 7**0.5 > 0) - (float(a) + float(b) * 7**0.5 < 0)


def test_exact_root():
    assert scalar.exact_root(Fraction(8, 27), 3) == Fraction(2, 3)
    assert scalar.exact_root(2, 2) is None
    assert scalar.exact_root(2**90, 9) == 2**10


def test_parse_rejects_decimals():
    assert scalar.parse("-3/4") == Fraction(-3, 4)
    with pytest.raises(ValueError):
        scalar.parse("0.5")


def test_json_roundtrip_surd():
    x = Surd(Fraction(1, 2), Fraction(-3, 2), 3)
    assert scalar.from_json(scalar.to_json(x), 3) == x
    with pytest.raises(ValueError):
        scalar.from_json(scalar.to_json(x), None)


def test_det_and_inverse():
    M = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    M = [[Fraction(x) for x in r] for r in M]
    assert linalg.det(M) == 18
    assert linalg.matmul(M, linalg.inverse(M)) == linalg.identity(3)
    with pytest.raises(linalg.SingularMatrix):
        linalg.inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_signature_hyperbolic_plane():
    H = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert linalg.signature(H) == (1, 1, 0)


def test_signature_with_kernel():
    S = [[Fraction(x) for x in r] for r in [[1, 1, 0], [1, 1, 0], [0, 0, -2]]]
    assert linalg.signature(S) == (1, 1, 1)


@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_signature_counts_add_up_and_rank(rows):
    n = len(rows)
    S = [[Fraction(rows[i][j] + rows[j][i]) for j in range(n)] for i in range(n)]
    sig = linalg.signature(S)
    assert sig.pos + sig.neg + sig.null == n
    assert sig.pos + sig.neg == linalg.rank(S)


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=4, max_size=4),
       st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=4, max_size=4))
def test_sylvester_law_of_inertia(rows, P):
    S = [[Fraction(rows[i][j] + rows[j][i]) for j in range(4)] for i in range(4)]
    P = [[Fraction(x) for x in r] for r in P]
    if linalg.det(P) == 0:
        return
    C = linalg.matmul(linalg.matmul(linalg.transpose(P), S), P)
    assert linalg.signature(C) == linalg.signature(S)


def test_nullspace_and_solve():
    M = [[Fraction(x) for x in r] for r in [[1, 2, 3], [2, 4, 6]]]
    ns = linalg.nullspace(M, 3)
    assert len(ns) == 2
    for v in ns:
        assert linalg.matvec(M, v) == [0, 0]
    A = [[Fraction(x) for x in r] for r in [[2, 1], [1, 1]]]
    assert linalg.solve(A, [Fraction(3), Fraction(2)]) == [1, 1]
