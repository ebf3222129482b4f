"""Exact scalars: rationals and elements of a real quadratic field Q(sqrt d).

Rationals are plain :class:`fractions.Fraction` (or ``int``).  Irrational
values are :class:`Surd` instances ``a + b*sqrt(d)`` with ``b != 0``; any
arithmetic result whose surd part vanishes is demoted back to a Fraction, so
rational computations never pay for the extension.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational


class FieldMismatch(ValueError):
    """Raised when values from two different quadratic fields are combined."""


def squarefree_part(d: int, trial_limit: int = 10**4) -> tuple[int, int]:
    """Return ``(c, s)`` with ``d == c*c*s``.

    ``s`` is square-free whenever it has no repeated prime factor above
    ``trial_limit``; full factorization of large radicands is not attempted.
    """
    if d <= 0:
        raise ValueError(f"radicand must be positive, got {d}")
    c, s = 1, d
    f = 2
    while f * f <= s and f <= trial_limit:
        while s % (f * f) == 0:
            s //= f * f
            c *= f
        f += 1
    return c, s


class Surd:
    """The number ``a + b*sqrt(d)`` with rational a, b and square-free d > 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    # construction helpers -------------------------------------------------
    @staticmethod
    def make(a, b, d):
        if b == 0:
            return Fraction(a)
        return Surd(a, b, d)

    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.d != self.d:
                raise FieldMismatch(f"cannot mix Q(sqrt {self.d}) with Q(sqrt {other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return Fraction(other), Fraction(0)
        return None

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Surd.make(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Surd.make(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Surd.make(c[0] - self.a, c[1] - self.b, self.d)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return Surd.make(self.a * a + self.b * b * self.d, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return Surd.make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        if c[1] == 0:
            if c[0] == 0:
                raise ZeroDivisionError("division by zero")
            return Surd.make(self.a / c[0], self.b / c[0], self.d)
        return self * Surd(c[0], c[1], self.d).inverse()

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return self.inverse() * Surd.make(c[0], c[1], self.d)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = Fraction(1)
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    # comparisons -------------------------------------------------------------
    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        if sb == 0:
            return sa
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else sb

    def __eq__(self, other):
        if isinstance(other, Surd):
            return self.d == other.d and self.a == other.a and self.b == other.b
        return False  # b != 0, so never rational

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return sign(self - other) < 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __bool__(self):
        return True  # b != 0 by construction

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"Surd({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return to_str(self)


def sqrt(n) -> Fraction | Surd:
    """Exact square root of a non-negative rational, possibly as a Surd."""
    q = Fraction(n)
    if q < 0:
        raise ValueError("square root of a negative number")
    if q == 0:
        return Fraction(0)
    r = exact_root(q, 2)
    if r is not None:
        return r
    # sqrt(p/q) = sqrt(p*q)/q
    m = q.numerator * q.denominator
    c, s = squarefree_part(m)
    return Surd(0, Fraction(c, q.denominator), s)


def exact_root(q, k: int) -> Fraction | None:
    """Return the non-negative rational k-th root of q >= 0 if it exists."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("root of a negative number")

    def iroot(m: int) -> int | None:
        if m < 2:
            return m
        x = 1 << ((m.bit_length() + k - 1) // k)
        while True:
            y = ((k - 1) * x + m // x ** (k - 1)) // k
            if y >= x:
                break
            x = y
        return x if x**k == m else None

    a = iroot(q.numerator)
    b = iroot(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def sign(x) -> int:
    if isinstance(x, Surd):
        return x.sign()
    return (x > 0) - (x < 0)


def field_of(values) -> int | None:
    """Common radicand of a collection of scalars (None when all rational)."""
    d = None
    for v in values:
        if isinstance(v, Surd):
            if d is None:
                d = v.d
            elif d != v.d:
                raise FieldMismatch(f"cannot mix Q(sqrt {d}) with Q(sqrt {v.d})")
    return d


def parse(text) -> Fraction:
    """Parse an exact rational from ``int``, ``Fraction`` or a string ``"a/b"``."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        s = text.strip()
        if "." in s or "e" in s.lower():
            raise ValueError(f"expected an exact fraction, got {text!r}")
        return Fraction(s)
    raise TypeError(f"cannot parse scalar from {type(text).__name__}")


def to_str(x) -> str:
    if isinstance(x, Surd):
        b = x.b
        rad = f"sqrt({x.d})"
        surd = rad if b == 1 else ("-" + rad if b == -1 else f"{b}*{rad}")
        if x.a == 0:
            return surd
        sep = " - " if surd.startswith("-") else " + "
        return f"{x.a}{sep}{surd.lstrip('-')}"
    return str(Fraction(x))


def to_json(x):
    if isinstance(x, Surd):
        return {"a": str(x.a), "b": str(x.b)}
    return str(Fraction(x))


def from_json(obj, d: int | None):
    if isinstance(obj, dict):
        a = parse(obj.get("a", "0"))
        b = parse(obj.get("b", "0"))
        if b != 0 and d is None:
            raise ValueError("surd coefficient in a rational-field form")
        return Surd.make(a, b, d) if d is not None else a
    return parse(obj)
