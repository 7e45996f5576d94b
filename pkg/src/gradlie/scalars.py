"""Exact scalar towers: roots of unity, Gaussian rationals, rational quaternions, cyclotomics.

Every structure constant in the library is one of these.  Signs and signatures
are always decided with exact arithmetic; floating point appears only in the
cyclotomic fallback (`CycQ.to_complex`) used for non-2-group central-complex data.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

Rat = Union[int, Fraction]


class UnitRoot:
    """exp(2*pi*i*k/n), stored as (k mod n, n).  Arithmetic requires equal moduli."""

    __slots__ = ("k", "n")

    def __init__(self, k: int, n: int):
        if n <= 0:
            raise ValueError("modulus must be positive")
        self.k = k % n
        self.n = n

    @staticmethod
    def one(n: int) -> "UnitRoot":
        return UnitRoot(0, n)

    @staticmethod
    def minus_one(n: int) -> "UnitRoot":
        if n % 2:
            raise ValueError("modulus must be even to represent -1")
        return UnitRoot(n // 2, n)

    @staticmethod
    def from_sign(s: int, n: int) -> "UnitRoot":
        if s == 1:
            return UnitRoot.one(n)
        if s == -1:
            return UnitRoot.minus_one(n)
        raise ValueError(f"not a sign: {s}")

    def rescaled(self, n: int) -> "UnitRoot":
        if n % self.n:
            raise ValueError(f"cannot rescale modulus {self.n} to {n}")
        return UnitRoot(self.k * (n // self.n), n)

    def _check(self, other: "UnitRoot") -> None:
        if self.n != other.n:
            raise ValueError(f"modulus mismatch: {self.n} vs {other.n}")

    def __mul__(self, other: "UnitRoot") -> "UnitRoot":
        self._check(other)
        return UnitRoot(self.k + other.k, self.n)

    def inv(self) -> "UnitRoot":
        return UnitRoot(-self.k, self.n)

    def conj(self) -> "UnitRoot":
        return self.inv()

    def __pow__(self, m: int) -> "UnitRoot":
        return UnitRoot(self.k * m, self.n)

    def is_one(self) -> bool:
        return self.k == 0

    def is_minus_one(self) -> bool:
        return 2 * self.k == self.n

    def is_real(self) -> bool:
        return self.is_one() or self.is_minus_one()

    def as_sign(self) -> int:
        if self.is_one():
            return 1
        if self.is_minus_one():
            return -1
        raise ValueError(f"root {self} is not +-1")

    def order(self) -> int:
        return self.n // gcd(self.n, self.k)

    def to_complex(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.k / self.n)

    def to_gauss(self) -> "GaussQ":
        o = self.order()
        if o == 1:
            return GaussQ(1, 0)
        if o == 2:
            return GaussQ(-1, 0)
        if o == 4:
            return GaussQ(0, 1) if 4 * self.k == self.n else GaussQ(0, -1)
        raise ValueError(f"root of order {o} is not Gaussian")

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnitRoot):
            return NotImplemented
        return self.k * other.n == other.k * self.n

    def __hash__(self):
        return hash((self.k // gcd(self.k, self.n) if self.k else 0, self.order()))

    def __repr__(self):
        return f"UnitRoot({self.k}/{self.n})"


def _fr(x: Rat) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class GaussQ:
    """Gaussian rational re + im*i."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rat = 0, im: Rat = 0):
        self.re = _fr(re)
        self.im = _fr(im)

    @staticmethod
    def coerce(x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussQ(x, 0)
        raise TypeError(f"cannot coerce {type(x)} to GaussQ")

    def __add__(self, other):
        o = GaussQ.coerce(other)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussQ.coerce(other))

    def __rsub__(self, other):
        return GaussQ.coerce(other) + (-self)

    def __mul__(self, other):
        o = GaussQ.coerce(other)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inv(self) -> "GaussQ":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("GaussQ division by zero")
        return GaussQ(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussQ.coerce(other).inv()

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __eq__(self, other) -> bool:
        try:
            o = GaussQ.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"


class QuatQ:
    """Rational quaternion a + b*i + c*j + d*k."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Rat = 0, b: Rat = 0, c: Rat = 0, d: Rat = 0):
        self.a = _fr(a)
        self.b = _fr(b)
        self.c = _fr(c)
        self.d = _fr(d)

    @staticmethod
    def coerce(x) -> "QuatQ":
        if isinstance(x, QuatQ):
            return x
        if isinstance(x, (int, Fraction)):
            return QuatQ(x)
        if isinstance(x, GaussQ):
            return QuatQ(x.re, x.im)
        raise TypeError(f"cannot coerce {type(x)} to QuatQ")

    def __add__(self, other):
        o = QuatQ.coerce(other)
        return QuatQ(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return QuatQ(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-QuatQ.coerce(other))

    def __rsub__(self, other):
        return QuatQ.coerce(other) + (-self)

    def __mul__(self, other):
        o = QuatQ.coerce(other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return QuatQ(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other):
        return QuatQ.coerce(other) * self

    def conj(self) -> "QuatQ":
        return QuatQ(self.a, -self.b, -self.c, -self.d)

    def norm2(self) -> Fraction:
        return self.a**2 + self.b**2 + self.c**2 + self.d**2

    def inv(self) -> "QuatQ":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("QuatQ division by zero")
        c = self.conj()
        return QuatQ(c.a / n, c.b / n, c.c / n, c.d / n)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def __eq__(self, other) -> bool:
        try:
            o = QuatQ.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return f"QuatQ({self.a}, {self.b}, {self.c}, {self.d})"


QUAT_UNITS = (QuatQ(1), QuatQ(0, 1), QuatQ(0, 0, 1), QuatQ(0, 0, 0, 1))


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    # Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d, by exact polynomial division.
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            den = list(cyclotomic_coeffs(d))
            num = _poly_div_exact(num, den)
    return tuple(num)


def _poly_div_exact(num: list, den: list) -> list:
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        assert c % den[dd] == 0
        f = c // den[dd]
        q[i - dd] = f
        for j, dj in enumerate(den):
            num[i - dd + j] -= f * dj
    assert all(c == 0 for c in num)
    return q


class CycQ:
    """Element of the cyclotomic field Q(zeta_M), as a polynomial in zeta_M mod Phi_M.

    Supports ring operations, conjugation and exact (non)equality; inverses only of
    monomials.  Used for central-complex structure constants whose roots of unity
    are not Gaussian.
    """

    __slots__ = ("M", "coeffs")

    def __init__(self, M: int, coeffs):
        self.M = M
        deg = len(cyclotomic_coeffs(M)) - 1
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            cs = _reduce_mod_cyclotomic(cs, M)
        cs += [Fraction(0)] * (deg - len(cs))
        self.coeffs = tuple(cs)

    @staticmethod
    def root(M: int, k: int) -> "CycQ":
        k %= M
        cs = [Fraction(0)] * (k + 1)
        cs[k] = Fraction(1)
        return CycQ(M, cs)

    @staticmethod
    def from_unit_root(r: UnitRoot, M: int) -> "CycQ":
        return CycQ.root(M, r.rescaled(M).k)

    @staticmethod
    def coerce(x, M: int) -> "CycQ":
        if isinstance(x, CycQ):
            if x.M != M:
                raise ValueError("cyclotomic modulus mismatch")
            return x
        if isinstance(x, (int, Fraction)):
            return CycQ(M, [x])
        if isinstance(x, UnitRoot):
            return CycQ.from_unit_root(x, M)
        raise TypeError(f"cannot coerce {type(x)} to CycQ")

    def __add__(self, other):
        o = CycQ.coerce(other, self.M)
        return CycQ(self.M, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycQ(self.M, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-CycQ.coerce(other, self.M))

    def __rsub__(self, other):
        return CycQ.coerce(other, self.M) + (-self)

    def __mul__(self, other):
        o = CycQ.coerce(other, self.M)
        n = len(self.coeffs)
        prod = [Fraction(0)] * (2 * n)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    prod[i + j] += a * b
        return CycQ(self.M, prod)

    __rmul__ = __mul__

    def conj(self) -> "CycQ":
        # zeta -> zeta^(M-1)
        out = CycQ(self.M, [0])
        for i, a in enumerate(self.coeffs):
            if a:
                out = out + a * CycQ.root(self.M, (-i) % self.M)
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        try:
            o = CycQ.coerce(other, self.M)
        except (TypeError, ValueError):
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.M, self.coeffs))

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.M)
        return sum(complex(c) * z**i for i, c in enumerate(self.coeffs))

    def inv(self) -> "CycQ":
        # Only monomial inverses are required by the library.
        nz = [(i, c) for i, c in enumerate(self.coeffs) if c != 0]
        for k in range(self.M):
            if self == CycQ.root(self.M, k):
                return CycQ.root(self.M, (-k) % self.M)
        raise NotImplementedError(f"inverse of non-monomial cyclotomic {nz}")

    def __repr__(self):
        return f"CycQ({self.M}, {list(self.coeffs)})"


def _reduce_mod_cyclotomic(cs: list, M: int) -> list:
    phi = cyclotomic_coeffs(M)
    deg = len(phi) - 1
    cs = list(cs)
    for i in range(len(cs) - 1, deg - 1, -1):
        c = cs[i]
        if c == 0:
            continue
        for j in range(deg + 1):
            cs[i - deg + j] -= c * phi[j]
    return cs[:deg]


def conj(x):
    """Conjugation dispatch; identity on rationals."""
    if isinstance(x, (int, Fraction)):
        return x
    return x.conj()


def is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()
