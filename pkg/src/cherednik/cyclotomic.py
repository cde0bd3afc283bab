"""Exact arithmetic in the r-th cyclotomic field Q(zeta_r).

Elements are rational coefficient vectors modulo the r-th cyclotomic
polynomial; conjugation inverts the root.  For r in {1, 2} the field is Q
and everything reduces to plain rationals.  Sign determination of real
elements is exact: algebraic zero-testing first, then interval evaluation
at the root of unity refined past a provable lower bound for nonzero
values.
"""

from fractions import Fraction
from functools import lru_cache
from math import lcm

import mpmath


@lru_cache(maxsize=None)
def cyclotomic_polynomial(r: int) -> tuple[int, ...]:
    """Monic integer coefficients of Phi_r, ascending degree."""
    if r < 1:
        raise ValueError("r must be positive")
    # x^r - 1 divided by the product of Phi_d over proper divisors d of r
    num = [-1] + [0] * (r - 1) + [1]
    for d in range(1, r):
        if r % d == 0:
            num = _poly_divide_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        coef = num[k + len(den) - 1] // den[-1]
        out[k] = coef
        for j, dj in enumerate(den):
            num[k + j] -= coef * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


class CycField:
    """Shared tables for Q(zeta_r): power reduction, zeta powers, conjugation."""

    def __init__(self, r: int):
        self.r = r
        self.modulus = cyclotomic_polynomial(r)
        self.degree = len(self.modulus) - 1
        # x^k mod Phi_r for all k < r, as Fraction vectors of length degree
        self._powers = []
        for k in range(r):
            vec = [0] * k + [1]
            self._powers.append(tuple(Fraction(c) for c in self._reduce(vec)))
        self.zero = CycNumber(self, (Fraction(0),) * self.degree)
        self.one = CycNumber(self, self._powers[0])

    def _reduce(self, coeffs: list) -> list:
        coeffs = list(coeffs)
        mod, deg = self.modulus, self.degree
        for k in range(len(coeffs) - 1, deg - 1, -1):
            c = coeffs[k]
            if c:
                for j in range(deg + 1):
                    coeffs[k - deg + j] -= c * mod[j]
        del coeffs[deg:]
        while len(coeffs) < deg:
            coeffs.append(Fraction(0))
        return coeffs

    def zeta_power(self, k: int) -> "CycNumber":
        return CycNumber(self, self._powers[k % self.r])

    def from_rational(self, x) -> "CycNumber":
        return CycNumber(self, (Fraction(x),) + (Fraction(0),) * (self.degree - 1))


@lru_cache(maxsize=None)
def cyc_field(r: int) -> CycField:
    return CycField(r)


class CycNumber:
    """An element of Q(zeta_r) with exact rational coordinates."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycField, coeffs):
        self.field = field
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != field.degree:
            raise ValueError("coefficient vector has wrong length")

    def _coerce(self, other):
        if isinstance(other, CycNumber):
            if other.field.r != self.field.r:
                raise ValueError("mixed cyclotomic fields")
            return other
        return self.field.from_rational(other)

    def __add__(self, other):
        o = self._coerce(other)
        return CycNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        deg = self.field.degree
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycNumber(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        """Extended Euclid against the cyclotomic modulus."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        a = [Fraction(c) for c in self.coeffs]
        b = [Fraction(c) for c in self.field.modulus]
        # invariants: sa * self = a (mod Phi), sb * self = b (mod Phi)
        sa, sb = [Fraction(1)], [Fraction(0)]
        while True:
            a = _poly_trim(a)
            if len(a) == 1:
                inv = [c / a[0] for c in sa]
                return CycNumber(self.field, self.field._reduce(inv))
            q, rem = _poly_divmod(b, a)
            b, a = a, rem
            sa, sb = _poly_sub(sb, _poly_mul(q, sa)), sa

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field.r, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def conjugate(self) -> "CycNumber":
        """Complex conjugation: zeta maps to its inverse."""
        out = self.field.zero
        for j, c in enumerate(self.coeffs):
            if c:
                out = out + c * self.field.zeta_power(-j)
        return out

    def is_real(self) -> bool:
        return self == self.conjugate()

    def real_sign(self) -> int:
        """Sign of a real element, decided exactly.

        Zero is decided algebraically (unique coordinates).  Otherwise the
        value is bounded away from 0 by 1/(q*M^(deg-1)) where q clears
        denominators and M bounds every conjugate, so interval refinement
        terminates with a certified sign.
        """
        if self.is_zero():
            return 0
        if self.is_rational():
            x = self.coeffs[0]
            return 1 if x > 0 else -1
        if not self.is_real():
            raise ValueError(f"{self!r} is not real")
        q = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * q) for c in self.coeffs]
        m_bound = sum(abs(a) for a in ints)
        lower = Fraction(1, q) / Fraction(m_bound) ** (self.field.degree - 1)
        dps = 30
        while dps <= 4000:
            with mpmath.workdps(dps):
                val = mpmath.mpf(0)
                for k, a in enumerate(ints):
                    if a:
                        val += a * mpmath.cos(2 * mpmath.pi * k / self.field.r)
                err = (len(ints) + 5) * m_bound * mpmath.mpf(10) ** (5 - dps)
                if abs(val) > err:
                    return 1 if val > 0 else -1
            dps *= 2
        raise ArithmeticError("sign refinement failed to converge")  # unreachable for nonzero input

    def __repr__(self):
        return f"CycNumber(r={self.field.r}, {self.coeffs})"


def _poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod(num, den):
    num = [Fraction(c) for c in num]
    den = _poly_trim([Fraction(c) for c in den])
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        coef = num[k + len(den) - 1] / den[-1]
        q[k] = coef
        if coef:
            for j, dj in enumerate(den):
                num[k + j] -= coef * dj
    return q, _poly_trim(num)
