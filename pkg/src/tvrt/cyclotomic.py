"""Exact arithmetic in the cyclotomic field Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) reduced modulo
the n-th cyclotomic polynomial, as an integer numerator vector over a single
positive denominator.  The representation is canonical (content of the
numerator coprime to the denominator), so equality is tuple equality.

The invariants code always uses n = 4r, so that z = A = exp(i pi / 2r).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class LevelMismatchError(ValueError):
    """Raised when two cyclotomic numbers from different fields meet."""


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (lowest degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    # x^n - 1 divided by every Phi_d with d | n, d < n
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_divide(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    assert den[-1] == 1
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            quot[k - dn] = c
            for j in range(dn + 1):
                num[k - dn + j] -= c * den[j]
    assert not any(num), "inexact polynomial division"
    return quot


class _Field:
    """Per-order tables: modulus, reduced powers of z, Galois units."""

    def __init__(self, n: int):
        self.n = n
        self.modulus = cyclotomic_polynomial(n)
        self.degree = len(self.modulus) - 1
        d = self.degree
        # reduced vector of z^m for 0 <= m < n
        powers = []
        vec = [1] + [0] * (d - 1)
        for _ in range(n):
            powers.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for j in range(d):
                    vec[j] -= top * self.modulus[j]
        self.powers = powers
        self.units = [k for k in range(1, n) if math.gcd(k, n) == 1]
        self.zeta = cmath.exp(2j * math.pi / n)
        self.zeta_powers = [cmath.exp(2j * math.pi * k / n) for k in range(d)]

    def reduce(self, conv: list[int]) -> list[int]:
        d = self.degree
        mod = self.modulus
        for k in range(len(conv) - 1, d - 1, -1):
            c = conv[k]
            if c:
                base = k - d
                for j in range(d):
                    conv[base + j] -= c * mod[j]
        return conv[:d] if len(conv) >= d else conv + [0] * (d - len(conv))

    def galois(self, num: Sequence[int], k: int) -> list[int]:
        d = self.degree
        out = [0] * d
        n = self.n
        powers = self.powers
        for j, c in enumerate(num):
            if c:
                vec = powers[(j * k) % n]
                for i in range(d):
                    if vec[i]:
                        out[i] += c * vec[i]
        return out


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


class CycNumber:
    """Immutable element of Q(zeta_n) with zeta_n = exp(2 pi i / n)."""

    __slots__ = ("level", "num", "den", "_hash")

    def __init__(self, level: int, num: Iterable[int], den: int = 1, *, _normalized: bool = False):
        num = tuple(num)
        field = _field(level)
        if len(num) != field.degree:
            raise ValueError(f"expected {field.degree} coefficients, got {len(num)}")
        if not _normalized:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if den < 0:
                num = tuple(-c for c in num)
                den = -den
            g = math.gcd(den, *num)
            if g > 1:
                num = tuple(c // g for c in num)
                den //= g
        self.level = level
        self.num = num
        self.den = den
        self._hash = None

    # --- constructors -----------------------------------------------------

    @classmethod
    def from_rational(cls, level: int, value) -> "CycNumber":
        value = Fraction(value)
        d = _field(level).degree
        return cls(level, (value.numerator,) + (0,) * (d - 1), value.denominator)

    @classmethod
    def zero(cls, level: int) -> "CycNumber":
        return cls(level, (0,) * _field(level).degree, 1, _normalized=True)

    @classmethod
    def one(cls, level: int) -> "CycNumber":
        return cls.from_rational(level, 1)

    @classmethod
    def zeta(cls, level: int, power: int = 1) -> "CycNumber":
        field = _field(level)
        return cls(level, field.powers[power % level], 1, _normalized=True)

    @classmethod
    def from_coeffs(cls, level: int, coeffs: Sequence) -> "CycNumber":
        """Build from rational coefficients of 1, z, z^2, ... (any length)."""
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        field = _field(level)
        out = [0] * field.degree
        for k, f in enumerate(fracs):
            c = f.numerator * (den // f.denominator)
            if c:
                vec = field.powers[k % level]
                for i, v in enumerate(vec):
                    if v:
                        out[i] += c * v
        return cls(level, out, den)

    # --- inspection -------------------------------------------------------

    @property
    def level_4r(self) -> int:
        return self.level

    @property
    def field_degree(self) -> int:
        return len(self.num)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, CycNumber):
            return self.level == other.level and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.level, self.num, self.den))
        return self._hash

    # --- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "CycNumber":
        if isinstance(other, CycNumber):
            if other.level != self.level:
                raise LevelMismatchError(f"levels {self.level} and {other.level} differ")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.from_rational(self.level, other)
        raise TypeError(f"cannot combine CycNumber with {type(other).__name__}")

    def __add__(self, other) -> "CycNumber":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return CycNumber(self.level, [a + b for a, b in zip(self.num, o.num)], self.den)
        da, db = self.den, o.den
        return CycNumber(self.level, [a * db + b * da for a, b in zip(self.num, o.num)], da * db)

    __radd__ = __add__

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.level, [-a for a in self.num], self.den, _normalized=True)

    def __sub__(self, other) -> "CycNumber":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "CycNumber":
        return (-self) + other

    def __mul__(self, other) -> "CycNumber":
        if isinstance(other, int):
            return CycNumber(self.level, [a * other for a in self.num], self.den)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.num, o.num
        d = len(a)
        conv = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        red = _field(self.level).reduce(conv)
        return CycNumber(self.level, red, self.den * o.den)

    __rmul__ = __mul__

    def mul_zeta(self, power: int) -> "CycNumber":
        """Multiply by z^power (a unit, so no renormalization is needed)."""
        power %= self.level
        if power == 0:
            return self
        field = _field(self.level)
        d = field.degree
        out = [0] * d
        powers = field.powers
        for j, c in enumerate(self.num):
            if c:
                vec = powers[(j + power) % self.level]
                for i in range(d):
                    if vec[i]:
                        out[i] += c * vec[i]
        return CycNumber(self.level, out, self.den, _normalized=True)

    def galois(self, k: int) -> "CycNumber":
        """Apply the automorphism z -> z^k (k coprime to the level)."""
        if math.gcd(k, self.level) != 1:
            raise ValueError(f"{k} is not a unit modulo {self.level}")
        out = _field(self.level).galois(self.num, k % self.level)
        return CycNumber(self.level, out, self.den, _normalized=True)

    def conjugate(self) -> "CycNumber":
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        prod = self
        for k in _field(self.level).units[1:]:
            prod = prod * self.galois(k)
        return prod.rational()

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        field = _field(self.level)
        rest = CycNumber.one(self.level)
        for k in field.units[1:]:
            rest = rest * self.galois(k)
        n = (self * rest).rational()
        return rest * CycNumber.from_rational(self.level, 1 / n)

    def __truediv__(self, other) -> "CycNumber":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * CycNumber.from_rational(self.level, Fraction(1) / Fraction(other))
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "CycNumber":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "CycNumber":
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber.one(self.level)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # --- output -----------------------------------------------------------

    def to_complex(self) -> complex:
        zp = _field(self.level).zeta_powers
        re = im = 0.0
        for c, z in zip(self.num, zp):
            if c:
                q = c / self.den
                re += q * z.real
                im += q * z.imag
        return complex(re, im)

    def __complex__(self) -> complex:
        return self.to_complex()

    def __repr__(self) -> str:
        return f"CycNumber({self.level}, {self})"

    def __str__(self) -> str:
        return format_exact(self)

    def to_json(self) -> dict:
        return {
            "order": self.level,
            "coeffs": [str(c) for c in self.coeffs],
            "exact": format_exact(self),
        }


def format_exact(x: CycNumber, var: str = "z") -> str:
    """Human-readable expression in powers of the generator, e.g. '1/2 - z^3'."""
    terms = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def euler_phi(n: int) -> int:
    return _field(n).degree
