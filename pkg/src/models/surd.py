from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Union

Rational = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "SurdScalar"]


def is_square_free(n: int) -> bool:
    """Return True when no square of a prime divides n (n >= 1)."""
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@total_ordering
@dataclass(frozen=True)
class SurdScalar:
    """Exact element r + s*sqrt(n) of the real quadratic field Q(sqrt(n)).

    The representation is canonical: a value with s = 0 always carries
    radicand 1, so equal values share fields and hash.
    """

    rational: Fraction = Fraction(0)
    surd: Fraction = Fraction(0)
    radicand: int = 1

    def __post_init__(self):
        rational = Fraction(self.rational)
        surd = Fraction(self.surd)
        radicand = int(self.radicand)
        if not is_square_free(radicand):
            raise ParameterError(f"Radicand {radicand} is not a positive square-free integer")
        if radicand == 1:
            rational, surd = rational + surd, Fraction(0)
        if surd == 0:
            radicand = 1
        object.__setattr__(self, "rational", rational)
        object.__setattr__(self, "surd", surd)
        object.__setattr__(self, "radicand", radicand)

    @classmethod
    def of(cls, value: ScalarLike) -> "SurdScalar":
        """Coerce an int, Fraction or SurdScalar."""
        if isinstance(value, SurdScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        raise ParameterError(f"Cannot use {type(value).__name__} as an exact scalar")

    @classmethod
    def sqrt(cls, n: int) -> "SurdScalar":
        return cls(Fraction(0), Fraction(1), n)

    # -- predicates -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.rational == 0 and self.surd == 0

    @property
    def is_rational(self) -> bool:
        return self.surd == 0

    @property
    def is_integer(self) -> bool:
        return self.surd == 0 and self.rational.denominator == 1

    def sign(self) -> int:
        """Exact sign of r + s*sqrt(n)."""
        r_sign = (self.rational > 0) - (self.rational < 0)
        s_sign = (self.surd > 0) - (self.surd < 0)
        if s_sign == 0:
            return r_sign
        if r_sign == 0 or r_sign == s_sign:
            return s_sign
        # opposite signs: the larger square wins (never equal, n is not a square)
        if self.rational**2 > self.surd**2 * self.radicand:
            return r_sign
        return s_sign

    # -- arithmetic -------------------------------------------------------

    def _common_radicand(self, other: "SurdScalar") -> int:
        if self.radicand == 1:
            return other.radicand
        if other.radicand == 1 or other.radicand == self.radicand:
            return self.radicand
        raise ParameterError(
            f"Cannot combine sqrt({self.radicand}) and sqrt({other.radicand}) in one field"
        )

    def __add__(self, other: ScalarLike) -> "SurdScalar":
        try:
            other = SurdScalar.of(other)
        except ParameterError:
            return NotImplemented
        n = self._common_radicand(other)
        return SurdScalar(self.rational + other.rational, self.surd + other.surd, n)

    __radd__ = __add__

    def __neg__(self) -> "SurdScalar":
        return SurdScalar(-self.rational, -self.surd, self.radicand)

    def __sub__(self, other: ScalarLike) -> "SurdScalar":
        try:
            other = SurdScalar.of(other)
        except ParameterError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> "SurdScalar":
        return SurdScalar.of(other) - self

    def __mul__(self, other: ScalarLike) -> "SurdScalar":
        try:
            other = SurdScalar.of(other)
        except ParameterError:
            return NotImplemented
        n = self._common_radicand(other)
        r = self.rational * other.rational + self.surd * other.surd * n
        s = self.rational * other.surd + self.surd * other.rational
        return SurdScalar(r, s, n)

    __rmul__ = __mul__

    def conjugate(self) -> "SurdScalar":
        """Galois conjugate r - s*sqrt(n)."""
        return SurdScalar(self.rational, -self.surd, self.radicand)

    def __truediv__(self, other: ScalarLike) -> "SurdScalar":
        try:
            other = SurdScalar.of(other)
        except ParameterError:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by an exact zero")
        norm = other.rational**2 - other.surd**2 * other.radicand
        return self * other.conjugate() * SurdScalar(1 / norm)

    def __rtruediv__(self, other: ScalarLike) -> "SurdScalar":
        return SurdScalar.of(other) / self

    # -- comparison -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.surd == 0 and self.rational == other
        if not isinstance(other, SurdScalar):
            return NotImplemented
        return (
            self.rational == other.rational
            and self.surd == other.surd
            and self.radicand == other.radicand
        )

    def __hash__(self) -> int:
        if self.surd == 0:
            return hash(self.rational)
        return hash((self.rational, self.surd, self.radicand))

    def __lt__(self, other: ScalarLike) -> bool:
        other = SurdScalar.of(other)
        return (self - other).sign() < 0

    # -- integer part -----------------------------------------------------

    def floor(self) -> int:
        """Exact floor."""
        square = self.surd**2 * self.radicand
        root = math.isqrt(square.numerator * square.denominator) // square.denominator
        estimate = math.floor(self.rational) + (root if self.surd >= 0 else -root - 1)
        while self < estimate:
            estimate -= 1
        while not self < estimate + 1:
            estimate += 1
        return estimate

    def frac(self) -> "SurdScalar":
        """x - floor(x), an exact value in [0, 1)."""
        return self - self.floor()

    def __float__(self) -> float:
        if self.surd == 0:
            return float(self.rational)
        return math.fsum([float(self.rational), float(self.surd) * math.sqrt(self.radicand)])

    def __repr__(self) -> str:
        return f"SurdScalar({self})"

    def __str__(self) -> str:
        if self.surd == 0:
            return str(self.rational)
        if self.rational == 0:
            return f"{self.surd}*sqrt({self.radicand})"
        op = "+" if self.surd > 0 else "-"
        return f"{self.rational} {op} {abs(self.surd)}*sqrt({self.radicand})"


ZERO = SurdScalar()
ONE = SurdScalar(Fraction(1))


@lru_cache(maxsize=65536)
def unit_phase(x: SurdScalar) -> complex:
    """e^{2 pi i x}, with x reduced modulo 1 in exact arithmetic first."""
    reduced = float(x.frac())
    return cmath.exp(2j * math.pi * reduced)


def real_phase(x: float) -> complex:
    """e^{2 pi i x} for an inexact real; reduction happens in floating point."""
    return cmath.exp(2j * math.pi * math.fmod(x, 1.0))


class ParameterError(ValueError):
    """Raised when operands or configuration parameters are incompatible."""
    pass
