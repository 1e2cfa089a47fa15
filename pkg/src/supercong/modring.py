"""Arithmetic in Z/p^e, rational reduction, Legendre symbols, and p-adic units.

Hot loops elsewhere in the package work on plain ints modulo ``M.m`` and only
wrap results in :class:`Residue` at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

__all__ = [
    "ModringError",
    "DenominatorDivisibleByP",
    "NotInvertible",
    "NotDivisibleByP",
    "NegativeValuationAtReduction",
    "is_prime",
    "PrimePowerModulus",
    "Residue",
    "PAdicUnit",
    "reduce_rat",
    "inv_mod",
    "legendre",
    "divide_by_p_exact",
    "padic_mul",
    "padic_div",
    "split_p",
    "inverse_table",
]

MAX_EXPONENT = 4


class ModringError(ArithmeticError):
    pass


class DenominatorDivisibleByP(ModringError):
    pass


class NotInvertible(ModringError):
    pass


class NotDivisibleByP(ModringError):
    pass


class NegativeValuationAtReduction(ModringError):
    pass


# Deterministic Miller-Rabin witnesses for all n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimePowerModulus:
    p: int
    e: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"modulus base {self.p!r} is not prime")
        if self.p <= 3:
            raise ValueError(f"prime must exceed 3, got {self.p}")
        if not 1 <= self.e <= MAX_EXPONENT:
            raise ValueError(f"exponent must lie in 1..{MAX_EXPONENT}, got {self.e}")

    @property
    def m(self) -> int:
        return self.p**self.e

    def lower(self, e: int) -> "PrimePowerModulus":
        return PrimePowerModulus(self.p, e)

    def __call__(self, value: int) -> "Residue":
        return Residue(value % self.m, self)


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: PrimePowerModulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.m:
            raise ValueError(f"{self.value} is not a least residue mod {self.modulus.m}")

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError("residues live in different rings")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.modulus(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.modulus(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.modulus(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.modulus(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self.modulus(-self.value)

    def __int__(self):
        return self.value

    def reduce_to(self, e: int) -> "Residue":
        """Image under Z/p^self.e -> Z/p^e for e <= self.e."""
        if e > self.modulus.e:
            raise ValueError("cannot lift a residue to a finer modulus")
        return self.modulus.lower(e)(self.value)

    def __str__(self):
        return f"{self.value} mod {self.modulus.m}"


def reduce_rat(x: Fraction | int, M: PrimePowerModulus) -> Residue:
    """num(x) * den(x)^-1 mod p^e."""
    x = Fraction(x)
    if x.denominator % M.p == 0:
        raise DenominatorDivisibleByP(f"denominator of {x} is divisible by {M.p}")
    return M(x.numerator * pow(x.denominator, -1, M.m))


def inv_mod(a: Residue) -> Residue:
    if a.value % a.modulus.p == 0:
        raise NotInvertible(f"{a} is not a unit")
    return a.modulus(pow(a.value, -1, a.modulus.m))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion; p an odd prime."""
    if p < 3 or p % 2 == 0:
        raise ValueError("legendre requires an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def divide_by_p_exact(x: Residue) -> Residue:
    """Exact division of a p-divisible residue mod p^(e+1) down to mod p^e."""
    M = x.modulus
    if M.e < 2:
        raise ValueError("need a modulus p^(e+1) with e >= 1")
    if x.value % M.p:
        raise NotDivisibleByP(f"{x} is not divisible by {M.p}")
    return M.lower(M.e - 1)(x.value // M.p)


def split_p(n: int, p: int) -> Tuple[int, int]:
    """(n / p^v, v) with v = v_p(n); n must be nonzero."""
    if n == 0:
        raise ValueError("zero has no finite valuation")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return n, v


@dataclass(frozen=True)
class PAdicUnit:
    """The number unit * p^val, with the unit known modulo p^e.

    Valuations may go negative while combining factors; only conversion to a
    :class:`Residue` demands a nonnegative valuation.
    """

    unit: int
    val: int
    modulus: PrimePowerModulus

    def __post_init__(self):
        if self.unit % self.modulus.p == 0:
            raise ValueError(f"unit part {self.unit} is divisible by {self.modulus.p}")
        object.__setattr__(self, "unit", self.unit % self.modulus.m)

    @classmethod
    def from_int(cls, n: int, M: PrimePowerModulus) -> "PAdicUnit":
        u, v = split_p(n, M.p)
        return cls(u, v, M)

    def to_residue(self, e: int | None = None) -> Residue:
        """Value mod p^e (default: the unit's precision)."""
        e = self.modulus.e if e is None else e
        if self.val < 0:
            raise NegativeValuationAtReduction(f"valuation {self.val} < 0")
        target = self.modulus.lower(e)
        if self.val >= e:
            return target(0)
        return target(self.unit * self.modulus.p**self.val)

    def __mul__(self, other: "PAdicUnit") -> "PAdicUnit":
        return padic_mul(self, other)

    def __truediv__(self, other: "PAdicUnit") -> "PAdicUnit":
        return padic_div(self, other)


def padic_mul(a: PAdicUnit, b: PAdicUnit) -> PAdicUnit:
    if a.modulus != b.modulus:
        raise ValueError("p-adic units carry different moduli")
    return PAdicUnit(a.unit * b.unit, a.val + b.val, a.modulus)


def padic_div(a: PAdicUnit, b: PAdicUnit) -> PAdicUnit:
    if a.modulus != b.modulus:
        raise ValueError("p-adic units carry different moduli")
    m = a.modulus.m
    return PAdicUnit(a.unit * pow(b.unit, -1, m), a.val - b.val, a.modulus)


def inverse_table(n: int, p: int, m: int) -> List[int]:
    """inv[i] = i^-1 mod m for 1 <= i <= n, where m is a power of p and n < p.

    inv[0] is a 0 placeholder.
    """
    if n >= p:
        raise ValueError("table must stop below p")
    inv = [0] * (n + 1)
    if n >= 1:
        inv[1] = 1
    for i in range(2, n + 1):
        inv[i] = -(m // i) * inv[m % i] % m
    return inv
