"""Exact integer/rational kernel: binomials, harmonic numbers, Bernoulli numbers.

Integers are Python ints and rationals are :class:`fractions.Fraction`, which
is always kept in lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence

__all__ = [
    "ExactRat",
    "FactorialTable",
    "binom",
    "harmonic",
    "harmonic_table",
    "bernoulli_numbers",
    "bernoulli_poly",
]

ExactRat = Fraction


class FactorialTable:
    """Cache of n! for 0 <= n <= capacity; grows on demand, never rewrites entries."""

    def __init__(self, capacity: int = 0):
        self._table = [1]
        self.ensure(capacity)

    def ensure(self, capacity: int) -> None:
        t = self._table
        for n in range(len(t), capacity + 1):
            t.append(t[-1] * n)

    @property
    def capacity(self) -> int:
        return len(self._table) - 1

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError("factorial of a negative integer")
        if n > self.capacity:
            self.ensure(n)
        return self._table[n]


def binom(n: int, k: int) -> int:
    """Binomial coefficient, total for k >= 0 and any integer n.

    Negative upper index uses binom(-n, k) = (-1)^k binom(n+k-1, k).
    """
    if k < 0:
        raise ValueError("binom requires k >= 0")
    if n >= 0:
        return math.comb(n, k)
    return (-1) ** k * math.comb(-n + k - 1, k)


def harmonic(n: int, r: int = 1) -> Fraction:
    """H_n^{(r)} = sum_{j=1}^n 1/j^r."""
    if n < 0 or r < 1:
        raise ValueError("harmonic requires n >= 0 and r >= 1")
    return harmonic_table(n, r)[n]


def harmonic_table(n: int, r: int = 1) -> List[Fraction]:
    """[H_0^{(r)}, ..., H_n^{(r)}] by prefix summation."""
    out = [Fraction(0)]
    acc = Fraction(0)
    for j in range(1, n + 1):
        acc += Fraction(1, j**r)
        out.append(acc)
    return out


_BERNOULLI: List[Fraction] = [Fraction(1)]


def bernoulli_numbers(max_index: int) -> List[Fraction]:
    """B_0..B_max with B_1 = -1/2, from sum_{j=0}^{m} binom(m+1, j) B_j = 0.

    Memoized module-wide; the returned list is a fresh copy.
    """
    if max_index < 0:
        raise ValueError("max_index must be >= 0")
    B = _BERNOULLI
    for m in range(len(B), max_index + 1):
        s = sum((math.comb(m + 1, j) * B[j] for j in range(m)), Fraction(0))
        B.append(-s / (m + 1))
    return B[: max_index + 1]


def bernoulli_poly(n: int, x: Fraction | int, numbers: Sequence[Fraction] | None = None) -> Fraction:
    """B_n(x) = sum_{k=0}^n binom(n, k) B_k x^(n-k), evaluated exactly."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x = Fraction(x)
    B = numbers if numbers is not None else bernoulli_numbers(n)
    # Horner in x over the coefficient list binom(n, k) B_k, highest power first.
    acc = Fraction(0)
    for k in range(n + 1):
        acc = acc * x + math.comb(n, k) * B[k]
    return acc
