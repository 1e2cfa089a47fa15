"""Exact-arithmetic recipes mirroring :mod:`supercong.fast`.

Each recipe returns exact ints/Fractions (or lists of them); the engine
reduces them into the claim's residue ring exactly once. Nothing here touches
modular arithmetic, so it is an independent reference for the fast path.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import List

from .exact import bernoulli_numbers, bernoulli_poly, binom, harmonic_table
from .modring import NotDivisibleByP, legendre
from .sequences import apery, franel

ORACLE_CEILING = 100


class OracleContext:
    def __init__(self, p: int):
        self.p = p
        self.h = (p - 1) // 2

    @cached_property
    def bern(self) -> Fraction:
        """B_{p-2}(1/3) exactly."""
        n = self.p - 2
        return bernoulli_poly(n, Fraction(1, 3), bernoulli_numbers(n))

    @cached_property
    def leg(self) -> int:
        return legendre(self.p, 3)

    @cached_property
    def H1(self) -> List[Fraction]:
        return harmonic_table(self.p - 1, 1)

    @cached_property
    def H2(self) -> List[Fraction]:
        return harmonic_table(self.p - 1, 2)

    def cb_over_j(self, k: int) -> Fraction:
        return sum((Fraction(binom(2 * j, j), j) for j in range(1, k + 1)), Fraction(0))

    def inv_sq_cb_weighted(self) -> Fraction:
        return sum(
            (binom(2 * k, k) * sum((Fraction(1, j * j * binom(2 * j, j)) for j in range(1, k + 1)), Fraction(0))
             for k in range(1, self.h + 1)),
            Fraction(0),
        )

    def central_sum(self) -> int:
        return sum(binom(2 * k, k) for k in range(self.p))


def c1_lhs(o: OracleContext) -> Fraction:
    p = o.p
    s = sum((-1) ** k * (2 * k + 1) * apery(k) for k in range(p))
    if s % p:
        raise NotDivisibleByP(f"alternating Apery sum {s} is not divisible by {p}")
    return Fraction(s // p)


def c1_rhs(o: OracleContext, coeff: Fraction = Fraction(1, 6)) -> Fraction:
    return o.leg + coeff * o.p**2 * o.bern


def c2_lhs(o: OracleContext, alternating: bool = True) -> int:
    sign = -1 if alternating else 1
    return sum(sign**k * franel(k) for k in range(o.p))


def c2_rhs(o: OracleContext, coeff: Fraction = Fraction(2, 3)) -> Fraction:
    return o.leg + coeff * o.p**2 * o.bern


def legendre_value(o: OracleContext) -> int:
    return o.leg


def c5_lhs(o: OracleContext) -> Fraction:
    total = Fraction(0)
    for k in range(1, o.h + 1):
        inner = sum((Fraction(1, (2 * j - 1) * (-3) ** j) for j in range(1, k + 1)), Fraction(0))
        total += Fraction((-3) ** k, k) * inner
    return total


def c5_rhs(o: OracleContext) -> Fraction:
    return o.bern / 6


def c6_lhs(o: OracleContext) -> Fraction:
    return sum((Fraction(1, k * binom(2 * k, k)) * o.cb_over_j(k) for k in range(1, o.h + 1)), Fraction(0))


def c6_rhs(o: OracleContext) -> Fraction:
    return o.bern / 3


def c7_lhs(o: OracleContext) -> List[Fraction]:
    p = o.p
    return [
        sum((Fraction(binom(k + j - 1, k), k + j) for j in range(2, p - 2 * k + 1)), Fraction(0))
        for k in range(1, o.h + 1)
    ]


def c7_rhs(o: OracleContext) -> List[Fraction]:
    return [
        (-1) ** k * (Fraction(3, 2) * o.cb_over_j(k) - Fraction(binom(2 * k, k), k)) - Fraction(1, k + 1)
        for k in range(1, o.h + 1)
    ]


def c8_lhs(o: OracleContext) -> List[Fraction]:
    p = o.p
    return [
        sum(
            (Fraction(binom(-k, k + j) * (-1) ** (k + j), binom(k + j, k)) for j in range(0, p - 2 * k + 1)),
            Fraction(0),
        )
        for k in range(1, o.h + 1)
    ]


def c8_rhs(o: OracleContext) -> List[Fraction]:
    return [
        Fraction(3 * k, 2) * o.cb_over_j(k) - Fraction(3, 2) * binom(2 * k, k) for k in range(1, o.h + 1)
    ]


def c9_lhs(o: OracleContext) -> int:
    p = o.p
    return sum(
        binom(2 * k, k) * sum(binom(k, j) * binom(k + j, j) * (-1) ** (k + j) for j in range(p - k, k + 1))
        for k in range(o.h + 1, p)
    )


def c9_rhs(o: OracleContext) -> Fraction:
    return -(o.p**2) * o.bern


def zero(o: OracleContext) -> int:
    return 0


def c10a_lhs(o: OracleContext) -> Fraction:
    return o.cb_over_j(o.h)


def c10b_lhs(o: OracleContext) -> List[int]:
    p = o.p
    return [k * binom(2 * k, k) * binom(2 * (p - k), p - k) for k in range(1, o.h + 1)]


def c10b_rhs(o: OracleContext) -> List[int]:
    return [-2 * o.p] * o.h


def c10c_lhs(o: OracleContext) -> Fraction:
    return o.H2[o.h]


def c10d_lhs(o: OracleContext) -> List[int]:
    return [binom(2 * j, j) for j in range(o.h + 1)]


def c10d_rhs(o: OracleContext) -> List[int]:
    return [binom(o.h, j) * (-4) ** j for j in range(o.h + 1)]


def c10e_lhs(o: OracleContext) -> List[int]:
    p = o.p
    return [binom(p - 1, k) * binom(p + k, k) for k in range(p)]


def c10e_rhs(o: OracleContext) -> List[Fraction]:
    p = o.p
    return [(-1) ** k * (1 - p * p * o.H2[k]) for k in range(p)]


def c10f_lhs(o: OracleContext) -> List[int]:
    p = o.p
    return [binom(p - k + j, j) for k in range(1, o.h + 1) for j in range(k, p - k + 1)]


def c10f_rhs(o: OracleContext) -> List[Fraction]:
    p = o.p
    return [
        Fraction(p * (-1) ** (k - 1), k * binom(j, k)) for k in range(1, o.h + 1) for j in range(k, p - k + 1)
    ]


def c10g_lhs(o: OracleContext) -> List[Fraction]:
    p, h, H = o.p, o.h, o.H1
    r = range(h + 1)
    return [H[p - 1 - 2 * j] for j in r] + [H[h - j] - H[h] for j in r]


def c10g_rhs(o: OracleContext) -> List[Fraction]:
    H = o.H1
    r = range(o.h + 1)
    return [H[2 * j] for j in r] + [2 * H[2 * j] - H[j] for j in r]


def c10h_lhs(o: OracleContext) -> int:
    return (-3) ** o.h


def c11_rhs(o: OracleContext) -> Fraction:
    p2 = o.p**2
    return o.central_sum() + p2 * o.bern - 3 * p2 * o.inv_sq_cb_weighted()


def c12a_lhs(o: OracleContext) -> Fraction:
    H = o.H1
    s = sum((Fraction(1, j * (-3) ** j) * (H[j] - 2 * H[2 * j]) for j in range(1, o.h + 1)), Fraction(0))
    return o.leg * s


def c12b_lhs(o: OracleContext) -> Fraction:
    return sum(((-1) ** k * o.H2[k] * franel(k) for k in range(o.p)), Fraction(0))


def c12b_rhs(o: OracleContext) -> Fraction:
    return o.bern / 2


def c12c_lhs(o: OracleContext) -> Fraction:
    return o.central_sum() - 3 * o.p**2 * o.inv_sq_cb_weighted()


def c12c_rhs(o: OracleContext) -> Fraction:
    return o.leg - Fraction(5, 6) * o.p**2 * o.bern
