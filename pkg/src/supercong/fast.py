"""Modular ("fast path") recipes for both sides of every claim.

Every recipe takes a :class:`PrimeContext` and returns a least residue (int)
modulo p^e for the claim's exponent e, or a list of them for claims quantified
over an index. Shared per-prime tables live on the context and are built
lazily, once per prime.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import List

import numpy as np

from .modring import PrimePowerModulus, divide_by_p_exact, inverse_table, legendre
from .sequences import apery_mod_table, bernoulli_poly_mod, central_binoms_padic, franel_mod_table


class PrimeContext:
    """Per-prime precomputation shared by all fast recipes at that prime."""

    def __init__(self, p: int):
        self.M1 = PrimePowerModulus(p, 1)  # validates p
        self.p = p
        self.h = (p - 1) // 2
        self.m2 = p * p
        self.m3 = p**3
        self.m4 = p**4

    @cached_property
    def inv1(self) -> List[int]:
        return inverse_table(self.p - 1, self.p, self.p)

    @cached_property
    def inv3(self) -> List[int]:
        return inverse_table(self.p - 1, self.p, self.m3)

    @cached_property
    def bern(self) -> int:
        """B_{p-2}(1/3) mod p."""
        return bernoulli_poly_mod(self.p).value

    @cached_property
    def leg(self) -> int:
        return legendre(self.p, 3)

    @cached_property
    def cb(self) -> List[tuple]:
        """binom(2k,k) as (unit mod p^3, val), 0 <= k <= p-1."""
        return central_binoms_padic(self.p - 1, PrimePowerModulus(self.p, 3))

    @cached_property
    def cb_mod_p(self) -> List[int]:
        """binom(2k,k) mod p for 0 <= k <= (p-1)/2 (all units)."""
        return [u % self.p for u, v in self.cb[: self.h + 1]]

    @cached_property
    def cb_inv_mod_p(self) -> List[int]:
        return [pow(c, -1, self.p) for c in self.cb_mod_p]

    @cached_property
    def harm1(self) -> List[int]:
        """H_k mod p, 0 <= k <= p-1."""
        out, acc = [0], 0
        for k in range(1, self.p):
            acc = (acc + self.inv1[k]) % self.p
            out.append(acc)
        return out

    @cached_property
    def harm2(self) -> List[int]:
        """H_k^{(2)} mod p, 0 <= k <= p-1."""
        out, acc = [0], 0
        for k in range(1, self.p):
            i = self.inv1[k]
            acc = (acc + i * i) % self.p
            out.append(acc)
        return out

    @cached_property
    def cb_over_j(self) -> List[int]:
        """S_k = sum_{j=1}^k binom(2j,j)/j mod p, 0 <= k <= (p-1)/2."""
        p, out, acc = self.p, [0], 0
        for j in range(1, self.h + 1):
            acc = (acc + self.cb_mod_p[j] * self.inv1[j]) % p
            out.append(acc)
        return out

    @cached_property
    def inv_sq_cb(self) -> List[int]:
        """Q_k = sum_{j=1}^k 1/(j^2 binom(2j,j)) mod p, 0 <= k <= (p-1)/2."""
        p, out, acc = self.p, [0], 0
        for j in range(1, self.h + 1):
            i = self.inv1[j]
            acc = (acc + i * i * self.cb_inv_mod_p[j]) % p
            out.append(acc)
        return out

    @cached_property
    def apery_alt_sum(self) -> int:
        """sum_{k<p} (-1)^k (2k+1) A_k mod p^4."""
        A = apery_mod_table(self.p - 1, self.p, self.m4)
        return sum((-1) ** k * (2 * k + 1) * a for k, a in enumerate(A)) % self.m4

    @cached_property
    def franel_p3(self) -> List[int]:
        return franel_mod_table(self.p - 1, self.p, self.m3)

    @cached_property
    def central_sum_p3(self) -> int:
        """sum_{k<p} binom(2k,k) mod p^3."""
        p, m3 = self.p, self.m3
        return sum(u * p**v for u, v in self.cb) % m3

    @cached_property
    def weighted_inv_sq_cb(self) -> int:
        """sum_{k=1}^{(p-1)/2} binom(2k,k) Q_k mod p."""
        Q = self.inv_sq_cb
        return sum(self.cb_mod_p[k] * Q[k] for k in range(1, self.h + 1)) % self.p

    def frac_mod_p(self, x: Fraction) -> int:
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def p2_times(self, x_mod_p: int) -> int:
        """p^2 * x mod p^3 (only x mod p matters)."""
        return self.m2 * (x_mod_p % self.p) % self.m3


# -- main theorems and their mod p^2 precursors ------------------------------


def c1_lhs(ctx: PrimeContext) -> int:
    total = ctx.M1.lower(4)(ctx.apery_alt_sum)
    return divide_by_p_exact(total).value


def c1_rhs(ctx: PrimeContext, coeff: Fraction = Fraction(1, 6)) -> int:
    return (ctx.leg + ctx.p2_times(ctx.frac_mod_p(coeff) * ctx.bern)) % ctx.m3


def c2_lhs(ctx: PrimeContext, alternating: bool = True) -> int:
    f = ctx.franel_p3
    sign = -1 if alternating else 1
    return sum(sign**k * fk for k, fk in enumerate(f)) % ctx.m3


def c2_rhs(ctx: PrimeContext, coeff: Fraction = Fraction(2, 3)) -> int:
    return (ctx.leg + ctx.p2_times(ctx.frac_mod_p(coeff) * ctx.bern)) % ctx.m3


def c3_lhs(ctx: PrimeContext) -> int:
    return c1_lhs(ctx) % ctx.m2


def c4_lhs(ctx: PrimeContext) -> int:
    return c2_lhs(ctx) % ctx.m2


def legendre_mod_p2(ctx: PrimeContext) -> int:
    return ctx.leg % ctx.m2


# -- lemmas -------------------------------------------------------------------


def c5_lhs(ctx: PrimeContext) -> int:
    p, inv = ctx.p, ctx.inv1
    inv_m3 = pow(-3, -1, p)
    total = inner = 0
    pw = ipw = 1  # (-3)^k, (-3)^-k
    for k in range(1, ctx.h + 1):
        pw = pw * -3 % p
        ipw = ipw * inv_m3 % p
        inner = (inner + inv[2 * k - 1] * ipw) % p
        total = (total + pw * inv[k] * inner) % p
    return total


def c5_rhs(ctx: PrimeContext) -> int:
    return ctx.bern * pow(6, -1, ctx.p) % ctx.p


def c6_lhs(ctx: PrimeContext) -> int:
    p, S = ctx.p, ctx.cb_over_j
    return sum(ctx.inv1[k] * ctx.cb_inv_mod_p[k] * S[k] for k in range(1, ctx.h + 1)) % p


def c6_rhs(ctx: PrimeContext) -> int:
    return ctx.bern * ctx.inv1[3] % ctx.p


def perk_indices(ctx: PrimeContext) -> List[int]:
    return list(range(1, ctx.h + 1))


def c7_lhs(ctx: PrimeContext) -> List[int]:
    p, inv = ctx.p, ctx.inv1
    out = []
    for k in range(1, ctx.h + 1):
        c = 1  # binom(k+j-1, k) at j = 1
        s = 0
        for j in range(2, p - 2 * k + 1):
            c = c * (k + j - 1) % p * inv[j - 1] % p
            s += c * inv[k + j]
        out.append(s % p)
    return out


def c7_rhs(ctx: PrimeContext) -> List[int]:
    p, inv, S = ctx.p, ctx.inv1, ctx.cb_over_j
    out = []
    for k in range(1, ctx.h + 1):
        core = 3 * inv[2] * S[k] - ctx.cb_mod_p[k] * inv[k]
        out.append(((-1) ** k * core - inv[k + 1]) % p)
    return out


def c8_lhs(ctx: PrimeContext) -> List[int]:
    p, inv = ctx.p, ctx.inv1
    out = []
    for k in range(1, ctx.h + 1):
        top = ctx.cb_mod_p[k] * inv[2] % p  # binom(2k+j-1, k+j) at j = 0
        inv_c = 1  # 1/binom(k+j, k) at j = 0
        s = 0
        for j in range(0, p - 2 * k + 1):
            if j:
                top = top * (2 * k + j - 1) % p * inv[k + j] % p
                inv_c = inv_c * j % p * inv[k + j] % p
            sign = -1 if (k + j) & 1 else 1
            neg_binom = sign * top  # binom(-k, k+j)
            s += neg_binom * sign * inv_c
        out.append(s % p)
    return out


def c8_rhs(ctx: PrimeContext) -> List[int]:
    p, inv, S = ctx.p, ctx.inv1, ctx.cb_over_j
    return [(3 * k * inv[2] * S[k] - 3 * inv[2] * ctx.cb_mod_p[k]) % p for k in range(1, ctx.h + 1)]


def c9_lhs(ctx: PrimeContext) -> int:
    """Upper-half double sum mod p^3.

    For (p+1)/2 <= k <= p-1 and p-k <= j <= k, binom(2k,k) and binom(k+j,j)
    each carry exactly one factor of p (one base-p carry) and binom(k,j) is a
    unit, so every term is p^2 times a unit and only units mod p matter.
    With k+j = p+r, binom(k+j,j)/p = -r!/(j! k!) mod p, so the unit part of
    binom(k,j) binom(k+j,j)/p is -r!/(j!^2 (k-j)!). Substituting s = k-j and
    d = 2k-p turns each inner sum into slices of factorial tables.
    """
    p, h = ctx.p, ctx.h
    fact = [1] * p
    for i in range(1, p):
        fact[i] = fact[i - 1] * i % p
    inv_fact = [1] * p
    inv_fact[p - 1] = pow(fact[p - 1], -1, p)
    for i in range(p - 1, 0, -1):
        inv_fact[i - 1] = inv_fact[i] * i % p
    F = np.array(fact, dtype=np.int64)
    inv_sq = np.array([x * x % p for x in inv_fact], dtype=np.int64)
    signed_inv = np.array([x if s % 2 == 0 else p - x for s, x in enumerate(inv_fact)], dtype=np.int64)
    total = 0
    for k in range(h + 1, p):
        u_cb, v_cb = ctx.cb[k]
        if v_cb != 1:
            raise ArithmeticError(f"binom(2k,k) at k={k} has valuation {v_cb}, expected 1")
        d = 2 * k - p
        # s = 0..d: (-1)^s / s! * (d-s)! * 1/(k-s)!^2; products stay below p^2 * p.
        t = signed_inv[: d + 1] * F[d::-1] % p
        row = int(t @ inv_sq[k - d : k + 1][::-1])
        total -= (u_cb % p) * row
    return ctx.p2_times(total)


def c9_rhs(ctx: PrimeContext) -> int:
    return ctx.p2_times(-ctx.bern)


# -- C10 bundle ---------------------------------------------------------------


def c10a_lhs(ctx: PrimeContext) -> int:
    return ctx.cb_over_j[ctx.h]


def zero(ctx: PrimeContext) -> int:
    return 0


def c10b_lhs(ctx: PrimeContext) -> List[int]:
    p, m2, cb = ctx.p, ctx.m2, ctx.cb
    out = []
    for k in range(1, ctx.h + 1):
        (u1, v1), (u2, v2) = cb[k], cb[p - k]
        out.append(k * u1 * u2 * p ** (v1 + v2) % m2)
    return out


def c10b_rhs(ctx: PrimeContext) -> List[int]:
    return [-2 * ctx.p % ctx.m2] * ctx.h


def c10c_lhs(ctx: PrimeContext) -> int:
    return ctx.harm2[ctx.h]


def c10d_indices(ctx: PrimeContext) -> List[int]:
    return list(range(0, ctx.h + 1))


def c10d_lhs(ctx: PrimeContext) -> List[int]:
    return list(ctx.cb_mod_p)


def c10d_rhs(ctx: PrimeContext) -> List[int]:
    p, h, inv = ctx.p, ctx.h, ctx.inv1
    out, c, pw = [], 1, 1  # binom(h, j), (-4)^j
    for j in range(h + 1):
        out.append(c * pw % p)
        if j < h:
            c = c * (h - j) % p * inv[j + 1] % p
            pw = pw * -4 % p
    return out


def c10e_indices(ctx: PrimeContext) -> List[int]:
    return list(range(0, ctx.p))


def c10e_lhs(ctx: PrimeContext) -> List[int]:
    p, m3, inv = ctx.p, ctx.m3, ctx.inv3
    out, a, b = [1], 1, 1  # binom(p-1,k), binom(p+k,k)
    for k in range(1, p):
        a = a * (p - k) % m3 * inv[k] % m3
        b = b * (p + k) % m3 * inv[k] % m3
        out.append(a * b % m3)
    return out


def c10e_rhs(ctx: PrimeContext) -> List[int]:
    m3 = ctx.m3
    return [(-1) ** k * (1 - ctx.p2_times(ctx.harm2[k])) % m3 for k in range(ctx.p)]


def c10f_indices(ctx: PrimeContext) -> List[tuple]:
    p = ctx.p
    return [(k, j) for k in range(1, ctx.h + 1) for j in range(k, p - k + 1)]


def c10f_lhs(ctx: PrimeContext) -> List[int]:
    """binom(p-k+j, j) mod p^2 tracked as (unit mod p^2, valuation)."""
    p, m2 = ctx.p, ctx.m2
    inv = inverse_table(p - 1, p, m2)
    out = []
    # binom(p, k): one factor p enters at the first step and never leaves.
    u_pk = 1
    for k in range(1, ctx.h + 1):
        if k > 1:
            u_pk = u_pk * (p - k + 1) % m2 * inv[k] % m2
        unit, val = u_pk, 1  # binom(p-k+j, j) at j = k
        for j in range(k, p - k + 1):
            if j > k:
                unit = unit * (p - k + j) % m2 * inv[j] % m2
            out.append(unit * p**val % m2)
    return out


def c10f_rhs(ctx: PrimeContext) -> List[int]:
    p, m2, inv = ctx.p, ctx.m2, ctx.inv1
    out = []
    for k in range(1, ctx.h + 1):
        inv_c = 1  # 1/binom(j, k) mod p at j = k
        sign = 1 if (k - 1) % 2 == 0 else -1
        for j in range(k, p - k + 1):
            if j > k:
                inv_c = inv_c * (j - k) % p * inv[j] % p
            out.append(p * (sign * inv[k] * inv_c % p) % m2)
    return out


def c10g_indices(ctx: PrimeContext) -> List[tuple]:
    r = range(0, ctx.h + 1)
    return [(1, j) for j in r] + [(2, j) for j in r]


def c10g_lhs(ctx: PrimeContext) -> List[int]:
    p, h, H = ctx.p, ctx.h, ctx.harm1
    r = range(0, h + 1)
    return [H[p - 1 - 2 * j] for j in r] + [(H[h - j] - H[h]) % p for j in r]


def c10g_rhs(ctx: PrimeContext) -> List[int]:
    p, h, H = ctx.p, ctx.h, ctx.harm1
    r = range(0, h + 1)
    return [H[2 * j] for j in r] + [(2 * H[2 * j] - H[j]) % p for j in r]


def c10h_lhs(ctx: PrimeContext) -> int:
    return pow(-3, ctx.h, ctx.p)


def legendre_mod_p(ctx: PrimeContext) -> int:
    return ctx.leg % ctx.p


# -- assembled step and derived combinations ----------------------------------


def c11_rhs(ctx: PrimeContext) -> int:
    extra = ctx.bern - 3 * ctx.weighted_inv_sq_cb
    return (ctx.central_sum_p3 + ctx.p2_times(extra)) % ctx.m3


def c12a_lhs(ctx: PrimeContext) -> int:
    p, H, inv = ctx.p, ctx.harm1, ctx.inv1
    inv_m3 = pow(-3, -1, p)
    s, ipw = 0, 1
    for j in range(1, ctx.h + 1):
        ipw = ipw * inv_m3 % p
        s += (H[j] - 2 * H[2 * j]) * inv[j] * ipw
    return ctx.leg * s % p


def c12b_lhs(ctx: PrimeContext) -> int:
    p, H2, f = ctx.p, ctx.harm2, ctx.franel_p3
    return sum((-1) ** k * H2[k] * f[k] for k in range(p)) % p


def c12b_rhs(ctx: PrimeContext) -> int:
    return ctx.bern * ctx.inv1[2] % ctx.p


def c12c_lhs(ctx: PrimeContext) -> int:
    return (ctx.central_sum_p3 - ctx.p2_times(3 * ctx.weighted_inv_sq_cb)) % ctx.m3


def c12c_rhs(ctx: PrimeContext) -> int:
    return (ctx.leg - ctx.p2_times(5 * ctx.bern * pow(6, -1, ctx.p))) % ctx.m3
