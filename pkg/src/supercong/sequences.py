"""Apery numbers, Franel numbers, central binomials and B_{p-2}(1/3) mod p.

Exact generators back the oracle path; the ``*_mod`` helpers run the three-term
recurrences in Z/p^e and never materialize the (huge) exact values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Dict, List

from .exact import bernoulli_numbers, bernoulli_poly, binom
from .modring import PAdicUnit, PrimePowerModulus, Residue, inverse_table, is_prime, reduce_rat

__all__ = [
    "SequenceCache",
    "apery",
    "franel",
    "FRANEL_METHODS",
    "apery_mod_table",
    "franel_mod_table",
    "central_binom_padic",
    "central_binoms_padic",
    "bernoulli_poly_mod",
]


def _apery_term_sum(n: int) -> int:
    return sum(math.comb(n, k) ** 2 * math.comb(n + k, k) ** 2 for k in range(n + 1))


def _franel_cube(n: int) -> int:
    return sum(math.comb(n, k) ** 3 for k in range(n + 1))


def _franel_strehl_a(n: int) -> int:
    return sum(binom(n, k) * binom(k, n - k) * binom(2 * k, k) for k in range(n + 1))


def _franel_strehl_b(n: int) -> int:
    return sum(binom(n, k) ** 2 * binom(2 * k, n) for k in range(n + 1))


class SequenceCache:
    """Values of one sequence indexed from 0, extended on demand."""

    def __init__(self, name: str, term: Callable[[int], int] | None = None):
        self.name = name
        self._term = term
        self.values: List[int] = []

    def _extend(self, n: int) -> None:
        while len(self.values) <= n:
            self.values.append(self._term(len(self.values)))

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError("sequence index must be >= 0")
        self._extend(n)
        return self.values[n]

    def upto(self, n: int) -> List[int]:
        self._extend(n)
        return self.values[: n + 1]


class _FranelRecurrence(SequenceCache):
    # (n+1)^2 f_{n+1} = (7n^2+7n+2) f_n + 8n^2 f_{n-1}
    def __init__(self):
        super().__init__("franel-recurrence")
        self.values = [1, 2]

    def _extend(self, n: int) -> None:
        f = self.values
        while len(f) <= n:
            m = len(f) - 1
            num = (7 * m * m + 7 * m + 2) * f[m] + 8 * m * m * f[m - 1]
            q, r = divmod(num, (m + 1) ** 2)
            if r:
                raise ArithmeticError(f"Franel recurrence not integral at n={m + 1}")
            f.append(q)


_APERY = SequenceCache("apery", _apery_term_sum)
_FRANEL: Dict[str, SequenceCache] = {
    "cube-sum": SequenceCache("franel-cube-sum", _franel_cube),
    "strehl-a": SequenceCache("franel-strehl-a", _franel_strehl_a),
    "strehl-b": SequenceCache("franel-strehl-b", _franel_strehl_b),
    "recurrence": _FranelRecurrence(),
}
FRANEL_METHODS = tuple(_FRANEL)


def apery(n: int) -> int:
    """A_n = sum_k binom(n,k)^2 binom(n+k,k)^2."""
    return _APERY[n]


def franel(n: int, method: str = "cube-sum") -> int:
    try:
        cache = _FRANEL[method]
    except KeyError:
        raise ValueError(f"unknown Franel method {method!r}; choose from {FRANEL_METHODS}") from None
    return cache[n]


def apery_mod_table(n: int, p: int, m: int) -> List[int]:
    """A_0..A_n mod m (a power of p) via the Apery recurrence; needs n < p.

    (k+1)^3 A_{k+1} = (2k+1)(17k^2+17k+5) A_k - k^3 A_{k-1}
    """
    inv = inverse_table(n, p, m) if n >= 1 else [0]
    out = [1 % m]
    if n >= 1:
        out.append(5 % m)
    for k in range(1, n):
        num = (2 * k + 1) * (17 * k * k + 17 * k + 5) * out[k] - k**3 * out[k - 1]
        i = inv[k + 1]
        out.append(num * i * i * i % m)
    return out


def franel_mod_table(n: int, p: int, m: int) -> List[int]:
    """f_0..f_n mod m (a power of p) via the Franel recurrence; needs n < p."""
    inv = inverse_table(n, p, m) if n >= 1 else [0]
    out = [1 % m]
    if n >= 1:
        out.append(2 % m)
    for k in range(1, n):
        num = (7 * k * k + 7 * k + 2) * out[k] + 8 * k * k * out[k - 1]
        i = inv[k + 1]
        out.append(num * i * i % m)
    return out


def central_binoms_padic(upto: int, M: PrimePowerModulus) -> List[tuple]:
    """[(unit, val)] for binom(2k, k), 0 <= k <= upto < p, unit mod p^e.

    Walks binom(2k,k) = binom(2k-2,k-1) * 2k(2k-1) / k^2, stripping p from
    each small factor before it enters the unit.
    """
    p, m = M.p, M.m
    if upto >= p:
        raise ValueError("central binomials are tabulated only below p")
    inv = inverse_table(upto, p, m) if upto >= 1 else [0]
    unit, val = 1, 0
    out = [(1, 0)]
    for k in range(1, upto + 1):
        for f in (2 * k, 2 * k - 1):
            while f % p == 0:
                f //= p
                val += 1
            unit = unit * f % m
        unit = unit * inv[k] * inv[k] % m
        out.append((unit, val))
    return out


def central_binom_padic(k: int, M: PrimePowerModulus) -> PAdicUnit:
    """binom(2k, k) as a p-adic (unit, valuation) pair, 0 <= k <= p-1."""
    if not 0 <= k <= M.p - 1:
        raise ValueError(f"k must lie in 0..{M.p - 1}")
    unit, val = central_binoms_padic(k, M)[k]
    return PAdicUnit(unit, val, M)


def bernoulli_poly_mod(p: int, method: str = "power-sum") -> Residue:
    """B_{p-2}(1/3) reduced mod p.

    ``"defining-sum"`` reduces sum_k binom(p-2,k) B_k (1/3)^(p-2-k) term by
    term, with B_k mod p from the Bernoulli recurrence (O(p^2)).

    ``"power-sum"`` (O(p)): the coefficients of B_{p-2}(x) are p-integral, so
    B_{p-2}(1/3) = B_{p-2}(r) mod p for r = 3^-1 mod p, and the difference
    equation gives B_{p-2}(r) = B_{p-2} + (p-2) sum_{j<r} j^(p-3). With
    B_{p-2} = 0 this is -2 sum_{j=1}^{r-1} j^-2 mod p.
    """
    if not is_prime(p) or p <= 3:
        raise ValueError(f"need a prime p > 3, got {p}")
    M = PrimePowerModulus(p, 1)
    n = p - 2
    if method == "power-sum":
        r = pow(3, -1, p)
        inv = inverse_table(max(r - 1, 1), p, p)
        return M(-2 * sum(inv[j] * inv[j] for j in range(1, r)))
    if method == "defining-sum":
        inv = inverse_table(p - 1, p, p)
        B = [1]
        row = [1, 1]  # binom(m+1, j) mod p, j = 0..m+1, rebuilt per m
        for mm in range(1, n + 1):
            row = [1] + [(row[j - 1] + row[j]) % p for j in range(1, len(row))] + [1]
            s = sum(row[j] * B[j] for j in range(mm))
            B.append(-s * inv[mm + 1] % p)
        third = pow(3, -1, p)
        acc, c = 0, 1  # c = binom(n, k) mod p
        for k in range(n + 1):
            acc += c * B[k] * pow(third, n - k, p)
            c = c * (n - k) * inv[k + 1] % p if k < n else c
        return M(acc)
    if method == "exact":
        return reduce_rat(bernoulli_poly(n, Fraction(1, 3), bernoulli_numbers(n)), M)
    raise ValueError(f"unknown method {method!r}")
