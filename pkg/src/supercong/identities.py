"""Exact checks of the finite binomial/harmonic sum identities used in the proofs.

Each :class:`IdentityCase` evaluates both sides in exact rational arithmetic
over an explicit parameter range; a report records the lexicographically first
parameter tuple where the sides differ.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache, partial
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .exact import binom, harmonic_table
from .sequences import apery, franel

__all__ = [
    "IdentityCase",
    "IdentityReport",
    "IDENTITIES",
    "IDENTITY_IDS",
    "UnknownIdentity",
    "InvalidRange",
    "check_case",
    "check_identity",
    "check_all_identities",
    "mutated_i5",
    "clear_caches",
]

DEFAULT_N_MAX = 200
DEFAULT_BUDGET = 120


class UnknownIdentity(KeyError):
    pass


class InvalidRange(ValueError):
    pass


@dataclass(frozen=True)
class IdentityCase:
    id: str
    name: str
    params: Tuple[str, ...]
    lhs: Callable[..., Any]
    rhs: Callable[..., Any]
    formula: str
    n_min: int = 0
    # For two-parameter cases: yields every parameter tuple for a given bound.
    tuples: Optional[Callable[[int], Iterator[tuple]]] = None
    uses_budget: bool = False

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass
class IdentityReport:
    id: str
    range: str
    passed: bool
    checked: int
    first_failure: Optional[Dict[str, Any]] = None
    elapsed_ms: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "range": self.range,
            "pass": self.passed,
            "checked": self.checked,
            "first_failure": self.first_failure,
            "ms": self.elapsed_ms,
        }


# -- cached building blocks ---------------------------------------------------


@lru_cache(maxsize=None)
def _harmonics(n: int, r: int) -> Tuple[Fraction, ...]:
    return tuple(harmonic_table(n, r))


def _H(n: int, r: int = 1) -> Fraction:
    size = 64
    while size < n:
        size *= 2
    return _harmonics(size, r)[n]


@lru_cache(maxsize=None)
def _inv_k_cb(n: int) -> Fraction:
    """sum_{k=1}^n 1/(k binom(2k,k))"""
    if n == 0:
        return Fraction(0)
    return _inv_k_cb(n - 1) + Fraction(1, n * binom(2 * n, n))


@lru_cache(maxsize=None)
def _odd_neg3(k: int) -> Fraction:
    """sum_{j=1}^k 1/((2j-1)(-3)^j)"""
    if k == 0:
        return Fraction(0)
    return _odd_neg3(k - 1) + Fraction(1, (2 * k - 1) * (-3) ** k)


@lru_cache(maxsize=None)
def _cb_over_j(n: int, start: int = 1) -> Fraction:
    """sum_{j=start}^n binom(2j,j)/j"""
    if n < start:
        return Fraction(0)
    return _cb_over_j(n - 1, start) + Fraction(binom(2 * n, n), n)


@lru_cache(maxsize=None)
def _inv_sq_cb(k: int) -> Fraction:
    """sum_{j=1}^k 1/(j^2 binom(2j,j))"""
    if k == 0:
        return Fraction(0)
    return _inv_sq_cb(k - 1) + Fraction(1, k * k * binom(2 * k, k))


@lru_cache(maxsize=None)
def _apery_alt(n: int) -> int:
    """sum_{k=0}^n (-1)^k (2k+1) A_k"""
    return sum((-1) ** k * (2 * k + 1) * apery(k) for k in range(n + 1))


def _lcm_upto(n: int) -> int:
    return math.lcm(*range(1, n + 1)) if n >= 1 else 1


# -- recipes ------------------------------------------------------------------


def _i1_lhs(n):
    cube = sum(binom(n, k) ** 3 for k in range(n + 1))
    return (cube, cube)


def _i1_rhs(n):
    a = sum(binom(n, k) * binom(k, n - k) * binom(2 * k, k) for k in range(n + 1))
    b = sum(binom(n, k) ** 2 * binom(2 * k, n) for k in range(n + 1))
    return (a, b)


def _i2_lhs(j):
    return sum(binom(k + j, j) * binom(j, k) * (-1) ** (k + j) for k in range(j + 1))


def _one(*_):
    return 1


def _i3_lhs(n):
    return sum((Fraction(binom(n, j) * (-4) ** j, j) * _inv_k_cb(j) for j in range(1, n + 1)), Fraction(0))


def _i3_rhs(n):
    return -2 * sum((Fraction((-3) ** k, k) * _odd_neg3(k) for k in range(1, n + 1)), Fraction(0))


def _i4_lhs(n):
    return sum((Fraction((-1) ** j * binom(n, j), j) for j in range(1, n + 1)), Fraction(0))


def _i4_rhs(n):
    return -_H(n)


def _i5_lhs(n):
    return sum((Fraction(binom(n + j - 1, j), j) for j in range(1, n + 1)), Fraction(0))


def _i5_rhs(n, c=Fraction(3, 2)):
    return Fraction(1 + 3 * n, n) - Fraction(binom(2 * n, n), n) - _H(n) + c * _cb_over_j(n, 2)


def _i6_lhs(n, k):
    return sum((Fraction(binom(n + k, j), binom(n + k - 1, n - j)) for j in range(1, n + 1)), Fraction(0))


def _i6_rhs(n, k):
    c = binom(n + k - 1, n - 1)
    tail = sum((Fraction(binom(k + j - 1, k), k + j) for j in range(2, n + 1)), Fraction(0))
    return (-Fraction(n + k, k + 1) - Fraction(n, k * c) + Fraction((n + k) ** 2 * c, n * k)
            - (n + k) * tail)


def _i6_tuples(budget):
    for n in range(1, budget + 1):
        for k in range(1, (budget - n) // 2 + 1):
            yield (n, k)


def _i7_lhs(n, a):
    L = _lcm_upto(n)
    return Fraction(sum((-1) ** (j - a) * binom(n, j) * (L // j) for j in range(a, n + 1)), L)


def _i7_rhs(n, a):
    L = _lcm_upto(n)
    return Fraction(sum(binom(j - 1, a - 1) * (L // j) for j in range(a, n + 1)), L)


def _i7_tuples(budget):
    for n in range(1, budget + 1):
        for a in range(1, n + 1):
            yield (n, a)


def _i8_lhs(k):
    return sum((binom(k, j - k) * binom(j, k) * (-1) ** j * _H(j, 2) for j in range(k, 2 * k + 1)), Fraction(0))


def _i8_rhs(k):
    return 3 * _inv_sq_cb(k)


def _i9_lhs(n):
    return sum(binom(n, k) * binom(n + 1 + k, k) * franel(k) for k in range(n + 1))


def _i9_rhs(n):
    return Fraction((-1) ** n * _apery_alt(n), n + 1)


def _i10_lhs(m):
    s = _apery_alt(m - 1)
    if s % m:
        raise ArithmeticError(f"alternating Apery sum {s} is not divisible by m={m}")
    return s // m


@lru_cache(maxsize=None)
def _legendre_weight(k: int, j: int) -> int:
    return binom(2 * k, k) * binom(k, j) * binom(k + j, j)


def _i10_rhs(m, signed=True):
    # The sign is +1 at odd m (in particular at every odd prime); without it
    # the identity fails at every even m.
    sign = (-1) ** (m - 1) if signed else 1
    prod = [binom(m - 1, t) * binom(m + t, t) for t in range(m)]
    return sign * sum(
        _legendre_weight(k, j) * prod[k + j]
        for k in range(m)
        for j in range(min(k, m - 1 - k) + 1)
    )


def _i11_lhs(m, t):
    return binom(m - 1, t) * binom(m + t, t)


@lru_cache(maxsize=None)
def _i11_products(m: int) -> Tuple[Fraction, ...]:
    out, acc = [Fraction(1)], Fraction(1)
    for i in range(1, m):
        acc *= Fraction(m * m - i * i, i * i)
        out.append(acc)
    return tuple(out)


def _i11_rhs(m, t):
    return _i11_products(m)[t]


def _i11_tuples(n_max):
    for m in range(1, n_max + 1):
        for t in range(m):
            yield (m, t)


_CATALOG = [
    IdentityCase("I1", "strehl", ("n",), _i1_lhs, _i1_rhs,
                 "sum C(n,k)^3 = sum C(n,k)C(k,n-k)C(2k,k) = sum C(n,k)^2 C(2k,n)"),
    IdentityCase("I2", "chu-vandermonde-eval", ("j",), _i2_lhs, _one,
                 "sum_{k=0}^j C(k+j,j)C(j,k)(-1)^(k+j) = 1"),
    IdentityCase("I3", "sigma-neg4", ("n",), _i3_lhs, _i3_rhs,
                 "sum_{j=1}^n C(n,j)(-4)^j/j sum_{k=1}^j 1/(k C(2k,k))"
                 " = -2 sum_{k=1}^n (-3)^k/k sum_{j=1}^k 1/((2j-1)(-3)^j)"),
    IdentityCase("I4", "sigma-harmonic", ("n",), _i4_lhs, _i4_rhs,
                 "sum_{j=1}^n (-1)^j C(n,j)/j = -H_n"),
    IdentityCase("I5", "sigma-rising", ("n",), _i5_lhs, _i5_rhs,
                 "sum_{j=1}^n C(n+j-1,j)/j = (1+3n)/n - C(2n,n)/n - H_n + (3/2) sum_{j=2}^n C(2j,j)/j",
                 n_min=1),
    IdentityCase("I6", "sigma-ratio", ("n", "k"), _i6_lhs, _i6_rhs,
                 "sum_{j=1}^n C(n+k,j)/C(n+k-1,n-j) = -(n+k)/(k+1) - n/(k C(n+k-1,n-1))"
                 " + (n+k)^2 C(n+k-1,n-1)/(nk) - (n+k) sum_{j=2}^n C(k+j-1,k)/(k+j)",
                 n_min=1, tuples=_i6_tuples, uses_budget=True),
    IdentityCase("I7", "gould-437", ("n", "a"), _i7_lhs, _i7_rhs,
                 "sum_{j=a}^n (-1)^(j-a) C(n,j)/j = sum_{j=a}^n C(j-1,a-1)/j",
                 n_min=1, tuples=_i7_tuples, uses_budget=True),
    IdentityCase("I8", "liu-41", ("k",), _i8_lhs, _i8_rhs,
                 "sum_{j=k}^{2k} C(k,j-k)C(j,k)(-1)^j H_j^(2) = 3 sum_{j=1}^k 1/(j^2 C(2j,j))"),
    IdentityCase("I9", "gz-transform", ("n",), _i9_lhs, _i9_rhs,
                 "sum_k C(n,k)C(n+1+k,k) f_k = (-1)^n/(n+1) sum_k (-1)^k (2k+1) A_k"),
    IdentityCase("I10", "gz-thm21", ("m",), _i10_lhs, _i10_rhs,
                 "(1/m) sum_{k<m} (-1)^k (2k+1) A_k"
                 " = (-1)^(m-1) sum_{k<m} C(2k,k) sum_{j<=k} C(k,j)C(k+j,j)C(m-1,k+j)C(m+k+j,k+j)",
                 n_min=1),
    IdentityCase("I11", "product-form", ("m", "t"), _i11_lhs, _i11_rhs,
                 "C(m-1,t) C(m+t,t) = prod_{i=1}^t (m^2-i^2)/i^2,  0 <= t < m",
                 n_min=1, tuples=_i11_tuples),
]

IDENTITIES: Dict[str, IdentityCase] = {c.id: c for c in _CATALOG}
IDENTITY_IDS = tuple(IDENTITIES)
_BY_NAME = {c.name: c for c in _CATALOG}


def clear_caches() -> None:
    """Drop memoized building blocks (for cold-start timing)."""
    for fn in (_harmonics, _inv_k_cb, _odd_neg3, _cb_over_j, _inv_sq_cb, _apery_alt,
               _legendre_weight, _i11_products):
        fn.cache_clear()


def _lookup(identity: str) -> IdentityCase:
    case = IDENTITIES.get(identity) or _BY_NAME.get(identity)
    if case is None:
        raise UnknownIdentity(identity)
    return case


def _show(v) -> str:
    if isinstance(v, tuple):
        return "(" + ", ".join(str(x) for x in v) + ")"
    return str(v)


def check_case(case: IdentityCase, n_max: int = DEFAULT_N_MAX, budget: int = DEFAULT_BUDGET,
               n_min: int | None = None) -> IdentityReport:
    """Evaluate both sides of ``case`` at every parameter tuple in range."""
    start = time.perf_counter()
    if case.tuples is not None:
        bound = budget if case.uses_budget else n_max
        if bound < 1:
            raise InvalidRange(f"{case.id}: bound must be >= 1, got {bound}")
        points = list(case.tuples(bound))
        desc = f"{'budget' if case.uses_budget else 'n_max'}={bound}"
    else:
        lo = case.n_min if n_min is None else n_min
        if lo < case.n_min:
            raise InvalidRange(f"{case.id}: {case.params[0]} must be >= {case.n_min}, got {lo}")
        if n_max < lo:
            raise InvalidRange(f"{case.id}: empty range {lo}..{n_max}")
        points = [(n,) for n in range(lo, n_max + 1)]
        desc = f"{case.params[0]}={lo}..{n_max}"

    failure = None
    for args in points:
        try:
            lhs, rhs = case.lhs(*args), case.rhs(*args)
            ok = lhs == rhs
        except ArithmeticError as exc:
            lhs, rhs, ok = f"error: {exc}", None, False
        if not ok:
            failure = {"params": dict(zip(case.params, args)), "lhs": _show(lhs), "rhs": _show(rhs)}
            break
    return IdentityReport(case.id, desc, failure is None, len(points), failure,
                          round((time.perf_counter() - start) * 1000, 3))


def check_identity(identity: str, n_max: int = DEFAULT_N_MAX, budget: int = DEFAULT_BUDGET,
                   n_min: int | None = None) -> IdentityReport:
    return check_case(_lookup(identity), n_max=n_max, budget=budget, n_min=n_min)


def check_all_identities(n_max: int = DEFAULT_N_MAX, budget: int = DEFAULT_BUDGET,
                         only: Sequence[str] | None = None) -> List[IdentityReport]:
    if n_max < 1:
        raise InvalidRange("n_max must be >= 1")
    cases = [_lookup(i) for i in only] if only else list(_CATALOG)
    rank = {cid: i for i, cid in enumerate(IDENTITY_IDS)}
    cases.sort(key=lambda c: rank.get(c.id, len(rank)))
    return [check_case(c, n_max=n_max, budget=budget) for c in cases]


def mutated_i5(constant: Fraction) -> IdentityCase:
    """I5 with its 3/2 constant replaced; used as a mutation control."""
    return replace(IDENTITIES["I5"], id="I5*", rhs=partial(_i5_rhs, c=constant))
