import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from supercong.exact import bernoulli_numbers, bernoulli_poly, binom
from supercong.modring import PrimePowerModulus, is_prime, reduce_rat
from supercong.sequences import (
    FRANEL_METHODS,
    SequenceCache,
    apery,
    apery_mod_table,
    bernoulli_poly_mod,
    central_binom_padic,
    central_binoms_padic,
    franel,
    franel_mod_table,
)

PRIMES_100 = [q for q in range(5, 101) if is_prime(q)]
PRIMES_200 = [q for q in range(5, 201) if is_prime(q)]


def brute_apery(n):
    return sum(math.comb(n, k) ** 2 * math.comb(n + k, k) ** 2 for k in range(n + 1))


def test_apery_examples():
    assert apery(0) == 1
    assert apery(1) == 5
    assert apery(4) == 33001
    # terms of A_4: 1 + 400 + 8100 + 19600 + 4900
    assert [math.comb(4, k) ** 2 * math.comb(4 + k, k) ** 2 for k in range(5)] == [1, 400, 8100, 19600, 4900]


def test_apery_positive_and_increasing():
    vals = [apery(n) for n in range(202)]
    assert all(v > 0 for v in vals)
    assert all(a < b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("method", FRANEL_METHODS)
def test_franel_examples(method):
    assert franel(0, method) == 1
    assert franel(3, method) == 56
    assert franel(4, method) == 346


def test_franel_methods_agree():
    for n in range(151):
        assert len({franel(n, m) for m in FRANEL_METHODS}) == 1, n


def test_franel_unknown_method():
    with pytest.raises(ValueError):
        franel(3, "oeis")


def test_sequence_cache():
    c = SequenceCache("squares", lambda n: n * n)
    assert c[4] == 16
    assert c.upto(5) == [0, 1, 4, 9, 16, 25]
    with pytest.raises(IndexError):
        c[-1]


@pytest.mark.parametrize("p", [5, 7, 13, 97])
def test_mod_tables_match_exact(p):
    m4, m3 = p**4, p**3
    assert apery_mod_table(p - 1, p, m4) == [brute_apery(n) % m4 for n in range(p)]
    assert franel_mod_table(p - 1, p, m3) == [franel(n) % m3 for n in range(p)]


def test_central_binom_padic_examples():
    M = PrimePowerModulus(5, 2)
    b0 = central_binom_padic(0, M)
    assert (b0.unit, b0.val) == (1, 0)
    b3 = central_binom_padic(3, M)
    assert (b3.unit, b3.val) == (4, 1)
    b2 = central_binom_padic(2, M)
    assert (b2.unit, b2.val) == (6, 0)
    with pytest.raises(ValueError):
        central_binom_padic(5, M)


@pytest.mark.parametrize("p", PRIMES_200)
def test_central_binom_valuations(p):
    M = PrimePowerModulus(p, 3)
    table = central_binoms_padic(p - 1, M)
    for k, (unit, val) in enumerate(table):
        assert val == (0 if k <= (p - 1) // 2 else 1)
        assert unit * p**val % M.m == binom(2 * k, k) % M.m


def test_bernoulli_poly_mod_examples():
    assert bernoulli_poly_mod(5).value == 3
    x = Fraction(1, 3)
    b5 = x**5 - Fraction(5, 2) * x**4 + Fraction(5, 3) * x**3 - x / 6
    assert bernoulli_poly_mod(7).value == reduce_rat(b5, PrimePowerModulus(7, 1)).value == 6
    assert bernoulli_poly_mod(5) == reduce_rat(bernoulli_poly(3, x), PrimePowerModulus(5, 1))


@pytest.mark.parametrize("p", PRIMES_100)
def test_bernoulli_poly_mod_matches_exact_oracle(p):
    exact = reduce_rat(bernoulli_poly(p - 2, Fraction(1, 3), bernoulli_numbers(p - 2)), PrimePowerModulus(p, 1))
    assert bernoulli_poly_mod(p) == exact
    assert bernoulli_poly_mod(p, "defining-sum") == exact


def test_bernoulli_denominators_are_p_integral():
    B = bernoulli_numbers(98)
    for p in PRIMES_100:
        assert all(B[k].denominator % p for k in range(p - 1))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([q for q in range(101, 400) if is_prime(q)]))
def test_power_sum_route_matches_defining_sum(p):
    assert bernoulli_poly_mod(p, "power-sum") == bernoulli_poly_mod(p, "defining-sum")


def test_bernoulli_poly_mod_rejects_small_or_composite():
    for bad in (2, 3, 9):
        with pytest.raises(ValueError):
            bernoulli_poly_mod(bad)
    with pytest.raises(ValueError):
        bernoulli_poly_mod(7, "multimodular")


@pytest.mark.parametrize("p", [q for q in range(5, 501) if is_prime(q)])
def test_central_binomial_reduction_mod_p(p):
    h = (p - 1) // 2
    for j in range(h + 1):
        assert (binom(2 * j, j) - binom(h, j) * (-4) ** j) % p == 0
