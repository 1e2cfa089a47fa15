from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from supercong.modring import (
    DenominatorDivisibleByP,
    NegativeValuationAtReduction,
    NotDivisibleByP,
    NotInvertible,
    PAdicUnit,
    PrimePowerModulus,
    Residue,
    divide_by_p_exact,
    inv_mod,
    inverse_table,
    is_prime,
    legendre,
    padic_div,
    padic_mul,
    reduce_rat,
)

SMALL_PRIMES = [q for q in range(5, 200) if all(q % d for d in range(2, q))]


def test_is_prime_against_trial_division():
    for n in range(-3, 3000):
        expected = n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))
        assert is_prime(n) == expected


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**61 - 1))
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


@pytest.mark.parametrize("p,e", [(4, 1), (9, 2), (2, 1), (3, 3), (5, 0), (5, 5)])
def test_modulus_rejects_bad_parameters(p, e):
    with pytest.raises(ValueError):
        PrimePowerModulus(p, e)


def test_reduce_rat_examples():
    assert reduce_rat(Fraction(1, 27), PrimePowerModulus(5, 1)).value == 3
    assert reduce_rat(Fraction(0), PrimePowerModulus(7, 3)).value == 0
    with pytest.raises(DenominatorDivisibleByP):
        reduce_rat(Fraction(1, 5), PrimePowerModulus(5, 2))


@given(st.sampled_from(SMALL_PRIMES), st.integers(1, 4), st.integers(-10**9, 10**9), st.integers(1, 10**6))
def test_reduce_rat_inverts_denominator(p, e, num, den):
    x = Fraction(num, den)
    M = PrimePowerModulus(p, e)
    if x.denominator % p == 0:
        return
    r = reduce_rat(x, M)
    assert (r.value * x.denominator - x.numerator) % M.m == 0


def test_inv_mod_examples():
    M = PrimePowerModulus(5, 3)
    assert inv_mod(M(1)).value == 1
    assert inv_mod(M(6)).value == 21
    with pytest.raises(NotInvertible):
        inv_mod(M(5))


def test_legendre_examples():
    assert legendre(3, 3) == 0
    assert legendre(7, 3) == 1
    assert legendre(5, 3) == -1


def test_legendre_matches_squares_exhaustively():
    for p in [3] + SMALL_PRIMES:
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert legendre(a, p) == (1 if a in squares else -1)
            assert legendre(a, p) % p == pow(a, (p - 1) // 2, p)


@given(st.sampled_from(SMALL_PRIMES), st.integers(-500, 500), st.integers(-500, 500))
def test_legendre_multiplicative(p, a, b):
    assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_divide_by_p_exact_examples():
    M4 = PrimePowerModulus(5, 4)
    assert divide_by_p_exact(M4(0)) == PrimePowerModulus(5, 3)(0)
    assert divide_by_p_exact(M4(370)).value == 74
    assert divide_by_p_exact(M4(287245)).value == 74
    with pytest.raises(NotDivisibleByP):
        divide_by_p_exact(M4(371))


@given(st.sampled_from(SMALL_PRIMES[:10]), st.integers(1, 3), st.data())
def test_divide_by_p_round_trip(p, e, data):
    x = data.draw(st.integers(0, p**e - 1))
    hi = PrimePowerModulus(p, e + 1)
    assert divide_by_p_exact(hi(p * x)).value == x


def test_residue_arithmetic():
    M = PrimePowerModulus(7, 2)
    a, b = M(40), M(30)
    assert (a + b).value == 21
    assert (a - b).value == 10
    assert (a * b).value == 1200 % 49
    assert (-a).value == 9
    assert (3 - a).value == (3 - 40) % 49
    assert M(48).reduce_to(1).value == 6
    with pytest.raises(ValueError):
        Residue(49, M)
    with pytest.raises(ValueError):
        a + PrimePowerModulus(7, 3)(1)


def test_padic_examples():
    M = PrimePowerModulus(5, 2)
    one = PAdicUnit(1, 0, M)
    assert padic_mul(one, one) == one
    c = PAdicUnit.from_int(252, M)
    assert (c.unit, c.val) == (2, 0)
    shifted = padic_mul(c, PAdicUnit(1, 1, M))
    assert (shifted.unit, shifted.val) == (2, 1)
    assert shifted.to_residue().value == 1260 % 25
    twenty = PAdicUnit.from_int(20, M)
    assert (twenty.unit, twenty.val) == (4, 1)


def test_padic_division_and_negative_valuation():
    M = PrimePowerModulus(7, 3)
    a = PAdicUnit.from_int(49 * 3, M)
    b = PAdicUnit.from_int(7 * 5, M)
    q = padic_div(a, b)
    assert q.val == 1
    assert q.to_residue().value == reduce_rat(Fraction(49 * 3, 35), M).value
    with pytest.raises(NegativeValuationAtReduction):
        padic_div(b, a).to_residue()


@given(st.sampled_from(SMALL_PRIMES[:12]), st.integers(1, 4), st.integers(1, 10**12))
def test_padic_round_trip(p, e, n):
    M = PrimePowerModulus(p, e)
    x = PAdicUnit.from_int(n, M)
    assert x.unit % p != 0
    assert x.to_residue().value == n % M.m


@given(st.sampled_from(SMALL_PRIMES[:12]), st.integers(1, 10**9), st.integers(1, 10**9))
def test_padic_mul_matches_integer_product(p, a, b):
    M = PrimePowerModulus(p, 3)
    prod = padic_mul(PAdicUnit.from_int(a, M), PAdicUnit.from_int(b, M))
    assert prod.to_residue().value == a * b % M.m


@pytest.mark.parametrize("p", [5, 7, 101, 9973])
@pytest.mark.parametrize("e", [1, 3, 4])
def test_inverse_table(p, e):
    m = p**e
    inv = inverse_table(p - 1, p, m)
    assert all(i * inv[i] % m == 1 for i in range(1, p))
