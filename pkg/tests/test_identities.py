from dataclasses import replace
from fractions import Fraction
from functools import partial

import pytest

from supercong.identities import (
    IDENTITIES,
    IDENTITY_IDS,
    InvalidRange,
    UnknownIdentity,
    _i10_rhs,
    check_all_identities,
    check_case,
    check_identity,
    mutated_i5,
)


def test_catalog_shape():
    assert IDENTITY_IDS == tuple(f"I{i}" for i in range(1, 12))
    assert {IDENTITIES[i].arity for i in ("I6", "I7", "I11")} == {2}


def test_chu_vandermonde_at_five():
    r = check_identity("I2", n_max=5, n_min=5)
    assert r.passed and r.checked == 1
    assert IDENTITIES["I2"].lhs(5) == 1


def test_strehl_at_zero():
    r = check_identity("I1", n_max=0)
    assert r.passed
    assert IDENTITIES["I1"].lhs(0) == IDENTITIES["I1"].rhs(0) == (1, 1)


def test_gz_thm21_at_five():
    # sum_{k<5} (-1)^k (2k+1) A_k = 287245 = 5 * 57449
    case = IDENTITIES["I10"]
    assert case.lhs(5) == case.rhs(5) == 57449
    assert check_identity("I10", n_max=5, n_min=5).passed


def test_gz_thm21_needs_sign_at_even_m():
    # Taken literally without the (-1)^(m-1) factor, the identity breaks at m = 2.
    case = IDENTITIES["I10"]
    assert case.lhs(2) == -7
    assert _i10_rhs(2, signed=False) == 7
    unsigned = replace(case, rhs=partial(_i10_rhs, signed=False))
    r = check_case(unsigned, n_max=10)
    assert not r.passed and r.first_failure["params"] == {"m": 2}
    assert all(case.lhs(m) == _i10_rhs(m, signed=False) for m in range(1, 60, 2))


def test_names_are_accepted():
    assert check_identity("sigma-harmonic", n_max=20).id == "I4"


def test_small_ranges():
    reports = check_all_identities(n_max=1, budget=4)
    assert [r.id for r in reports] == list(IDENTITY_IDS)
    assert all(r.passed for r in reports)


def test_moderate_ranges():
    reports = check_all_identities(n_max=50, budget=60)
    assert len(reports) == 11
    assert all(r.passed for r in reports), [r.to_dict() for r in reports if not r.passed]


def test_i5_mutation_first_failure():
    r = check_case(mutated_i5(Fraction(2, 3)), n_max=10)
    assert not r.passed
    assert r.first_failure["params"] == {"n": 2}
    # n = 2: lhs = 2 + 3/2 = 7/2; rhs = 7/2 - 3 - 3/2 + (2/3) * 3 = 1
    assert r.first_failure["lhs"] == "7/2"
    assert r.first_failure["rhs"] == "1"


def test_reports_are_deterministic():
    a = check_case(mutated_i5(Fraction(1, 2)), n_max=15).first_failure
    b = check_case(mutated_i5(Fraction(1, 2)), n_max=15).first_failure
    assert a == b


def test_errors():
    with pytest.raises(UnknownIdentity):
        check_identity("I12")
    with pytest.raises(InvalidRange):
        check_identity("I5", n_max=5, n_min=0)
    with pytest.raises(InvalidRange):
        check_identity("I6", budget=0)
    with pytest.raises(InvalidRange):
        check_all_identities(n_max=0)


def test_two_parameter_ranges():
    r6 = check_identity("I6", budget=10)
    assert r6.checked == sum(1 for n in range(1, 11) for k in range(1, 11) if n + 2 * k <= 10)
    r7 = check_identity("I7", budget=10)
    assert r7.checked == 55
