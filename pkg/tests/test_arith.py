import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobpow.arith import (
    INFINITY,
    ResidueClass,
    base_p_digits,
    carry_free,
    is_prime,
    lpr,
    lpr_vec,
    mult_order,
    multinomial_mod_p,
    smallest_admissible_prime,
)
from frobpow.errors import ValidationError

PRIMES = [2, 3, 5, 7, 11, 13]


def multinomial_by_factorials(s):
    """Independent oracle: |s|! / prod(s_i!) with exact big integers."""
    out = math.factorial(sum(s))
    for c in s:
        out //= math.factorial(c)
    return out


def test_lpr_examples():
    assert lpr(10, 7) == 3
    assert lpr(14, 7) == 7  # multiples of d give d, never 0
    assert lpr(-1, 7) == 6
    assert lpr(0, 5) == 5


def test_lpr_vec_examples():
    assert lpr_vec((6, 12, 6), 7) == (6, 5, 6)
    assert lpr_vec((7, 14), 7) == (7, 7)
    assert lpr_vec((20, 15), 12) == (8, 3)


def test_lpr_rejects_bad_modulus():
    with pytest.raises(ValueError):
        lpr(3, 0)


@settings(deadline=None)
@given(st.integers(-(10**12), 10**12), st.integers(1, 10**6))
def test_lpr_is_a_least_positive_residue(m, d):
    r = lpr(m, d)
    assert 1 <= r <= d
    assert (r - m) % d == 0


def test_base_p_digits_examples():
    assert base_p_digits(0, 5) == []
    assert base_p_digits(13, 5) == [3, 2]
    assert base_p_digits(25, 5) == [0, 0, 1]


@given(st.integers(0, 10**15), st.sampled_from(PRIMES))
def test_base_p_digits_round_trip(m, p):
    digits = base_p_digits(m, p)
    assert all(0 <= c < p for c in digits)
    assert sum(c * p**i for i, c in enumerate(digits)) == m
    if digits:
        assert digits[-1] != 0


def test_carry_free_examples():
    assert carry_free((1, 1), 2) is False  # binom(2,1) = 2 = 0 mod 2
    assert carry_free((1, 1), 3) is True
    assert carry_free((1, 2), 3) is False  # binom(3,1) = 3


@settings(max_examples=300)
@given(
    st.lists(st.integers(0, 70), min_size=1, max_size=4).filter(lambda s: sum(s) <= 200),
    st.sampled_from(PRIMES),
)
def test_carry_free_matches_factorial_multinomial(s, p):
    s = tuple(s)
    assert carry_free(s, p) == (multinomial_by_factorials(s) % p != 0)


@settings(max_examples=200)
@given(
    st.lists(st.integers(0, 40), min_size=1, max_size=4),
    st.sampled_from(PRIMES),
)
def test_multinomial_mod_p_matches_factorials(s, p):
    s = tuple(s)
    assert multinomial_mod_p(s, p) == multinomial_by_factorials(s) % p


def test_mult_order_examples():
    assert mult_order(ResidueClass(1, 7)) == 1
    assert mult_order(ResidueClass(6, 7)) == 2  # 36 = 35 + 1
    # direct power iteration as the oracle
    e, x = 1, 5
    while x % 7 != 1:
        x, e = x * 5, e + 1
    assert mult_order(ResidueClass(5, 7)) == e == 6


@given(st.integers(2, 60), st.integers(1, 59), st.integers(1, 40), st.integers(0, 12))
def test_lpr_of_powers_is_periodic(d, rho, k, e):
    if math.gcd(rho, d) != 1 or rho > d:
        return
    rc = ResidueClass(rho, d)
    period = mult_order(rc)
    assert lpr(k * rho**e, d) == lpr(k * rho ** (e + period), d)


def test_residue_class_validation():
    with pytest.raises(ValueError):
        ResidueClass(2, 4)  # gcd > 1
    with pytest.raises(ValueError):
        ResidueClass(0, 5)
    with pytest.raises(ValueError):
        ResidueClass(8, 7)
    assert str(ResidueClass(5, 12)) == "5%12"
    assert ResidueClass(5, 12).contains(17)
    assert not ResidueClass(5, 12).contains(13)


def test_infinity_ordering():
    assert INFINITY > 10**18
    assert not INFINITY < 5
    assert INFINITY == INFINITY
    assert 3 < INFINITY and 3 <= INFINITY


def test_is_prime_small():
    assert [p for p in range(2, 30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1)
    assert not is_prime(-7)


def test_smallest_admissible_prime():
    assert smallest_admissible_prime(ResidueClass(6, 7), 19) == 41
    assert smallest_admissible_prime(ResidueClass(1, 7), 2) == 29
    assert smallest_admissible_prime(ResidueClass(1, 6), 11) == 13
