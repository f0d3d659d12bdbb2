import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobpow.errors import ResourceLimitError, ValidationError
from frobpow.ideal import (
    MonomialIdeal,
    diag,
    frob_power_int,
    minimalize,
    parse_ideal,
    power_of_m,
)
from frobpow.oracle import InvariantQuery, crit_truncations, mu, mu_diag_fast, nu


def comps(k, n):
    for cuts in itertools.combinations(range(1, k), n - 1):
        yield tuple(b - a for a, b in zip((0,) + cuts, cuts + (k,)))


def small_m_primary(seed_gens, n=2, cap=4):
    """An m-primary ideal built from random gens plus pure powers."""
    gens = list(seed_gens) + [
        tuple(cap if i == j else 0 for i in range(n)) for j in range(n)
    ]
    return minimalize(gens, n=n)


def test_mu_m7_example():
    a = power_of_m(7, 3)
    assert mu(InvariantQuery(a, diag((1, 1, 1)), 13, 13)) == 5


def test_mu_of_maximal_ideal_against_itself():
    m = power_of_m(1, 2)
    for p, e in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2)):
        q = p**e
        assert mu(InvariantQuery(m, m, q, p)) == q - 1


def test_mu_is_min_of_nu_and_p_minus_one_when_nu_large():
    # a = m^2 inside b = m: nu(a, b, p) = p - 1, so mu caps at p - 1
    a, b = power_of_m(2, 2), power_of_m(1, 2)
    for p in (3, 5):
        assert nu(InvariantQuery(a, b, p, p)) == p - 1
        assert mu(InvariantQuery(a, b, p, p)) == p - 1


def test_nu_examples():
    a = power_of_m(7, 3)
    assert nu(InvariantQuery(a, diag((1, 1, 1)), 13, 13)) == 5  # floor((39-3)/7)
    x = parse_ideal("x1", n=1)
    for q, p in ((4, 2), (9, 3)):
        assert nu(InvariantQuery(x, x, q, p)) == q - 1
    # closed form: nu = (kq - lpr(kq, d))/d + delta
    from frobpow.arith import lpr

    for u in comps(5, 3):
        got = nu(InvariantQuery(a, diag(u), 13, 13))
        res = lpr(5 * 13, 7)
        assert got == (5 * 13 - res) // 7 + (0 if res >= 3 else -1)


def test_crit_truncations_m7():
    a = power_of_m(7, 3)
    # k = 3 stays in the nu = mu branch at p = 13: mu(169) = (3*169 - 3)/7
    assert crit_truncations(a, diag((1, 1, 1)), 13, 2) == [
        Fraction(5, 13),
        Fraction(72, 169),
    ]


def test_crit_truncations_constant_for_equal_ideals():
    m = power_of_m(1, 2)
    assert crit_truncations(m, m, 3, 3) == [
        Fraction(q - 1, q) for q in (3, 9, 27)
    ]


def test_crit_truncations_first_entry_when_not_contained_in_bracket():
    a = parse_ideal("x1^2, x2^3")
    b = diag((3, 3))
    p = 5
    # precondition of the claim: a escapes b^[p]
    assert not b.bracket_power(p).contains(a)
    assert crit_truncations(a, b, p, 1)[0] >= Fraction(1, p)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=3),
    st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=2),
    st.sampled_from([3, 5]),
)
def test_min_comparison_for_contained_ideals(a_gens, b_extra, p):
    """mu(a, b, p) = min(nu(a, b, p), p-1) whenever a is contained in b."""
    a = small_m_primary(a_gens)
    b = minimalize(list(a.gens) + list(b_extra) + [(4, 0), (0, 4)], n=2)
    if a.is_unit or b.is_unit:
        return
    assert b.contains(a)
    qa = InvariantQuery(a, b, p, p)
    assert mu(qa) == min(nu(qa), p - 1)


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=3),
    st.sampled_from([2, 3]),
    st.integers(1, 2),
)
def test_relating_mus_digit_bound(a_gens, p, e):
    """mu(a, b, q p^e) - mu(a, b, q) p^e always lands in [0, p^e - 1]."""
    a = small_m_primary(a_gens, cap=3)
    if a.is_unit:
        return
    b = power_of_m(1, 2)
    base = mu(InvariantQuery(a, b, p, p))
    lifted = mu(InvariantQuery(a, b, p ** (e + 1), p))
    assert 0 <= lifted - base * p**e <= p**e - 1


def test_building_up_on_enumerated_witnesses():
    """If x^(q*u - v) lies in a^[m], then mu(a, u, q p^e) is at least
    m p^e + min(p^e - 1, mu(a, v, p^e))."""
    a = parse_ideal("x1^2, x1*x2, x2^2")
    p, q, e = 3, 3, 1
    for u in itertools.product((1, 2), repeat=2):
        for v in itertools.product((1, 2), repeat=2):
            target = tuple(q * ui - vi for ui, vi in zip(u, v))
            if any(c < 0 for c in target):
                continue
            for m in range(0, 2 * q):
                if not frob_power_int(a, m, p).contains_monomial(target):
                    continue
                lhs = mu(InvariantQuery(a, diag(u), q * p**e, p))
                bound = m * p**e + min(
                    p**e - 1, mu(InvariantQuery(a, diag(v), p**e, p))
                )
                assert lhs >= bound, (u, v, m)


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("d", [2, 3])
def test_mu_diag_fast_matches_brute_force_grid(p, d):
    for n in (1, 2):
        a = diag((d,) * n)
        for u in itertools.product(range(1, d + 2), repeat=n):
            for q in (p, p * p):
                fast = mu_diag_fast(u, q, d, p)
                brute = mu(InvariantQuery(a, diag(u), q, p))
                assert fast == brute, (n, d, u, p, q)


def test_mu_diag_fast_matches_plain_enumeration():
    """Third route: enumerate every carry-free point below the cap directly."""
    from frobpow.arith import carry_free, lpr

    cases = [
        ((1, 1), 5, 3, 5), ((2, 3), 5, 3, 5), ((1, 2, 2), 7, 4, 7),
        ((3, 1), 25, 4, 5), ((2, 2), 9, 2, 3), ((1, 1, 1), 9, 5, 3),
        ((4, 1), 7, 7, 7), ((2, 5), 11, 6, 11),
    ]
    for u, q, d, p in cases:
        cap = tuple((q * c - lpr(q * c, d)) // d for c in u)
        best = max(
            sum(s)
            for s in itertools.product(*(range(c + 1) for c in cap))
            if carry_free(s, p)
        )
        assert mu_diag_fast(u, q, d, p) == best, (u, q, d, p)


def test_mu_diag_fast_three_variables_spots():
    for u, q, d, p in [
        ((1, 1, 1), 23, 7, 23),
        ((3, 2, 2), 23 * 23, 7, 23),
        ((5, 1, 1), 41, 7, 41),
        ((2, 2, 2), 41, 5, 41),
    ]:
        brute = mu(InvariantQuery(diag((d,) * 3), diag(u), q, p))
        assert mu_diag_fast(u, q, d, p) == brute


def test_mu_diag_fast_degenerate_norm_gives_q_minus_one():
    # |u| > d with p large relative to n and d
    p = 11
    for e in (1, 2):
        assert mu_diag_fast((2, 2), p**e, 3, p) == p**e - 1


def test_mu_diag_fast_single_variable_equals_cap():
    from frobpow.arith import lpr

    for u1, q, d, p in [(3, 5, 4, 5), (7, 25, 4, 5), (2, 9, 2, 3)]:
        cap = (q * u1 - lpr(q * u1, d)) // d
        assert mu_diag_fast((u1,), q, d, p) == cap


def test_invariant_query_validation():
    m2 = power_of_m(1, 2)
    with pytest.raises(ValidationError):
        InvariantQuery(parse_ideal("x1", n=2), parse_ideal("x2", n=2), 3, 3)  # a not in rad(b)
    with pytest.raises(ValidationError):
        InvariantQuery(MonomialIdeal.unit(2), m2, 3, 3)
    with pytest.raises(ValidationError):
        InvariantQuery(MonomialIdeal.zero(2), m2, 3, 3)
    with pytest.raises(ValidationError):
        InvariantQuery(m2, MonomialIdeal.unit(2), 3, 3)
    with pytest.raises(ValidationError):
        InvariantQuery(m2, m2, 6, 3)  # q not a power of p
    with pytest.raises(ValidationError):
        InvariantQuery(m2, m2, 4, 4)  # p not prime
    with pytest.raises(ValidationError):
        InvariantQuery(m2, m2, 3, 3, radical_bound=0)


def test_mu_resource_cap():
    a = power_of_m(2, 2)
    with pytest.raises(ResourceLimitError):
        mu(InvariantQuery(a, diag((9, 9)), 25, 5), cap=2)
