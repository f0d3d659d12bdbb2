"""Exact integer arithmetic helpers: least positive residues, base-p digits,
carry-free (multinomial) tests, multiplicative orders, residue classes.

Everything here works with arbitrary-precision Python integers; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class _Infinity:
    """Singleton for the extended natural number "infinity".

    Compares greater than every integer, equal only to itself.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("frobpow-infinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INFINITY = _Infinity()

# An extended natural number: a positive int, or INFINITY.
ExtNat = "int | _Infinity"

# All exact rational values in the library are fractions.Fraction instances
# (arbitrary-precision, canonical reduced form, structural equality).
ExactRational = Fraction


def lpr(m: int, d: int) -> int:
    """Least positive residue of m modulo d, in [1, d].

    Multiples of d map to d, never to 0; several truncation formulas
    downstream depend on that convention.
    """
    if d < 1:
        raise ValueError(f"modulus must be positive, got {d}")
    r = m % d
    return d if r == 0 else r


def lpr_vec(u: tuple[int, ...], d: int) -> tuple[int, ...]:
    """Coordinatewise least positive residue of an integer vector."""
    return tuple(lpr(c, d) for c in u)


def base_p_digits(m: int, p: int) -> list[int]:
    """Digits of m in base p, least significant first; [] for m = 0."""
    if m < 0:
        raise ValueError(f"expected a nonnegative integer, got {m}")
    digits = []
    while m:
        m, r = divmod(m, p)
        digits.append(r)
    return digits


def carry_free(s: tuple[int, ...], p: int) -> bool:
    """Whether the coordinates of s add in base p without carrying.

    By Dickson's criterion this holds iff the multinomial coefficient
    (|s| choose s) is nonzero mod p.  Runs digit by digit, so it never
    touches a factorial.
    """
    rem = list(s)
    while any(rem):
        if sum(c % p for c in rem) > p - 1:
            return False
        rem = [c // p for c in rem]
    return True


def multinomial_mod_p(s: tuple[int, ...], p: int) -> int:
    """(|s| choose s) mod p via the digit-wise (Lucas-style) product.

    Returns 0 exactly when carry_free(s, p) is False.
    """
    if not carry_free(s, p):
        return 0
    result = 1
    rem = list(s)
    while any(rem):
        digits = [c % p for c in rem]
        # small factorials only: all digits and their sum are < p
        num = _factorial_mod(sum(digits), p)
        for a in digits:
            num = num * pow(_factorial_mod(a, p), p - 2, p) % p
        result = result * num % p
        rem = [c // p for c in rem]
    return result


def _factorial_mod(a: int, p: int) -> int:
    f = 1
    for i in range(2, a + 1):
        f = f * i % p
    return f


def is_prime(p: int, trial_bound: int = 1_000_000) -> bool:
    """Primality by trial division; raises if p*p exceeds the bound squared.

    The library's preconditions only ever involve desk-scale primes, so trial
    division is a complete decision procedure here.
    """
    if p < 2:
        return False
    if p > trial_bound * trial_bound:
        raise ValueError(f"primality check for {p} exceeds trial bound {trial_bound}")
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class ResidueClass:
    """The congruence class of a prime p modulo d: p ≡ rho (mod d).

    rho is stored as a least positive residue, so rho = d encodes d | p
    and is rejected by the coprimality requirement (for d > 1).
    """

    rho: int
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"modulus must be positive, got {self.d}")
        if not 1 <= self.rho <= self.d:
            raise ValueError(f"rho must lie in [1, {self.d}], got {self.rho}")
        if gcd(self.rho, self.d) != 1:
            raise ValueError(
                f"gcd(rho, d) must be 1 (a prime not dividing d), got rho={self.rho}, d={self.d}"
            )

    def __str__(self):
        return f"{self.rho}%{self.d}"

    def contains(self, p: int) -> bool:
        return lpr(p, self.d) == lpr(self.rho, self.d)


def mult_order(rc: ResidueClass) -> int:
    """Least e >= 1 with rho^e ≡ 1 (mod d).

    One period of rho bounds every scan for the truncation depth s: the
    relevant residues repeat with this period.
    """
    if rc.d == 1:
        return 1
    e, x = 1, rc.rho % rc.d
    while x != 1:
        x = x * rc.rho % rc.d
        e += 1
    return e


def smallest_admissible_prime(rc: ResidueClass, pmin: int) -> int:
    """Smallest prime p ≡ rho (mod d) with p >= pmin."""
    p = pmin
    while True:
        if rc.contains(p) and is_prime(p):
            return p
        p += 1
