"""Closed-form critical exponents and Frobenius-power families.

Critical exponents of powers of the maximal ideal and of diagonal ideals are
base-p truncations k/d - r/(d p^s), with the depth s read off from least
positive residues of k (maximal-ideal case) or of the reweighted point ubar
(diagonal case).  The residues only depend on p through its class modulo d,
so families are computed symbolically per residue class and evaluated at a
concrete admissible prime as a separate, validated step.

Everything below the family constructors is exact integer arithmetic; the
brute-force oracle module provides the independent ground truth these
formulas are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .arith import (
    INFINITY,
    ResidueClass,
    _Infinity,
    is_prime,
    lpr,
    mult_order,
    smallest_admissible_prime,
)
from .errors import ConsistencyError, ValidationError
from .ideal import GradedWeights, MonomialIdeal, R_gt, power_of_m, weak_compositions


@dataclass(frozen=True)
class SymbolicCrit:
    """The exact value k/d - r/(d p^s), symbolic in the prime p.

    s = INFINITY (with r = 0) means the value is exactly k/d; in particular
    k = d with infinite s encodes the constant 1.  For admissible primes the
    value lies in ((k-1)/d, k/d], which makes (k, s asc, r desc) the value
    order without knowing p.
    """

    k: int
    d: int
    s: int | _Infinity
    r: int

    def __post_init__(self):
        if self.d < 1 or not 1 <= self.k <= self.d:
            raise ValidationError(f"need 1 <= k <= d, got k={self.k}, d={self.d}")
        if self.s is INFINITY:
            if self.r != 0:
                raise ValidationError("infinite depth forces r = 0")
        elif self.s < 1 or self.r < 1:
            raise ValidationError(f"finite depth needs s >= 1 and r >= 1, got s={self.s}, r={self.r}")

    @property
    def is_one(self) -> bool:
        return self.k == self.d and self.s is INFINITY

    def sort_key(self):
        if self.s is INFINITY:
            return (self.k, 1, 0, 0)
        return (self.k, 0, self.s, -self.r)

    def _cmp_check(self, other):
        if not isinstance(other, SymbolicCrit):
            return NotImplemented
        if self.d != other.d:
            raise ValidationError("cannot compare breakpoints over different denominators d")
        return other

    def __lt__(self, other):
        other = self._cmp_check(other)
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        other = self._cmp_check(other)
        return self.sort_key() <= other.sort_key()

    def value_at(self, p: int) -> Fraction:
        """The exact rational value at a concrete prime in the class."""
        if self.s is INFINITY:
            return Fraction(self.k, self.d)
        return Fraction(self.k, self.d) - Fraction(self.r, self.d * p**self.s)

    def __str__(self):
        g = gcd(self.k, self.d)
        lead = "1" if self.k == self.d else f"{self.k // g}/{self.d // g}"
        if self.s is INFINITY:
            return lead
        g = gcd(self.r, self.d)
        rr, dd = self.r // g, self.d // g
        ps = "p" if self.s == 1 else f"p^{self.s}"
        tail = f"{rr}/{ps}" if dd == 1 else f"{rr}/({dd}{ps})"
        return f"{lead} - {tail}"


def crit_one(d: int) -> SymbolicCrit:
    """The constant 1, as a breakpoint over denominator d."""
    return SymbolicCrit(d, d, INFINITY, 0)


@dataclass(frozen=True)
class IdealFamily:
    """A right-continuous piecewise-constant family t -> ideal on [0, 1).

    pieces[i] = (breakpoint, ideal on [breakpoint_i, breakpoint_{i+1})); the
    unit ideal on [0, first breakpoint) is implicit.  Valid for every prime
    p >= pmin in the residue class rc.
    """

    label: str
    n: int
    rc: ResidueClass
    pmin: int
    pieces: tuple[tuple[SymbolicCrit, MonomialIdeal], ...]
    note: str = ""

    def eval_at_prime(self, p: int, strict: bool = True):
        """Breakpoints as exact rationals at a concrete admissible prime.

        strict=False relaxes the size requirement from pmin to p > d, for
        desk checks at small primes; class membership and primality are
        always enforced.
        """
        from .multiplier import RationalFamily

        if not is_prime(p):
            raise ValidationError(f"p = {p} is not prime")
        if not self.rc.contains(p):
            raise ValidationError(f"p = {p} is not congruent to {self.rc.rho} mod {self.rc.d}")
        if strict and p < self.pmin:
            raise ValidationError(f"p = {p} is below the admissibility bound pmin = {self.pmin}")
        if not strict and p <= self.rc.d:
            raise ValidationError(f"p = {p} does not exceed the modulus d = {self.rc.d}")
        return RationalFamily(
            label=f"{self.label} at p={p}",
            n=self.n,
            pieces=tuple((crit.value_at(p), ideal) for crit, ideal in self.pieces),
            note=self.note,
        )


def compositions(k: int, n: int) -> list[tuple[int, ...]]:
    """All points with n positive coordinates summing to k, lex ascending."""
    if n < 1:
        raise ValidationError(f"composition size must be positive, got {n}")
    if k < n:
        return []
    return [tuple(c + 1 for c in w) for w in weak_compositions(k - n, n)]


# -- powers of the maximal ideal -------------------------------------------


def crit_md(k: int, d: int, n: int, rc: ResidueClass) -> SymbolicCrit:
    """Critical exponent of m^d with respect to any composition of k (n <= k <= d).

    s is the first e >= 1 with <k p^e>_d < n, scanned over one multiplicative
    period of the class; no hit in a period proves s is infinite.
    """
    if not n <= k <= d:
        raise ValidationError(f"need n <= k <= d, got k={k}, d={d}, n={n}")
    if rc.d != d:
        raise ValidationError(f"residue class modulus {rc.d} does not match d={d}")
    rho_e = 1
    for e in range(1, mult_order(rc) + 1):
        rho_e = rho_e * rc.rho % d
        residue = lpr(k * rho_e, d)
        if residue < n:
            return SymbolicCrit(k, d, e, residue)
    return SymbolicCrit(k, d, INFINITY, 0)


def family_md(d: int, n: int, rc: ResidueClass) -> IdealFamily:
    """Frobenius powers of m^d on [0, 1) for the class rc, valid for p > d."""
    label = f"m^{d}({n})"
    if rc.d != d:
        raise ValidationError(f"residue class modulus {rc.d} does not match d={d}")
    if d <= n:
        return IdealFamily(
            label=label,
            n=n,
            rc=rc,
            pmin=d + 1,
            pieces=(),
            note="degenerate: the unit ideal on all of [0,1); no critical exponent below 1",
        )
    pieces = tuple(
        (crit_md(k, d, n, rc), power_of_m(k - n + 1, n)) for k in range(n, d)
    )
    _verify_family(n, pieces)
    return IdealFamily(label=label, n=n, rc=rc, pmin=d + 1, pieces=pieces)


def mu_md_closed_form(k: int, d: int, n: int, p: int, e: int) -> int:
    """mu(m^d, u, p^e) for u any composition of k, from the closed forms.

    Below the truncation depth mu agrees with the ordinary-power count nu;
    past it, each extra power of p multiplies mu+1 exactly.
    """
    crit = crit_md(k, d, n, ResidueClass(lpr(p, d), d))
    s = crit.s
    if e <= s:
        residue = lpr(k * p**e, d)
        return (k * p**e - residue) // d + (0 if residue >= n else -1)
    mu_s = (k * p**s - crit.r) // d - 1
    return (mu_s + 1) * p ** (e - s) - 1


# -- diagonal ideals ---------------------------------------------------------


@lru_cache(maxsize=None)
def _crit_scan(ubar_sorted: tuple[int, ...], d: int, rho: int):
    """(s, r) for the balanced engine: first e with |<rho^e ubar>_d| > d."""
    rc = ResidueClass(rho, d)
    rho_e = 1
    for e in range(1, mult_order(rc) + 1):
        rho_e = rho_e * rho % d
        total = sum(lpr(rho_e * c, d) for c in ubar_sorted)
        if total > d:
            return e, total - d
    return INFINITY, 0


def crit_diag(u, dvec, rc: ResidueClass) -> SymbolicCrit:
    """Critical exponent of diag(dvec) with respect to the point u.

    Returns the constant 1 whenever the critical exponent is not below one:
    for u not strictly below dvec, or of weighted degree above d, or of
    weighted degree exactly d with infinite depth.  Valid for admissible
    primes (p > nd - n, p not dividing d).
    """
    return _crit_diag(tuple(int(c) for c in u), tuple(int(c) for c in dvec), rc)


@lru_cache(maxsize=None)
def _crit_diag(u: tuple[int, ...], dvec: tuple[int, ...], rc: ResidueClass) -> SymbolicCrit:
    if any(c <= 0 for c in u):
        raise ValidationError(f"u must have positive coordinates, got {u}")
    weights = GradedWeights(dvec)
    if len(u) != weights.n:
        raise ValidationError(f"u has {len(u)} coordinates, dvec has {weights.n}")
    d = weights.d
    if rc.d != d:
        raise ValidationError(f"residue class modulus {rc.d} does not match lcm(dvec) = {d}")
    if any(c >= dc for c, dc in zip(u, weights.dvec)) or weights.deg(u) > d:
        return crit_one(d)
    k = weights.deg(u)
    s, r = _crit_scan(tuple(sorted(weights.ubar(u))), d, rc.rho)
    n = weights.n
    if s is not INFINITY and not 1 <= r < n * d - n:
        raise ConsistencyError(f"residue excess r={r} escapes (0, nd-n) for u={u}, dvec={dvec}")
    return SymbolicCrit(k, d, s, r)


@lru_cache(maxsize=None)
def _degree_points(m: int, weights: GradedWeights) -> tuple[tuple[int, ...], ...]:
    """All v >= 0 with weighted degree exactly m."""
    w = weights.weights
    n = weights.n
    out: list[tuple[int, ...]] = []
    v = [0] * n

    def rec(i: int, rest: int):
        if i == n - 1:
            if rest % w[i] == 0:
                v[i] = rest // w[i]
                out.append(tuple(v))
            return
        vi = 0
        while vi * w[i] <= rest:
            v[i] = vi
            rec(i + 1, rest - vi * w[i])
            vi += 1
        v[i] = 0

    rec(0, m)
    return tuple(out)


@lru_cache(maxsize=None)
def _R_gt_cached(m: int, weights: GradedWeights) -> MonomialIdeal:
    return R_gt(m, weights)


@lru_cache(maxsize=None)
def _crit_candidates(m: int, dvec: tuple[int, ...], rc: ResidueClass):
    """(crit(v+1), v) for every v of weighted degree m; shared across pieces."""
    weights = GradedWeights(dvec)
    return tuple(
        (_crit_diag(tuple(c + 1 for c in v), dvec, rc), v)
        for v in _degree_points(m, weights)
    )


def frobpow_diag_at_crit(u, dvec, rc: ResidueClass) -> MonomialIdeal:
    """The Frobenius power of diag(dvec) at the breakpoint crit(u) itself.

    Generated by everything of weighted degree above deg(u) - deg(1), plus
    the degree-equal monomials x^v whose own breakpoint crit(v+1) lies
    strictly higher.
    """
    weights = GradedWeights(tuple(int(c) for c in dvec))
    lam = crit_diag(u, dvec, rc)
    if lam.is_one:
        raise ValidationError(f"crit({u}) is not below one; the family has no piece there")
    deg1 = sum(weights.weights)
    m = lam.k - deg1
    base = _R_gt_cached(m, weights)
    extra = [v for cv, v in _crit_candidates(m, weights.dvec, rc) if lam < cv]
    if not extra:
        return base
    # a base generator w (weighted degree in (m, m + max w]) is dominated by
    # an extra v (degree exactly m) iff w - delta is an extra for some delta
    # of degree deg(w) - m, so minimalization reduces to hash lookups; extras
    # all share degree m and base survivors stay an antichain
    extra_set = set(extra)
    keep = []
    for g in base.gens:
        gap = weights.deg(g) - m
        dominated = False
        for delta in _degree_points(gap, weights):
            shifted = tuple(a - b for a, b in zip(g, delta))
            if min(shifted) >= 0 and shifted in extra_set:
                dominated = True
                break
        if not dominated:
            keep.append(g)
    rows = np.array(extra + keep, dtype=np.int64).reshape(-1, weights.n)
    return MonomialIdeal._from_antichain(weights.n, rows)


def _points_in_scope(weights: GradedWeights) -> list[tuple[int, ...]]:
    """All u with 0 < u <= dvec and weighted degree at most d."""
    d = weights.d
    w = weights.weights
    dvec = weights.dvec
    n = weights.n
    out: list[tuple[int, ...]] = []
    u = [0] * n

    def rec(i: int, degsofar: int):
        if i == n:
            out.append(tuple(u))
            return
        for ui in range(1, dvec[i] + 1):
            deg = degsofar + ui * w[i]
            if deg > d - sum(w[i + 1 :]):
                break
            u[i] = ui
            rec(i + 1, deg)
        u[i] = 0

    rec(0, 0)
    return out


def family_diag(dvec, rc: ResidueClass) -> IdealFamily:
    """Frobenius powers of diag(dvec) on [0, 1) for the class rc.

    Enumerates every point 0 < u <= dvec of weighted degree at most d,
    collects the distinct breakpoints below one, and attaches the ideal of
    each piece.  pmin combines the nd-n size bound with the smallest prime
    in the class.
    """
    weights = GradedWeights(tuple(int(c) for c in dvec))
    d, n = weights.d, weights.n
    if rc.d != d:
        raise ValidationError(f"residue class modulus {rc.d} does not match lcm(dvec) = {d}")
    crits: dict[SymbolicCrit, tuple[int, ...]] = {}
    for u in _points_in_scope(weights):
        c = crit_diag(u, dvec, rc)
        if not c.is_one and c not in crits:
            crits[c] = u
    pieces = tuple(
        (c, frobpow_diag_at_crit(crits[c], dvec, rc))
        for c in sorted(crits, key=SymbolicCrit.sort_key)
    )
    _verify_family(n, pieces)
    label = "diag(" + ",".join(str(c) for c in weights.dvec) + ")"
    pmin = max(n * d - n + 1, smallest_admissible_prime(rc, 2))
    return IdealFamily(label=label, n=n, rc=rc, pmin=pmin, pieces=pieces)


def mu_diag_closed_form(u, dvec, p: int, e: int) -> int:
    """mu(diag(dvec), u, p^e) from the closed forms; needs p admissible."""
    weights = GradedWeights(tuple(int(c) for c in dvec))
    d = weights.d
    if any(c >= dc for c, dc in zip(u, weights.dvec)) or weights.deg(u) > d:
        return p**e - 1
    k = weights.deg(u)
    ubar = weights.ubar(u)
    s, _ = _crit_scan(tuple(sorted(ubar)), d, lpr(p, d))
    if e <= s:
        total = sum(lpr(p**e * c, d) for c in ubar)
        return (k * p**e - total) // d
    total_s = sum(lpr(p**s * c, d) for c in ubar)
    mu_s = (k * p**s - total_s) // d
    return (mu_s + 1) * p ** (e - s) - 1


def _verify_family(n: int, pieces) -> None:
    """Strictly increasing breakpoints, strictly nested proper ideals."""
    for (c1, _), (c2, _) in zip(pieces, pieces[1:]):
        if not c1 < c2:
            raise ConsistencyError(f"breakpoints out of order: {c1} before {c2}")
    previous = MonomialIdeal.unit(n)
    for crit, ideal in pieces:
        if not (previous.contains(ideal) and previous != ideal):
            raise ConsistencyError(f"family fails strict nesting at breakpoint {crit}")
        previous = ideal


def eval_at_prime(obj, p: int, strict: bool = True):
    """Evaluate a SymbolicCrit (to a Fraction) or an IdealFamily at a prime."""
    if isinstance(obj, SymbolicCrit):
        return obj.value_at(p)
    if isinstance(obj, IdealFamily):
        return obj.eval_at_prime(p, strict=strict)
    raise TypeError(f"cannot evaluate {type(obj).__name__} at a prime")
