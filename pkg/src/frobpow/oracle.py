"""Definitional brute-force computation of the invariants mu and nu.

mu(a, b, q) is the largest m with a^[m] not contained in b^[q]; nu is the
same with ordinary powers a^m.  Both searches ascend from m = 0 and stop at
the first containment, which monotonicity makes correct and keeps the cheap
instances first.  These are the ground truth the closed forms are verified
against, so they stay as close to the definitions as possible; the only
speedups are digit-factor caching and the pruning box, which discards
generators that provably cannot witness noncontainment.

mu_diag_fast implements the closed combinatorial description of mu for a
balanced diagonal ideal (maximize |s| over carry-free s below a coordinate
cap) via a digit-level dynamic program; it is exact for every p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import backend
from .arith import base_p_digits, is_prime, lpr
from .errors import ConsistencyError, ResourceLimitError, ValidationError
from .ideal import UNBOUNDED, MonomialIdeal, _canonical_rows, is_power_of

_NU_SAFETY_CAP = 100_000


@dataclass(frozen=True)
class InvariantQuery:
    """A (a, b, q) triple for mu/nu, with the preconditions checked up front.

    Requires: p prime, q a power of p, a nonzero and proper, b proper, and
    a contained in the radical of b.  The radical containment is decided by
    testing membership of N*g in b for each generator g of a and N up to
    radical_bound; the default bound makes the test complete.
    """

    a: MonomialIdeal
    b: MonomialIdeal
    q: int
    p: int
    radical_bound: int | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValidationError(f"p = {self.p} is not prime")
        if not is_power_of(self.q, self.p):
            raise ValidationError(f"q = {self.q} is not a power of p = {self.p}")
        if self.a.n != self.b.n:
            raise ValidationError("a and b live in different rings")
        if self.a.is_zero or self.a.is_unit:
            raise ValidationError("a must be nonzero and proper")
        if self.b.is_unit:
            raise ValidationError("b must be proper")
        self._check_radical()

    def _check_radical(self):
        complete = int(self.b.rows.max(initial=0)) + 1
        bound = self.radical_bound if self.radical_bound is not None else complete
        for g in self.a.gens:
            for n_pow in range(1, bound + 1):
                if self.b.contains_monomial(tuple(n_pow * c for c in g)):
                    break
            else:
                if bound >= complete:
                    raise ValidationError(
                        f"a is not contained in the radical of b: no power of "
                        f"x^{g} lies in b"
                    )
                raise ValidationError(
                    f"radical containment check inconclusive for x^{g} within "
                    f"bound {bound}"
                )


def _prune_box(b: MonomialIdeal, q: int) -> np.ndarray:
    """Exclusive coordinate bounds valid for noncontainment queries against b^[q].

    A pure-power generator x_j^c of b forces any exponent vector with
    v_j >= q*c into b^[q], so such vectors (and all their multiples) can be
    discarded.  Axes without a pure-power generator stay unbounded.
    """
    box = np.full(b.n, UNBOUNDED, dtype=np.int64)
    for g in b.gens:
        support = [j for j, c in enumerate(g) if c > 0]
        if len(support) == 1:
            j = support[0]
            box[j] = min(box[j], q * g[j])
    return box


class _FrobSearch:
    """Digit-factor cache for frob powers of a fixed ideal inside a fixed box.

    The least significant digit contributes the largest factor, so the
    noncontainment test keeps it unexpanded: the canonical product of the
    higher-position factors (cached per digit suffix) is paired against it
    inside the early-exit witness kernel.
    """

    def __init__(self, a: MonomialIdeal, p: int, box: np.ndarray):
        self.a = a
        self.p = p
        self.box = box
        self._powers: dict[tuple[int, int], np.ndarray] = {}
        self._suffixes: dict[tuple[int, ...], np.ndarray] = {}

    def _power_rows(self, pos: int, j: int) -> np.ndarray:
        key = (pos, j)
        if key not in self._powers:
            if j == 0:
                rows = np.zeros((1, self.a.n), dtype=np.int64)
            else:
                q = self.p**pos
                fbox = np.minimum((self.box - 1) // q + 1, UNBOUNDED)
                rows = _canonical_rows(
                    backend.pairwise_sums_boxed(self._power_rows(pos, j - 1), self.a.rows, fbox)
                )
            self._powers[key] = rows
        return self._powers[key]

    def _suffix_rows(self, suffix: tuple[int, ...]) -> np.ndarray:
        """Canonical generators of the product over positions >= 1."""
        if suffix not in self._suffixes:
            acc = np.zeros((1, self.a.n), dtype=np.int64)
            for off, digit in enumerate(suffix):
                if digit == 0:
                    continue
                factor = self._power_rows(off + 1, digit) * self.p ** (off + 1)
                acc = _canonical_rows(backend.pairwise_sums_boxed(acc, factor, self.box))
                if acc.shape[0] == 0:
                    break
            self._suffixes[suffix] = acc
        return self._suffixes[suffix]

    def frob_rows(self, m: int) -> np.ndarray:
        digits = base_p_digits(m, self.p)
        d0 = digits[0] if digits else 0
        low = self._power_rows(0, d0)
        high = self._suffix_rows(tuple(digits[1:]))
        return _canonical_rows(backend.pairwise_sums_boxed(low, high, self.box))

    def not_contained_in(self, m: int, dom_rows: np.ndarray) -> bool:
        """Whether a^[m] has a generator in the box not dominated by dom_rows."""
        digits = base_p_digits(m, self.p)
        d0 = digits[0] if digits else 0
        low = self._power_rows(0, d0)
        high = self._suffix_rows(tuple(digits[1:]))
        return backend.any_witness(low, high, self.box, dom_rows)


def mu(query: InvariantQuery, cap: int | None = None) -> int:
    """max { m : a^[m] not contained in b^[q] }, by ascending search.

    The default cap q*(nu(a,b,1) + 2) cannot be hit: for N > nu(a,b,1) the
    containment a^[qN] ⊆ (a^N)^[q] ⊆ b^[q] forces mu < q*(nu(a,b,1) + 1) + q.
    """
    if cap is None:
        nu1 = _nu_search(query.a, query.b, 1, _NU_SAFETY_CAP)
        cap = query.q * (nu1 + 2)
    box = _prune_box(query.b, query.q)
    qb_rows = query.b.rows * query.q
    search = _FrobSearch(query.a, query.p, box)
    m = 0
    while True:
        if not search.not_contained_in(m, qb_rows):
            return m - 1
        m += 1
        if m > cap:
            raise ResourceLimitError(f"mu search passed the cap {cap} without containment")


def nu(query: InvariantQuery, cap: int | None = None) -> int:
    """max { m : a^m not contained in b^[q] }, by ascending search.

    The default cap is safe: a power of b with n(q-1)+1 generator factors
    repeats some generator q times, so b^(n(q-1)+1) ⊆ b^[q], and therefore
    a^m ⊆ b^[q] once m reaches (nu(a,b,1) + 1)(n(q-1) + 1).
    """
    if cap is None:
        nu1 = _nu_search(query.a, query.b, 1, _NU_SAFETY_CAP)
        cap = (nu1 + 1) * (query.a.n * (query.q - 1) + 1)
    return _nu_search(query.a, query.b, query.q, cap)


def _nu_search(a: MonomialIdeal, b: MonomialIdeal, q: int, cap: int) -> int:
    box = _prune_box(b, q)
    qb_rows = b.rows * q
    rows = np.zeros((1, a.n), dtype=np.int64)
    m = 0
    while True:
        rows = _canonical_rows(backend.pairwise_sums_boxed(rows, a.rows, box))
        if rows.shape[0] == 0 or bool(backend.dominated_mask(rows, qb_rows).all()):
            return m
        m += 1
        if m > cap:
            raise ResourceLimitError(f"nu search passed the cap {cap} without containment")


def crit_truncations(
    a: MonomialIdeal, b: MonomialIdeal, p: int, max_e: int = 3, cap: int | None = None
) -> list[Fraction]:
    """The sequence mu(a, b, p^e)/p^e for e = 1..max_e.

    These truncations increase towards the critical exponent from below; the
    limit itself is never claimed here.
    """
    out = []
    for e in range(1, max_e + 1):
        q = p**e
        out.append(Fraction(mu(InvariantQuery(a, b, q, p), cap=cap), q))
    if any(x > y for x, y in zip(out, out[1:])):
        raise ConsistencyError(f"mu(q)/q decreased along {out}")
    return out


def mu_diag_fast(u: tuple[int, ...], q: int, d: int, p: int) -> int:
    """mu(diag(d,...,d), diag(u), q), by digit-level dynamic programming.

    Equals the maximum of |s| over points s that add without carrying in
    base p (carry-free) and satisfy s <= (q*u - <q*u>_d)/d coordinatewise.
    The DP walks base-p positions from the most significant down, tracking
    which coordinates are still tight against the cap; released and free
    coordinates just soak up whatever digit-sum budget is left, since their
    exact digits never constrain later positions.
    """
    u = tuple(int(c) for c in u)
    if any(c <= 0 for c in u):
        raise ValidationError(f"u must have positive coordinates, got {u}")
    if d < 1:
        raise ValidationError(f"d must be positive, got {d}")
    if not is_power_of(q, p):
        raise ValidationError(f"q = {q} is not a power of p = {p}")
    n = len(u)
    cap = tuple((q * c - lpr(q * c, d)) // d for c in u)
    digs = [base_p_digits(c, p) for c in cap]
    length = max(len(ds) for ds in digs)
    full = (1 << n) - 1
    dp = {full: 0}
    for pos in range(length - 1, -1, -1):
        cd = [ds[pos] if pos < len(ds) else 0 for ds in digs]
        scale = p**pos
        ndp: dict[int, int] = {}
        for mask, val in dp.items():
            free_supply = sum(p - 1 for i in range(n) if not mask >> i & 1)
            sub = mask
            while True:
                base = 0
                supply = free_supply
                feasible = True
                for i in range(n):
                    if not mask >> i & 1:
                        continue
                    if sub >> i & 1:
                        base += cd[i]
                    elif cd[i] == 0:
                        feasible = False  # digit 0 cannot go strictly below the cap
                        break
                    else:
                        supply += cd[i] - 1
                if feasible and base <= p - 1:
                    digit_sum = base + min(p - 1 - base, supply)
                    cand = val + digit_sum * scale
                    if cand > ndp.get(sub, -1):
                        ndp[sub] = cand
                if sub == 0:
                    break
                sub = (sub - 1) & mask
        dp = ndp
    return max(dp.values())
