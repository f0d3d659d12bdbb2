"""Monomial-ideal algebra over a polynomial ring in n variables.

An ideal is stored as its unique minimal generating set (an antichain of
exponent vectors under the coordinatewise order), held as an int64 array
sorted by (norm, lex).  Structural equality of the stored generators
therefore coincides with equality of ideals, which the whole test suite
leans on.

Exponents are plain integers.  Generalized Frobenius powers a^[m] are built
from the base-p digits of m: a^[m] = a^{m_0} (a^{m_1})^[p] ... (a^{m_r})^[p^r],
with bracket powers scaling generators and bracket roots floor-dividing them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import comb, gcd

import numpy as np

from . import backend
from .arith import base_p_digits, carry_free
from .errors import ResourceLimitError, ValidationError

# exclusive-bound sentinel for "no pruning in this coordinate"
UNBOUNDED = 1 << 60
# overflow guard: generator sums and bracket scalings must stay well inside int64
_COORD_LIMIT = 1 << 55


def _as_rows(n: int, gens) -> np.ndarray:
    try:
        rows = np.array(list(gens), dtype=np.int64).reshape(-1, n)
    except (ValueError, OverflowError) as exc:
        raise ValidationError(f"expected exponent vectors of length {n}: {exc}")
    if rows.size and rows.min() < 0:
        raise ValidationError("exponent vectors must be nonnegative")
    return rows


def _canonical_rows(rows: np.ndarray) -> np.ndarray:
    """Minimalize and sort rows into the canonical (norm, lex) ascending form.

    Sorting by norm first lets the antichain scan skip same-norm pairs; two
    distinct vectors of equal norm never dominate each other.
    """
    n = rows.shape[1]
    if rows.shape[0] == 0:
        return rows
    maxc = int(rows.max(initial=0))
    if maxc >= _COORD_LIMIT:
        raise OverflowError("exponent exceeds the supported coordinate range")
    norms = rows.sum(axis=1)
    bits = max(1, (maxc + 1).bit_length())
    norm_bits = (n * maxc + 1).bit_length()
    if norm_bits + n * bits <= 62:
        # pack (norm, x1, ..., xn) into one int64 key: a single scalar sort
        # beats the n-key lexsort on the large intermediate products
        keys = norms.copy()
        for k in range(n):
            keys = (keys << bits) | rows[:, k]
        order = np.argsort(keys, kind="stable")
    else:
        order = np.lexsort(tuple(rows[:, k] for k in reversed(range(n))) + (norms,))
    rows, norms = rows[order], norms[order]
    if rows.shape[0] > 1:
        fresh = np.empty(rows.shape[0], dtype=np.bool_)
        fresh[0] = True
        np.any(rows[1:] != rows[:-1], axis=1, out=fresh[1:])
        rows, norms = rows[fresh], norms[fresh]
    limits = np.searchsorted(norms, norms, side="left")
    keep = backend.minimal_mask(rows, norms, limits.astype(np.int64))
    return rows[keep]


class MonomialIdeal:
    """An ideal generated by monomials, in canonical minimal form.

    The empty generating set is the zero ideal; the single generator 0 is the
    unit ideal.  Instances are immutable; all operations return new ideals.
    """

    __slots__ = ("n", "_rows", "_gens", "_hashval")

    def __init__(self, n: int, gens=(), *, _rows: np.ndarray | None = None):
        if n < 1:
            raise ValidationError(f"need at least one variable, got n={n}")
        self.n = n
        if _rows is None:
            _rows = _canonical_rows(_as_rows(n, gens))
        _rows.setflags(write=False)
        self._rows = _rows
        self._gens = None
        self._hashval = None

    @classmethod
    def _wrap(cls, n: int, rows: np.ndarray) -> MonomialIdeal:
        return cls(n, _rows=_canonical_rows(rows))

    @classmethod
    def _from_antichain(cls, n: int, rows: np.ndarray) -> MonomialIdeal:
        """Construct from rows known to be distinct and mutually incomparable.

        Skips the antichain reduction; callers carry the proof obligation.
        """
        norms = rows.sum(axis=1)
        order = np.lexsort(tuple(rows[:, k] for k in reversed(range(n))) + (norms,))
        return cls(n, _rows=np.ascontiguousarray(rows[order]))

    @classmethod
    def zero(cls, n: int) -> MonomialIdeal:
        return cls(n, _rows=np.empty((0, n), dtype=np.int64))

    @classmethod
    def unit(cls, n: int) -> MonomialIdeal:
        return cls(n, _rows=np.zeros((1, n), dtype=np.int64))

    @property
    def gens(self) -> tuple[tuple[int, ...], ...]:
        if self._gens is None:
            self._gens = tuple(tuple(int(c) for c in row) for row in self._rows)
        return self._gens

    @property
    def rows(self) -> np.ndarray:
        return self._rows

    @property
    def is_zero(self) -> bool:
        return self._rows.shape[0] == 0

    @property
    def is_unit(self) -> bool:
        return self._rows.shape[0] == 1 and not self._rows.any()

    @property
    def is_proper(self) -> bool:
        return not self.is_unit

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._rows, other._rows)

    def __hash__(self):
        if self._hashval is None:
            self._hashval = hash((self.n, self.gens))
        return self._hashval

    def __repr__(self):
        return f"MonomialIdeal({self.n}, {list(self.gens)})"

    def __str__(self):
        if self.is_zero:
            return "<0>"
        return "<" + ", ".join(format_monomial(g) for g in self.gens) + ">"

    def _check_same_ring(self, other: MonomialIdeal):
        if self.n != other.n:
            raise ValidationError(f"variable counts differ: {self.n} vs {other.n}")

    # -- membership and containment ------------------------------------

    def contains_monomial(self, v) -> bool:
        vs = _as_rows(self.n, [v])
        return bool(backend.dominated_mask(vs, self._rows)[0])

    def contains(self, other: MonomialIdeal) -> bool:
        """other ⊆ self (every generator of other is a monomial of self)."""
        self._check_same_ring(other)
        if other.is_zero:
            return True
        vs = other._rows
        # nested families share most generators verbatim, so settle exact
        # matches by key lookup and only run dominance on the leftovers
        shared = _exact_member_mask(vs, self._rows)
        if shared is not None:
            if shared.all():
                return True
            vs = vs[~shared]
        return bool(backend.dominated_mask(vs, self._rows).all())

    # -- ring operations -------------------------------------------------

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        self._check_same_ring(other)
        return self._wrap(self.n, np.concatenate([self._rows, other._rows]))

    def __mul__(self, other: MonomialIdeal) -> MonomialIdeal:
        return self.product(other)

    def product(self, other: MonomialIdeal, box=None) -> MonomialIdeal:
        self._check_same_ring(other)
        sums = backend.pairwise_sums_boxed(self._rows, other._rows, _box_array(self.n, box))
        return self._wrap(self.n, sums)

    def __pow__(self, m: int) -> MonomialIdeal:
        return self.power(m)

    def power(self, m: int, box=None) -> MonomialIdeal:
        if m < 0:
            raise ValidationError(f"power wants a nonnegative exponent, got {m}")
        acc = MonomialIdeal.unit(self.n)
        for _ in range(m):
            acc = acc.product(self, box=box)
            if acc.is_zero:
                break
        return acc

    def intersect(self, other: MonomialIdeal) -> MonomialIdeal:
        self._check_same_ring(other)
        if self.is_zero or other.is_zero:
            return MonomialIdeal.zero(self.n)
        maxima = np.maximum(self._rows[:, None, :], other._rows[None, :, :])
        return self._wrap(self.n, maxima.reshape(-1, self.n))

    # -- Frobenius operations ---------------------------------------------

    def bracket_power(self, q: int) -> MonomialIdeal:
        if q < 1:
            raise ValidationError(f"bracket power wants q >= 1, got {q}")
        return self._wrap(self.n, self._rows * q)

    def bracket_root(self, q: int) -> MonomialIdeal:
        """Smallest ideal b with self ⊆ b^[q]: floor-divide the generators."""
        if q < 1:
            raise ValidationError(f"bracket root wants q >= 1, got {q}")
        return self._wrap(self.n, self._rows // q)


def _exact_member_mask(vs: np.ndarray, rows: np.ndarray) -> np.ndarray | None:
    """Which vs occur verbatim among rows; None if packing does not apply."""
    if vs.shape[0] == 0 or rows.shape[0] == 0:
        return None
    n = vs.shape[1]
    maxc = max(int(vs.max()), int(rows.max()))
    bits = max(1, (maxc + 1).bit_length())
    if n * bits > 62:
        return None

    def pack(a):
        keys = a[:, 0].copy()
        for k in range(1, n):
            keys = (keys << bits) | a[:, k]
        return keys

    return np.isin(pack(vs), pack(rows))


def _box_array(n: int, box) -> np.ndarray:
    if box is None:
        return np.full(n, UNBOUNDED, dtype=np.int64)
    arr = np.array([UNBOUNDED if b is None else int(b) for b in box], dtype=np.int64)
    if arr.shape != (n,):
        raise ValidationError(f"pruning box must have length {n}")
    return arr


def minimalize(gens, n: int | None = None) -> MonomialIdeal:
    """The antichain of minimal exponent vectors, as a MonomialIdeal."""
    gens = [tuple(g) for g in gens]
    if n is None:
        if not gens:
            raise ValidationError("cannot infer the variable count from an empty set")
        n = len(gens[0])
    return MonomialIdeal(n, gens)


def diag(u) -> MonomialIdeal:
    """The diagonal ideal <x1^u1, ..., xn^un>; requires all u_i positive."""
    u = tuple(int(c) for c in u)
    if any(c <= 0 for c in u):
        raise ValidationError(f"diagonal ideal wants positive exponents, got {u}")
    n = len(u)
    rows = np.zeros((n, n), dtype=np.int64)
    for i, c in enumerate(u):
        rows[i, i] = c
    return MonomialIdeal._wrap(n, rows)


def power_of_m(d: int, n: int) -> MonomialIdeal:
    """The d-th power of the maximal ideal <x1, ..., xn>."""
    if d < 0:
        raise ValidationError(f"power_of_m wants d >= 0, got {d}")
    if d == 0:
        return MonomialIdeal.unit(n)
    return MonomialIdeal(n, weak_compositions(d, n))


@dataclass(frozen=True)
class GradedWeights:
    """The grading deg(x_i) = d/d_i attached to exponents dvec, d = lcm(dvec)."""

    dvec: tuple[int, ...]
    d: int = field(init=False)
    weights: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if not self.dvec or any(c < 1 for c in self.dvec):
            raise ValidationError(f"exponents must be positive, got {self.dvec}")
        d = 1
        for c in self.dvec:
            d = d * c // gcd(d, c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "weights", tuple(d // c for c in self.dvec))

    @property
    def n(self) -> int:
        return len(self.dvec)

    def deg(self, u) -> int:
        return sum(w * c for w, c in zip(self.weights, u))

    def ubar(self, u) -> tuple[int, ...]:
        return tuple(w * c for w, c in zip(self.weights, u))


def R_gt(m: int, weights: GradedWeights) -> MonomialIdeal:
    """The ideal generated by all monomials of weighted degree > m.

    A minimal generator v satisfies m < deg(v) <= m + w_i for every i with
    v_i > 0, so the search space is the simplex deg(v) <= m + max(w).
    """
    if m < 0:
        raise ValidationError(f"R_gt wants m >= 0, got {m}")
    w = weights.weights
    n = len(w)
    cap = m + max(w)
    out = []
    v = [0] * n

    def rec(i: int, degv: int):
        if i == n:
            if degv > m and all(v[j] == 0 or degv - w[j] <= m for j in range(n)):
                out.append(tuple(v))
            return
        vi = 0
        while degv + w[i] * vi <= cap:
            v[i] = vi
            rec(i + 1, degv + w[i] * vi)
            vi += 1
        v[i] = 0

    rec(0, 0)
    return MonomialIdeal(n, out)


# -- generalized Frobenius powers ----------------------------------------


def frob_power_int(I: MonomialIdeal, m: int, p: int, box=None) -> MonomialIdeal:
    """The m-th Frobenius power of I, via the base-p digits of m.

    With a pruning box, generators with any coordinate >= the bound are
    discarded after every step; the result then only answers noncontainment
    queries against ideals whose complement lies inside the box.
    """
    if m < 0:
        raise ValidationError(f"Frobenius power wants m >= 0, got {m}")
    barr = _box_array(I.n, box)
    return MonomialIdeal(I.n, _rows=_canonical_rows(_frob_rows(I, m, p, barr)))


def _frob_rows(I: MonomialIdeal, m: int, p: int, barr: np.ndarray) -> np.ndarray:
    acc = np.zeros((1, I.n), dtype=np.int64)
    for pos, digit in enumerate(base_p_digits(m, p)):
        if digit == 0:
            continue
        factor = _digit_factor_rows(I, digit, pos, p, barr)
        acc = _canonical_rows(backend.pairwise_sums_boxed(acc, factor, barr))
        if acc.shape[0] == 0:
            break
    return acc


def _digit_factor_rows(I: MonomialIdeal, digit: int, pos: int, p: int, barr: np.ndarray) -> np.ndarray:
    """Generators of (I^digit)^[p^pos], pruned so the scaled rows fit the box."""
    q = p**pos
    fbox = np.minimum((barr - 1) // q + 1, UNBOUNDED)
    rows = I.power(digit, box=tuple(int(b) for b in fbox)).rows
    return rows * q


def frob_power_gens(I: MonomialIdeal, m: int, p: int, cap: int = 2_000_000) -> MonomialIdeal:
    """Same ideal as frob_power_int, built the other way: from products h^s of
    the generators with (m choose s) nonzero mod p.  Used as a cross-oracle.
    """
    if m < 0:
        raise ValidationError(f"Frobenius power wants m >= 0, got {m}")
    if m == 0:
        return MonomialIdeal.unit(I.n)
    if I.is_zero:
        return MonomialIdeal.zero(I.n)
    l = len(I.gens)
    if comb(m + l - 1, l - 1) > cap:
        raise ResourceLimitError(
            f"composition enumeration needs {comb(m + l - 1, l - 1)} terms, cap is {cap}"
        )
    grows = I.rows
    out = []
    for s in weak_compositions(m, l):
        if carry_free(s, p):
            out.append(np.array(s, dtype=np.int64) @ grows)
    return MonomialIdeal(I.n, out)


def is_power_of(q: int, p: int) -> bool:
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def frob_power_rational(I: MonomialIdeal, m: int, q: int, p: int) -> MonomialIdeal:
    """I^[m/q] = (I^[m])^[1/q], for q a power of p."""
    if not is_power_of(q, p):
        raise ValidationError(f"q must be a power of p, got q={q}, p={p}")
    return frob_power_int(I, m, p).bracket_root(q)


# -- composition enumeration ----------------------------------------------


def weak_compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative ints summing to `total`, lex ascending."""
    if parts < 1:
        raise ValidationError(f"need at least one part, got {parts}")

    def rec(rest: int, k: int):
        if k == 1:
            yield (rest,)
            return
        for first in range(rest + 1):
            for tail in rec(rest - first, k - 1):
                yield (first,) + tail

    yield from rec(total, parts)


# -- text syntax ------------------------------------------------------------

_MD_RE = re.compile(r"^m(?:\^(\d+))?\((\d+)\)$")
_DIAG_RE = re.compile(r"^diag\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)$")
_VAR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_ideal(text: str, n: int | None = None) -> MonomialIdeal:
    """Parse the CLI ideal syntax.

    Accepted forms: `m^d(n)` for a power of the maximal ideal, `diag(a,b,...)`
    for a diagonal ideal, `0`/`1` for the zero/unit ideal (these need an
    explicit n), or a comma-separated list of monomials like `x1^6, x2^4`.
    """
    text = text.strip()
    m = _MD_RE.match(text)
    if m:
        d = int(m.group(1)) if m.group(1) else 1
        nn = int(m.group(2))
        if n is not None and n != nn:
            raise ValidationError(f"ideal is in {nn} variables but n={n} was given")
        return power_of_m(d, nn)
    m = _DIAG_RE.match(text)
    if m:
        u = tuple(int(c) for c in m.group(1).split(","))
        if n is not None and n != len(u):
            raise ValidationError(f"ideal is in {len(u)} variables but n={n} was given")
        return diag(u)
    if text == "0":
        if n is None:
            raise ValidationError("the zero ideal needs an explicit variable count")
        return MonomialIdeal.zero(n)
    if text == "1":
        if n is None:
            raise ValidationError("the unit ideal needs an explicit variable count")
        return MonomialIdeal.unit(n)

    monos = [parse_monomial(part) for part in text.split(",")]
    width = max((max(mono, default=0) for mono in monos), default=0)
    if n is None:
        n = width
        if n == 0:
            raise ValidationError(f"cannot infer the variable count from {text!r}")
    elif width > n:
        raise ValidationError(f"monomials use x{width} but n={n} was given")
    gens = []
    for mono in monos:
        v = [0] * n
        for idx, e in mono.items():
            v[idx - 1] += e
        gens.append(tuple(v))
    return MonomialIdeal(n, gens)


def parse_monomial(text: str) -> dict[int, int]:
    """One monomial in x<i>^<e> factors joined by `*` or spaces; `1` is allowed."""
    out: dict[int, int] = {}
    factors = [f for f in re.split(r"[*\s]+", text.strip()) if f]
    if not factors:
        raise ValidationError("empty monomial")
    for f in factors:
        if f == "1":
            continue
        m = _VAR_RE.match(f)
        if not m:
            raise ValidationError(f"cannot parse monomial factor {f!r}")
        idx = int(m.group(1))
        if idx < 1:
            raise ValidationError(f"variable indices start at x1, got {f!r}")
        out[idx] = out.get(idx, 0) + (int(m.group(2)) if m.group(2) else 1)
    return out


def format_monomial(v) -> str:
    parts = []
    for i, e in enumerate(v):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"
