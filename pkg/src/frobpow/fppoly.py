"""Sparse multivariate polynomial arithmetic over the prime field F_p,
Frobenius q-th roots of principal ideals, and test ideals of principal
polynomials at parameters m/q.

Coefficients live in the prime field only, where c^(1/q) = c; taking the
q-th root of a principal ideal <f> then amounts to splitting f over the
monomial basis of R over R^q: bucket the terms of f by their exponents mod q
and floor-divide each bucket's exponents by q.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .arith import base_p_digits, is_prime, multinomial_mod_p
from .errors import ResourceLimitError, ValidationError
from .ideal import MonomialIdeal, is_power_of, weak_compositions

_DEFAULT_TERM_BUDGET = 500_000


class FpPolynomial:
    """A polynomial in n variables over F_p, as a map exponent -> coefficient.

    No zero coefficients are stored; terms print in lexicographic order and
    equality is structural.
    """

    __slots__ = ("p", "n", "terms")

    def __init__(self, p: int, n: int, terms=()):
        if not is_prime(p):
            raise ValidationError(f"p = {p} is not prime")
        if n < 1:
            raise ValidationError(f"need at least one variable, got n={n}")
        self.p = p
        self.n = n
        clean: dict[tuple[int, ...], int] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for expo, coeff in items:
            expo = tuple(int(c) for c in expo)
            if len(expo) != n or any(c < 0 for c in expo):
                raise ValidationError(f"bad exponent vector {expo}")
            c = (clean.get(expo, 0) + coeff) % p
            if c:
                clean[expo] = c
            else:
                clean.pop(expo, None)
        self.terms = clean

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: FpPolynomial):
        if self.p != other.p or self.n != other.n:
            raise ValidationError("polynomials live in different rings")

    def __eq__(self, other):
        if not isinstance(other, FpPolynomial):
            return NotImplemented
        return self.p == other.p and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.n, tuple(sorted(self.terms.items()))))

    def __add__(self, other: FpPolynomial) -> FpPolynomial:
        self._check_compatible(other)
        merged = dict(self.terms)
        for expo, coeff in other.terms.items():
            c = (merged.get(expo, 0) + coeff) % self.p
            if c:
                merged[expo] = c
            else:
                merged.pop(expo, None)
        return FpPolynomial(self.p, self.n, merged)

    def __mul__(self, other: FpPolynomial) -> FpPolynomial:
        self._check_compatible(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                c = (out.get(expo, 0) + c1 * c2) % self.p
                if c:
                    out[expo] = c
                else:
                    out.pop(expo, None)
        return FpPolynomial(self.p, self.n, out)

    def diagonal_shape(self) -> tuple[tuple[int, int], ...] | None:
        """((variable, degree), ...) when every term is a pure power of a
        distinct variable; None otherwise."""
        seen = []
        used = set()
        for expo in self.terms:
            support = [i for i, c in enumerate(expo) if c]
            if len(support) != 1 or support[0] in used:
                return None
            used.add(support[0])
            seen.append((support[0], expo[support[0]]))
        return tuple(sorted(seen)) if seen else None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for expo in sorted(self.terms):
            coeff = self.terms[expo]
            mono = "*".join(
                f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                for i, e in enumerate(expo)
                if e
            )
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"FpPolynomial(p={self.p}, {self})"


def poly_pow(f: FpPolynomial, m: int, budget: int = _DEFAULT_TERM_BUDGET) -> FpPolynomial:
    """f^m by repeated squaring, or by carry-free composition enumeration
    when f is diagonal; raises when the term count passes the budget."""
    if m < 0:
        raise ValidationError(f"exponent must be nonnegative, got {m}")
    if m == 0:
        return FpPolynomial(f.p, f.n, {(0,) * f.n: 1})
    shape = f.diagonal_shape()
    if shape is not None and len(shape) >= 2:
        return _diagonal_pow(f, shape, m, budget)
    result = None
    square = f
    for bit in base_p_digits(m, 2):
        if bit:
            result = square if result is None else result * square
            if len(result.terms) > budget:
                raise ResourceLimitError(f"f^{m} passed the term budget {budget}")
        square = square * square
        if len(square.terms) > budget:
            raise ResourceLimitError(f"f^{m} passed the term budget {budget}")
    return result


def _diagonal_pow(f: FpPolynomial, shape, m: int, budget: int) -> FpPolynomial:
    """(b_1 x_{i_1}^{d_1} + ... )^m via the terms with nonzero multinomials.

    Exponent splittings that survive mod p add digit by digit in base p, so
    the expansion enumerates weak compositions of each digit of m.
    """
    p, n = f.p, f.n
    variables = [i for i, _ in shape]
    degrees = [d for _, d in shape]
    coeffs = []
    for i, d in shape:
        expo = tuple(d if j == i else 0 for j in range(n))
        coeffs.append(f.terms[expo])
    parts = len(shape)
    # per-digit splittings with their multinomial coefficients mod p
    splittings = [((0,) * parts, 1)]
    for pos, digit in enumerate(base_p_digits(m, p)):
        layer = []
        for comp in weak_compositions(digit, parts):
            layer.append((comp, multinomial_mod_p(comp, p)))
        scale = p**pos
        merged = []
        for base_comp, base_c in splittings:
            for comp, c in layer:
                merged.append(
                    (tuple(a + b * scale for a, b in zip(base_comp, comp)), base_c * c % p)
                )
        splittings = merged
        if len(splittings) > budget:
            raise ResourceLimitError(f"f^{m} passed the term budget {budget}")
    out: dict[tuple[int, ...], int] = {}
    for comp, mult in splittings:
        coeff = mult
        for c, s in zip(coeffs, comp):
            coeff = coeff * pow(c, s, p) % p
        expo = [0] * n
        for i, d, s in zip(variables, degrees, comp):
            expo[i] = d * s
        out[tuple(expo)] = coeff
    return FpPolynomial(p, n, out)


def frob_root_principal(f: FpPolynomial, q: int) -> list[FpPolynomial]:
    """Generators of the smallest ideal whose q-th bracket power contains f.

    One generator per residue-class bucket mu in [0, q)^n: the terms of f
    congruent to mu coordinatewise, with exponents floor-divided by q.
    """
    if not is_power_of(q, f.p):
        raise ValidationError(f"q = {q} is not a power of p = {f.p}")
    buckets: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    for expo, coeff in f.terms.items():
        mu = tuple(c % q for c in expo)
        root = tuple(c // q for c in expo)
        bucket = buckets.setdefault(mu, {})
        bucket[root] = (bucket.get(root, 0) + coeff) % f.p
    gens = []
    for mu in sorted(buckets):
        poly = FpPolynomial(f.p, f.n, buckets[mu])
        if not poly.is_zero:
            gens.append(poly)
    return gens


@dataclass(frozen=True)
class TestIdealResult:
    """Generators of tau(f^(m/q)), with a monomial-ideal view when every
    generator is a single term."""

    generators: tuple[FpPolynomial, ...]
    monomial: MonomialIdeal | None

    @property
    def is_monomial(self) -> bool:
        return self.monomial is not None


def test_ideal(
    f: FpPolynomial, m: int, q: int, budget: int = _DEFAULT_TERM_BUDGET
) -> TestIdealResult:
    """tau(f^(m/q)) = the q-th Frobenius root of <f^m>, for q a power of p."""
    if m < 0:
        raise ValidationError(f"m must be nonnegative, got {m}")
    gens = frob_root_principal(poly_pow(f, m, budget=budget), q)
    if not gens:
        return TestIdealResult(generators=(), monomial=MonomialIdeal.zero(f.n))
    if all(len(g.terms) == 1 for g in gens):
        monomial = MonomialIdeal(f.n, [next(iter(g.terms)) for g in gens])
    else:
        monomial = None
    return TestIdealResult(generators=tuple(gens), monomial=monomial)


# -- text syntax -------------------------------------------------------------

_TERM_SPLIT_RE = re.compile(r"(?=[+-])")
_FACTOR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_fp_polynomial(text: str, p: int, n: int | None = None) -> FpPolynomial:
    """Parse `c*x1^a*x2^b + ...` with integer coefficients reduced mod p."""
    text = text.replace(" ", "")
    if not text:
        raise ValidationError("empty polynomial")
    raw_terms = [t for t in _TERM_SPLIT_RE.split(text) if t]
    parsed = []
    width = 0
    for raw in raw_terms:
        sign = 1
        if raw[0] in "+-":
            sign = -1 if raw[0] == "-" else 1
            raw = raw[1:]
        if not raw:
            raise ValidationError("dangling sign in polynomial")
        coeff = sign
        expo: dict[int, int] = {}
        for factor in raw.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            match = _FACTOR_RE.match(factor)
            if not match:
                raise ValidationError(f"cannot parse polynomial factor {factor!r}")
            idx = int(match.group(1))
            if idx < 1:
                raise ValidationError(f"variable indices start at x1, got {factor!r}")
            expo[idx] = expo.get(idx, 0) + (int(match.group(2)) if match.group(2) else 1)
            width = max(width, idx)
        parsed.append((expo, coeff))
    if n is None:
        n = width
        if n == 0:
            raise ValidationError(f"cannot infer the variable count from {text!r}")
    elif width > n:
        raise ValidationError(f"polynomial uses x{width} but n={n} was given")
    terms = []
    for expo, coeff in parsed:
        vec = [0] * n
        for idx, e in expo.items():
            vec[idx - 1] = e
        terms.append((tuple(vec), coeff))
    return FpPolynomial(p, n, terms)
