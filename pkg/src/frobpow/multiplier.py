"""Characteristic-zero multiplier ideals of diagonal ideals and powers of the
maximal ideal, through the single-inequality Newton-polyhedron membership
test, plus the desk-scale comparison against Frobenius-power families in the
p ≡ 1 class.

A monomial x^v lies in the multiplier ideal at parameter t exactly when
v + 1 sits strictly inside t times the Newton polyhedron; for the two ideal
shapes supported here that is one strict rational inequality, so everything
is decided with exact fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .arith import is_prime, lpr
from .errors import ConsistencyError, ValidationError
from .ideal import MonomialIdeal, power_of_m

# Reduction of a monomial ideal mod p keeps the generator exponents verbatim
# (the coefficients are all 1), so it is the identity; this marker records
# that a family has been carried into characteristic p.
REDUCTION_MOD_P_IS_IDENTITY = True


@dataclass(frozen=True)
class NewtonMembership:
    """Membership data for a Newton polyhedron cut out by one inequality.

    diagonal case: x^v qualifies at t iff sum_i (v_i + 1)/d_i > t;
    maximal-ideal-power case: iff (|v| + n)/d > t.
    """

    dvec: tuple[int, ...] | None = None
    md: tuple[int, int] | None = None

    def __post_init__(self):
        if (self.dvec is None) == (self.md is None):
            raise ValidationError("specify exactly one of dvec (diagonal) or md=(d, n)")
        if self.dvec is not None and (not self.dvec or any(c < 1 for c in self.dvec)):
            raise ValidationError(f"diagonal exponents must be positive, got {self.dvec}")
        if self.md is not None and (self.md[0] < 1 or self.md[1] < 1):
            raise ValidationError(f"need positive d and n, got {self.md}")

    @classmethod
    def diagonal(cls, dvec) -> NewtonMembership:
        return cls(dvec=tuple(int(c) for c in dvec))

    @classmethod
    def max_ideal_power(cls, d: int, n: int) -> NewtonMembership:
        return cls(md=(d, n))

    @property
    def n(self) -> int:
        return len(self.dvec) if self.dvec is not None else self.md[1]

    def qualifies(self, v, t: Fraction) -> bool:
        if self.dvec is not None:
            return sum(Fraction(c + 1, dc) for c, dc in zip(v, self.dvec)) > t
        d, n = self.md
        return Fraction(sum(v) + n, d) > t


@dataclass(frozen=True)
class RationalFamily:
    """Piecewise-constant family on [0, 1) with exact rational breakpoints.

    Same reading as IdealFamily: pieces[i] holds on [breakpoint_i,
    breakpoint_{i+1}), with the unit ideal implicit on [0, first breakpoint).
    """

    label: str
    n: int
    pieces: tuple[tuple[Fraction, MonomialIdeal], ...]
    note: str = ""

    def value_at(self, t: Fraction) -> MonomialIdeal:
        value = MonomialIdeal.unit(self.n)
        for breakpoint, ideal in self.pieces:
            if breakpoint <= t:
                value = ideal
            else:
                break
        return value


def multiplier_ideal(nm: NewtonMembership, t: Fraction) -> MonomialIdeal:
    """The multiplier ideal at parameter t in [0, 1), as a monomial ideal."""
    t = Fraction(t)
    if not 0 <= t < 1:
        raise ValidationError(f"parameter must lie in [0, 1), got {t}")
    if nm.dvec is not None:
        gens = [
            v
            for v in iter_product(*(range(dc) for dc in nm.dvec))
            if nm.qualifies(v, t)
        ]
        return MonomialIdeal(nm.n, gens)
    d, n = nm.md
    for j in range(d + 1):
        if Fraction(j + n, d) > t:
            return power_of_m(j, n)
    raise ConsistencyError(f"no qualifying degree at t={t} < 1")  # unreachable


def jumping_numbers(nm: NewtonMembership) -> RationalFamily:
    """All jumps of the multiplier ideal inside [0, 1), with their ideals.

    The candidate jumps are the finitely many values the membership
    inequality can attain at its threshold; each one is a genuine jump, since
    the monomial attaining it leaves the ideal there.
    """
    values: set[Fraction] = set()
    if nm.dvec is not None:
        label = "J(diag(" + ",".join(str(c) for c in nm.dvec) + ")^t)"
        for v in iter_product(*(range(dc) for dc in nm.dvec)):
            value = sum(Fraction(c + 1, dc) for c, dc in zip(v, nm.dvec))
            if value < 1:
                values.add(value)
    else:
        d, n = nm.md
        label = f"J((m^{d}({n}))^t)"
        j = 0
        while Fraction(j + n, d) < 1:
            values.add(Fraction(j + n, d))
            j += 1
    pieces = tuple((t, multiplier_ideal(nm, t)) for t in sorted(values))
    previous = MonomialIdeal.unit(nm.n)
    for t, ideal in pieces:
        if not (previous.contains(ideal) and previous != ideal):
            raise ConsistencyError(f"multiplier family fails strict nesting at {t}")
        previous = ideal
    return RationalFamily(label=label, n=nm.n, pieces=pieces)


@dataclass(frozen=True)
class ComparisonReport:
    """Outcome of the test-ideal vs multiplier-ideal desk check."""

    label: str
    p: int
    equal: bool
    mismatches: tuple[str, ...]
    frobenius: RationalFamily
    multiplier: RationalFamily

    def __str__(self):
        head = f"{self.label} at p={self.p}: " + ("EQUAL" if self.equal else "MISMATCH")
        if self.equal:
            return head
        return head + "\n" + "\n".join("  " + m for m in self.mismatches)


def compare_test_vs_multiplier(dvec, p: int) -> ComparisonReport:
    """Compare the Frobenius-power family of diag(dvec) in the p ≡ 1 (mod d)
    class, evaluated at p, with the multiplier-ideal jumping numbers.

    Requires p prime, p ≡ 1 mod lcm(dvec) and p > lcm(dvec); breakpoints and
    ideals must agree piece by piece, and every disagreement is itemized.
    """
    from . import closedform
    from .arith import ResidueClass
    from .ideal import GradedWeights

    dvec = tuple(int(c) for c in dvec)
    d = GradedWeights(dvec).d
    if not is_prime(p):
        raise ValidationError(f"p = {p} is not prime")
    if lpr(p, d) != lpr(1, d):
        raise ValidationError(f"p = {p} is not congruent to 1 mod {d}")
    if p <= d:
        raise ValidationError(f"p = {p} does not exceed d = {d}")

    family = closedform.family_diag(dvec, ResidueClass(1 % d if d > 1 else 1, d))
    frob = family.eval_at_prime(p, strict=False)
    mult = jumping_numbers(NewtonMembership.diagonal(dvec))

    mismatches = []
    fb = [t for t, _ in frob.pieces]
    mb = [t for t, _ in mult.pieces]
    if fb != mb:
        mismatches.append(f"breakpoints differ: frobenius {fb} vs multiplier {mb}")
    for t, ideal in frob.pieces:
        other = mult.value_at(t)
        if other != ideal:
            mismatches.append(f"at t={t}: frobenius {ideal} vs multiplier {other}")
    for t, ideal in mult.pieces:
        other = frob.value_at(t)
        if other != ideal:
            mismatches.append(f"at t={t}: multiplier {ideal} vs frobenius {other}")

    label = "diag(" + ",".join(str(c) for c in dvec) + ")"
    return ComparisonReport(
        label=label,
        p=p,
        equal=not mismatches,
        mismatches=tuple(mismatches),
        frobenius=frob,
        multiplier=mult,
    )
