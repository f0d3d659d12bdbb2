"""Command-line front end.

Subcommands: crit, family, frobpow, mu, nu, test-ideal, multiplier, compare,
verify.  Residue classes are written rho%d; concrete evaluation goes through
--at-p, which checks primality, class membership and the admissibility bound
instead of leaving the "p large enough" conventions implicit.

Exit codes: 0 success, 1 failed verification/comparison, 2 validation error,
3 resource-cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import backend
from .arith import ResidueClass, is_prime
from .closedform import (
    IdealFamily,
    SymbolicCrit,
    crit_diag,
    crit_md,
    family_diag,
    family_md,
    mu_diag_closed_form,
    mu_md_closed_form,
)
from .errors import ResourceLimitError, ValidationError
from .fppoly import parse_fp_polynomial, test_ideal
from .ideal import (
    GradedWeights,
    MonomialIdeal,
    diag,
    frob_power_rational,
    is_power_of,
    parse_ideal,
    power_of_m,
)
from .multiplier import NewtonMembership, RationalFamily, compare_test_vs_multiplier, jumping_numbers
from .oracle import InvariantQuery, mu, mu_diag_fast, nu


def _parse_class(text: str) -> ResidueClass:
    try:
        rho, d = text.split("%")
        return ResidueClass(int(rho), int(d))
    except ValidationError:
        raise
    except Exception:
        raise ValidationError(f"residue class must look like rho%d, got {text!r}")


def _parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.split(","))
    except Exception:
        raise ValidationError(f"expected a comma-separated integer vector, got {text!r}")


def _parse_t(text: str) -> tuple[int, int]:
    try:
        m, q = text.split("/")
        return int(m), int(q)
    except Exception:
        raise ValidationError(f"parameter must look like m/q, got {text!r}")


def _family_kind(text: str):
    """Classify an ideal expression as a maximal-ideal power or a diagonal ideal."""
    import re

    md = re.match(r"^m(?:\^(\d+))?\((\d+)\)$", text.strip())
    if md:
        return ("md", int(md.group(1)) if md.group(1) else 1, int(md.group(2)))
    dg = re.match(r"^diag\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)$", text.strip())
    if dg:
        return ("diag", tuple(int(c) for c in dg.group(1).split(",")))
    raise ValidationError(
        f"closed forms exist for m^d(n) and diag(...) ideals only, got {text!r}"
    )


# -- serialization ------------------------------------------------------------


def _crit_doc(crit: SymbolicCrit) -> dict:
    return {
        "k": crit.k,
        "d": crit.d,
        "s": crit.s if isinstance(crit.s, int) else "inf",
        "r": crit.r,
    }


def _gens_doc(ideal: MonomialIdeal) -> list[list[int]]:
    return [list(g) for g in ideal.gens]


def _family_doc(fam: IdealFamily) -> dict:
    doc = {
        "ideal": fam.label,
        "class": {"d": fam.rc.d, "rho": fam.rc.rho},
        "pmin": fam.pmin,
        "pieces": [
            {"breakpoint": _crit_doc(crit), "generators": _gens_doc(ideal)}
            for crit, ideal in fam.pieces
        ],
    }
    if fam.note:
        doc["note"] = fam.note
    return doc


def _rational_family_doc(fam: RationalFamily, extra: dict | None = None) -> dict:
    doc = dict(extra or {})
    doc["pieces"] = [
        {
            "breakpoint": {"num": str(t.numerator), "den": str(t.denominator)},
            "generators": _gens_doc(ideal),
        }
        for t, ideal in fam.pieces
    ]
    if fam.note:
        doc["note"] = fam.note
    return doc


def _emit_json(doc) -> None:
    print(json.dumps(doc, sort_keys=True, indent=2))


def _print_family_table(pieces, n: int, final: str = "1") -> None:
    bounds = [str(b) for b, _ in pieces] + [final]
    print(f"  [0, {bounds[0]}): {MonomialIdeal.unit(n)}")
    for i, (_, ideal) in enumerate(pieces):
        print(f"  [{bounds[i]}, {bounds[i + 1]}): {ideal}")


# -- subcommands ---------------------------------------------------------------


def _build_family(args) -> IdealFamily:
    kind = _family_kind(args.ideal)
    rc = _parse_class(args.cls)
    if kind[0] == "md":
        _, d, n = kind
        return family_md(d, n, rc)
    return family_diag(kind[1], rc)


def _eval_family(fam: IdealFamily, p: int):
    """Evaluate at p, tolerating primes between d and pmin with a warning.

    The pmin bound is what the closed forms are proven under; smaller primes
    in the class often still satisfy them (frobpow verify checks that), so
    the CLI degrades to a warning instead of refusing.
    """
    if p >= fam.pmin:
        return fam.eval_at_prime(p)
    ev = fam.eval_at_prime(p, strict=False)
    print(
        f"warning: p = {p} is below the proven admissibility bound pmin = {fam.pmin}; "
        f"run `frobpow verify` to cross-check this prime against the oracle",
        file=sys.stderr,
    )
    return ev


def _cmd_family(args) -> int:
    fam = _build_family(args)
    if args.at_p is not None:
        ev = _eval_family(fam, args.at_p)
        if args.json:
            doc = _family_doc(fam)
            doc["pieces"] = _rational_family_doc(ev)["pieces"]
            doc["p"] = args.at_p
            _emit_json(doc)
        else:
            print(f"Frobenius powers of {fam.label} at p = {args.at_p}:")
            _print_family_table(ev.pieces, fam.n)
        return 0
    if args.json:
        _emit_json(_family_doc(fam))
        return 0
    print(
        f"Frobenius powers of {fam.label} for p ≡ {fam.rc.rho} (mod {fam.rc.d}), "
        f"p >= {fam.pmin}:"
    )
    if not fam.pieces:
        print(f"  [0, 1): {MonomialIdeal.unit(fam.n)}")
        if fam.note:
            print(f"  note: {fam.note}")
        return 0
    _print_family_table(fam.pieces, fam.n)
    return 0


def _check_eval_prime(rc: ResidueClass, p: int) -> None:
    if not is_prime(p):
        raise ValidationError(f"p = {p} is not prime")
    if not rc.contains(p):
        raise ValidationError(f"p = {p} is not congruent to {rc.rho} mod {rc.d}")
    if p <= rc.d:
        raise ValidationError(f"p = {p} does not exceed the modulus d = {rc.d}")


def _cmd_crit(args) -> int:
    kind = _family_kind(args.ideal)
    rc = _parse_class(args.cls)
    if args.at_p is not None:
        _check_eval_prime(rc, args.at_p)
    if args.u is not None:
        u = _parse_vector(args.u)
        if any(c <= 0 for c in u):
            raise ValidationError(f"the point u must have positive coordinates, got {u}")
        if kind[0] == "md":
            _, d, n = kind
            if len(u) != n:
                raise ValidationError(f"u has {len(u)} coordinates, the ideal has {n}")
            crit = crit_md(sum(u), d, n, rc)
        else:
            crit = crit_diag(u, kind[1], rc)
        crits = [(crit, u)]
    else:
        fam = _build_family(args)
        crits = [(c, None) for c, _ in fam.pieces]
    if args.json:
        doc = {"ideal": args.ideal, "class": {"d": rc.d, "rho": rc.rho}}
        doc["crits"] = [
            {
                "crit": _crit_doc(c),
                **({"u": list(u)} if u else {}),
                **(
                    {"value": str(c.value_at(args.at_p))}
                    if args.at_p is not None
                    else {}
                ),
            }
            for c, u in crits
        ]
        _emit_json(doc)
        return 0
    for c, u in crits:
        prefix = f"crit at u={u}: " if u else "crit: "
        if args.at_p is not None:
            print(f"{prefix}{c}  = {c.value_at(args.at_p)} at p={args.at_p}")
        else:
            print(f"{prefix}{c}")
    return 0


def _cmd_frobpow(args) -> int:
    ideal = parse_ideal(args.ideal, n=args.n)
    m, q = _parse_t(args.t)
    p = args.p
    if not is_prime(p):
        raise ValidationError(f"p = {p} is not prime")
    if not is_power_of(q, p):
        raise ValidationError(f"q = {q} must be a power of p = {p}")
    shifts = 0
    if m >= q:
        if not args.skoda:
            raise ValidationError(
                "parameters t >= 1 are served only via the Skoda reduction; pass --skoda"
            )
        while m >= q:
            m -= q
            shifts += 1
    result = frob_power_rational(ideal, m, q, p)
    for _ in range(shifts):
        result = result * ideal
    if args.json:
        _emit_json(
            {
                "ideal": str(ideal),
                "t": args.t,
                "p": p,
                "generators": _gens_doc(result),
            }
        )
    else:
        print(result)
    return 0


def _make_query(args) -> InvariantQuery:
    a = parse_ideal(args.ideal, n=args.n)
    b = parse_ideal(args.b, n=a.n)
    q = args.p**args.e
    return InvariantQuery(a, b, q, args.p)


def _cmd_mu(args) -> int:
    value = mu(_make_query(args), cap=args.cap)
    print(json.dumps({"mu": value}) if args.json else value)
    return 0


def _cmd_nu(args) -> int:
    value = nu(_make_query(args), cap=args.cap)
    print(json.dumps({"nu": value}) if args.json else value)
    return 0


def _cmd_test_ideal(args) -> int:
    poly = parse_fp_polynomial(args.poly, args.p, n=args.n)
    m, q = _parse_t(args.t)
    if not is_power_of(q, args.p):
        raise ValidationError(f"q = {q} must be a power of p = {args.p}")
    result = test_ideal(poly, m, q, budget=args.cap or 500_000)
    if args.json:
        _emit_json(
            {
                "poly": str(poly),
                "p": args.p,
                "t": args.t,
                "generators": [str(g) for g in result.generators],
                "monomial": _gens_doc(result.monomial) if result.is_monomial else None,
            }
        )
        return 0
    if result.is_monomial:
        print(result.monomial)
    else:
        print("non-monomial output; generators:")
        for g in result.generators:
            print(f"  {g}")
    return 0


def _cmd_multiplier(args) -> int:
    kind = _family_kind(args.ideal)
    if kind[0] == "md":
        nm = NewtonMembership.max_ideal_power(kind[1], kind[2])
    else:
        nm = NewtonMembership.diagonal(kind[1])
    if args.t is not None:
        num, den = _parse_t(args.t)
        value = jumping_numbers(nm).value_at(Fraction(num, den))
        if args.json:
            _emit_json({"ideal": args.ideal, "t": args.t, "generators": _gens_doc(value)})
        else:
            print(value)
        return 0
    fam = jumping_numbers(nm)
    if args.json:
        _emit_json(_rational_family_doc(fam, {"ideal": args.ideal}))
    else:
        print(f"multiplier ideals of {args.ideal} on [0, 1):")
        _print_family_table(fam.pieces, nm.n)
    return 0


def _cmd_compare(args) -> int:
    kind = _family_kind(args.ideal)
    if kind[0] != "diag":
        raise ValidationError("compare works on diagonal ideals")
    report = compare_test_vs_multiplier(kind[1], args.at_p)
    if args.json:
        _emit_json(
            {
                "ideal": report.label,
                "p": report.p,
                "equal": report.equal,
                "mismatches": list(report.mismatches),
            }
        )
    else:
        print(report)
    return 0 if report.equal else 1


def _cmd_verify(args) -> int:
    """Cross-check brute-force mu against the closed forms at a concrete prime."""
    kind = _family_kind(args.ideal)
    p = args.p
    if not is_prime(p):
        raise ValidationError(f"p = {p} is not prime")
    checks = 0
    failures: list[str] = []

    def record(tag, expect, got):
        nonlocal checks
        checks += 1
        if expect != got:
            failures.append(f"{tag}: closed form {expect}, oracle {got}")

    if kind[0] == "md":
        _, d, n = kind
        if p <= d:
            raise ValidationError(f"need p > d, got p={p}, d={d}")
        a = power_of_m(d, n)
        from .closedform import compositions

        for k in range(n, d + 1):
            for u in compositions(k, n):
                for e in range(1, args.max_e + 1):
                    got = mu(InvariantQuery(a, diag(u), p**e, p), cap=args.cap)
                    record(f"mu(m^{d}, {u}, {p}^{e})", mu_md_closed_form(k, d, n, p, e), got)
    else:
        dvec = kind[1]
        weights = GradedWeights(dvec)
        d = weights.d
        if p <= weights.n * d - weights.n or d % p == 0:
            raise ValidationError(
                f"need an admissible prime: p > nd-n = {weights.n * d - weights.n} and p not dividing {d}"
            )
        a = diag(dvec)
        balanced = len(set(dvec)) == 1
        from .closedform import _points_in_scope

        for u in _points_in_scope(weights):
            for e in range(1, args.max_e + 1):
                got = mu(InvariantQuery(a, diag(u), p**e, p), cap=args.cap)
                record(f"mu(diag{dvec}, {u}, {p}^{e})", mu_diag_closed_form(u, dvec, p, e), got)
                if balanced:
                    record(
                        f"mu_diag_fast(diag{dvec}, {u}, {p}^{e})",
                        mu_diag_fast(u, p**e, dvec[0], p),
                        got,
                    )
    passed = not failures
    if args.json:
        _emit_json(
            {
                "ideal": args.ideal,
                "p": p,
                "max_e": args.max_e,
                "checks": checks,
                "pass": passed,
                "failures": failures,
            }
        )
    else:
        for f in failures:
            print(f"FAIL {f}")
        print(f"{'PASS' if passed else 'FAIL'}: {checks} oracle/closed-form checks at p={p}")
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobpow",
        description="Frobenius powers, critical exponents, test ideals and "
        "multiplier ideals of monomial ideals, in exact arithmetic.",
    )
    parser.add_argument("--threads", type=int, default=None, help="thread cap for the jit backend")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = add("family", _cmd_family, help="piecewise family of Frobenius powers on [0,1)")
    sp.add_argument("--ideal", required=True, help="m^d(n) or diag(a,b,...)")
    sp.add_argument("--class", dest="cls", required=True, help="residue class rho%%d")
    sp.add_argument("--at-p", type=int, default=None, help="evaluate at a concrete admissible prime")

    sp = add("crit", _cmd_crit, help="critical exponents (all, or at a point --u)")
    sp.add_argument("--ideal", required=True, help="m^d(n) or diag(a,b,...)")
    sp.add_argument("--class", dest="cls", required=True, help="residue class rho%%d")
    sp.add_argument("--u", default=None, help="point u as comma-separated integers")
    sp.add_argument("--at-p", type=int, default=None, help="evaluate at a concrete admissible prime")

    sp = add("frobpow", _cmd_frobpow, help="the Frobenius power a^[t] at t = m/q")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--n", type=int, default=None, help="variable count when not inferable")
    sp.add_argument("--t", required=True, help="parameter m/q with q a power of p")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--skoda", action="store_true", help="allow t >= 1 via the Skoda reduction a^[t] = a*a^[t-1]")

    for name, func in (("mu", _cmd_mu), ("nu", _cmd_nu)):
        sp = add(name, func, help=f"brute-force {name}(a, b, p^e)")
        sp.add_argument("--ideal", required=True, help="the ideal a")
        sp.add_argument("--b", required=True, help="the ideal b")
        sp.add_argument("--n", type=int, default=None)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--e", type=int, default=1)
        sp.add_argument("--cap", type=int, default=None, help="search cap")

    sp = add("test-ideal", _cmd_test_ideal, help="test ideal of a polynomial at t = m/q")
    sp.add_argument("--poly", required=True, help="e.g. 'x1^3 + 2*x2^4 + x3^5'")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--t", required=True, help="parameter m/q with q a power of p")
    sp.add_argument("--cap", type=int, default=None, help="term budget")

    sp = add("multiplier", _cmd_multiplier, help="multiplier ideals / jumping numbers on [0,1)")
    sp.add_argument("--ideal", required=True, help="m^d(n) or diag(a,b,...)")
    sp.add_argument("--t", default=None, help="parameter a/b; omit for the whole family")

    sp = add("compare", _cmd_compare, help="test ideal vs multiplier ideal in the p=1 class")
    sp.add_argument("--ideal", required=True, help="diag(a,b,...)")
    sp.add_argument("--at-p", type=int, required=True, help="prime congruent to 1 mod lcm")

    sp = add("verify", _cmd_verify, help="oracle vs closed-form mu sweep at a concrete prime")
    sp.add_argument("--ideal", required=True, help="m^d(n) or diag(a,b,...)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--max-e", type=int, default=1)
    sp.add_argument("--cap", type=int, default=None, help="oracle search cap")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.threads is not None:
            backend.set_num_threads(args.threads)
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
