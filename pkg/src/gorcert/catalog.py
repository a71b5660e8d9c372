"""Common Poincare denominators of Gorenstein rings of codimension <= 4.

Every finite module over a non-complete-intersection Gorenstein ring of
codimension 3 or 4 has Poincare series with denominator
``c(t) = d(t) * (1 + t)**m`` where (type, d, m) is one of:

    G(l+1)   codim 3   1 - t - l t^2 - t^3 + t^4                 m = 1   l >= 4
    GTE      codim 4   1 - 2t - (l-2)t^2 + t^3 + t^4 - t^5        m = 2   l >= 5
    GGO      codim 4   1 - 2t - (l-2)t^2 - 2t^3 + t^4            m = 2   l >= 5
    GH(p)    codim 4   1 - 2t - (l-2)t^2 + (p-2)t^3 + 2t^4 - t^5  m = 2   1 <= p <= l, l >= 5

The completion has an embedded deformation exactly when d(1) = 0, i.e. for
GH(p) with p = l.  This module builds the table, sweeps it for good
factorizations, and re-derives every hand case split independently of the
generic factorizer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .goodfact import GoodFactorizationCertificate, SearchLog, find_good_factorization, validate_certificate
from .polyring import IntPoly, ONE, div_exact_or_none, factor, format_poly

ONE_PLUS_T = IntPoly((1, 1))

TYPES = ("G", "GTE", "GGO", "GH", "MinimalMultiplicity", "HypersurfaceNote")


class ParameterOutOfRange(ValueError):
    pass


class VerificationFailure(AssertionError):
    def __init__(self, rc: "RingClass", message: str):
        super().__init__(f"{rc}: {message}")
        self.ring_class = rc


@dataclass(frozen=True)
class RingClass:
    variant: str
    l: int | None = None
    p: int | None = None
    codim: int | None = None

    def __post_init__(self):
        v, l, p = self.variant, self.l, self.p
        if v not in TYPES:
            raise ParameterOutOfRange(f"unknown type {v!r}")
        if v == "G" and (l is None or l < 4):
            raise ParameterOutOfRange("G needs l >= 4")
        if v in ("GTE", "GGO") and (l is None or l < 5):
            raise ParameterOutOfRange(f"{v} needs l >= 5")
        if v == "GH" and (l is None or p is None or l < 5 or not 1 <= p <= l):
            raise ParameterOutOfRange("GH needs 1 <= p <= l and l >= 5")
        if v == "MinimalMultiplicity" and (self.codim is None or self.codim < 2):
            raise ParameterOutOfRange("minimal multiplicity needs codim >= 2")
        if v == "HypersurfaceNote" and self.codim is not None and self.codim > 1:
            raise ParameterOutOfRange("the hypersurface note covers codim <= 1")

    @property
    def is_table_row(self) -> bool:
        return self.variant in ("G", "GTE", "GGO", "GH")

    def __str__(self):
        if self.variant == "GH":
            return f"GH(l={self.l}, p={self.p})"
        if self.variant in ("G", "GTE", "GGO"):
            return f"{self.variant}(l={self.l})"
        return f"{self.variant}(codim={self.codim})"

    def to_json(self) -> dict:
        out = {"type": self.variant}
        for k in ("l", "p", "codim"):
            v = getattr(self, k)
            if v is not None:
                out[k] = v
        return out


HYPERSURFACE_NOTE = (
    "codim <= 1: the completion is Q/(f) with Q regular and f regular; finite "
    "Ext or Tor already forces finite projective dimension of M or N"
)


@dataclass(frozen=True)
class CatalogEntry:
    d: IntPoly
    m: int
    c: IntPoly
    codim: int


def denominator(rc: RingClass) -> CatalogEntry:
    l, p = rc.l, rc.p
    if rc.variant == "G":
        d, m, codim = IntPoly((1, -1, -l, -1, 1)), 1, 3
    elif rc.variant == "GTE":
        d, m, codim = IntPoly((1, -2, -(l - 2), 1, 1, -1)), 2, 4
    elif rc.variant == "GGO":
        d, m, codim = IntPoly((1, -2, -(l - 2), -2, 1)), 2, 4
    elif rc.variant == "GH":
        d, m, codim = IntPoly((1, -2, -(l - 2), p - 2, 2, -1)), 2, 4
    elif rc.variant == "MinimalMultiplicity":
        d, m, codim = IntPoly((1, -rc.codim, 1)), 0, rc.codim
    else:
        raise ParameterOutOfRange("the hypersurface note has no denominator")
    return CatalogEntry(d=d, m=m, c=d * ONE_PLUS_T**m, codim=codim)


def has_embedded_deformation(rc: RingClass) -> bool:
    if not rc.is_table_row:
        raise ParameterOutOfRange(f"{rc} is not a codim 3/4 table row")
    d_at_1 = denominator(rc).d(1)
    by_type = rc.variant == "GH" and rc.p == rc.l
    if (d_at_1 == 0) != by_type:
        raise AssertionError(f"d(1) = {d_at_1} disagrees with the type test for {rc}")
    return d_at_1 == 0


# -- sweeps ---------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRanges:
    g_max: int = 200
    gte_max: int = 200
    ggo_max: int = 200
    gh_max: int = 100


def sweep_classes(ranges: SweepRanges = SweepRanges()):
    """All table classes in deterministic order."""
    for l in range(4, ranges.g_max + 1):
        yield RingClass("G", l)
    for l in range(5, ranges.gte_max + 1):
        yield RingClass("GTE", l)
    for l in range(5, ranges.ggo_max + 1):
        yield RingClass("GGO", l)
    for l in range(5, ranges.gh_max + 1):
        for p in range(1, l + 1):
            yield RingClass("GH", l, p)


@dataclass
class ClassRecord:
    ring_class: RingClass
    entry: CatalogEntry
    embedded_deformation: bool
    certificate: GoodFactorizationCertificate | None = None
    failure: str | None = None
    indeterminate: list[IntPoly] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "class": self.ring_class.to_json(),
            "d": format_poly(self.entry.d),
            "m": self.entry.m,
            "c": format_poly(self.entry.c),
            "d_at_1": self.entry.d(1),
            "d_at_minus_1": self.entry.d(-1),
            "embedded_deformation": self.embedded_deformation,
        }
        if self.certificate is not None:
            cert = self.certificate
            out["certificate"] = {"p": format_poly(cert.p), "q": format_poly(cert.q), "r": format_poly(cert.r)}
        else:
            out["failure"] = self.failure
        return out


@dataclass
class Theorem1Report:
    records: list[ClassRecord] = field(default_factory=list)

    @property
    def checked(self) -> list[ClassRecord]:
        return [r for r in self.records if not r.embedded_deformation]

    @property
    def failures(self) -> list[ClassRecord]:
        return [r for r in self.checked if r.certificate is None]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        n = len(self.checked)
        if self.ok:
            return f"all classes certified ({n} classes, {len(self.records) - n} embedded-deformation classes reported only)"
        return f"{len(self.failures)} of {n} classes failed"


def certify_class(rc: RingClass) -> ClassRecord:
    entry = denominator(rc)
    embedded = has_embedded_deformation(rc)
    log = SearchLog()
    cert = find_good_factorization(entry.c, log)
    rec = ClassRecord(rc, entry, embedded, indeterminate=list(log.indeterminate))
    if cert is None:
        rec.failure = "indeterminate" if log.indeterminate else "no good factorization"
        return rec
    ok, reason = validate_certificate(entry.c, cert)
    if not ok:
        rec.failure = f"certificate rejected: {reason.value}"
        return rec
    rec.certificate = cert
    return rec


def verify_theorem1(ranges: SweepRanges = SweepRanges(), strict: bool = True) -> Theorem1Report:
    """Certify every non-embedded-deformation class in ``ranges``.

    Embedded-deformation classes (GH with p = l) are swept and recorded but
    never asserted.  With ``strict`` the first failure raises.
    """
    report = Theorem1Report()
    for rc in sweep_classes(ranges):
        rec = certify_class(rc)
        report.records.append(rec)
        if strict and not rec.embedded_deformation and rec.certificate is None:
            raise VerificationFailure(rc, rec.failure or "no certificate")
    return report


# -- hand case analysis -----------------------------------------------------------


@dataclass(frozen=True)
class Split:
    """A solution of a shape-constrained coefficient system."""

    shape: str  # "quad_quad" or "quad_cubic"
    eps: int
    a: int
    b: int
    c: int | None
    quad: IntPoly
    other: IntPoly

    @property
    def quad_irreducible(self) -> bool:
        return _quadratic_irreducible(self.quad)


@dataclass
class CaseReport:
    ring_class: RingClass
    d: IntPoly
    d_at_1: int
    d_at_minus_1: int
    branch: str
    linear_power: int = 0
    cofactor: IntPoly | None = None
    splits: list[Split] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)
    hand_factors: list[IntPoly] = field(default_factory=list)
    agrees_with_factor: bool = False

    def to_json(self) -> dict:
        return {
            "class": self.ring_class.to_json(),
            "d": format_poly(self.d),
            "d_at_1": self.d_at_1,
            "d_at_minus_1": self.d_at_minus_1,
            "branch": self.branch,
            "linear_power": self.linear_power,
            "cofactor": format_poly(self.cofactor) if self.cofactor is not None else None,
            "splits": [
                {"shape": s.shape, "eps": s.eps, "a": s.a, "b": s.b, "c": s.c, "quad": format_poly(s.quad), "other": format_poly(s.other), "quad_irreducible": s.quad_irreducible}
                for s in self.splits
            ],
            "checks": self.checks,
            "hand_factors": [format_poly(f) for f in self.hand_factors],
            "agrees_with_factor": self.agrees_with_factor,
        }


def _quadratic_irreducible(q: IntPoly) -> bool:
    disc = q[1] ** 2 - 4 * q[0] * q[2]
    return disc < 0 or math.isqrt(disc) ** 2 != disc


def _norm_bound(f: IntPoly) -> int:
    # Landau-Mignotte for a quadratic factor: |middle| <= 2 ||f||_2
    return 2 * math.isqrt(sum(c * c for c in f.coeffs)) + 2


def solve_quad_quad(f: IntPoly) -> list[Split]:
    """All (1 + a t + eps t^2)(1 + b t + eps' t^2) = f with eps eps' = lead."""
    if f.degree != 4 or f[0] != 1 or abs(f.lead) != 1:
        raise ValueError("need a quartic with f(0) = 1 and lead +-1")
    out = []
    bound = _norm_bound(f)
    for eps in (1, -1):
        eps2 = f.lead * eps
        for a in range(-bound, bound + 1):
            b = f[1] - a
            # t^2 and t^3 coefficients of the product
            if eps + a * b + eps2 != f[2] or a * eps2 + b * eps != f[3]:
                continue
            quad, other = IntPoly((1, a, eps)), IntPoly((1, b, eps2))
            if quad * other == f:
                out.append(Split("quad_quad", eps, a, b, None, quad, other))
    return out


def solve_quad_cubic(f: IntPoly) -> list[Split]:
    """All (1 + a t + eps t^2)(1 + b t + c t^2 + eps' t^3) = f, eps eps' = lead."""
    if f.degree != 5 or f[0] != 1 or abs(f.lead) != 1:
        raise ValueError("need a quintic with f(0) = 1 and lead +-1")
    out = []
    bound = _norm_bound(f)
    for eps in (1, -1):
        eps2 = f.lead * eps
        for a in range(-bound, bound + 1):
            b = f[1] - a
            c = f[2] - a * b - eps
            if eps2 + a * c + eps * b != f[3] or a * eps2 + eps * c != f[4]:
                continue
            quad, other = IntPoly((1, a, eps)), IntPoly((1, b, c, eps2))
            if quad * other == f:
                out.append(Split("quad_cubic", eps, a, b, c, quad, other))
    return out


def _no_pm1_root(f: IntPoly) -> bool:
    return f(1) != 0 and f(-1) != 0


def _hand_irreducibles(f: IntPoly) -> list[IntPoly] | None:
    """Irreducible factors of a +-1-constant, +-1-lead polynomial of degree <= 5.

    Rational roots can only be +-1; after removing them, degree 2 and 3
    remainders are irreducible, degree 4 and 5 ones are split with the
    coefficient systems above. Returns None if a shape is unhandled.
    """
    out = []
    for lin in (IntPoly((1, 1)), IntPoly((1, -1))):
        while f.degree >= 1:
            q = div_exact_or_none(f, lin)
            if q is None:
                break
            out.append(lin)
            f = q
    if f[0] == -1:
        f = -f
    if f.degree <= 0:
        return out
    if f.degree <= 3:
        return out + [f]
    splits = solve_quad_quad(f) if f.degree == 4 else solve_quad_cubic(f) if f.degree == 5 else None
    if splits is None:
        return None
    good = [s for s in splits if s.quad_irreducible]
    if not good:
        return out + [f]
    s = good[0]
    rest = _hand_irreducibles(s.other)
    return None if rest is None else out + [s.quad] + rest


def _normalize(fs):
    return sorted((f.primitive() for f in fs), key=lambda f: (f.degree, f.coeffs))


def hand_case_crosscheck(rc: RingClass) -> CaseReport:
    """Replay the case analysis for one class and compare with :func:`factor`."""
    if not rc.is_table_row:
        raise ParameterOutOfRange(f"{rc} is not a codim 3/4 table row")
    d = denominator(rc).d
    l, p = rc.l, rc.p
    rep = CaseReport(rc, d, d(1), d(-1), branch="irreducible")
    # rational roots of d can only be +-1
    k = 0
    cof = d
    while True:
        q = div_exact_or_none(cof, ONE_PLUS_T)
        if q is None:
            break
        cof, k = q, k + 1
    rep.linear_power = k
    if k:
        rep.branch = "linear"
        rep.cofactor = cof
        if rc.variant == "G":
            rep.checks["l == 4"] = l == 4
        elif rc.variant == "GGO":
            rep.checks["l == 8"] = l == 8
        elif rc.variant == "GTE":
            rep.checks["l == 6"] = l == 6
            rep.checks["cofactor == 1 - 4t + 3t^2 - t^3"] = cof == IntPoly((1, -4, 3, -1))
        else:
            rep.checks["p + l == 10"] = p + l == 10
            e = IntPoly((1, -3, p - 5, 3, -1))
            rep.checks["d == e * (1 + t)"] = d == e * ONE_PLUS_T
            # e has a linear factor only for p = 5, i.e. the excluded p = l = 5
            rep.checks["e(-1) == 0 iff p == 5"] = (e(-1) == 0) == (p == 5)
            # orient so the factor carrying -t^2 is 1 + a t - t^2
            rep.splits = solve_quad_quad(e)
            a_values = [s.a if s.quad[2] == -1 else s.b for s in rep.splits]
            rep.checks["quad x quad forces a == 0"] = all(a == 0 for a in a_values)
            rep.checks["no split with irreducible quadratic"] = not any(
                s.quad_irreducible and _quadratic_irreducible(s.other) for s in rep.splits
            )
    elif rc.variant in ("G", "GGO"):
        rep.splits = solve_quad_quad(d)
        good = [s for s in rep.splits if s.quad_irreducible and _quadratic_irreducible(s.other)]
        rep.checks["eps == -1 never occurs"] = all(s.eps == 1 for s in rep.splits)
        rep.checks["ab < 0"] = all(s.a * s.b < 0 for s in good)
        if rc.variant == "G":
            disc = 4 * l + 9
            square = math.isqrt(disc) ** 2 == disc
            rep.checks["split iff 4l + 9 is a square"] = bool(good) == square
            rep.checks["a + b == -1 and ab == -(l + 2)"] = all(s.a + s.b == -1 and s.a * s.b == -(l + 2) for s in good)
        if good:
            rep.branch = "quad_quad"
    elif rc.variant == "GH" and p == l:
        # t = 1 is a root here, so the quad x cubic analysis does not apply
        rep.branch = "embedded"
        rep.checks["d(1) == 0"] = d(1) == 0
        rep.cofactor = div_exact_or_none(d, IntPoly((1, -1)))
        rep.checks["(1 - t) divides d"] = rep.cofactor is not None
    else:
        rep.splits = solve_quad_cubic(d)
        good = [s for s in rep.splits if s.quad_irreducible]
        if rc.variant == "GTE":
            rep.checks["a^2 == 1 + 3 eps"] = all(s.a * s.a == 1 + 3 * s.eps for s in rep.splits)
            rep.checks["no split with irreducible quadratic"] = not good
        else:
            rep.checks["eps == -1 and 2a == l - p"] = all(s.eps == -1 and 2 * s.a == l - p for s in good)
            rep.checks["l == a^2 + a + 5 and p == a^2 - a + 5"] = all(
                l == s.a * s.a + s.a + 5 and p == s.a * s.a - s.a + 5 for s in good
            )
            if p < l:
                expected = (l - p) % 2 == 0 and ((l - p) // 2) ** 2 + (l - p) // 2 == l - 5
                rep.checks["split iff a = (l-p)/2 solves a^2 + a = l - 5"] = bool(good) == expected
        if good:
            rep.branch = "quad_cubic"
    hand = _hand_irreducibles(d)
    if hand is not None:
        rep.hand_factors = _normalize(hand)
        generic = []
        for f, mult in factor(d).factors:
            generic += [f] * mult
        rep.agrees_with_factor = rep.hand_factors == _normalize(generic)
    return rep


def crosscheck_ok(rep: CaseReport) -> bool:
    return rep.agrees_with_factor and all(rep.checks.values())


__all__ = [
    "RingClass",
    "CatalogEntry",
    "SweepRanges",
    "ClassRecord",
    "Theorem1Report",
    "CaseReport",
    "Split",
    "ParameterOutOfRange",
    "VerificationFailure",
    "HYPERSURFACE_NOTE",
    "denominator",
    "has_embedded_deformation",
    "sweep_classes",
    "certify_class",
    "verify_theorem1",
    "hand_case_crosscheck",
    "crosscheck_ok",
    "solve_quad_quad",
    "solve_quad_cubic",
]
