"""Good factorizations ``c = p * q * r`` and what they buy.

A factorization is good when ``p`` is 1 or irreducible, ``q`` has
nonnegative coefficients, and ``r`` is 1 or irreducible with no positive
real root among its roots of least modulus.  When the common denominator of
all Poincare series over a ring has one, finiteness of Ext or Tor forces a
finite projective (or injective) dimension; :func:`resolve_finiteness`
replays that argument on concrete numerators.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .polyring import IntPoly, ONE, div_exact_or_none, factor, format_poly, is_irreducible
from .rootcert import Indeterminate, RootReport, certified_roots, r_condition

DEFAULT_PRINGSHEIM_HORIZON = 10_000


class HypothesisViolated(ValueError):
    pass


@dataclass(frozen=True)
class Evidence:
    p_status: str  # "one" or "irreducible"
    q_nonneg: bool
    r_status: str  # "one" or "condition_holds"
    r_report: RootReport | None = None

    def to_json(self) -> dict:
        return {
            "p_status": self.p_status,
            "q_nonneg": self.q_nonneg,
            "r_status": self.r_status,
            "r_report": self.r_report.to_json() if self.r_report else None,
        }


@dataclass(frozen=True)
class GoodFactorizationCertificate:
    p: IntPoly
    q: IntPoly
    r: IntPoly
    evidence: Evidence

    def product(self) -> IntPoly:
        return self.p * self.q * self.r

    def to_json(self, c: IntPoly | None = None) -> dict:
        out = {} if c is None else {"c": format_poly(c)}
        out.update(
            p=format_poly(self.p),
            q=format_poly(self.q),
            r=format_poly(self.r),
            evidence=self.evidence.to_json(),
        )
        return out


def _positive_constant(f: IntPoly) -> IntPoly:
    return -f if f[0] < 0 else f


def _candidates(c: IntPoly) -> list[IntPoly]:
    """Distinct irreducible factors of c, signed so that f(0) > 0."""
    fac = factor(c)
    return [_positive_constant(f) for f, _ in fac.factors]


def _make_certificate(p, q, r, with_report=True) -> GoodFactorizationCertificate:
    report = certified_roots(r) if (with_report and r.degree >= 1) else None
    return GoodFactorizationCertificate(
        p=p,
        q=q,
        r=r,
        evidence=Evidence(
            p_status="one" if p == ONE else "irreducible",
            q_nonneg=q.is_nonnegative(),
            r_status="one" if r == ONE else "condition_holds",
            r_report=report,
        ),
    )


@dataclass
class SearchLog:
    """Per-candidate notes collected while searching."""

    indeterminate: list[IntPoly] = field(default_factory=list)


def find_good_factorization(c: IntPoly, log: SearchLog | None = None) -> GoodFactorizationCertificate | None:
    """First good factorization of ``c`` in a fixed search order, or None.

    ``p`` runs over 1 and then the irreducible factors (degree, then
    coefficients), and for each ``p`` so does ``r``; ``q`` is whatever is
    left.  The cheap nonnegativity test on ``q`` runs before the root-modulus
    test on ``r``.  A candidate ``r`` whose test is Indeterminate is skipped
    and noted in ``log``.
    """
    if not c:
        raise ValueError("zero polynomial")
    if c[0] <= 0:
        raise ValueError("need c(0) > 0")
    irreducibles = _candidates(c)
    slots = [ONE] + irreducibles
    for p in slots:
        rest = div_exact_or_none(c, p)
        if rest is None:
            continue
        for r in slots:
            q = div_exact_or_none(rest, r)
            if q is None or not q.is_nonnegative():
                continue
            if r != ONE:
                try:
                    ok = r_condition(r)
                except Indeterminate:
                    if log is not None:
                        log.indeterminate.append(r)
                    continue
                if not ok:
                    continue
            return _make_certificate(p, q, r)
    return None


class Reason(str, enum.Enum):
    OK = "ok"
    PRODUCT_MISMATCH = "product_mismatch"
    P_NOT_IRREDUCIBLE = "p_not_irreducible"
    Q_NEGATIVE_COEFFICIENT = "q_negative_coefficient"
    R_NOT_IRREDUCIBLE = "r_not_irreducible"
    R_CONDITION_FAILS = "r_condition_fails"
    R_INDETERMINATE = "r_indeterminate"


def validate_certificate(c: IntPoly, cert: GoodFactorizationCertificate) -> tuple[bool, Reason]:
    """Recheck every clause from scratch; returns ``(ok, reason)``."""
    if cert.p * cert.q * cert.r != c:
        return False, Reason.PRODUCT_MISMATCH
    if not cert.q.is_nonnegative():
        return False, Reason.Q_NEGATIVE_COEFFICIENT
    if cert.p != ONE and (cert.p.degree < 1 or not is_irreducible(cert.p)):
        return False, Reason.P_NOT_IRREDUCIBLE
    if cert.r != ONE:
        if cert.r.degree < 1 or not is_irreducible(cert.r):
            return False, Reason.R_NOT_IRREDUCIBLE
        try:
            if not r_condition(cert.r):
                return False, Reason.R_CONDITION_FAILS
        except Indeterminate:
            return False, Reason.R_INDETERMINATE
    return True, Reason.OK


# -- Pringsheim ------------------------------------------------------------------


class PringsheimVerdict(str, enum.Enum):
    NEGATIVE_COEFFICIENT_FOUND = "NegativeCoefficientFound"
    DIVIDES_EXACTLY = "DividesExactly"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class PringsheimResult:
    verdict: PringsheimVerdict
    index: int | None = None


def pringsheim_check(numerator: IntPoly, r: IntPoly, horizon: int | None = None) -> PringsheimResult:
    """Look for a negative coefficient in ``numerator / r``.

    If r has no positive real root of least modulus and does not divide the
    numerator, a nonnegative expansion would contradict Pringsheim's theorem,
    so a negative coefficient must appear somewhere; we scan ``horizon`` terms.
    """
    horizon = DEFAULT_PRINGSHEIM_HORIZON if horizon is None else horizon
    if r[0] != 1:
        raise ValueError("r must have constant term 1")
    if div_exact_or_none(numerator, r) is not None:
        return PringsheimResult(PringsheimVerdict.DIVIDES_EXACTLY)
    d = r.coeffs
    window: list[int] = []
    for i in range(horizon):
        acc = numerator[i]
        for j in range(1, min(i, len(d) - 1) + 1):
            acc -= d[j] * window[i - j]
        if acc < 0:
            return PringsheimResult(PringsheimVerdict.NEGATIVE_COEFFICIENT_FOUND, i)
        window.append(acc)
    return PringsheimResult(PringsheimVerdict.INCONCLUSIVE)


# -- the two cases -----------------------------------------------------------------


class FinitenessSide(str, enum.Enum):
    PROJ_DIM_FINITE = "ProjDimFinite"
    INJ_DIM_FINITE = "InjDimFinite"


@dataclass(frozen=True)
class FinitenessVerdict:
    side: FinitenessSide
    witness_polynomial: IntPoly


def resolve_finiteness(b: IntPoly, cert: GoodFactorizationCertificate, m: IntPoly, n: IntPoly) -> FinitenessVerdict:
    """Decide which of P_M = m/b, I_N = n/b is a polynomial.

    ``p`` divides ``m * n``, so being 1 or irreducible it divides ``m`` or
    ``n``.  In the first case ``q P_M = (m/p)/r`` has nonnegative
    coefficients, so ``r`` must divide ``m/p`` and the witness ``q P_M`` is a
    polynomial; the second case is symmetric.
    """
    if cert.p * cert.q * cert.r != b:
        raise HypothesisViolated("certificate does not multiply to b")
    if div_exact_or_none(m * n, b) is None:
        raise HypothesisViolated("b does not divide m * n")
    for side, num in ((FinitenessSide.PROJ_DIM_FINITE, m), (FinitenessSide.INJ_DIM_FINITE, n)):
        reduced = div_exact_or_none(num, cert.p)
        if reduced is None:
            continue
        witness = div_exact_or_none(reduced, cert.r)
        if witness is None:
            found = pringsheim_check(reduced, cert.r)
            raise HypothesisViolated(
                f"r = {cert.r} does not divide {reduced}; q times the series is not nonnegative ({found.verdict.value} at {found.index})"
            )
        if not witness.is_nonnegative():
            raise HypothesisViolated(f"witness {witness} has a negative coefficient")
        if div_exact_or_none(num, b) is None:
            # q * P = witness with both nonnegative forces P polynomial
            raise HypothesisViolated(f"{num}/{b} is not a polynomial although q * series is")
        return FinitenessVerdict(side, witness)
    raise HypothesisViolated("p divides neither m nor n")

