"""Rational formal power series with integer coefficients.

A :class:`RationalSeries` is a reduced fraction ``num / den`` with
``den(0) == 1``, so its expansion has integer coefficients whenever ``num``
does.  Poincare, Bass and Hilbert series all live here.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .polyring import IntPoly, ONE, div_exact_or_none, full_gcd, squarefree_part
from . import rootcert

DEFAULT_HORIZON = 500


class HilbertShapeViolation(ValueError):
    pass


class DegreeViolation(ValueError):
    pass


class NegativeCoefficient(ValueError):
    pass


def default_horizon() -> int:
    raw = os.environ.get("GOODFACT_HORIZON", DEFAULT_HORIZON)
    try:
        horizon = int(raw)
    except ValueError:
        raise ValueError(f"GOODFACT_HORIZON must be an integer, got {raw!r}") from None
    if horizon < 1:
        raise ValueError("GOODFACT_HORIZON must be positive")
    return horizon


@dataclass(frozen=True)
class RationalSeries:
    num: IntPoly
    den: IntPoly

    def __post_init__(self):
        if self.den[0] != 1:
            raise ValueError("denominator must have constant term 1; use RationalSeries.of")

    @classmethod
    def of(cls, num, den=ONE) -> "RationalSeries":
        """Reduce ``num/den`` and normalize the denominator to den(0) = 1."""
        num = num if isinstance(num, IntPoly) else IntPoly(num)
        den = den if isinstance(den, IntPoly) else IntPoly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls(IntPoly(), ONE)
        g = full_gcd(num, den)
        num, den = num // g, den // g
        if den[0] == -1:
            num, den = -num, -den
        if den[0] != 1:
            raise ValueError(f"{num}/{den} has no integral power series expansion")
        return cls(num, den)

    @classmethod
    def polynomial(cls, p) -> "RationalSeries":
        return cls.of(p, ONE)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _as_series(other)
        return RationalSeries.of(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_series(other))

    def __rsub__(self, other):
        return _as_series(other) - self

    def __mul__(self, other):
        other = _as_series(other)
        return RationalSeries.of(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def substitute_neg(self) -> "RationalSeries":
        """``t -> -t``."""
        return RationalSeries.of(self.num.mirror(), self.den.mirror())

    def shift(self, k: int) -> "RationalSeries":
        """Multiply by ``t**k``."""
        return RationalSeries(self.num.shift(k), self.den)

    # -- queries ------------------------------------------------------------

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def as_polynomial(self) -> IntPoly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def coefficients(self, n: int) -> list[int]:
        return coefficients(self, n)

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _as_series(x) -> RationalSeries:
    if isinstance(x, RationalSeries):
        return x
    if isinstance(x, (int, IntPoly)):
        return RationalSeries.polynomial(x)
    raise TypeError(f"cannot treat {x!r} as a series")


def series_add(a, b):
    return _as_series(a) + _as_series(b)


def series_mul(a, b):
    return _as_series(a) * _as_series(b)


def coefficients(rs: RationalSeries, n: int) -> list[int]:
    """First ``n`` coefficients via the recurrence ``den * b = num``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = rs.den.coeffs
    out: list[int] = []
    for i in range(n):
        acc = rs.num[i]
        for j in range(1, min(i, len(d) - 1) + 1):
            acc -= d[j] * out[i - j]
        out.append(acc)
    return out


def long_division(num: IntPoly, den: IntPoly, n: int) -> list[int]:
    """Ascending long division of ``num`` by ``den`` (den(0) = +-1), n terms."""
    if den[0] not in (1, -1):
        raise ValueError("constant term of the divisor must be a unit")
    rem = list(num.coeffs) + [0] * max(0, n + den.degree - len(num.coeffs))
    out = []
    for i in range(n):
        q = rem[i] * den[0]  # den[0] is its own inverse
        out.append(q)
        if q:
            for j, c in enumerate(den.coeffs):
                if i + j < len(rem):
                    rem[i + j] -= q * c
    return out


def is_polynomial(rs: RationalSeries) -> bool:
    return rs.is_polynomial()


# -- Foxby / Levin identities --------------------------------------------------


def levin_truncation(p_m: RationalSeries, h_mnl: RationalSeries, p_k: RationalSeries) -> RationalSeries:
    """``P_M - t * H(-t) * P_k``: the Poincare series of L from that of L/m^nL.

    ``h_mnl`` must have the shape of a Hilbert series, i.e. its reduced
    denominator divides a power of ``1 - t``.
    """
    if not _is_power_of_one_minus_t(h_mnl.den):
        raise HilbertShapeViolation(f"denominator {h_mnl.den} is not a power of 1 - t")
    return p_m - (h_mnl.substitute_neg() * p_k).shift(1)


def _is_power_of_one_minus_t(p: IntPoly) -> bool:
    base = IntPoly((1, -1))
    while p.degree > 0:
        q = div_exact_or_none(p, base)
        if q is None:
            return False
        p = q
    return p == ONE


def foxby_bass(g: IntPoly, d: int, p_l: RationalSeries) -> RationalSeries:
    """Bass series ``g(t) + t**d * P_L(t)`` with ``deg g < d``."""
    if g.degree >= d:
        raise DegreeViolation(f"deg {g} = {g.degree} is not below {d}")
    return RationalSeries.polynomial(g) + p_l.shift(d)


def one_plus_t_multiplicity(product: IntPoly) -> tuple[int, IntPoly]:
    """Write ``product = (1 + t)**e * a(t)`` with ``a(-1) != 0``."""
    if not product:
        raise ValueError("zero polynomial")
    base = IntPoly((1, 1))
    e = 0
    while True:
        q = div_exact_or_none(product, base)
        if q is None:
            return e, product
        product, e = q, e + 1


def bass_multiplier_exponent(c_times_pk: IntPoly, dim: int) -> int:
    """``m = max(0, dim - e)`` where (1+t)^e exactly divides c(t) P_k(t)."""
    e, _ = one_plus_t_multiplicity(c_times_pk)
    return max(0, dim - e)


# -- Betti growth ---------------------------------------------------------------


@dataclass(frozen=True)
class BettiProfile:
    source: RationalSeries
    prefix: tuple[int, ...]
    curvature_bounds: tuple[Fraction, Fraction]
    polynomial: bool
    eventually_nondecreasing: bool
    period2: bool
    tail_start: int

    def to_json(self) -> dict:
        return {
            "num": str(self.source.num),
            "den": str(self.source.den),
            "prefix": list(self.prefix),
            "curvature_bounds": [rootcert.fraction_str(x) for x in self.curvature_bounds],
            "flags": {
                "polynomial": self.polynomial,
                "eventually_nondecreasing": self.eventually_nondecreasing,
                "period2": self.period2,
            },
            "tail_start": self.tail_start,
            "horizon": len(self.prefix),
        }


def curvature_bounds(rs: RationalSeries) -> tuple[Fraction, Fraction]:
    """Bracket on 1 / (least modulus of a pole), 0 for polynomials."""
    if rs.is_polynomial():
        return Fraction(0), Fraction(0)
    report = rootcert.certified_roots(squarefree_part(rs.den))
    lo, hi = report.min_modulus_bounds
    # den(0) = 1 keeps every pole away from 0, so lo > 0 for separated disks
    return 1 / hi, 1 / lo


def betti_profile(rs: RationalSeries, horizon: int | None = None, declared_poincare: bool = True) -> BettiProfile:
    """Coefficient prefix plus horizon-bounded growth observations.

    The flags are statements about indices ``tail_start <= n < horizon`` only,
    where ``tail_start`` is past the numerator's influence.
    """
    horizon = default_horizon() if horizon is None else horizon
    if horizon < 2 * max(rs.den.degree, 0) + 2:
        raise ValueError("horizon too short for this denominator")
    prefix = coefficients(rs, horizon)
    if declared_poincare and any(c < 0 for c in prefix):
        i = next(i for i, c in enumerate(prefix) if c < 0)
        raise NegativeCoefficient(f"coefficient {i} is {prefix[i]}")
    tail = max(rs.den.degree, rs.num.degree + 1)
    tail = min(tail, horizon)
    seg = prefix[tail:]
    nondecreasing = all(x <= y for x, y in zip(seg, seg[1:]))
    period2 = all(seg[i] == seg[i + 2] for i in range(len(seg) - 2))
    return BettiProfile(
        source=rs,
        prefix=tuple(prefix),
        curvature_bounds=curvature_bounds(rs),
        polynomial=rs.is_polynomial(),
        eventually_nondecreasing=nondecreasing,
        period2=period2,
        tail_start=tail,
    )


__all__ = [
    "RationalSeries",
    "BettiProfile",
    "HilbertShapeViolation",
    "DegreeViolation",
    "NegativeCoefficient",
    "coefficients",
    "long_division",
    "series_add",
    "series_mul",
    "is_polynomial",
    "levin_truncation",
    "foxby_bass",
    "one_plus_t_multiplicity",
    "bass_multiplier_exponent",
    "betti_profile",
    "curvature_bounds",
]
