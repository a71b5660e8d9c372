"""Bookkeeping for Ext/Tor vanishing indices and abstract module descriptors.

Nothing here computes Ext or Tor from a presentation.  Vanishing indices are
data: supplied as hypotheses, or pushed through the transformation rules for
killing a regular element.  Every derived index carries the chain of steps
that produced it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .polyring import IntPoly, ONE, div_exact_or_none
from .series import RationalSeries, betti_profile, coefficients

ONE_PLUS_T = IntPoly((1, 1))


class DepthZero(ValueError):
    """No regular element exists on a module of depth 0."""


class HypothesisUnmet(ValueError):
    pass


class Inconsistent(ValueError):
    pass


# -- vanishing indices ------------------------------------------------------------


class IndexKind(str, enum.Enum):
    MINUS_INFINITY = "MinusInfinity"
    FINITE = "Finite"
    PLUS_INFINITY = "PlusInfinity"
    INTERVAL = "Interval"


@dataclass(frozen=True)
class ExtTorIndex:
    """``sup{n : Ext^n (or Tor_n) != 0}``, possibly only known up to an interval.

    MinusInfinity (everything vanishes) is a different value from Finite(0).
    ``provenance`` is ignored by equality.
    """

    kind: IndexKind
    lo: int | None = None
    hi: int | None = None
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.kind is IndexKind.FINITE:
            if self.lo is None or self.lo < 0 or self.hi != self.lo:
                raise ValueError("Finite needs a single value n >= 0")
        elif self.kind is IndexKind.INTERVAL:
            if self.lo is None or self.hi is None or not 0 <= self.lo < self.hi:
                raise ValueError("interval needs 0 <= a < b")
        elif self.lo is not None or self.hi is not None:
            raise ValueError("infinite indices carry no bounds")

    @classmethod
    def finite(cls, n: int, provenance=()) -> "ExtTorIndex":
        return cls(IndexKind.FINITE, n, n, tuple(provenance))

    @classmethod
    def interval(cls, a: int, b: int, provenance=()) -> "ExtTorIndex":
        # a degenerate interval is just a number
        if a == b:
            return cls.finite(a, provenance)
        return cls(IndexKind.INTERVAL, a, b, tuple(provenance))

    @classmethod
    def minus_infinity(cls, provenance=()) -> "ExtTorIndex":
        return cls(IndexKind.MINUS_INFINITY, provenance=tuple(provenance))

    @classmethod
    def plus_infinity(cls, provenance=()) -> "ExtTorIndex":
        return cls(IndexKind.PLUS_INFINITY, provenance=tuple(provenance))

    @property
    def is_finite(self) -> bool:
        return self.kind is IndexKind.FINITE

    @property
    def is_infinite(self) -> bool:
        return self.kind in (IndexKind.MINUS_INFINITY, IndexKind.PLUS_INFINITY)

    @property
    def value(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is not a single finite value")
        return self.lo

    def succ(self, step: str | None = None) -> "ExtTorIndex":
        """Add one: Finite(n) -> Finite(n+1), intervals shift, infinities stay."""
        prov = self.provenance + ((step,) if step else ())
        if self.is_infinite:
            return replace(self, provenance=prov)
        return ExtTorIndex.interval(self.lo + 1, self.hi + 1, prov)

    def with_step(self, step: str) -> "ExtTorIndex":
        return replace(self, provenance=self.provenance + (step,))

    def __str__(self):
        if self.kind is IndexKind.FINITE:
            return f"Finite({self.lo})"
        if self.kind is IndexKind.INTERVAL:
            return f"[Finite({self.lo}), Finite({self.hi})]"
        return self.kind.value

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.kind is IndexKind.FINITE:
            out["value"] = self.lo
        elif self.kind is IndexKind.INTERVAL:
            out["interval"] = [self.lo, self.hi]
        out["provenance"] = list(self.provenance)
        return out


MINUS_INFINITY = ExtTorIndex.minus_infinity()
PLUS_INFINITY = ExtTorIndex.plus_infinity()


def finite(n: int) -> ExtTorIndex:
    return ExtTorIndex.finite(n)


# -- module descriptors -------------------------------------------------------------


@dataclass(frozen=True)
class RingContext:
    dim: int
    depth: int
    gorenstein: bool = True
    codim: int | None = None

    def __post_init__(self):
        if not 0 <= self.depth <= self.dim:
            raise ValueError("need 0 <= depth R <= dim R")
        if self.gorenstein and self.depth != self.dim:
            raise ValueError("a Gorenstein ring is Cohen-Macaulay: depth R must equal dim R")


def _series(x) -> RationalSeries:
    if isinstance(x, RationalSeries):
        return x
    return RationalSeries.polynomial(x if isinstance(x, IntPoly) else IntPoly(x))


@dataclass(frozen=True)
class ModuleDescriptor:
    """A finite module known only through its series and numerical data.

    ``pd_finite`` and ``id_finite`` are read off the series: a module has
    finite projective (injective) dimension exactly when its Poincare (Bass)
    series is a polynomial.  ``cidim_finite`` is supplied, never derived,
    except that finite projective dimension implies it.
    """

    label: str
    poincare: RationalSeries
    depth: int
    dim: int
    bass: RationalSeries | None = None
    finite_length: bool = False
    pd_over_deformation: int | None = None
    cidim_finite: bool = False
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "poincare", _series(self.poincare))
        if self.bass is not None:
            object.__setattr__(self, "bass", _series(self.bass))
        if not 0 <= self.depth <= self.dim:
            raise ValueError(f"{self.label}: need 0 <= depth <= dim")
        if self.finite_length and (self.depth != 0 or self.dim != 0):
            raise ValueError(f"{self.label}: a finite-length module has depth 0 and dim 0")
        if self.pd_over_deformation is not None and self.pd_over_deformation < 0:
            raise ValueError(f"{self.label}: negative projective dimension")
        if self.bass is not None:
            # Bass numbers vanish below the depth and not at it
            head = coefficients(self.bass, self.depth + 1)
            if any(head[: self.depth]) or head[self.depth] == 0:
                raise ValueError(f"{self.label}: Bass series must start in degree depth = {self.depth}")

    @property
    def pd_finite(self) -> bool:
        return self.poincare.is_polynomial()

    @property
    def id_finite(self) -> bool:
        return self.bass is not None and self.bass.is_polynomial()

    @property
    def has_finite_cidim(self) -> bool:
        return self.cidim_finite or self.pd_finite

    def flags(self) -> dict:
        return {"pd_finite": self.pd_finite, "id_finite": self.id_finite, "cidim_finite": self.has_finite_cidim}

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "poincare": str(self.poincare),
            "bass": None if self.bass is None else str(self.bass),
            "depth": self.depth,
            "dim": self.dim,
            "finite_length": self.finite_length,
            "pd_over_deformation": self.pd_over_deformation,
            "flags": self.flags(),
            "provenance": list(self.provenance),
        }


def hom_bass(p_m: RationalSeries, i_n: RationalSeries, e_mn: ExtTorIndex = ExtTorIndex.finite(0)) -> RationalSeries:
    """Bass series of Hom(M, N) as ``P_M * I_N``, valid when ``e(M, N) = 0``."""
    if e_mn != ExtTorIndex.finite(0):
        raise HypothesisUnmet(f"need e(M,N) = Finite(0), got {e_mn}")
    return _series(p_m) * _series(i_n)


def tensor_poincare(p_m: RationalSeries, p_n: RationalSeries, t_mn: ExtTorIndex = ExtTorIndex.finite(0)) -> RationalSeries:
    """Poincare series of M (x) N as ``P_M * P_N``, valid when ``t(M, N) = 0``."""
    if t_mn != ExtTorIndex.finite(0):
        raise HypothesisUnmet(f"need t(M,N) = Finite(0), got {t_mn}")
    return _series(p_m) * _series(p_n)


def kill_regular_element(md: ModuleDescriptor, name: str = "g") -> ModuleDescriptor:
    """Descriptor of ``M / gM`` for an M-regular element g.

    The mapping cone of multiplication by g on a minimal resolution is
    minimal, so the Poincare series gains a factor ``1 + t``.  For the Bass
    series, ``0 -> Ext^i(k,M) -> Ext^i(k,M/gM) -> Ext^{i+1}(k,M) -> 0`` gives
    ``I(t) * (1 + t) / t``.
    """
    if md.depth < 1:
        raise DepthZero(f"{md.label} has depth 0; no regular element")
    bass = None
    if md.bass is not None:
        num = div_exact_or_none(md.bass.num * ONE_PLUS_T, IntPoly((0, 1)))
        assert num is not None  # depth >= 1 means mu^0 = 0
        bass = RationalSeries.of(num, md.bass.den)
    new_dim = md.dim - 1
    label = f"{md.label}/{name}"
    return ModuleDescriptor(
        label=label,
        poincare=md.poincare * RationalSeries.polynomial(ONE_PLUS_T),
        depth=md.depth - 1,
        dim=new_dim,
        bass=bass,
        finite_length=new_dim == 0,
        pd_over_deformation=None if md.pd_over_deformation is None else md.pd_over_deformation + 1,
        cidim_finite=md.cidim_finite,
        provenance=md.provenance + (f"{label}: killed regular element on {md.label}",),
    )


class Side(str, enum.Enum):
    FIRST = "first"
    SECOND = "second"


def ext_ledger(e_uv: ExtTorIndex, which: Side | str) -> ExtTorIndex:
    """e(U/gU, V) = e(U, V) + 1, while e(V, U/gU) = e(V, U)."""
    which = Side(which)
    if which is Side.FIRST:
        return e_uv.succ("ext: regular element killed on the first argument, +1")
    return e_uv.with_step("ext: regular element killed on the second argument, unchanged")


def tor_ledger(t_uv: ExtTorIndex, annihilated_or_finite_length: bool) -> ExtTorIndex:
    """Tor index after killing a U-regular element g on the first argument.

    In general only ``t <= t' <= t + 1`` is known; when gV = 0 or V has
    finite length the upper bound is attained.
    """
    if t_uv.is_infinite:
        return t_uv.with_step("tor: infinite index unchanged")
    if annihilated_or_finite_length:
        return t_uv.succ("tor: gV = 0 or V of finite length, +1 exactly")
    return ExtTorIndex.interval(
        t_uv.lo, t_uv.hi + 1, t_uv.provenance + ("tor: bounded between t and t + 1",)
    )


class Which(str, enum.Enum):
    EXT_MN = "ext_MN"
    EXT_NM = "ext_NM"
    TOR = "tor"


def predicted_vanishing(
    ring: RingContext,
    m: ModuleDescriptor,
    n: ModuleDescriptor,
    which: Which | str,
    finiteness_assumed: bool = True,
) -> ExtTorIndex:
    """Vanishing index forced once the relevant e or t is known to be finite.

    Over a Gorenstein ring of codimension at most 4 the finiteness itself
    produces a module of finite CI-dimension; here the caller has to exhibit
    one through the descriptors' flags.
    """
    which = Which(which)
    if not finiteness_assumed:
        raise HypothesisUnmet("the index must be assumed finite")
    if not (m.has_finite_cidim or n.has_finite_cidim):
        raise HypothesisUnmet("neither module carries finite CI-dimension or finite projective dimension")
    for md in (m, n):
        if md.depth > ring.depth:
            raise ValueError(f"depth of {md.label} exceeds depth R")
    gap_m = ring.dim - m.depth
    gap_n = ring.dim - n.depth
    if which is Which.EXT_MN:
        return ExtTorIndex.finite(gap_m, (f"e({m.label},{n.label}) = dim R - depth {m.label} = {gap_m}",))
    if which is Which.EXT_NM:
        return ExtTorIndex.finite(gap_n, (f"e({n.label},{m.label}) = dim R - depth {n.label} = {gap_n}",))
    top = max(gap_m, gap_n)
    return ExtTorIndex.interval(0, top, (f"t({m.label},{n.label}) <= max({gap_m}, {gap_n})",))


def selftest_pd(m: ModuleDescriptor, e_mm: ExtTorIndex, ring: RingContext | None = None) -> int | None:
    """Projective dimension predicted by ``e(M, M)``; None means infinite."""
    if ring is not None and not (ring.gorenstein and ring.codim is not None and ring.codim <= 4):
        raise HypothesisUnmet("the self-test needs a Gorenstein ring of codimension at most 4")
    if e_mm.kind is IndexKind.MINUS_INFINITY:
        raise Inconsistent("Hom(M, M) contains the identity, so e(M, M) >= 0")
    if e_mm.kind is IndexKind.INTERVAL:
        raise ValueError("the self-test needs an exact index")
    if e_mm.kind is IndexKind.PLUS_INFINITY:
        if m.pd_finite:
            raise Inconsistent(f"{m.label} has a polynomial Poincare series but e(M,M) is infinite")
        return None
    pd = e_mm.value
    if not m.pd_finite:
        raise Inconsistent(f"{m.label} has a non-polynomial Poincare series but e(M,M) = {pd}")
    if m.poincare.num.degree != pd:
        raise Inconsistent(f"Poincare polynomial of {m.label} has degree {m.poincare.num.degree}, not {pd}")
    if ring is not None and ring.depth - m.depth != pd:
        raise Inconsistent(f"Auslander-Buchsbaum gives {ring.depth - m.depth}, not {pd}")
    return pd


def depth_defect(ring: RingContext, m: ModuleDescriptor, n: ModuleDescriptor) -> int:
    """``depth R - depth M - depth N``."""
    return ring.depth - m.depth - n.depth


def tor_by_depth_formula(
    ring: RingContext, m: ModuleDescriptor, n: ModuleDescriptor, q: int, depth_tor_q: int
) -> ExtTorIndex:
    """``t(M, N) = depth R - depth M - depth N + depth Tor_q(M, N)`` for ``q = t(M, N)``.

    Valid when q = 0 or the depth of Tor_q is at most 1.  The result is
    compared with the supplied q.
    """
    if q < 0:
        raise ValueError("q must be a nonnegative finite index")
    if not (q == 0 or depth_tor_q <= 1):
        raise HypothesisUnmet("need q = 0 or depth Tor_q <= 1")
    value = depth_defect(ring, m, n) + depth_tor_q
    if value != q:
        raise Inconsistent(f"depth formula gives {value}, supplied index is {q}")
    return ExtTorIndex.finite(value, (f"depth formula: {ring.depth} - {m.depth} - {n.depth} + {depth_tor_q}",))


def syzygy_series(rs: RationalSeries, n: int) -> RationalSeries:
    """Poincare series of the n-th syzygy: drop n terms and divide by t^n."""
    head = IntPoly(coefficients(rs, n))
    shifted = RationalSeries.of(rs.num - head * rs.den, rs.den)
    num = div_exact_or_none(shifted.num, IntPoly.monomial(n)) if n else shifted.num
    assert num is not None
    return RationalSeries.of(num, shifted.den)


# -- the finite-length scenario -------------------------------------------------------


@dataclass(frozen=True)
class ScenarioReport:
    d: int
    m: ModuleDescriptor
    n: ModuleDescriptor
    e_mn: ExtTorIndex
    e_nm: ExtTorIndex
    t_mn: ExtTorIndex
    pd_q: int
    syzygy_period2: bool
    syzygy_prefix: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "M": self.m.to_json(),
            "N": self.n.to_json(),
            "e_MN": self.e_mn.to_json(),
            "e_NM": self.e_nm.to_json(),
            "t_MN": self.t_mn.to_json(),
            "pd_Q_M": self.pd_q,
            "syzygy_d_of_M": {"period2": self.syzygy_period2, "prefix": list(self.syzygy_prefix)},
        }


def corollary_last_scenario(d: int, horizon: int = 64) -> ScenarioReport:
    """Push the base values for U, V through d regular elements.

    U has constant Betti numbers (a period-2 resolution with ``pd_Q U = 1``)
    and V has non-polynomial Poincare and Bass series; both have depth d.
    N = V/gV is formed first, then M = U/gU, so that every Tor step happens
    against a finite-length second argument.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    one_minus_t = IntPoly((1, -1))
    one_minus_2t = IntPoly((1, -2))
    u = ModuleDescriptor(
        label="U",
        poincare=RationalSeries.of(IntPoly((2,)), one_minus_t),
        depth=d,
        dim=d,
        pd_over_deformation=1,
        cidim_finite=True,
        finite_length=d == 0,
        provenance=("U: period-2 resolution, pd_Q U = 1, depth U = depth S (given)",),
    )
    v = ModuleDescriptor(
        label="V",
        poincare=RationalSeries.of(ONE, one_minus_2t),
        bass=RationalSeries.of(IntPoly.monomial(d), one_minus_2t),
        depth=d,
        dim=d,
        finite_length=d == 0,
        provenance=("V: infinite pd and id, depth V = depth S (given)",),
    )
    e_mn = ExtTorIndex.finite(0, ("base: e(U,V) = 0 (deformation hypothesis)",))
    e_nm = ExtTorIndex.finite(0, ("base: e(V,U) = 0 (deformation hypothesis, S Gorenstein)",))

    n = v
    for i in range(d):
        n = kill_regular_element(n, f"g{i + 1}")
        e_mn = ext_ledger(e_mn, Side.SECOND)
        e_nm = ext_ledger(e_nm, Side.FIRST)
    # t(U, N) is 0: Tor_n(U, N) = Tor_{n+2}(U, N) for n > 0 by periodicity
    t_mn = ExtTorIndex.finite(0, ("t(U,N) = 0 from the period-2 resolution of U",))

    m = u
    for i in range(d):
        m = kill_regular_element(m, f"g{i + 1}")
        e_mn = ext_ledger(e_mn, Side.FIRST)
        e_nm = ext_ledger(e_nm, Side.SECOND)
        t_mn = tor_ledger(t_mn, annihilated_or_finite_length=n.finite_length)

    syz = syzygy_series(m.poincare, d)
    profile = betti_profile(syz, horizon=max(horizon, 2 * syz.den.degree + 2))
    prefix = profile.prefix
    period2 = all(prefix[i] == prefix[i + 2] for i in range(len(prefix) - 2))

    report = ScenarioReport(
        d=d,
        m=m,
        n=n,
        e_mn=e_mn,
        e_nm=e_nm,
        t_mn=t_mn,
        pd_q=m.pd_over_deformation,
        syzygy_period2=period2 and profile.period2,
        syzygy_prefix=prefix[:8],
    )
    if not (e_mn == ExtTorIndex.finite(d) == t_mn and e_nm == ExtTorIndex.finite(d)):
        raise AssertionError(f"ledger produced e={e_mn}, t={t_mn}, e(N,M)={e_nm} for d={d}")
    if report.pd_q != d + 1 or not report.syzygy_period2:
        raise AssertionError(f"scenario d={d}: pd_Q={report.pd_q}, period2={report.syzygy_period2}")
    return report


__all__ = [
    "DepthZero",
    "HypothesisUnmet",
    "Inconsistent",
    "IndexKind",
    "ExtTorIndex",
    "MINUS_INFINITY",
    "PLUS_INFINITY",
    "finite",
    "RingContext",
    "ModuleDescriptor",
    "Side",
    "Which",
    "hom_bass",
    "tensor_poincare",
    "kill_regular_element",
    "ext_ledger",
    "tor_ledger",
    "predicted_vanishing",
    "selftest_pd",
    "depth_defect",
    "tor_by_depth_formula",
    "syzygy_series",
    "ScenarioReport",
    "corollary_last_scenario",
]
