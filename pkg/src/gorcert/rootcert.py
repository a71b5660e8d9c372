"""Certified root localization for integer polynomials.

Real roots are counted and isolated exactly with Sturm sequences.  Complex
roots are approximated numerically (mpmath) and then *certified* in exact
Gaussian-rational arithmetic: with approximations z_i and Weierstrass
corrections W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j)), the roots of f
are the eigenvalues of diag(z) - W 1^T, so Gershgorin's theorem puts each
root in a disk of radius (n - 1)|W_i| about z_i - W_i, one root per disk once
the disks are pairwise disjoint.  Floating point only proposes centers;
nothing is concluded from it.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .polyring import IntPoly, divmod_q, eval_sign, gcd, is_squarefree, squarefree_part

DEFAULT_PRECISION = 64
DEFAULT_PRECISION_CAP = 8192
DEFAULT_GRAEFFE_ROUNDS = 8
ISOLATOR_WIDTH = Fraction(1, 4)


class EndpointIsRoot(ValueError):
    pass


class PrecisionCapExceeded(RuntimeError):
    pass


class Indeterminate(RuntimeError):
    """The root-modulus question could not be settled within the caps."""


def precision_cap() -> int:
    raw = os.environ.get("GOODFACT_PRECISION_CAP", DEFAULT_PRECISION_CAP)
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"GOODFACT_PRECISION_CAP must be an integer, got {raw!r}") from None
    if cap < DEFAULT_PRECISION:
        raise ValueError(f"GOODFACT_PRECISION_CAP must be at least {DEFAULT_PRECISION}")
    return cap


# -- exact helpers ------------------------------------------------------------


def _int_nthroot_floor(x: int, m: int) -> int:
    if x < 0:
        raise ValueError("negative radicand")
    if x < 2:
        return x
    r = 1 << -(-x.bit_length() // m)
    while True:
        s = ((m - 1) * r + x // r ** (m - 1)) // m
        if s >= r:
            break
        r = s
    while r**m > x:
        r -= 1
    while (r + 1) ** m <= x:
        r += 1
    return r


def root_bounds(q: Fraction, m: int = 2, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rationals ``lo <= q**(1/m) <= hi`` with relative gap about 2**-bits."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0), Fraction(0)
    # scale so that the integer root carries ~bits significant bits
    mag = (q.numerator.bit_length() - q.denominator.bit_length()) // m
    b = max(0, bits - mag)
    scaled = q * (1 << (m * b))
    lo_int = _int_nthroot_floor(scaled.numerator // scaled.denominator, m)
    lo = Fraction(lo_int, 1 << b)
    hi = lo if lo**m == q else Fraction(lo_int + 1, 1 << b)
    return lo, hi


def sqrt_bounds(q: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    return root_bounds(q, 2, bits)


def cauchy_bound(f: IntPoly) -> Fraction:
    """1 + max |a_i / a_n|: every complex root is strictly smaller in modulus."""
    if f.degree < 1:
        raise ValueError("constant polynomial has no roots")
    return 1 + Fraction(max(abs(c) for c in f.coeffs[:-1]), abs(f.lead))


# -- Sturm sequences ------------------------------------------------------------


def _scaled_remainder(a: IntPoly, b: IntPoly) -> IntPoly:
    _, r = divmod_q(a, b)
    if not r:
        return IntPoly()
    den = math.lcm(*(x.denominator for x in r))
    p = IntPoly(int(x * den) for x in r)
    g = p.content()
    return IntPoly(c // g for c in p.coeffs)  # positive scaling keeps signs


@lru_cache(maxsize=4096)
def sturm_sequence(f: IntPoly) -> tuple[IntPoly, ...]:
    """Sturm chain of the squarefree part of ``f`` (positively rescaled)."""
    f = squarefree_part(f) if f.degree >= 1 else f
    seq = [f, f.derivative()]
    while seq[-1] and seq[-1].degree > 0:
        r = _scaled_remainder(seq[-2], seq[-1])
        if not r:
            break
        seq.append(-r)
    return tuple(s for s in seq if s)


def _variations(seq, x: Fraction) -> int:
    signs = [s for s in (eval_sign(p, x) for p in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(f: IntPoly, lo, hi) -> int:
    """Number of distinct real roots of ``f`` in the open interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if f.degree < 1:
        return 0
    if eval_sign(f, lo) == 0 or eval_sign(f, hi) == 0:
        raise EndpointIsRoot(f"endpoint of ({lo}, {hi}) is a root of {f}")
    seq = sturm_sequence(f)
    return _variations(seq, lo) - _variations(seq, hi)


def isolate_real_roots(f: IntPoly, lo, hi) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open intervals inside (lo, hi) each holding exactly one root.

    Interval endpoints are never roots; an exact rational root is returned as
    a degenerate interval ``(x, x)``.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    g = squarefree_part(f)
    seq = sturm_sequence(g)
    out = []
    stack = [(lo, hi, _variations(seq, lo) - _variations(seq, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        if eval_sign(g, mid) == 0:
            out.append((mid, mid))
            # step off the rational root so that endpoints stay non-roots
            eps = (b - a) / 1024
            while sturm_count(g, mid - eps, mid + eps) != 1:
                eps /= 2
            stack.append((a, mid - eps, _variations(seq, a) - _variations(seq, mid - eps)))
            stack.append((mid + eps, b, _variations(seq, mid + eps) - _variations(seq, b)))
            continue
        vm = _variations(seq, mid)
        stack.append((a, mid, _variations(seq, a) - vm))
        stack.append((mid, b, vm - _variations(seq, b)))
    return sorted(out)


def _drop_zero_root(f: IntPoly) -> IntPoly:
    k = 0
    while k < len(f.coeffs) and f[k] == 0:
        k += 1
    return IntPoly(f.coeffs[k:])


def positive_root_isolators(f: IntPoly) -> list[tuple[Fraction, Fraction]]:
    f = _drop_zero_root(f)  # keeps the left endpoint 0 from being a root
    if f.degree < 1:
        return []
    return isolate_real_roots(f, Fraction(0), cauchy_bound(f))


def refine_interval(f: IntPoly, interval, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval of a simple root down to ``width``."""
    a, b = interval
    if a == b:
        return a, b
    g = squarefree_part(_drop_zero_root(f))
    sa = eval_sign(g, a)
    while b - a > width:
        mid = (a + b) / 2
        sm = eval_sign(g, mid)
        if sm == 0:
            return mid, mid
        if sm == sa:
            a = mid
        else:
            b = mid
    return a, b


# -- certified complex disks ----------------------------------------------------


def _cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _csub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _cabs2(x):
    return x[0] * x[0] + x[1] * x[1]


def _cdiv(x, y):
    d = _cabs2(y)
    return ((x[0] * y[0] + x[1] * y[1]) / d, (x[1] * y[0] - x[0] * y[1]) / d)


def _ceval(f: IntPoly, z):
    acc = (Fraction(0), Fraction(0))
    for c in reversed(f.coeffs):
        acc = _cmul(acc, z)
        acc = (acc[0] + c, acc[1])
    return acc


def _round_fraction(x: Fraction, bits: int) -> Fraction:
    return Fraction(round(x * (1 << bits)), 1 << bits)


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    value = Fraction(int(man)) * Fraction(2) ** exp
    return -value if sign else value


@dataclass(frozen=True)
class Disk:
    """Closed disk with Gaussian-rational center and rational radius."""

    re: Fraction
    im: Fraction
    radius: Fraction

    def modulus_bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Bounds on |z| for z in the disk."""
        lo, hi = sqrt_bounds(_cabs2((self.re, self.im)), bits)
        return max(Fraction(0), lo - self.radius), hi + self.radius

    def intersects(self, other: "Disk") -> bool:
        d2 = _cabs2((self.re - other.re, self.im - other.im))
        return d2 <= (self.radius + other.radius) ** 2

    def conjugate(self) -> "Disk":
        return Disk(self.re, -self.im, self.radius)

    def to_json(self, digits: int = 20) -> dict:
        return {
            "center": {"re": _decimal(self.re, digits), "im": _decimal(self.im, digits)},
            "radius": _decimal_up(self.radius, digits),
        }


def _decimal(x: Fraction, digits: int) -> str:
    return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, digits)


def _decimal_up(x: Fraction, digits: int) -> str:
    """Scientific-notation string not smaller than x (a radius may only grow)."""
    if x == 0:
        return "0"
    # exponent of the leading digit, from integer lengths to avoid float underflow
    lead = len(str(x.numerator)) - len(str(x.denominator))
    if Fraction(10) ** lead > x:
        lead -= 1
    scale = Fraction(10) ** (digits - 1 - lead)
    m = str(math.ceil(x * scale))
    if len(m) > digits:  # rounding carried into a new digit
        lead += 1
        m = m[:digits]  # m was 10^digits exactly
    return f"{m[0]}.{m[1:]}e{lead}" if len(m) > 1 else f"{m}e{lead}"


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RootReport:
    disks: tuple[Disk, ...]
    positive_real_isolators: tuple[tuple[Fraction, Fraction], ...]
    min_modulus_bounds: tuple[Fraction, Fraction]
    precision_bits: int = DEFAULT_PRECISION

    def to_json(self) -> dict:
        return {
            "disks": [d.to_json() for d in self.disks],
            "positive_real_isolators": [[fraction_str(a), fraction_str(b)] for a, b in self.positive_real_isolators],
            "min_modulus_bounds": [fraction_str(x) for x in self.min_modulus_bounds],
            "precision_bits": self.precision_bits,
        }


def _approximate_roots(f: IntPoly, bits: int):
    """Approximate roots as (re, im) Fractions."""
    if bits <= 64 and f.degree <= 30 and max(abs(c) for c in f.coeffs) < 2**500:
        # double precision is plenty at this stage; the disks are checked exactly
        zs = np.roots([float(c) for c in reversed(f.coeffs)])
        if np.all(np.isfinite(zs)):
            return [(Fraction(float(z.real)), Fraction(float(z.imag))) for z in zs]
    return [(_mpf_to_fraction(mpmath.mpc(z).real), _mpf_to_fraction(mpmath.mpc(z).imag)) for z in _mp_roots(f, bits)]


def _mp_roots(f: IntPoly, bits: int):
    with mpmath.workprec(bits + 16):
        coeffs = [mpmath.mpf(c) for c in reversed(f.coeffs)]
        steps = 100
        while True:
            try:
                return mpmath.polyroots(coeffs, maxsteps=steps, extraprec=bits)
            except mpmath.libmp.NoConvergence:
                steps *= 4
                if steps > 20000:
                    raise


def _disks_at(f: IntPoly, bits: int) -> list[Disk] | None:
    """Certified disks from approximations at ``bits``; None if they overlap."""
    n = f.degree
    if n == 1:
        return [Disk(Fraction(-f[0], f[1]), Fraction(0), Fraction(0))]
    approx = _approximate_roots(f, bits)
    zs = []
    for re_, im_ in approx:
        zs.append((_round_fraction(re_, bits), _round_fraction(im_, bits)))
    if len(set(zs)) < n:
        return None
    disks = []
    lc = f.lead
    for i, z in enumerate(zs):
        denom = (Fraction(lc), Fraction(0))
        for j, w in enumerate(zs):
            if j != i:
                denom = _cmul(denom, _csub(z, w))
        w_i = _cdiv(_ceval(f, z), denom)
        center = _csub(z, w_i)
        rc = (_round_fraction(center[0], bits + 8), _round_fraction(center[1], bits + 8))
        shift = sqrt_bounds(_cabs2(_csub(center, rc)), bits)[1]
        radius = (n - 1) * sqrt_bounds(_cabs2(w_i), bits)[1] + shift
        disks.append(Disk(rc[0], rc[1], radius))
    for i in range(n):
        for j in range(i + 1, n):
            if disks[i].intersects(disks[j]):
                return None
    return disks


def certified_disks(f: IntPoly, precision_bits: int = DEFAULT_PRECISION, cap: int | None = None):
    """Pairwise disjoint disks, one per root, for squarefree ``f``.

    Precision doubles from ``precision_bits`` until the disks separate.
    Returns ``(disks, bits_used)``.
    """
    if f.degree < 1:
        raise ValueError("need a polynomial of positive degree")
    cap = precision_cap() if cap is None else cap
    bits = precision_bits
    while bits <= cap:
        disks = _disks_at(f, bits)
        if disks is not None:
            return disks, bits
        bits *= 2
    raise PrecisionCapExceeded(f"roots of {f} not separated within {cap} bits")


def certified_roots(f: IntPoly, precision_bits: int = DEFAULT_PRECISION, cap: int | None = None) -> RootReport:
    if f.degree < 1:
        raise ValueError("need a polynomial of positive degree")
    if not is_squarefree(f):
        raise ValueError(f"{f} is not squarefree")
    disks, bits = certified_disks(f, precision_bits, cap)
    lo = min(d.modulus_bounds(bits)[0] for d in disks)
    hi = min(d.modulus_bounds(bits)[1] for d in disks)
    isolators = tuple(refine_interval(f, iv, ISOLATOR_WIDTH) for iv in positive_root_isolators(f))
    return RootReport(tuple(disks), isolators, (lo, hi), bits)


# -- Graeffe root squaring --------------------------------------------------------


def graeffe(f: IntPoly) -> IntPoly:
    """Polynomial whose roots are the squares of the roots of ``f``."""
    prod = f * f.mirror()
    g = IntPoly(prod.coeffs[::2])
    return -g if f.degree % 2 else g


def _coefficient_min_modulus_bounds(f: IntPoly, bits: int) -> tuple[Fraction, Fraction]:
    """Bounds on the least root modulus read off the coefficients.

    Upper: the geometric mean |a0/an|^(1/n) and n|a0/a1| (from the sum of
    reciprocal roots). Lower: Fujiwara's bound on the reversed polynomial.
    """
    n = f.degree
    a0 = f[0]
    if a0 == 0:
        return Fraction(0), Fraction(0)
    uppers = [root_bounds(Fraction(abs(a0), abs(f.lead)), n, bits)[1]]
    if f[1]:
        uppers.append(n * Fraction(abs(a0), abs(f[1])))
    upper = min(uppers)
    worst = max(
        (root_bounds(Fraction(abs(f[j]), abs(a0)), j, bits)[1] for j in range(1, n + 1) if f[j]),
        default=Fraction(0),
    )
    lower = 1 / (2 * worst) if worst else upper
    return lower, upper


def graeffe_min_modulus_bounds(f: IntPoly, rounds: int = DEFAULT_GRAEFFE_ROUNDS, bits: int = 64):
    """Bracket on the least root modulus after ``rounds`` Graeffe steps."""
    if f.degree < 1:
        raise ValueError("need a polynomial of positive degree")
    g = f
    for _ in range(rounds):
        g = graeffe(g)
    lo, hi = _coefficient_min_modulus_bounds(g, bits + rounds)
    m = 1 << rounds
    return root_bounds(lo, m, bits)[0], root_bounds(hi, m, bits)[1]


# -- the root-modulus condition ---------------------------------------------------


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in [lo, hi] (Stern-Brocot)."""
    if lo > hi:
        lo, hi = hi, lo
    # continued-fraction descent; convergents p/q accumulate in (p0, q0), (p1, q1)
    p0, q0, p1, q1 = 0, 1, 1, 0
    while True:
        fl = math.floor(lo)
        if fl == lo or fl + 1 <= hi:
            a = fl if fl == lo else fl + 1
            return Fraction(a * p1 + p0, a * q1 + q0)
        p0, q0, p1, q1 = p1, q1, fl * p1 + p0, fl * q1 + q0
        lo, hi = 1 / (hi - fl), 1 / (lo - fl)


def _disk_image_inverse(d: Disk, s: Fraction, bits: int) -> Disk | None:
    """A disk containing {s / z : z in d}, or None if d reaches the origin."""
    cl, ch = sqrt_bounds(_cabs2((d.re, d.im)), bits)
    if cl <= d.radius:
        return None
    c = _cdiv((s, Fraction(0)), (d.re, d.im))
    rad = s * d.radius / (cl * (cl - d.radius))
    rc = (_round_fraction(c[0], bits + 8), _round_fraction(c[1], bits + 8))
    extra = sqrt_bounds(_cabs2(_csub(c, rc)), bits)[1]
    return Disk(rc[0], rc[1], rad + extra)


def _tied_to_circle(f: IntPoly, disks, target: Disk, s: Fraction, bits: int) -> bool:
    """Prove that the root in ``target`` has modulus exactly sqrt(s).

    The root set of a real polynomial is closed under conjugation; if the
    root set is also closed under z -> s/z and the image of ``target`` meets
    only the disk holding the conjugate root, then s/z = conj(z).
    """
    img = _disk_image_inverse(target, s, bits)
    if img is None:
        return False
    hit = [d for d in disks if d.intersects(img)]
    conj = [d for d in disks if d.intersects(target.conjugate())]
    return len(hit) == 1 and len(conj) == 1 and hit[0] == conj[0]


def _closed_under_inversion(f: IntPoly, s: Fraction) -> bool:
    """True iff z -> s/z permutes the roots of the squarefree ``f``."""
    n = f.degree
    num, den = s.numerator, s.denominator
    # t^n f(s/t) * den^n, integral
    comp = IntPoly(f[n - i] * num ** (n - i) * den**i for i in range(n + 1))
    return gcd(f, comp).degree == n


def _rotation_order(f: IntPoly) -> int:
    """Largest k with f(t) = h(t^k); then rho * exp(2 pi i j / k) are roots with rho."""
    k = 0
    for i, c in enumerate(f.coeffs):
        if c:
            k = math.gcd(k, i)
    return k


def _rotated_disks(disks, a: Fraction, b: Fraction, k: int, bits: int) -> list[Disk]:
    """Disks certified to hold rho * w^j, j = 1..k-1, where rho lies in [a, b].

    Each rotated segment w^j [a, b] holds a root, hence meets that root's
    disk; when a slightly fattened segment meets exactly one disk, that disk
    is the one. The fattening covers the error in the rational w^j.
    """
    out = []
    eps = Fraction(1, 1 << bits)
    with mpmath.workprec(bits + 16):
        for j in range(1, k):
            ang = 2 * mpmath.pi * j / k
            u = (_round_fraction(_mpf_to_fraction(mpmath.cos(ang)), bits), _round_fraction(_mpf_to_fraction(mpmath.sin(ang)), bits))
            margin = 4 * b * eps
            u2 = _cabs2(u)
            hits = []
            for d in disks:
                r = min(max((d.re * u[0] + d.im * u[1]) / u2, a), b)
                dist2 = _cabs2((d.re - r * u[0], d.im - r * u[1]))
                if dist2 <= (d.radius + margin) ** 2:
                    hits.append(d)
            if len(hits) != 1:
                return []
            out.append(hits[0])
    return out


@lru_cache(maxsize=4096)
def _r_condition_cached(f: IntPoly, cap: int, graeffe_rounds: int) -> bool:
    if f[0] == 0:
        return True  # 0 is the only root of least modulus
    isolators = positive_root_isolators(f)
    if not isolators:
        return True
    iso = isolators[0]
    neg_tie = _mirror_root_shared(f, iso)
    bits = DEFAULT_PRECISION
    while bits <= cap:
        disks = _disks_at(f, bits)
        if disks is None:
            bits *= 2
            continue
        a, b = refine_interval(f, iso, Fraction(1, 1 << bits))
        own = [d for d in disks if _meets_segment(d, a, b)]
        if len(own) == 1:
            pending = []
            for d in disks:
                if d is own[0]:
                    continue
                lo, hi = d.modulus_bounds(bits)
                if hi < a:
                    return True
                if lo <= b:
                    pending.append(d)
            if not pending:
                return False
            if neg_tie:
                # -rho is a root: the disk meeting [-b, -a] holds it, on the circle
                mirror = [d for d in disks if _meets_segment(d, -b, -a)]
                if len(mirror) == 1:
                    pending = [d for d in pending if d is not mirror[0]]
                    if not pending:
                        return False
            k = _rotation_order(f)
            if k > 1:
                rotated = _rotated_disks(disks, a, b, k, bits)
                pending = [d for d in pending if not any(d is r for r in rotated)]
                if not pending:
                    return False
            s = _simplest_between(a * a, b * b)
            if a * a <= s <= b * b and _is_root_square(f, s) and _closed_under_inversion(f, s):
                if all(_tied_to_circle(f, disks, d, s, bits) for d in pending):
                    return False
        bits *= 2
    lo_g, hi_g = graeffe_min_modulus_bounds(f, graeffe_rounds)
    a, _ = refine_interval(f, iso, Fraction(1, 1 << 64))
    if hi_g < a:
        return True
    raise Indeterminate(f"could not decide the root-modulus condition for {f}")


def _mirror_root_shared(f: IntPoly, iso) -> bool:
    """True iff -rho is a root, rho being the positive root isolated by ``iso``."""
    h = gcd(f, f.mirror())
    if h.degree < 1:
        return False
    a, b = iso
    if a == b:
        return eval_sign(h, a) == 0
    return sturm_count(h, a, b) == 1


def _is_root_square(f: IntPoly, s: Fraction) -> bool:
    """True iff ``t^2 - s`` shares a root with ``f``."""
    q = IntPoly((-s.numerator, 0, s.denominator))
    return gcd(f, q).degree >= 1


def _meets_segment(d: Disk, a: Fraction, b: Fraction) -> bool:
    """Does the disk meet the real segment [a, b]?"""
    x = min(max(d.re, a), b)
    return (d.re - x) ** 2 + d.im**2 <= d.radius**2


def r_condition(f: IntPoly, cap: int | None = None, graeffe_rounds: int = DEFAULT_GRAEFFE_ROUNDS) -> bool:
    """No positive real root among the roots of least modulus.

    ``f`` must be 1 (vacuous) or squarefree; irreducible inputs are the
    intended use. Raises :class:`Indeterminate` if a tie could be neither
    broken nor proven within the caps.
    """
    if f.degree < 1:
        if not f:
            raise ValueError("zero polynomial")
        return True
    if not is_squarefree(f):
        raise ValueError(f"{f} is not squarefree")
    cap = precision_cap() if cap is None else cap
    return _r_condition_cached(f.primitive(), cap, graeffe_rounds)
