"""Dense univariate polynomials over the integers.

Coefficients are stored in ascending order (index ``i`` holds the
coefficient of ``t**i``) as Python ints, so arithmetic never overflows.
The factorizer is aimed at the small degrees that show up in Poincare
series denominators; see :func:`factor`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from ._modular import zassenhaus

DEFAULT_DEGREE_CAP = 16


class NonExactDivision(ArithmeticError):
    pass


class DegreeCapExceeded(ValueError):
    pass


class IntPoly:
    """Immutable polynomial in ``t`` with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        return parse_poly(text)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls((0,) * k + (c,))

    # -- basic accessors -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)!r})"

    def __str__(self):
        return format_poly(self)

    # -- ring operations ---------------------------------------------------

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] - other[i] for i in range(n))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result, base = IntPoly(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __floordiv__(self, other):
        return exact_div(self, _coerce(other))

    def __mod__(self, other):
        return divmod_q(self, _coerce(other))[1]

    def __call__(self, x):
        return evaluate(self, x)

    # -- derived polynomials ------------------------------------------------

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def reverse(self) -> "IntPoly":
        """``t**deg * f(1/t)``."""
        return IntPoly(reversed(self.coeffs))

    def mirror(self) -> "IntPoly":
        """Substitute ``t -> -t``."""
        return IntPoly(-c if i & 1 else c for i, c in enumerate(self.coeffs))

    def scale_var(self, s: int) -> "IntPoly":
        """Substitute ``t -> s*t``."""
        return IntPoly(c * s**i for i, c in enumerate(self.coeffs))

    def shift(self, k: int) -> "IntPoly":
        """Multiply by ``t**k``."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)


def _coerce(x):
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly(x)
    return None


ONE = IntPoly(1)
T = IntPoly((0, 1))


# -- evaluation -------------------------------------------------------------


def evaluate(f: IntPoly, x):
    """Horner evaluation; exact for ints and Fractions."""
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def eval_sign(f: IntPoly, x: Fraction) -> int:
    """Sign of ``f(x)`` computed without building Fractions."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    # homogenized Horner: sum c_i num^i den^(n-i)
    acc = 0
    dpow = 1
    for c in reversed(f.coeffs):
        acc = acc * num + c * dpow
        dpow *= den
    return (acc > 0) - (acc < 0)


# -- division ---------------------------------------------------------------


def divmod_q(a: IntPoly, b: IntPoly) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder over the rationals, as Fraction lists."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in a.coeffs]
    db, lb = b.degree, b.lead
    if a.degree < db:
        return [], rem
    quo = [Fraction(0)] * (a.degree - db + 1)
    for k in range(a.degree - db, -1, -1):
        q = rem[k + db] / lb
        if q:
            quo[k] = q
            for j, bc in enumerate(b.coeffs):
                rem[k + j] -= q * bc
    while rem and rem[-1] == 0:
        rem.pop()
    return quo, rem


def div_exact_or_none(a: IntPoly, b: IntPoly) -> IntPoly | None:
    """``a / b`` in Z[t], or None when b does not divide a there."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return IntPoly()
    if a.degree < b.degree:
        return None
    rem = list(a.coeffs)
    db, lb = b.degree, b.lead
    quo = [0] * (a.degree - db + 1)
    for k in range(a.degree - db, -1, -1):
        q, r = divmod(rem[k + db], lb)
        if r:
            return None
        if q:
            quo[k] = q
            for j, bc in enumerate(b.coeffs):
                rem[k + j] -= q * bc
    if any(rem):
        return None
    return IntPoly(quo)


def exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    q = div_exact_or_none(a, b)
    if q is None:
        raise NonExactDivision(f"{b} does not divide {a} in Z[t]")
    return q


def divides(b: IntPoly, a: IntPoly) -> bool:
    return div_exact_or_none(a, b) is not None


def _from_fractions(fs) -> IntPoly:
    """Clear denominators with a positive multiplier; returns primitive."""
    fs = list(fs)
    if not fs:
        return IntPoly()
    den = math.lcm(*(f.denominator for f in fs))
    p = IntPoly(int(f * den) for f in fs)
    g = p.content()
    return IntPoly(c // g for c in p.coeffs) if g else p


def gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (0 if both are 0)."""
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        a, b = b, _prem(a, b).primitive()
    return a.primitive()


def _prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Integer pseudo-remainder of ``a`` by ``b`` (remainder of lc(b)^k a)."""
    rem = list(a.coeffs)
    db, lb = b.degree, b.lead
    bc = b.coeffs
    for k in range(len(rem) - 1 - db, -1, -1):
        q = rem[k + db]
        if q:
            rem = [c * lb for c in rem]
            for j in range(db + 1):
                rem[k + j] -= q * bc[j]
        # keep entries small
        g = 0
        for c in rem[: k + db]:
            g = math.gcd(g, c)
        if g > 1:
            rem = [c // g for c in rem[: k + db]]
        else:
            rem = rem[: k + db]
    return IntPoly(rem)


def full_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """gcd in Z[t] including the integer content."""
    g = gcd(a, b)
    if not g:
        return g
    return g * math.gcd(a.content(), b.content())


def squarefree_part(f: IntPoly) -> IntPoly:
    if f.degree < 1:
        return f.primitive()
    return exact_div(f.primitive(), gcd(f, f.derivative()))


def is_squarefree(f: IntPoly) -> bool:
    return gcd(f, f.derivative()).degree < 1


# -- text grammar -----------------------------------------------------------

_TERM = re.compile(r"([+-])?(\d+)?(\*)?(t)?(?:\^(\d+))?")


def parse_poly(text: str) -> IntPoly:
    """Parse e.g. ``"1 - 2*t - 4*t^2 + t^3"``; whitespace is ignored."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, star, var, exp = m.groups() if m else (None,) * 5
        if not m or m.end() == pos or (not first and sign is None):
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        if num is None and var is None:
            raise ValueError(f"missing term in {text!r}")
        if var is None and (star or exp):
            raise ValueError(f"malformed term in {text!r}")
        if star and num is None:
            raise ValueError(f"malformed term in {text!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        k = (int(exp) if exp is not None else 1) if var else 0
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
        first = False
    n = max(coeffs) + 1
    return IntPoly(coeffs.get(i, 0) for i in range(n))


def format_poly(f: IntPoly) -> str:
    """Canonical ascending text form, e.g. ``1 - 2*t - 4*t^2 + t^3``."""
    parts = []
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            var = "t" if i == 1 else f"t^{i}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


# -- integer helpers --------------------------------------------------------


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    """Positive divisors of ``n != 0`` in increasing order."""
    n = abs(n)
    if n == 0:
        raise ValueError("0 has infinitely many divisors")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


def rational_roots(f: IntPoly) -> list[Fraction]:
    """All rational roots of ``f`` (without multiplicity), sorted."""
    if not f:
        raise ValueError("the zero polynomial has every number as a root")
    roots = set()
    k = 0
    while f[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
        f = IntPoly(f.coeffs[k:])
    if f.degree < 1:
        return sorted(roots)
    for q in divisors(f.lead):
        for p in divisors(f[0]):
            if math.gcd(p, q) != 1:
                continue
            for x in (Fraction(p, q), Fraction(-p, q)):
                if eval_sign(f, x) == 0:
                    roots.add(x)
    return sorted(roots)


# -- factorization ----------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """``unit * content * prod(f**m)`` with primitive irreducible ``f``.

    Factors carry positive leading coefficients and are ordered by degree,
    then by coefficient tuple.
    """

    unit: int
    factors: tuple[tuple[IntPoly, int], ...]
    content: int = 1

    def expand(self) -> IntPoly:
        out = IntPoly(self.unit * self.content)
        for f, m in self.factors:
            out = out * f**m
        return out

    def irreducibles(self) -> list[IntPoly]:
        return [f for f, _ in self.factors]


def _sort_key(f: IntPoly):
    return (f.degree, f.coeffs)


def squarefree_decomposition(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm on a polynomial of positive degree (content dropped)."""
    out = []
    a = f.primitive()
    b = a.derivative()
    c = gcd(a, b)
    w = exact_div(a, c)
    y = _exact_quotient_q(b, c)
    i = 1
    while w.degree >= 1:
        z = y - w.derivative()
        g = gcd(w, z)
        if g.degree >= 1:
            out.append((g, i))
            w = exact_div(w, g)
            y = _exact_quotient_q(z, g)
        else:
            y = z
        i += 1
    return out


def _exact_quotient_q(a: IntPoly, b: IntPoly) -> IntPoly:
    """a / b where b divides a over Q and the quotient is integral."""
    q, r = divmod_q(a, b)
    if r:
        raise NonExactDivision(f"{b} does not divide {a}")
    if any(x.denominator != 1 for x in q):
        # b primitive divides a in Q[t] => quotient lies in Z[t] (Gauss)
        raise NonExactDivision(f"non-integral quotient {a} / {b}")
    return IntPoly(int(x) for x in q)


def _binom_bound(f: IntPoly, k: int) -> list[int]:
    """Landau-Mignotte: |b_j| <= C(k, j) * ||f||_2 for any factor of degree k."""
    norm2 = sum(c * c for c in f.coeffs)
    return [math.isqrt(math.comb(k, j) ** 2 * norm2) + 1 for j in range(k + 1)]


def _signed_divisors(n: int) -> list[int]:
    ds = divisors(n)
    return [s * d for d in ds for s in (1, -1)]


def _find_factor_of_degree(g: IntPoly, k: int) -> IntPoly | None:
    """Search for a factor of degree ``k`` inside the Landau-Mignotte box.

    ``g`` is primitive, squarefree, of degree > k, and has no rational roots,
    so ``g(1)`` and ``g(-1)`` are nonzero; any factor ``h`` must have
    ``h(1) | g(1)`` and ``h(-1) | g(-1)``, which pins down the sums of the
    odd- and even-indexed middle coefficients.
    """
    bound = _binom_bound(g, k)
    g1, gm1 = evaluate(g, 1), evaluate(g, -1)
    mids = list(range(1, k))
    odd = [j for j in mids if j % 2]
    even = [j for j in mids if not j % 2]
    solve_odd = odd[-1] if odd else None
    solve_even = even[-1] if even else None
    free = [j for j in mids if j not in (solve_odd, solve_even)]
    d1s = _signed_divisors(g1)
    dm1s = _signed_divisors(gm1)
    for bk in divisors(g.lead):
        for b0 in _signed_divisors(g[0]):
            for free_vals in product(*(range(-bound[j], bound[j] + 1) for j in free)):
                fixed = dict(zip(free, free_vals))
                fixed[0], fixed[k] = b0, bk
                # sums over the known coefficients, split by parity of index
                s_even = sum(v for j, v in fixed.items() if j % 2 == 0)
                s_odd = sum(v for j, v in fixed.items() if j % 2 == 1)
                for d1 in d1s:
                    for dm1 in dm1s:
                        # h(1) = s_even + s_odd + xe + xo ; h(-1) = s_even - s_odd + xe - xo
                        se, so = d1 + dm1, d1 - dm1
                        if se % 2 or so % 2:
                            continue
                        xe = se // 2 - s_even
                        xo = so // 2 - s_odd
                        if solve_even is None and xe:
                            continue
                        if solve_odd is None and xo:
                            continue
                        coeffs = [fixed.get(j, 0) for j in range(k + 1)]
                        if solve_even is not None:
                            if abs(xe) > bound[solve_even]:
                                continue
                            coeffs[solve_even] = xe
                        if solve_odd is not None:
                            if abs(xo) > bound[solve_odd]:
                                continue
                            coeffs[solve_odd] = xo
                        h = IntPoly(coeffs)
                        if divides(h, g):
                            return h
    return None


def _split_squarefree(g: IntPoly) -> list[IntPoly]:
    """Irreducible factors of a primitive squarefree ``g`` without rational roots.

    Below degree 6 the only possible split is quadratic times the rest, and the
    box search settles it directly. Larger inputs go through Zassenhaus.
    """
    if g.degree >= 6:
        return [IntPoly(h) for h in zassenhaus(list(g.coeffs))]
    if g.degree >= 4:
        h = _find_factor_of_degree(g, 2)
        if h is not None:
            return [h.primitive(), exact_div(g, h).primitive()]
    return [g.primitive()]


def factor(f: IntPoly, degree_cap: int = DEFAULT_DEGREE_CAP) -> Factorization:
    """Complete factorization of ``f`` into rationally irreducible factors."""
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if f.degree > degree_cap:
        raise DegreeCapExceeded(f"degree {f.degree} exceeds cap {degree_cap}")
    return _factor_cached(f)


@lru_cache(maxsize=8192)
def _factor_cached(f: IntPoly) -> Factorization:
    unit = 1 if f.lead > 0 else -1
    cont = f.content()
    counts: dict[IntPoly, int] = {}

    def add(h, m):
        counts[h] = counts.get(h, 0) + m

    g = f.primitive()
    k = 0
    while g[k] == 0:
        k += 1
    if k:
        add(T, k)
        g = IntPoly(g.coeffs[k:])
    if g.degree >= 1:
        for part, mult in squarefree_decomposition(g):
            for x in rational_roots(part):
                lin = IntPoly((-x.numerator, x.denominator))
                add(lin, mult)
                part = exact_div(part, lin)
            if part.degree >= 1:
                for h in _split_squarefree(part.primitive()):
                    add(h, mult)
    factors = tuple(sorted(counts.items(), key=lambda fm: _sort_key(fm[0])))
    return Factorization(unit=unit, factors=factors, content=cont)


def is_irreducible(f: IntPoly, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    """True iff ``f`` is a nonconstant polynomial irreducible in Z[t]."""
    if f.degree < 1:
        raise ValueError("irreducibility is asked of nonconstant polynomials")
    fac = factor(f, degree_cap)
    return fac.content == 1 and len(fac.factors) == 1 and fac.factors[0][1] == 1
