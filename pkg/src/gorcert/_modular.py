"""Arithmetic in GF(p)[t] and Zassenhaus factorization over Z.

Polynomials here are plain ascending coefficient lists.  GF(p) elements are
kept in ``[0, p)``; lifted factors live in ``[0, p^k)``.
"""

from __future__ import annotations

import math
import random
from itertools import combinations

ODD_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def mod_poly(cs, m):
    out = [c % m for c in cs]
    while out and out[-1] == 0:
        out.pop()
    return out


def gf_degree(a):
    return len(a) - 1


def gf_deriv(a, p):
    return mod_poly([i * c for i, c in enumerate(a)][1:], p)


def gf_monic(a, p):
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return mod_poly(out, p)


def gf_divmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], mod_poly(a, p)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv % p
        q[k] = c
        if c:
            for j, bc in enumerate(b):
                a[k + j] = (a[k + j] - c * bc) % p
    return mod_poly(q, p), mod_poly(a[:db], p)


def gf_gcd(a, b, p):
    while b:
        a, b = b, gf_divmod(a, b, p)[1]
    return gf_monic(a, p) if a else a


def gf_xgcd(a, b, p):
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, gf_sub(s0, gf_mul(q, s1, p), p)
        t0, t1 = t1, gf_sub(t0, gf_mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return [c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0]


def gf_mulmod(a, b, m, p):
    return gf_divmod(gf_mul(a, b, p), m, p)[1]


def gf_powmod(base, e, m, p):
    result, b = [1], gf_divmod(base, m, p)[1]
    while e:
        if e & 1:
            result = gf_mulmod(result, b, m, p)
        b = gf_mulmod(b, b, m, p)
        e >>= 1
    return result


def gf_sub(a, b, p):
    n = max(len(a), len(b))
    return mod_poly([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def gf_squarefree(f, p):
    return gf_degree(gf_gcd(f, gf_deriv(f, p), p)) == 0


def ddf(f, p):
    """Distinct-degree factorization of monic squarefree f: [(d, product)]."""
    out = []
    x = [0, 1]
    h = x
    i = 1
    while 2 * i <= gf_degree(f):
        h = gf_powmod(h, p, f, p)
        g = gf_gcd(f, gf_sub(h, x, p), p)
        if gf_degree(g) > 0:
            out.append((i, g))
            f = gf_divmod(f, g, p)[0]
            h = gf_divmod(h, f, p)[1]
        i += 1
    if gf_degree(f) > 0:
        out.append((gf_degree(f), f))
    return out


def ddf_degrees(f, p):
    """Degrees, with repetition, of the irreducible factors of squarefree f mod p."""
    f = gf_monic(f, p)
    return [d for d, g in ddf(f, p) for _ in range(gf_degree(g) // d)]


def edf(f, d, p, rng):
    """Split monic f, a product of irreducibles of degree d, for odd p."""
    n = gf_degree(f)
    if n == d:
        return [f]
    e = (p**d - 1) // 2
    while True:
        a = mod_poly([rng.randrange(p) for _ in range(n)], p)
        if gf_degree(a) < 1:
            continue
        g = gf_gcd(a, f, p)
        if 0 < gf_degree(g) < n:
            break
        b = gf_sub(gf_powmod(a, e, f, p), [1], p)
        if not b:
            continue
        g = gf_gcd(b, f, p)
        if 0 < gf_degree(g) < n:
            break
    h = gf_monic(gf_divmod(f, g, p)[0], p)
    return edf(g, d, p, rng) + edf(h, d, p, rng)


def factor_mod_p(f, p, seed=0):
    """Monic irreducible factors of f mod p (f squarefree mod p, p odd)."""
    rng = random.Random(seed)
    out = []
    for d, g in ddf(gf_monic(mod_poly(f, p), p), p):
        out += edf(g, d, p, rng)
    return out


# -- Hensel lifting -----------------------------------------------------------------


def _imul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _isub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _lift_pair(g, lc, a, b, p, k):
    """Lift g = lc*a*b (mod p), a and b monic and coprime, to mod p^k."""
    _, s, t = gf_xgcd(a, b, p)
    inv_lc = pow(lc, -1, p)
    pj = p
    for _ in range(1, k):
        err = _isub(g, [lc * c for c in _imul(a, b)])
        assert all(c % pj == 0 for c in err)
        e = mod_poly([(c // pj) * inv_lc for c in err], p)
        da = gf_divmod(gf_mul(t, e, p), a, p)[1] if e else []
        db = gf_divmod(gf_sub(e, gf_mul(b, da, p), p), a, p)[0] if e else []
        a = _isub(a, [-pj * c for c in da]) if da else a
        b = _isub(b, [-pj * c for c in db]) if db else b
        pj *= p
        a, b = mod_poly(a, pj), mod_poly(b, pj)
    return a, b


def _product_mod(polys, m):
    out = [1]
    for f in polys:
        out = mod_poly(_imul(out, f), m)
    return out


def hensel_lift(g, factors, p, k):
    """Monic lifts mod p^k of the monic factors of g mod p (lc(g) is kept apart)."""
    pk = p**k
    g = mod_poly(g, pk)
    lc = g[-1]
    if len(factors) == 1:
        inv = pow(lc, -1, pk)
        return [mod_poly([c * inv for c in g], pk)]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    a, b = _lift_pair(g, lc, _product_mod(left, p), _product_mod(right, p), p, k)
    return hensel_lift(a, left, p, k) + hensel_lift(b, right, p, k)


# -- Zassenhaus ------------------------------------------------------------------------


def _symmetric(cs, m):
    half = m // 2
    return [c - m if c > half else c for c in (x % m for x in cs)]


def _primitive(cs):
    while cs and cs[-1] == 0:
        cs = cs[:-1]
    g = 0
    for c in cs:
        g = math.gcd(g, c)
    cs = [c // g for c in cs]
    return [-c for c in cs] if cs[-1] < 0 else cs


def _exact_quotient(a, b):
    if len(a) < len(b):
        return None
    rem = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        top = rem[k + len(b) - 1]
        if top % b[-1]:
            return None
        c = top // b[-1]
        q[k] = c
        if c:
            for j, v in enumerate(b):
                rem[k + j] -= c * v
    return q if not any(rem) else None


def _choose_prime(g, trials=5):
    best = None
    used = 0
    for p in ODD_PRIMES:
        if g[-1] % p == 0:
            continue
        gp = mod_poly(g, p)
        if not gf_squarefree(gp, p):
            continue
        count = len(ddf_degrees(gp, p))
        if best is None or count < best[1]:
            best = (p, count)
        used += 1
        if count == 1 or used >= trials:
            break
    if best is None:
        raise ArithmeticError("no suitable prime found")
    return best[0]


def zassenhaus(g):
    """Irreducible factors of a primitive squarefree g (list, lead > 0)."""
    n = len(g) - 1
    if n <= 1:
        return [g]
    p = _choose_prime(g)
    modular = factor_mod_p(g, p)
    if len(modular) == 1:
        return [g]
    norm = math.isqrt(sum(c * c for c in g)) + 1
    bound = abs(g[-1]) * 2**n * norm
    k = 1
    while p**k <= 2 * bound:
        k += 1
    pk = p**k
    lifted = hensel_lift(g, modular, p, k)

    found = []
    s = 1
    while 2 * s <= len(lifted):
        lc = g[-1]
        hit = None
        for subset in combinations(range(len(lifted)), s):
            # for an exact half only subsets containing the first factor are needed
            if 2 * s == len(lifted) and subset[0] != 0:
                break
            c0 = lc
            for i in subset:
                c0 = c0 * lifted[i][0] % pk
            c0 = _symmetric([c0], pk)[0]
            if c0 and (lc * g[0]) % c0:
                continue
            cand = _symmetric(_product_mod([[lc]] + [lifted[i] for i in subset], pk), pk)
            h = _primitive(cand)
            q = _exact_quotient(g, h)
            if q is not None:
                hit = (subset, h, q)
                break
        if hit is None:
            s += 1
            continue
        subset, h, q = hit
        found.append(h)
        g = _primitive(q)
        lifted = [f for i, f in enumerate(lifted) if i not in subset]
    if len(g) > 1:
        found.append(g)
    return found
