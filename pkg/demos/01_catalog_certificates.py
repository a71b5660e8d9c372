"""Walk through the codimension 3 and 4 catalog and certify a few classes.

Run with ``python demos/01_catalog_certificates.py``.
"""

from gorcert.catalog import RingClass, SweepRanges, certify_class, denominator, hand_case_crosscheck, verify_theorem1
from gorcert.polyring import factor, format_poly

# Each table row gives d(t) and the exponent m with c = d (1 + t)^m.
for rc in [RingClass("G", 4), RingClass("GTE", 6), RingClass("GGO", 8), RingClass("GH", 7, 5)]:
    entry = denominator(rc)
    print(f"{rc}: d = {format_poly(entry.d)}, m = {entry.m}, d(1) = {entry.d(1)}, d(-1) = {entry.d(-1)}")

# The factorization of c drives the search for p, q and r.
c = denominator(RingClass("GH", 11, 7)).c
for g, k in factor(c).factors:
    print(f"  factor {format_poly(g)} with multiplicity {k}")

# A certificate is p * q * r = c with q nonnegative and r passing the root-modulus test.
rec = certify_class(RingClass("GH", 11, 7))
cert = rec.certificate
print("p =", format_poly(cert.p))
print("q =", format_poly(cert.q))
print("r =", format_poly(cert.r))

# The hand case analysis agrees with the factorizer branch by branch.
rep = hand_case_crosscheck(RingClass("GH", 17, 11))
print(rep.branch, {k: v for k, v in rep.checks.items()})

# A small sweep; the full default one takes about 20 seconds.
report = verify_theorem1(SweepRanges(40, 40, 40, 20))
print(report.summary())
