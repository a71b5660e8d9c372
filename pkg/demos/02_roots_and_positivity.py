"""Certified root moduli and the link to coefficient signs.

Run with ``python demos/02_roots_and_positivity.py``.
"""

from gorcert.goodfact import pringsheim_check
from gorcert.polyring import ONE, parse_poly as P
from gorcert.rootcert import Indeterminate, certified_roots, graeffe_min_modulus_bounds, r_condition
from gorcert.series import RationalSeries, coefficients

r = P("1 + t - t^2")
report = certified_roots(r)
for disk in report.disks:
    print("disk", disk.to_json())
print("positive real roots lie in", [(str(a), str(b)) for a, b in report.positive_real_isolators])
print("least root modulus in", [float(x) for x in report.min_modulus_bounds])
print("Graeffe bounds", [float(x) for x in graeffe_min_modulus_bounds(r)])

# 1 + t - t^2 has its positive root at 1.618..., but the negative root -0.618... is closer to 0.
print("r-condition:", r_condition(r))
print("1/r starts", coefficients(RationalSeries.of(1, r), 8))
print(pringsheim_check(ONE, r))

# Ties on the least-modulus circle. Rotation symmetry settles t^4 - 2 exactly.
print("t^4 - 2:", r_condition(P("t^4 - 2")))
try:
    r_condition(P("-10 - 5t + 2t^3 + t^4"))
except Indeterminate as exc:
    print("(t^3 - 2)(t + 5):", exc)
