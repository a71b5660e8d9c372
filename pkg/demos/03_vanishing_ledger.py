"""Bookkeeping for Ext and Tor vanishing under deformation and regular elements.

Run with ``python demos/03_vanishing_ledger.py``.
"""

import json

from gorcert.modcalc import Side, corollary_last_scenario, ext_ledger, finite, tor_ledger
from gorcert.series import RationalSeries, betti_profile
from gorcert.polyring import parse_poly as P

# Passing to a deformation shifts the Ext index on one side only.
e = finite(0)
for _ in range(3):
    e = ext_ledger(e, Side.FIRST)
print("after three steps:", e, e.provenance)
print("tor without finite flat dimension:", tor_ledger(finite(2), False))

# The worked scenario for d = 4, with its full provenance trail.
print(json.dumps(corollary_last_scenario(4).to_json()["e_MN"], indent=2))

# Betti growth for the minimal multiplicity ring of codimension 3.
prof = betti_profile(RationalSeries.of(1, P("1 - 3t + t^2")), 40)
print("Betti numbers", prof.prefix[:10], "curvature in", [float(x) for x in prof.curvature_bounds])
