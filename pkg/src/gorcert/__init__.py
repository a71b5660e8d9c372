"""Exact polynomial and power-series tools for denominators of Poincare series.

Submodules:

* ``polyring``: integer polynomials, gcd, complete factorization over Q
* ``rootcert``: Sturm isolation, certified root disks, the least-modulus test
* ``goodfact``: good factorizations ``c = p q r`` and the Pringsheim check
* ``catalog``: denominators of codimension 3 and 4 Gorenstein rings and sweeps
* ``series``: rational power series, Betti growth, Foxby and Levin identities
* ``modcalc``: Ext/Tor vanishing-index bookkeeping for abstract modules
* ``cli``: the ``gorcert`` command
"""

from .polyring import (
    DegreeCapExceeded,
    Factorization,
    IntPoly,
    NonExactDivision,
    factor,
    format_poly,
    gcd,
    is_irreducible,
    parse_poly,
    rational_roots,
)
from .rootcert import (
    EndpointIsRoot,
    Indeterminate,
    PrecisionCapExceeded,
    RootReport,
    certified_roots,
    r_condition,
    sturm_count,
)
from .goodfact import (
    GoodFactorizationCertificate,
    find_good_factorization,
    pringsheim_check,
    resolve_finiteness,
    validate_certificate,
)
from .series import RationalSeries, betti_profile, coefficients
from .catalog import RingClass, denominator, has_embedded_deformation, hand_case_crosscheck, verify_theorem1
from .modcalc import ExtTorIndex, ModuleDescriptor, corollary_last_scenario

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop memoized factorizations, Sturm sequences and root-modulus verdicts."""
    from . import polyring, rootcert

    polyring._factor_cached.cache_clear()
    polyring.divisors.cache_clear()
    rootcert.sturm_sequence.cache_clear()
    rootcert._r_condition_cached.cache_clear()


__all__ = [
    "IntPoly",
    "Factorization",
    "NonExactDivision",
    "DegreeCapExceeded",
    "parse_poly",
    "format_poly",
    "factor",
    "gcd",
    "is_irreducible",
    "rational_roots",
    "RootReport",
    "EndpointIsRoot",
    "PrecisionCapExceeded",
    "Indeterminate",
    "sturm_count",
    "certified_roots",
    "r_condition",
    "GoodFactorizationCertificate",
    "find_good_factorization",
    "validate_certificate",
    "pringsheim_check",
    "resolve_finiteness",
    "RationalSeries",
    "coefficients",
    "betti_profile",
    "RingClass",
    "denominator",
    "has_embedded_deformation",
    "verify_theorem1",
    "hand_case_crosscheck",
    "ExtTorIndex",
    "ModuleDescriptor",
    "corollary_last_scenario",
    "clear_caches",
]
