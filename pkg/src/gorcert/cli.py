"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 Indeterminate or Inconclusive.  Output is assembled in full before anything
is written, so a failing command never leaves half a JSON document behind.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, goodfact, modcalc, polyring, rootcert, series
from .polyring import format_poly, parse_poly
from .rootcert import fraction_str

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_UNDECIDED = 3


class InputError(ValueError):
    pass


class Outcome:
    """Buffered output plus exit code."""

    def __init__(self, code: int = EXIT_OK, text: str = "", payload=None):
        self.code = code
        self.text = text
        self.payload = payload


def _poly(text: str) -> polyring.IntPoly:
    try:
        return parse_poly(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _series(text: str) -> series.RationalSeries:
    """``NUM`` or ``NUM / DEN``, parentheses optional."""
    parts = text.split("/")
    if len(parts) > 2:
        raise InputError(f"too many '/' in {text!r}")
    num = _poly(parts[0].strip().strip("()"))
    den = _poly(parts[1].strip().strip("()")) if len(parts) == 2 else polyring.ONE
    try:
        return series.RationalSeries.of(num, den)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None


def _ring_class(args) -> catalog.RingClass:
    try:
        return catalog.RingClass(args.type, args.l, args.p, args.codim)
    except catalog.ParameterOutOfRange as exc:
        raise InputError(str(exc)) from None


# -- commands -----------------------------------------------------------------------


def cmd_catalog(args) -> Outcome:
    rc = _ring_class(args)
    if rc.variant == "HypersurfaceNote":
        return Outcome(text=catalog.HYPERSURFACE_NOTE, payload={"class": rc.to_json(), "note": catalog.HYPERSURFACE_NOTE})
    entry = catalog.denominator(rc)
    payload = {"class": rc.to_json(), "d": format_poly(entry.d), "m": entry.m, "c": format_poly(entry.c), "codim": entry.codim}
    if rc.is_table_row:
        payload.update(
            d_at_1=entry.d(1),
            d_at_minus_1=entry.d(-1),
            embedded_deformation=catalog.has_embedded_deformation(rc),
        )
    lines = [f"{rc}", f"  d(t) = {payload['d']}", f"  m    = {entry.m}", f"  c(t) = {payload['c']}"]
    if rc.is_table_row:
        lines.append(f"  d(1) = {payload['d_at_1']}, d(-1) = {payload['d_at_minus_1']}")
        lines.append(f"  embedded deformation: {'yes' if payload['embedded_deformation'] else 'no'}")
    return Outcome(text="\n".join(lines), payload=payload)


def cmd_factor(args) -> Outcome:
    f = _poly(args.poly)
    if not f:
        raise InputError("cannot factor the zero polynomial")
    try:
        fac = polyring.factor(f, args.degree_cap)
    except polyring.DegreeCapExceeded as exc:
        raise InputError(str(exc)) from None
    factors = [{"factor": format_poly(g), "multiplicity": k} for g, k in fac.factors]
    payload = {"input": format_poly(f), "unit": fac.unit, "content": fac.content, "factors": factors}
    lines = [f"{format_poly(f)}", f"  unit {fac.unit}, content {fac.content}"]
    lines += [f"  ({x['factor']})^{x['multiplicity']}" for x in factors]
    return Outcome(text="\n".join(lines), payload=payload)


def cmd_goodfact(args) -> Outcome:
    c = _poly(args.poly)
    if not c or c[0] <= 0:
        raise InputError("need a polynomial with positive constant term")
    log = goodfact.SearchLog()
    cert = goodfact.find_good_factorization(c, log)
    skipped = [format_poly(r) for r in log.indeterminate]
    if cert is None:
        code = EXIT_UNDECIDED if skipped else EXIT_FAILED
        payload = {"c": format_poly(c), "certificate": None, "indeterminate_candidates": skipped}
        text = f"{format_poly(c)}: no good factorization" + (f" (undecided r: {', '.join(skipped)})" if skipped else "")
        return Outcome(code, text, payload)
    ok, reason = goodfact.validate_certificate(c, cert)
    payload = cert.to_json(c)
    payload["validated"] = ok
    payload["indeterminate_candidates"] = skipped
    text = "\n".join(
        [
            f"c = {format_poly(c)}",
            f"  p = {format_poly(cert.p)}",
            f"  q = {format_poly(cert.q)}",
            f"  r = {format_poly(cert.r)}",
            f"  validated: {ok} ({reason.value})",
        ]
    )
    return Outcome(EXIT_OK if ok else EXIT_FAILED, text, payload)


def cmd_roots(args) -> Outcome:
    f = _poly(args.poly)
    if f.degree < 1:
        raise InputError("need a polynomial of positive degree")
    if not polyring.is_squarefree(f):
        raise InputError(f"{format_poly(f)} is not squarefree")
    try:
        report = rootcert.certified_roots(f, args.precision)
    except rootcert.PrecisionCapExceeded as exc:
        return Outcome(EXIT_UNDECIDED, str(exc), None)
    code = EXIT_OK
    try:
        cond = rootcert.r_condition(f)
    except rootcert.Indeterminate:
        cond, code = "Indeterminate", EXIT_UNDECIDED
    payload = {"poly": format_poly(f), **report.to_json(), "r_condition": cond}
    lines = [f"{format_poly(f)}  ({report.precision_bits} bits)"]
    for disk in report.disks:
        j = disk.to_json()
        lines.append(f"  disk center ({j['center']['re']}, {j['center']['im']})  radius {j['radius']}")
    for a, b in report.positive_real_isolators:
        lines.append(f"  positive real root in [{fraction_str(a)}, {fraction_str(b)}]")
    lo, hi = report.min_modulus_bounds
    lines.append(f"  min modulus in [{float(lo):.12g}, {float(hi):.12g}] (exact bounds in --json)")
    lines.append(f"  r-condition: {cond}")
    return Outcome(code, "\n".join(lines), payload)


def cmd_betti(args) -> Outcome:
    rs = _series(args.series)
    try:
        prof = series.betti_profile(rs, args.horizon, declared_poincare=not args.allow_negative)
    except series.NegativeCoefficient as exc:
        raise InputError(f"not a Poincare series: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    except rootcert.PrecisionCapExceeded as exc:
        return Outcome(EXIT_UNDECIDED, str(exc), None)
    rows = ["index,coefficient"] + [f"{i},{b}" for i, b in enumerate(prof.prefix)]
    return Outcome(text="\n".join(rows), payload=prof.to_json())


_BINARY = {"add", "sub", "mul"}


def cmd_series_op(args) -> Outcome:
    a = _series(args.a)
    op = args.op
    if op in _BINARY:
        if args.b is None:
            raise InputError(f"{op} needs a second series")
        b = _series(args.b)
        result = {"add": a + b, "sub": a - b, "mul": a * b}[op]
    elif op == "negate-t":
        result = a.substitute_neg()
    elif op == "shift":
        if args.k is None or args.k < 0:
            raise InputError("shift needs --k >= 0")
        result = a.shift(args.k)
    elif op == "is-polynomial":
        val = a.is_polynomial()
        return Outcome(text=str(val).lower(), payload={"series": _series_json(a), "is_polynomial": val})
    else:  # coefficients
        n = args.n if args.n is not None else 10
        if n < 0:
            raise InputError("--n must be nonnegative")
        coeffs = series.coefficients(a, n)
        return Outcome(text=", ".join(map(str, coeffs)), payload={"series": _series_json(a), "coefficients": coeffs})
    return Outcome(text=str(result), payload={"result": _series_json(result)})


def _series_json(rs: series.RationalSeries) -> dict:
    return {"num": format_poly(rs.num), "den": format_poly(rs.den)}


def _ranges(args) -> catalog.SweepRanges:
    for name in ("g_max", "gte_max", "ggo_max", "gh_max"):
        if getattr(args, name) < 0:
            raise InputError(f"--{name.replace('_', '-')} must be nonnegative")
    return catalog.SweepRanges(args.g_max, args.gte_max, args.ggo_max, args.gh_max)


def cmd_verify_t1(args) -> Outcome:
    report = catalog.verify_theorem1(_ranges(args), strict=False)
    failures = report.failures
    if not failures:
        code = EXIT_OK
    elif all(r.failure == "indeterminate" for r in failures):
        code = EXIT_UNDECIDED
    else:
        code = EXIT_FAILED
    payload = {
        "summary": report.summary(),
        "checked": len(report.checked),
        "embedded_deformation_classes": len(report.records) - len(report.checked),
        "failures": [r.to_json() for r in failures],
        "records": [r.to_json() for r in report.records],
    }
    lines = [report.summary()]
    lines += [f"  FAILED {r.ring_class}: {r.failure}" for r in failures]
    return Outcome(code, "\n".join(lines), payload)


def cmd_crosscheck(args) -> Outcome:
    if args.type is not None:
        classes = [_ring_class(args)]
        if not classes[0].is_table_row:
            raise InputError("crosscheck needs one of G, GTE, GGO, GH")
    else:
        classes = list(catalog.sweep_classes(_ranges(args)))
    reports = [catalog.hand_case_crosscheck(rc) for rc in classes]
    bad = [r for r in reports if not catalog.crosscheck_ok(r)]
    payload = {"classes": len(reports), "failures": len(bad), "reports": [r.to_json() for r in reports]}
    if len(reports) == 1:
        r = reports[0]
        lines = [f"{r.ring_class}: branch {r.branch}"]
        lines += [f"  split eps={s.eps} a={s.a}: {format_poly(s.quad)} * {format_poly(s.other)}" for s in r.splits]
        lines += [f"  [{'ok' if v else 'FAIL'}] {k}" for k, v in r.checks.items()]
        lines.append(f"  agrees with factor: {r.agrees_with_factor}")
    else:
        lines = [f"{len(reports)} classes cross-checked, {len(bad)} disagreements"]
        lines += [f"  FAILED {r.ring_class}" for r in bad]
    return Outcome(EXIT_FAILED if bad else EXIT_OK, "\n".join(lines), payload)


def cmd_scenario(args) -> Outcome:
    if args.d < 0:
        raise InputError("d must be nonnegative")
    rep = modcalc.corollary_last_scenario(args.d)
    text = "\n".join(
        [
            f"d = {rep.d}",
            f"  e(M,N) = {rep.e_mn}, e(N,M) = {rep.e_nm}, t(M,N) = {rep.t_mn}",
            f"  pd_Q M = {rep.pd_q}",
            f"  Syz_{rep.d}(M) Betti numbers {list(rep.syzygy_prefix)}..., period 2: {rep.syzygy_period2}",
        ]
    )
    return Outcome(text=text, payload=rep.to_json())


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gorcert", description="Exact denominators, good factorizations and vanishing bookkeeping.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.set_defaults(func=func)
        return sp

    def class_flags(sp, required):
        sp.add_argument("--type", required=required, choices=catalog.TYPES)
        sp.add_argument("--l", type=int)
        sp.add_argument("--p", type=int)
        sp.add_argument("--codim", type=int)

    def range_flags(sp):
        sp.add_argument("--g-max", type=int, default=200)
        sp.add_argument("--gte-max", type=int, default=200)
        sp.add_argument("--ggo-max", type=int, default=200)
        sp.add_argument("--gh-max", type=int, default=100)

    class_flags(add("catalog", cmd_catalog, "denominator of a ring class"), required=True)

    sp = add("factor", cmd_factor, "factor an integer polynomial")
    sp.add_argument("poly")
    sp.add_argument("--degree-cap", type=int, default=polyring.DEFAULT_DEGREE_CAP)

    add("goodfact", cmd_goodfact, "search for a good factorization").add_argument("poly")

    sp = add("roots", cmd_roots, "certified root disks and the r-condition")
    sp.add_argument("poly")
    sp.add_argument("--precision", type=int, default=rootcert.DEFAULT_PRECISION)

    sp = add("betti", cmd_betti, "coefficients and growth of a rational series (CSV by default)")
    sp.add_argument("series", help="NUM or NUM/DEN, e.g. '1/(1 - 3*t + t^2)'")
    sp.add_argument("--horizon", type=int)
    sp.add_argument("--allow-negative", action="store_true", help="do not treat the input as a Poincare series")

    sp = add("series-op", cmd_series_op, "exact arithmetic on rational series")
    sp.add_argument("op", choices=["add", "sub", "mul", "negate-t", "shift", "is-polynomial", "coefficients"])
    sp.add_argument("a")
    sp.add_argument("b", nargs="?")
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", type=int)

    range_flags(add("verify-t1", cmd_verify_t1, "certify every non-embedded class in the sweep"))

    sp = add("crosscheck", cmd_crosscheck, "replay the case analysis for one class or a sweep")
    class_flags(sp, required=False)
    range_flags(sp)

    sp = add("scenario", cmd_scenario, "the finite-length ledger scenario")
    sp.add_argument("--d", type=int, required=True)
    return parser


def _check_env() -> None:
    try:
        rootcert.precision_cap()
        series.default_horizon()
    except ValueError as exc:
        raise InputError(f"bad environment override: {exc}") from None


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        _check_env()
        outcome = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    if args.json:
        if outcome.payload is None:
            print(outcome.text, file=err)
        else:
            out.write(json.dumps(outcome.payload, indent=2) + "\n")
    else:
        stream = out if outcome.code in (EXIT_OK, EXIT_FAILED) else err
        print(outcome.text, file=stream)
    return outcome.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
