"""Command line interface: ``qcong <subcommand> ...``.

Exit codes: 0 everything passed, 1 some check failed, 2 nothing failed but
something was infeasible at the requested precision, 3 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .errors import QCongError
from .report import VerificationReport, exit_code, timed

EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


# ---- series names -----------------------------------------------------------------


def parse_series(name: str, prec: int):
    """Build a named series.  A suffix '@d' substitutes q -> q^d.

    p, p_K ((q;q)^K), eN (coefficients of E_N/(q;q)), EN, Y_L, Z_L, E1_7, E2_L,
    tildeE_W_L, eta_quotient:D:E,D:E,...
    """
    from .hauptmodul import Y, Z
    from .moments import partition_power
    from .specialforms import (e_series, eisenstein, eisenstein_chi7, eisenstein_e2_level, eta_quotient,
                               partitions)
    from .towers import tilde_E

    base, _, dil = name.partition("@")
    d = int(dil) if dil else 1
    if d < 1:
        raise UsageError(f"bad dilation in {name!r}")
    n = -(-prec // d) + 1
    try:
        if base == "p":
            s = partitions(n)
        elif base.startswith("p_"):
            s = partition_power(int(base[2:]), n)
        elif base.startswith("e") and base[1:].isdigit():
            s = e_series(int(base[1:]), n)
        elif base.startswith("E") and base[1:].isdigit():
            s = eisenstein(int(base[1:]), n)
        elif base.startswith("Y_"):
            s = Y(int(base[2:]), n)
        elif base.startswith("Z_"):
            s = Z(int(base[2:]), n)
        elif base == "E1_7":
            s = eisenstein_chi7(n)
        elif base.startswith("E2_"):
            s = eisenstein_e2_level(int(base[3:]), n)
        elif base.startswith("tildeE_"):
            w, l = base[7:].split("_")
            s = tilde_E(int(w), int(l), n)
        elif base.startswith("eta_quotient:"):
            spec = {}
            for part in base.split(":", 1)[1].split(","):
                dd, ee = part.split(":")
                spec[int(dd)] = int(ee)
            s = eta_quotient(spec, n)
        else:
            raise UsageError(f"unknown series {name!r}")
    except ValueError as exc:
        if isinstance(exc, QCongError):
            raise
        raise UsageError(f"cannot parse series {name!r}: {exc}") from None
    if d > 1:
        s = s.dilate(d)
    return s.truncate(min(s.prec, prec))


# ---- output -----------------------------------------------------------------------


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _reports_text(reports: list[VerificationReport], fmt: str, summary: dict | None = None) -> str:
    from .verify import aggregate, reports_csv, suite_document

    if fmt == "csv":
        return reports_csv(reports)
    if len(reports) == 1 and summary is None:
        return json.dumps(reports[0].to_json_obj(), sort_keys=True, indent=1) + "\n"
    return json.dumps(suite_document(summary or aggregate(reports), reports), sort_keys=True, indent=1) + "\n"


def _sequence_text(name: str, values: list, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", name])
        for n, v in enumerate(values):
            w.writerow([n, str(v)])
        return buf.getvalue()
    return json.dumps({"sequence": name, "values": [str(v) if isinstance(v, Fraction) and v.denominator != 1
                                                     else str(int(v)) for v in values]}, indent=1) + "\n"


# ---- subcommands ------------------------------------------------------------------


def cmd_series(a) -> int:
    s = parse_series(a.name, a.prec)
    if a.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["exponent24", "coeff"])
        for e, c in s.items():
            w.writerow([24 * e + s.offset24, str(c)])
        _emit(buf.getvalue(), a.out)
    else:
        _emit(json.dumps(s.to_json_obj(), indent=1) + "\n", a.out)
    return 0


def cmd_tower(a) -> int:
    from .towers import check_a1, check_m_seeds, check_representation, check_valuation_bounds, family

    fam = family(a.family)
    checks = [c.strip() for c in a.check.split(",") if c.strip()]
    known = {"repr", "valuation", "seeds", "a1"}
    if not set(checks) <= known:
        raise UsageError(f"--check takes a subset of {sorted(known)}")
    reports = []
    for c in checks:
        rep = VerificationReport(claim=f"tower-{c}", params={"family": fam.name})
        with timed(rep):
            if c == "repr":
                rep.params.update(k=a.k, prec=a.prec)
                res = check_representation(fam, a.k, a.prec)
            elif c == "valuation":
                rep.params.update(kmax=a.k, jmax=a.jmax)
                res = check_valuation_bounds(fam, a.k, a.jmax)
            elif c == "seeds":
                rep.params.update(published=a.published)
                res = check_m_seeds(fam, published=a.published)
            else:
                rep.params.update(published=a.published)
                res = check_a1(fam, published=a.published)
        rep.prec = a.prec if c == "repr" else None
        rep.details = {k: v for k, v in res.items() if k not in ("status", "millis")}
        if res["status"] != "pass":
            rep.status = "fail"
            rep.counterexamples.append({"n": None, "value": "see details", "modulus": None})
        reports.append(rep)
    _emit(_reports_text(reports, a.format), a.out)
    return exit_code(reports)


def cmd_hecke(a) -> int:
    from .operators import HeckeContext, verify_hecke_structure

    rep = verify_hecke_structure(HeckeContext.for_r(a.r, a.ell), a.m, a.window)
    _emit(_reports_text([rep], a.format), a.out)
    return exit_code([rep])


def cmd_moments(a) -> int:
    from .moments import SequenceStore, check_formula

    if a.verify_formula:
        rep = VerificationReport(claim="formula", params={"id": a.verify_formula, "nmax": a.nmax})
        with timed(rep):
            res = check_formula(a.verify_formula, a.nmax)
        rep.window = [0, a.nmax]
        rep.prec = a.nmax + 1
        for m in res["mismatches"]:
            rep.fail(n=m["n"], value=m["formula"] - m["series"], modulus=None)
        _emit(_reports_text([rep], a.format), a.out)
        return exit_code([rep])
    prefix = {("crank", False): "M", ("rank", False): "N", ("crank", True): "mu", ("rank", True): "eta"}
    name = prefix[(a.kind, a.symmetrized)] + str(a.order)
    values = SequenceStore().values(name, a.nmax + 1)
    _emit(_sequence_text(name, values, a.format), a.out)
    return 0


def cmd_modeq(a) -> int:
    from .hauptmodul import derive_modular_equation

    eq = derive_modular_equation(a.ell, extra=a.prec)
    obj = {"ell": a.ell, "verified_extra": a.prec,
           "psi": [[r, s, str(c) if abs(c) >= 2 ** 53 else c] for (r, s), c in sorted(eq.psi.items())]}
    if a.format == "csv":
        text = "r,s,psi\n" + "".join(f"{r},{s},{c}\n" for (r, s), c in sorted(eq.psi.items()))
    else:
        text = json.dumps(obj, indent=1) + "\n"
    _emit(text, a.out)
    return 0


def cmd_fit_rational(a) -> int:
    from .hauptmodul import Y, minimal_rational_fit

    if (a.num is None or a.den is None) and a.r is None:
        raise UsageError("give --num and --den, or --r for E_2r(ell tau)/E_2r(tau)")
    num = a.num or f"E{2 * a.r}@{a.ell}"
    den = a.den or f"E{2 * a.r}"
    A, B = parse_series(num, a.prec), parse_series(den, a.prec)
    D, P, Q = minimal_rational_fit(A, B, Y(a.ell, a.prec), a.max_deg)
    obj = {"num": num, "den": den, "ell": a.ell, "degree": D, "P": [str(c) for c in P], "Q": [str(c) for c in Q]}
    _emit(json.dumps(obj, indent=1) + "\n", a.out)
    return 0


def _claim_params(a) -> dict:
    params = {}
    for key in ("k", "r", "ell", "m", "j"):
        v = getattr(a, key)
        if v is not None:
            params[key] = v
    if a.residue is not None:
        params["r"] = a.residue
    return params


def cmd_verify(a) -> int:
    from .catalog import get_claim
    from .verify import shared_store, verify_instance

    claim = get_claim(a.claim)
    params = _claim_params(a)
    instances = [claim.instance(**params)] if params else claim.default_instances()
    if not instances:
        raise UsageError(f"{claim.id} has no default instances; pass parameters")
    reports = [verify_instance(i, n_max=a.nmax, prec=a.prec, store=shared_store(), exponent=a.exponent)
               for i in instances]
    _emit(_reports_text(reports, a.format), a.out)
    return exit_code(reports)


def cmd_suite(a) -> int:
    from .verify import run_suite

    summary, reports = run_suite(a.filter, jobs=a.jobs, n_max=a.nmax, prec=a.prec,
                                 structural=not a.no_structural)
    _emit(_reports_text(reports, a.format, summary), a.out)
    sys.stderr.write(f"{summary['pass']} pass, {summary['fail']} fail, "
                     f"{summary['skipped-infeasible']} skipped-infeasible\n")
    return summary["exit_code"]


def cmd_catalog(a) -> int:
    from .catalog import claim_catalog

    rows = [{"id": c.id, "sequence": c.sequence, "ell": c.ell, "statement": c.statement,
             "side_condition": c.side_text, "tags": list(c.tags),
             "default_instances": [dict(p) for p in c.defaults]} for c in claim_catalog()]
    _emit(json.dumps(rows, indent=1) + "\n", a.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--prec", type=int, default=None)
    common.add_argument("--nmax", type=int, default=None)
    common.add_argument("--out", default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=("json", "csv"), default="json")

    p = _Parser(prog="qcong", description="Exact q-series engine and congruence verifier.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("series", parents=[common], help="print a named q-series")
    s.add_argument("name")
    s.set_defaults(func=cmd_series, prec_default=50)

    s = sub.add_parser("tower", parents=[common], help="check an e_2r tower family")
    s.add_argument("--family", required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--jmax", type=int, default=40)
    s.add_argument("--check", default="repr,valuation")
    s.add_argument("--published", action="store_true", help="compare seeds/a1 with the printed tables")
    s.set_defaults(func=cmd_tower, prec_default=300)

    s = sub.add_parser("hecke", parents=[common], help="verify the Hecke-operator structure")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--window", type=int, default=20)
    s.set_defaults(func=cmd_hecke)

    s = sub.add_parser("moments", parents=[common], help="rank/crank moments and formula checks")
    s.add_argument("--kind", choices=("rank", "crank"), default="crank")
    s.add_argument("--order", type=int, default=2)
    s.add_argument("--symmetrized", action="store_true")
    s.add_argument("--verify-formula", dest="verify_formula", default=None)
    s.set_defaults(func=cmd_moments, nmax_default=300)

    s = sub.add_parser("modeq", parents=[common], help="derive the modular equation of order ell")
    s.add_argument("--ell", type=int, required=True)
    s.set_defaults(func=cmd_modeq, prec_default=500)

    s = sub.add_parser("fit-rational", parents=[common], help="fit num/den as a rational function of Y_ell")
    s.add_argument("--num")
    s.add_argument("--den")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--r", type=int)
    s.add_argument("--max-deg", dest="max_deg", type=int, default=8)
    s.set_defaults(func=cmd_fit_rational, prec_default=200)

    s = sub.add_parser("verify", parents=[common], help="verify one catalog claim")
    s.add_argument("claim")
    for key in ("k", "r", "ell", "m", "j", "exponent", "residue"):
        s.add_argument(f"--{key}", type=int, default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("suite", parents=[common], help="run the catalog and structural checks")
    s.add_argument("--filter", default=None)
    s.add_argument("--no-structural", dest="no_structural", action="store_true")
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser("catalog", parents=[common], help="list catalog claims")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if a.prec is None:
        a.prec = getattr(a, "prec_default", None)
    if a.nmax is None:
        a.nmax = getattr(a, "nmax_default", None)
    try:
        if a.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        return a.func(a)
    except UsageError as exc:
        sys.stderr.write(f"qcong: error: {exc}\n")
        return EXIT_USAGE
    except QCongError as exc:
        sys.stderr.write(f"qcong: error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"qcong: I/O error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
