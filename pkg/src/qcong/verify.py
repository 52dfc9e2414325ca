"""Congruence verification over finite windows, and the aggregate suite."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .catalog import CongruenceClaim, Instance, claim_catalog, default_window, get_claim
from .errors import InvalidParameter, QCongError
from .moments import FORMULAS, SequenceStore, check_formula
from .report import SCHEMA, VerificationReport, exit_code, timed

MAX_COUNTEREXAMPLES = 25
_STORE = SequenceStore()


def shared_store() -> SequenceStore:
    return _STORE


def resolve_window(inst: Instance, n_max: int | None = None) -> int | None:
    if n_max is not None:
        if n_max < 1:
            raise InvalidParameter("n_max must be >= 1")
        return n_max
    return inst.n_max or default_window(inst.step)


def verify_instance(inst: Instance, n_max: int | None = None, prec: int | None = None,
                    store: SequenceStore | None = None, exponent: int | None = None) -> VerificationReport:
    """Check inst on t = 0 .. n_max-1.  prec caps the number of sequence terms available."""
    store = store or _STORE
    e = inst.exponent if exponent is None else exponent
    modulus = inst.ell ** max(e, 0)
    params = {**inst.param_dict(), "sequence": inst.sequence, "ell": inst.ell, "exponent": e,
              "terms": [list(t) for t in inst.terms]}
    rep = VerificationReport(claim=inst.claim, params=params)
    with timed(rep):
        window = resolve_window(inst, n_max)
        if window is None:
            rep.status = "skipped-infeasible"
            rep.details["reason"] = f"progression step {inst.step} beyond the default budget"
            return rep
        need = inst.max_index(window) + 1
        rep.prec = need
        if prec is not None and need > prec:
            rep.status = "skipped-infeasible"
            rep.details["reason"] = f"window needs {need} terms, precision is {prec}"
            return rep
        store.ensure(inst.sequence, need)
        checked = skipped = 0
        n_of = inst.n_of_t or (lambda t: t)
        for t in range(window):
            if inst.side is not None and not inst.side(t):
                skipped += 1
                continue
            value = sum((c * store.get(inst.sequence, a * t + b) for c, a, b in inst.terms), Fraction(0))
            checked += 1
            if value.denominator != 1 or value.numerator % modulus:
                if len(rep.counterexamples) < MAX_COUNTEREXAMPLES:
                    rep.fail(n=n_of(t), value=value, modulus=modulus)
                else:
                    rep.status = "fail"
        rep.window = [n_of(0), n_of(window - 1)]
        rep.details.update(checked=checked, skipped_by_side_condition=skipped)
    return rep


def verify_congruence(claim: str | CongruenceClaim, n_max: int | None = None, prec: int | None = None,
                      exponent: int | None = None, store: SequenceStore | None = None,
                      **params) -> VerificationReport:
    """Verify one instance of a claim; params select it (k=..., r=..., ell=..., ...).

    Without params a claim with exactly one default instance uses that one.
    exponent overrides the modulus exponent (used for negative controls).
    """
    c = get_claim(claim) if isinstance(claim, str) else claim
    if params:
        inst = c.instance(**params)
    else:
        defaults = c.default_instances()
        if len(defaults) != 1:
            raise InvalidParameter(f"{c.id} has several instances; pass parameters")
        inst = defaults[0]
    return verify_instance(inst, n_max=n_max, prec=prec, store=store, exponent=exponent)


def suite_instances(flt: str | None = None) -> list[Instance]:
    return [inst for c in claim_catalog() if c.matches(flt) for inst in c.default_instances()]


def warm_up(instances: list[Instance], store: SequenceStore, n_max: int | None = None,
            prec: int | None = None) -> dict[str, int]:
    """Compute every needed sequence once, to the largest index any instance asks for."""
    need: dict[str, int] = {}
    for inst in instances:
        w = resolve_window(inst, n_max)
        if w is None:
            continue
        m = inst.max_index(w) + 1
        if prec is not None and m > prec:
            continue
        need[inst.sequence] = max(need.get(inst.sequence, 0), m)
    for name in sorted(need, key=lambda s: need[s]):
        store.ensure(name, need[name])
    return need


def structural_reports(jobs: int = 1) -> list[VerificationReport]:
    """Structural checks from the other modules, wrapped as reports."""
    from .operators import HeckeContext, verify_hecke_structure
    from .towers import FAMILIES, check_a1, check_m_seeds, check_representation, check_valuation_bounds

    out: list[VerificationReport] = []

    def wrap(name: str, params: dict, fn):
        rep = VerificationReport(claim=name, params=params)
        with timed(rep):
            try:
                res = fn()
            except QCongError as exc:
                rep.fail(n=None, value=str(exc), modulus=None)
                return rep
        if isinstance(res, VerificationReport):
            res.millis = rep.millis
            return res
        rep.details = {k: v for k, v in res.items() if k not in ("status", "millis")}
        if res["status"] != "pass":
            rep.status = "fail"
            rep.counterexamples.append({"n": None, "value": "see details", "modulus": None})
        return rep

    store = SequenceStore()
    for fid in FORMULAS:
        out.append(wrap("formula", {"id": fid, "nmax": 300}, lambda f=fid: check_formula(f, 300, store)))
    for name, fam in sorted(FAMILIES.items()):
        out.append(wrap("tower-seeds", {"family": name}, lambda f=fam: check_m_seeds(f, published=False)))
        out.append(wrap("tower-a1", {"family": name}, lambda f=fam: check_a1(f, published=False)))
        out.append(wrap("tower-representation", {"family": name, "k": 1, "prec": 300},
                        lambda f=fam: check_representation(f, 1, 300)))
        out.append(wrap("tower-valuations", {"family": name, "kmax": 8, "jmax": 40},
                        lambda f=fam: check_valuation_bounds(f, 8, 40)))
    for r in (2, 3, 4, 5, 7):
        for l in (5, 7):
            out.append(wrap("hecke-structure", {"r": r, "ell": l, "m": 1},
                            lambda r=r, l=l: verify_hecke_structure(HeckeContext.for_r(r, l), 1, 20)))
    return out


def run_suite(flt: str | None = None, jobs: int = 1, out: str | None = None, n_max: int | None = None,
              prec: int | None = None, structural: bool = True,
              store: SequenceStore | None = None) -> tuple[dict, list[VerificationReport]]:
    """Run every matching default claim instance (plus structural checks) and aggregate."""
    store = store or _STORE
    instances = suite_instances(flt)
    warm_up(instances, store, n_max, prec)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda i: verify_instance(i, n_max, prec, store), instances))
    else:
        reports = [verify_instance(i, n_max, prec, store) for i in instances]
    if structural and not flt:
        reports += structural_reports(jobs)
    summary = aggregate(reports)
    if out:
        write_reports(out, summary, reports)
    return summary, reports


def aggregate(reports: list[VerificationReport]) -> dict:
    counts = {s: sum(1 for r in reports if r.status == s) for s in ("pass", "fail", "skipped-infeasible")}
    return {"schema": SCHEMA, "total": len(reports), **counts, "exit_code": exit_code(reports)}


def suite_document(summary: dict, reports: list[VerificationReport], timings: bool = True) -> dict:
    return {"schema": SCHEMA, "summary": summary, "reports": [r.to_json_obj(timings) for r in reports]}


def write_reports(path: str, summary: dict, reports: list[VerificationReport], fmt: str = "json",
                  timings: bool = True) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if fmt == "csv":
            fh.write(reports_csv(reports))
        else:
            json.dump(suite_document(summary, reports, timings), fh, sort_keys=True, indent=1)
            fh.write("\n")


def reports_csv(reports: list[VerificationReport]) -> str:
    import csv
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["claim", "params", "status", "window", "counterexamples", "first_counterexample", "prec",
                "millis"])
    for r in reports:
        obj = r.to_json_obj()
        first = json.dumps(obj["counterexamples"][0], sort_keys=True) if r.counterexamples else ""
        w.writerow([r.claim, json.dumps(obj["params"], sort_keys=True), r.status,
                    json.dumps(obj["window"]), len(r.counterexamples), first, r.prec, r.millis])
    return buf.getvalue()
