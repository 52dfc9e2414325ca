import json
from pathlib import Path

import pytest

from qcong.catalog import claim_catalog, default_window, get_claim
from qcong.errors import InvalidParameter
from qcong.moments import SequenceStore
from qcong.numtheory import delta, kronecker
from qcong.specialforms import partitions
from qcong.verify import (aggregate, reports_csv, run_suite, suite_document, suite_instances, verify_congruence,
                          verify_instance)

DATA = Path(__file__).parent / "data" / "displayed_congruences.txt"


def _enumeration():
    out = {}
    for line in DATA.read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        cid, statement = (s.strip() for s in line.split("|", 1))
        out[cid] = statement
    return out


def test_catalog_is_complete():
    want = _enumeration()
    got = {c.id: c.statement for c in claim_catalog()}
    assert set(got) == set(want)
    assert got == want


def test_catalog_examples():
    pn = get_claim("pn-mod5")
    for k in (1, 2, 3):
        inst = pn.instance(k=k)
        assert inst.exponent == k and inst.terms == ((1, 5 ** k, delta(5, k)),)
    part1 = get_claim("thm-2nd-part1")
    assert part1.side_text == "kronecker(-n, ell) = 1"
    for r in (2, 3):
        inst = part1.instance(ell=5, m=1, r=r)
        assert inst.exponent == 4 * r - 3
        for t in range(30):
            n = inst.n_of_t(t)
            assert inst.side(t) == (kronecker(-n, 5) == 1)
    assert [get_claim("M4-5power").instance(k=k).exponent for k in (1, 2, 3)] == [0, 1, 2]


def test_default_instances_fit_budget():
    for c in claim_catalog():
        for inst in c.default_instances():
            assert default_window(inst.step) is not None, inst.label()


def test_variants_have_no_defaults():
    for cid in ("M4-7power-intro", "N4-5power-intro"):
        assert get_claim(cid).default_instances() == []


def test_unknown_claim():
    with pytest.raises(InvalidParameter):
        get_claim("pn-mod3")


def test_verify_examples():
    store = SequenceStore()
    assert verify_congruence("pn-mod5", n_max=100, store=store, k=3).status == "pass"
    rep = verify_congruence("e4-5", n_max=100, store=store, k=2)
    assert rep.status == "pass" and rep.window == [0, 99]
    assert verify_congruence("eta6-mod7", n_max=200, store=store, r=47).status == "pass"


def test_negative_control_first_counterexample():
    rep = verify_congruence("pn-mod5", k=1, exponent=2)
    P = partitions(5 * 200 + 5)
    first = next(n for n in range(200) if P.coeff(5 * n + 4) % 25)
    assert rep.status == "fail"
    assert rep.counterexamples[0]["n"] == first
    assert rep.counterexamples[0]["value"] == P.coeff(5 * first + 4)
    assert len(rep.counterexamples) <= 25


def test_precision_cap_is_infeasible():
    rep = verify_congruence("pn-mod5", n_max=100, prec=50, k=2)
    assert rep.status == "skipped-infeasible"


def test_side_condition_counts():
    rep = verify_congruence("thm-2nd-part1", n_max=40, ell=5, m=1, r=2)
    d = rep.details
    assert d["checked"] + d["skipped_by_side_condition"] == 40 and d["checked"] > 0


def test_filter_semantics():
    five = suite_instances("ell=5")
    assert five and all(i.ell == 5 for i in five)
    assert {i.claim for i in suite_instances("id=pn-mod5")} == {"pn-mod5"}
    assert {i.claim for i in suite_instances("tag=hecke")} == {"thm-general", "thm-2nd-part1", "thm-2nd-part2"}
    assert len(suite_instances("")) == sum(len(c.default_instances()) for c in claim_catalog())
    assert suite_instances("no-such-thing") == []


def test_run_suite_with_filter(tmp_path):
    out = tmp_path / "rep.json"
    summary, reports = run_suite("pn-mod", out=str(out), store=SequenceStore())
    assert summary["fail"] == 0 and summary["exit_code"] == 0
    assert summary["total"] == len(reports) == 7
    doc = json.loads(out.read_text())
    assert doc["schema"] == 1 and len(doc["reports"]) == 7
    for r in doc["reports"]:
        assert set(r) >= {"schema", "claim", "params", "window", "status", "counterexamples", "prec", "millis"}


def test_run_suite_parallel_matches_serial():
    _, serial = run_suite("spt", store=SequenceStore())
    _, par = run_suite("spt", jobs=4, store=SequenceStore())
    strip = lambda rs: [r.to_json_obj(timings=False) for r in rs]
    assert strip(serial) == strip(par)


def test_report_serialisation_is_deterministic():
    _, reports = run_suite("spt-mod", store=SequenceStore())
    a = json.dumps(suite_document(aggregate(reports), reports, timings=False), sort_keys=True)
    b = json.dumps(suite_document(aggregate(reports), reports, timings=False), sort_keys=True)
    assert a == b
    assert reports_csv(reports).splitlines()[0].startswith("claim,params,status")


def test_aggregate_exit_codes():
    ok = verify_congruence("spt-mod5")
    bad = verify_congruence("pn-mod5", k=1, exponent=2)
    skip = verify_congruence("pn-mod5", n_max=100, prec=10, k=1)
    assert aggregate([ok])["exit_code"] == 0
    assert aggregate([ok, skip])["exit_code"] == 2
    assert aggregate([ok, skip, bad])["exit_code"] == 1


def test_verify_instance_exponent_override():
    inst = get_claim("spt-mod5").instance()
    assert verify_instance(inst, exponent=1).status == "pass"
    assert verify_instance(inst, exponent=3).status == "fail"
