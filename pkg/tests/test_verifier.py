import json
import xml.etree.ElementTree as ET

import pytest

from baerlab import bitset
from baerlab.corpus import CorpusConfig
from baerlab.errors import UnknownCheck
from baerlab.module_core import build_module, is_e_baer, is_s_baer, submodule_module
from baerlab.ring_core import build_ring, is_baer
from baerlab.torsion_lab import is_torsion
from baerlab.verifier import (
    CHECKS,
    check_names,
    find_counterexample,
    get_check,
    goal_names,
    junit_xml,
    replay_certificate,
    run_check,
)
from baerlab.verifier.registry import register, skip_unless

TINY = CorpusConfig(max_ring_order=8, max_module_order=8, count=12)


@pytest.fixture
def false_check():
    """A deliberately false statement, to exercise failure reporting."""
    name = "test_only_every_ring_is_baer"
    register(name, "Every ring is Baer.", "ring",
             guard=lambda ctx, R: skip_unless(R.order > 1, "zero ring"))(
        lambda ctx, R: (is_baer(R).holds, {"witness": is_baer(R).witness}))
    yield name
    del CHECKS[name]


def test_required_checks_registered():
    names = set(check_names())
    for n in ["srickart_eq_sbaer", "beta_radical_axioms", "semisimple_iff_all_cyclics_sbaer",
              "compatibility_identity", "stability", "essential_projective"]:
        assert n in names
    assert all(get_check(n).anchor for n in names)


def test_unknown_check():
    with pytest.raises(UnknownCheck):
        run_check("nope")


@pytest.mark.parametrize("name", ["srickart_eq_sbaer", "beta_radical_axioms", "annihilator_ssip",
                                  "hom_monomorphism", "essential_projective"])
def test_checks_pass_on_small_corpus(name):
    r = run_check(name, TINY)
    assert r.ok, r.failures[:1]
    assert r.instances_tested == r.passes + len(r.failures)


def test_reports_are_deterministic():
    a = run_check("compatibility_identity", TINY).to_json(timing=False)
    b = run_check("compatibility_identity", TINY).to_json(timing=False)
    assert a == b
    assert "elapsed_ms" not in a


def test_parallel_matches_serial():
    a = run_check("stability", TINY, jobs=1).to_json(timing=False)
    b = run_check("stability", TINY, jobs=3).to_json(timing=False)
    assert a == b


def test_inapplicable_never_counts_as_pass():
    r = run_check("hom_bimodule", TINY)
    assert r.inapplicable_total > 0
    assert r.passes + len(r.failures) == r.instances_tested
    assert sum(r.inapplicable.values()) == r.inapplicable_total


def test_failure_certificates_replay(false_check):
    r = run_check(false_check, TINY)
    assert not r.ok
    for cert in r.failures:
        cert = json.loads(json.dumps(cert))
        status, detail = replay_certificate(cert)
        assert status == "fail"
        assert not is_baer(build_ring(cert["subject"]["ring"])).holds


def test_junit_mirror(false_check):
    reports = [run_check(false_check, TINY), run_check("srickart_eq_sbaer", TINY)]
    root = ET.fromstring(junit_xml(reports, timing=False))
    assert root.get("tests") == "2" and root.get("failures") == "1"
    cases = root.findall("testcase")
    assert cases[0].find("failure") is not None and cases[1].find("failure") is None
    assert {c.get("time") for c in cases} == {"0.000"}


def test_search_goals_registered():
    assert set(goal_names()) == {
        "sBaer_not_projective_module", "eBaer_not_sBaer_module", "sBaer_not_eBaer_module",
        "torsion_hereditary_failure", "SIP_without_SSIP_ring",
    }
    with pytest.raises(UnknownCheck):
        find_counterexample("nope")


def test_sip_search_is_provably_impossible():
    v = find_counterexample("SIP_without_SSIP_ring")
    assert not v.holds
    assert v.certificate["outcome"] == "provably_impossible"
    assert "SIP therefore already gives SSIP" in v.certificate["justification"]


def test_budget_is_a_normal_outcome():
    v = find_counterexample("sBaer_not_projective_module", budget=5)
    assert not v.holds and v.certificate["outcome"] == "budget_exhausted"
    assert v.certificate["examined"] == 5


def _rebuild(v):
    s = v.witness["subject"]
    return build_module(build_ring(s["ring"]), s["module"])


def test_ebaer_not_sbaer_hit_is_verified():
    v = find_counterexample("eBaer_not_sBaer_module")
    assert v.holds and v.certificate["confirmed_on_rebuild"]
    M = _rebuild(v)
    assert is_e_baer(M).holds and not is_s_baer(M).holds
    assert v.witness["subject"]["ring"]["kind"] in ("upper_triangular", "gen_triangular")


def test_sbaer_not_ebaer_outcome_is_consistent():
    v = find_counterexample("sBaer_not_eBaer_module")
    if v.holds:
        M = _rebuild(v)
        assert is_s_baer(M).holds and not is_e_baer(M).holds
    else:
        assert v.certificate["outcome"] == "exhausted"


def test_torsion_hereditary_failure_hit():
    v = find_counterexample("torsion_hereditary_failure")
    assert v.holds
    M = _rebuild(v)
    assert is_torsion(M)
    N = bitset.from_indices(v.witness["submodule"])
    assert not is_torsion(submodule_module(M, N))
