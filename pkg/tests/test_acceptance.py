"""Acceptance criteria 1 to 15, exact, with one PASS/FAIL line each.

The lines are printed in the pytest terminal summary, or directly when
the file is run as a script.
"""

import json
import time
from contextlib import contextmanager

import pytest

import oracles
from baerlab import bitset
from baerlab.cli import main as cli_main
from baerlab.corpus import CorpusConfig
from baerlab.module_core import (
    build_module,
    essential_projective_witness,
    idempotent_piece,
    is_projective,
    is_s_baer,
    is_s_rickart,
    regular,
    verify_essential_projective,
)
from baerlab.module_core.structure import is_faithful, second_singular_mask
from baerlab.ring_core import (
    build_ring,
    essential_nilpotent_ideal_search,
    has_ssip,
    is_baer,
    is_right_rickart,
)
from baerlab.torsion_lab import beta_radical
from baerlab.verifier import materialize, run_check

CFG = CorpusConfig(seed=42, max_ring_order=16, max_module_order=16)
F2 = {"kind": "prime_field", "p": 2}
F3 = {"kind": "prime_field", "p": 3}

RESULTS: dict[int, tuple[bool, str, str]] = {}


@contextmanager
def criterion(n: int, title: str):
    info = {"detail": ""}
    start = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        RESULTS[n] = (False, title, f"{type(exc).__name__}: {exc}".splitlines()[0][:160])
        raise
    secs = time.perf_counter() - start
    RESULTS[n] = (True, title, f"{info['detail']} [{secs:.2f}s]".strip())


def summary_lines() -> list[str]:
    lines = []
    for n in range(1, 16):
        if n not in RESULTS:
            lines.append(f"criterion {n:2d}: NOT RUN")
            continue
        ok, title, detail = RESULTS[n]
        lines.append(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title} | {detail}")
    return lines


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def _corpus_modules():
    return [M for _, mods in materialize(CFG) for M in mods]


def _assert_clean(report, minimum=1):
    assert report.failures == [], report.failures[:1]
    assert report.instances_tested >= minimum, report.instances_tested


def test_criterion_01_fixture_verdicts():
    with criterion(1, "fixture verdicts (T2(F2), T2(F3) Baer; Z4 not Rickart at 2; Z6 Baer)") as info:
        times = []
        for base in (F2, F3):
            v, t = _timed(lambda: is_baer(build_ring({"kind": "upper_triangular", "k": 2, "base": base})))
            assert v.holds
            times.append(t)
        v, t = _timed(lambda: is_right_rickart(build_ring({"kind": "zmod", "n": 4})))
        assert not v.holds and v.witness == 2
        times.append(t)
        v, t = _timed(lambda: is_baer(build_ring({"kind": "zmod", "n": 6})))
        assert v.holds
        times.append(t)
        assert max(times) < 1.0, times
        info["detail"] = f"slowest {max(times) * 1000:.1f} ms"


def test_criterion_02_worked_example():
    with criterion(2, "T2(Z4): Z2(R) = R = beta(R), essential nilpotent ideal found") as info:
        start = time.perf_counter()
        R = build_ring({"kind": "upper_triangular", "k": 2, "base": {"kind": "zmod", "n": 4}})
        M = regular(R)
        assert second_singular_mask(M) == M.full_mask
        assert beta_radical(M).beta.mask == M.full_mask
        v = essential_nilpotent_ideal_search(R)
        assert v.holds
        assert time.perf_counter() - start < 30
        info["detail"] = f"|R| = {R.order}, ideal of order {len(v.witness['ideal'])}"


def test_criterion_03_orthogonal_finiteness():
    with criterion(3, "s.Rickart = s.Baer over the corpus") as info:
        start = time.perf_counter()
        r = run_check("srickart_eq_sbaer", CFG)
        _assert_clean(r, 200)
        assert r.rings_covered >= 30
        assert time.perf_counter() - start < 300
        info["detail"] = f"{r.instances_tested} modules, {r.rings_covered} rings, 0 failures"


def test_criterion_04_compatibility_identity():
    with criterion(4, "aR ∩ r(X) = a r(Xa) on randomized instances") as info:
        r = run_check("compatibility_identity", CFG)
        _assert_clean(r, 1000)
        info["detail"] = f"{r.instances_tested} instances, 0 failures"


def test_criterion_05_radical_axioms():
    with criterion(5, "beta is an idempotent radical; M beta(R) ⊆ beta(M), = when projective") as info:
        r = run_check("beta_radical_axioms", CFG)
        _assert_clean(r, 200)
        projective = sum(is_projective(M).holds for M in _corpus_modules())
        assert projective > 0
        info["detail"] = f"{r.instances_tested} modules ({projective} projective), 0 failures"


def test_criterion_06_torsion_free_is_s_baer():
    with criterion(6, "beta(M) = 0 iff M s.Baer, full corpus") as info:
        r = run_check("torsion_free_eq_sbaer", CFG)
        total = len(_corpus_modules())
        _assert_clean(r, total)
        assert r.inapplicable_total == 0
        info["detail"] = f"{r.instances_tested}/{total} modules, 0 failures"


def test_criterion_07_semisimple_characterization():
    with criterion(7, "R semisimple iff every R/I is s.Baer, with failing cyclics") as info:
        r = run_check("semisimple_iff_all_cyclics_sbaer", CFG)
        _assert_clean(r, 30)
        assert r.instances_tested == len(materialize(CFG))
        non_ss = 0
        for ev in r.evidence:
            d = ev["detail"]
            if d["semisimple"]:
                assert d["failing_ideal"] is None
                continue
            non_ss += 1
            fc = d["failing_cyclic"]
            Q = build_module(build_ring(ev["subject"]["ring"]), fc["module"])
            assert not is_s_baer(Q).holds
        assert non_ss > 0
        info["detail"] = f"{r.instances_tested} rings, {non_ss} non-semisimple each with a failing R/I"


def test_criterion_08_annihilator_ssip():
    with criterion(8, "s.Baer M: r(M) = eR, e left semicentral, R/r(M) has SSIP") as info:
        r = run_check("annihilator_ssip", CFG)
        s_baer = sum(is_s_baer(M).holds for M in _corpus_modules())
        _assert_clean(r, s_baer)
        assert r.instances_tested == s_baer
        info["detail"] = f"{r.instances_tested} s.Baer modules, 0 failures"


def test_criterion_09_triangular_ssip_lemma():
    with criterion(9, "triangular, A and C indecomposable: SSIP iff r_C(m) = 0 for m != 0") as info:
        r = run_check("triangular_ssip_lemma", CFG)
        _assert_clean(r, 10)
        assert len(r.evidence) == r.instances_tested
        seen = set()
        for ev in r.evidence:
            R = build_ring(ev["subject"]["ring"])
            faithful = oracles.bimodule_right_faithful(R.triangular.bimodule)
            ssip = oracles.has_ssip(R)
            assert ssip == faithful == ev["detail"]["ssip"] == has_ssip(R).holds
            seen.add(ssip)
        assert seen == {True, False}
        info["detail"] = f"{r.instances_tested} fixtures, both truth values, brute-force agreement"


def test_criterion_10_essential_projective():
    with criterion(10, "s.Rickart M has an essential projective submodule; certificates re-verify") as info:
        r = run_check("essential_projective", CFG)
        s_rickart = [M for M in _corpus_modules() if is_s_rickart(M).holds]
        _assert_clean(r, len(s_rickart))
        assert r.instances_tested == len(s_rickart)
        brute = 0
        for M in s_rickart:
            wit = essential_projective_witness(M)
            cert = json.loads(json.dumps(wit.certificate))
            assert verify_essential_projective(M, cert) == []
            if M.order <= 8:
                # essentiality from the raw tables
                P = frozenset(bitset.to_list(wit.P.mask))
                assert all(len(P & N) > 1 for N in oracles.submodules(M) if len(N) > 1)
                brute += 1
        info["detail"] = f"{r.instances_tested} s.Rickart modules, {brute} also brute-force checked, 0 failures"


def test_criterion_11_simple_artinian():
    with criterion(11, "M2(F2), M2(F3): SSIP and the faithful simple row module is s.Baer") as info:
        for base in (F2, F3):
            R = build_ring({"kind": "matrix", "k": 2, "base": base})
            assert has_ssip(R).holds and oracles.has_ssip(R)
            p = base["p"]
            rows = [e for e in R.idempotents if bitset.size(R.principal_right[e]) == p * p]
            assert rows
            for e in rows:
                M = idempotent_piece(R, e)
                assert len(M.submodules) == 2  # simple
                assert is_faithful(M).holds
                assert is_s_baer(M).holds
        r = run_check("primitive_simple_artinian", CFG)
        _assert_clean(r, 2)
        info["detail"] = f"both rings; corpus check over {r.instances_tested} simple rings"


def test_criterion_12_nilpotent_obstruction():
    with criterion(12, "essential nilpotent ideal forces every nonzero module to fail s.Baer") as info:
        rings = modules = 0
        for R, mods in materialize(CFG):
            if not essential_nilpotent_ideal_search(R).holds:
                continue
            rings += 1
            for M in mods:
                if M.order > 1:
                    modules += 1
                    assert not is_s_baer(M).holds, M.spec()
        r = run_check("essential_nilpotent_obstruction", CFG)
        _assert_clean(r)
        assert rings > 0
        info["detail"] = f"{rings} rings, {modules} nonzero modules, 0 failures"


def test_criterion_13_g_extending():
    with criterion(13, "R_R G-extending: s.Rickart iff Z(M) = 0") as info:
        r = run_check("g_extending_base", CFG)
        _assert_clean(r, 1)
        info["detail"] = f"{r.instances_tested} modules over {r.rings_covered} rings, 0 failures"


def test_criterion_14_stability():
    with criterion(14, "T ≤ess M and T torsion give M torsion") as info:
        r = run_check("stability", CFG)
        _assert_clean(r, 100)
        live = sum(ev["detail"]["T_torsion"] for ev in r.evidence)
        assert live > 0
        info["detail"] = f"{r.instances_tested} pairs ({live} with T torsion), 0 failures"


def test_criterion_15_search_sanity(capsys, tmp_path):
    with criterion(15, "SIP_without_SSIP_ring is provably impossible; exit code 0") as info:
        out = tmp_path / "sip.json"
        code = cli_main(["search", "SIP_without_SSIP_ring", "-o", str(out)])
        rec = json.loads(out.read_text())
        assert code == 0
        assert rec["holds"] is False
        assert rec["certificate"]["outcome"] == "provably_impossible"
        assert "SIP therefore already gives SSIP" in rec["certificate"]["justification"]
        info["detail"] = f"exit {code}, scanned {rec['certificate']['examined']} rings"


if __name__ == "__main__":
    import sys

    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    print("\n".join(summary_lines()))
    sys.exit(code)
