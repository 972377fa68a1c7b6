import json
import subprocess
import sys

import pytest

from baerlab.cli import main

Z4 = '{"kind":"zmod","n":4}'
Z6 = '{"kind":"zmod","n":6}'
T2F2 = '{"kind":"upper_triangular","k":2,"base":{"kind":"prime_field","p":2}}'
T2Z4 = '{"kind":"upper_triangular","k":2,"base":{"kind":"zmod","n":4}}'
SMALL = ["--max-ring-order", "8", "--max-module-order", "8", "--count", "10"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_ring_info_z6(capsys):
    code, out = run_json(capsys, "ring-info", Z6)
    assert code == 0 and out["is_baer"]["holds"] is True
    assert out["order"] == 6 and out["idempotents"]["all"] == [0, 1, 3, 4]


def test_ring_info_t2f2(capsys):
    code, out = run_json(capsys, "ring-info", T2F2)
    assert code == 0 and out["is_baer"]["holds"] is True


def test_ring_info_z4_text(capsys):
    code, out, _ = run(capsys, "ring-info", Z4, "--format", "text")
    assert code == 0
    assert "is_right_rickart: false (witness 2)" in out.splitlines()


def test_module_check_exit_codes(capsys):
    code, out = run_json(capsys, "module-check", Z4, "--predicate", "s_baer")
    assert code == 1 and out["holds"] is False
    code, out = run_json(capsys, "module-check", '{"ring":%s,"module":{"kind":"zero"}}' % Z4, "-p", "s_baer")
    assert code == 0 and out["holds"] is True
    piece = '{"ring":%s,"module":{"kind":"idempotent_piece","e":3}}' % Z6
    code, out = run_json(capsys, "module-check", piece, "-p", "is_projective")
    assert code == 0 and out["holds"] is True


def test_radical_examples(capsys):
    code, out = run_json(capsys, "radical", T2Z4)
    assert code == 0 and len(out["beta"]) == out["order"] == 64
    _, out = run_json(capsys, "radical", Z6)
    assert out["beta"] == [0]
    _, out = run_json(capsys, "radical", '{"ring":%s,"module":{"kind":"quotient","sub":[2]}}' % Z4)
    assert out["beta"] == [0, 1] and out["classification"] == "torsion"


def test_usage_errors(capsys):
    assert run(capsys, "ring-info", '{"kind":"nope"}')[0] == 2
    assert run(capsys, "ring-info", "{not json")[0] == 2
    assert run(capsys, "ring-info", "/no/such/file")[0] == 2
    assert run(capsys, "ring-info")[0] == 2
    assert run(capsys, "module-check", Z4, "-p", "nope")[0] == 2
    assert run(capsys, "verify", "--check", "nope")[0] == 2
    assert run(capsys, "search", "nope")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "ring-info", Z4, "--format", "junit")[0] == 2


def test_cap_exceeded(capsys):
    code, _, err = run(capsys, "ring-info", '{"kind":"matrix","k":3,"base":{"kind":"prime_field","p":3}}',
                       "--cap", "1000")
    assert code == 3 and "cap" in err


def test_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("BAERLAB_CAP", "10")
    assert run(capsys, "ring-info", '{"kind":"zmod","n":12}')[0] == 3
    monkeypatch.setenv("BAERLAB_CAP", "bogus")
    assert run(capsys, "ring-info", Z4)[0] == 2


def test_input_from_file(capsys, tmp_path):
    f = tmp_path / "ring.json"
    f.write_text(Z6)
    code, out = run_json(capsys, "ring-info", str(f))
    assert code == 0 and out["order"] == 6


def test_search_sip_exits_zero(capsys):
    code, out = run_json(capsys, "search", "SIP_without_SSIP_ring")
    assert code == 0
    assert out["certificate"]["outcome"] == "provably_impossible"


def test_search_hit_exits_one(capsys):
    code, out = run_json(capsys, "search", "eBaer_not_sBaer_module")
    assert code == 1 and out["holds"] is True


def test_verify_output_is_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "-c", "srickart_eq_sbaer", "-c", "stability", *SMALL, "-o", str(a)]) == 0
    assert main(["verify", "-c", "srickart_eq_sbaer", "-c", "stability", *SMALL, "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert "elapsed_ms" not in a.read_text()


def test_verify_timing_and_junit(capsys, tmp_path):
    x = tmp_path / "r.xml"
    code, out = run_json(capsys, "verify", "-c", "goldie_comparison", *SMALL, "--timing", "--junit", str(x))
    assert code == 0 and "elapsed_ms" in out["reports"][0]
    assert x.read_text().startswith("<testsuite")
    code, xml, _ = run(capsys, "verify", "-c", "goldie_comparison", *SMALL, "--format", "junit")
    assert code == 0 and 'failures="0"' in xml


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "-c", "goldie_comparison", *SMALL, "--format", "text")
    assert code == 0 and out.startswith("PASS goldie_comparison") and out.endswith("ok\n")


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0 and "stability" in out.split()


def test_corpus_dump(capsys):
    code, out, _ = run(capsys, "corpus-dump", *SMALL)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 10
    assert json.loads(lines[0]) == {"kind": "zmod", "n": 1}
    code, out, _ = run(capsys, "corpus-dump", *SMALL, "--modules")
    assert all({"ring", "module"} <= set(json.loads(l)) for l in out.splitlines())


@pytest.mark.parametrize(
    "argv",
    [
        ["module-check", Z4, "-p", "s_baer"],
        ["module-check", T2F2, "-p", "e_rickart"],
        ["ring-info", T2F2],
        ["radical", Z6],
        ["search", "torsion_hereditary_failure"],
        ["search", "SIP_without_SSIP_ring"],
        ["verify", "-c", "cyclic_torsion", *SMALL],
    ],
)
def test_every_record_rechecks(capsys, tmp_path, argv):
    f = tmp_path / "rec.json"
    main([*argv, "-o", str(f)])
    code, out = run_json(capsys, argv[0], "--recheck", str(f))
    assert code == 0 and out["recheck"] == "reproduced" and out["differences"] == []


def test_tampered_record_is_rejected(capsys, tmp_path):
    f = tmp_path / "rec.json"
    main(["module-check", Z4, "-p", "s_baer", "-o", str(f)])
    rec = json.loads(f.read_text())
    rec["holds"] = True
    f.write_text(json.dumps(rec))
    code, out = run_json(capsys, "module-check", "--recheck", str(f))
    assert code == 1 and out["recheck"] == "mismatch" and "holds" in out["differences"]


def test_bare_failure_certificate_replays(capsys, tmp_path):
    cert = {
        "check": "srickart_eq_sbaer",
        "index": [0, 0, 0],
        "subject": {"ring": json.loads(Z4), "module": None},
        "params": {},
        "detail": {},
    }
    f = tmp_path / "cert.json"
    f.write_text(json.dumps(cert))
    # the statement holds, so the certificate does not reproduce a failure
    code, out = run_json(capsys, "verify", "--recheck", str(f))
    assert code == 1 and out["replays"][0]["status"] == "pass"


def test_console_script_and_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "baerlab.cli", "module-check", "-", "-p", "s_baer"],
        input=Z6, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["holds"] is True
