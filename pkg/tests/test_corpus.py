import json

import pytest

from baerlab.corpus import (
    CorpusConfig,
    dump_lines,
    fixture_specs,
    gen_triangular_fixtures,
    generate_modules,
    generate_rings,
)
from baerlab.module_core import build_module
from baerlab.ring_core import build_ring

SMALL = CorpusConfig(max_ring_order=8, max_module_order=8, count=20)


def _specs(cfg):
    return [json.dumps(R.provenance, sort_keys=True) for R in generate_rings(cfg)]


def test_stream_is_deterministic():
    assert _specs(SMALL) == _specs(SMALL)
    assert list(dump_lines(SMALL, modules=True)) == list(dump_lines(SMALL, modules=True))


def test_seed_changes_random_tail():
    a = _specs(CorpusConfig(seed=1))
    b = _specs(CorpusConfig(seed=2))
    assert a != b


def test_count_limits_rings():
    assert len(_specs(SMALL)) == 20


def test_default_corpus_covers_named_fixtures():
    specs = [R.provenance for R in generate_rings(CorpusConfig())]
    F2, F3, Z4 = ({"kind": "prime_field", "p": 2}, {"kind": "prime_field", "p": 3}, {"kind": "zmod", "n": 4})
    for want in [
        {"kind": "upper_triangular", "k": 2, "base": F2},
        {"kind": "upper_triangular", "k": 2, "base": F3},
        {"kind": "upper_triangular", "k": 2, "base": Z4},
        {"kind": "matrix", "k": 2, "base": F2},
        {"kind": "matrix", "k": 2, "base": F3},
        Z4,
        {"kind": "zmod", "n": 6},
    ]:
        assert want in specs, want
    assert sum(s["kind"] == "gen_triangular" for s in specs) >= 10
    assert len(specs) > len(fixture_specs(CorpusConfig()))


def test_default_corpus_size():
    rings = list(generate_rings(CorpusConfig()))
    modules = sum(len(list(generate_modules(R))) for R in rings)
    assert len(rings) >= 30 and modules >= 200


def test_module_caps_respected():
    cfg = CorpusConfig(max_module_order=8)
    for R in generate_rings(CorpusConfig(count=15)):
        for M in generate_modules(R, cfg):
            assert M.order <= 8


def test_dump_replays_exactly():
    for line in dump_lines(SMALL, modules=True):
        spec = json.loads(line)
        M = build_module(build_ring(spec["ring"]), spec["module"])
        assert json.dumps(M.spec(), sort_keys=True) == line


def test_gen_triangular_fixtures_build():
    for spec in gen_triangular_fixtures():
        R = build_ring(spec)
        assert R.triangular is not None


def test_exhaustive_mode():
    cfg = CorpusConfig(max_ring_order=8, exhaustive=True, include=("zmod", "upper_triangular"))
    specs = [R.provenance for R in generate_rings(cfg)]
    assert {"kind": "zmod", "n": 8} in specs
    assert {"kind": "upper_triangular", "k": 2, "base": {"kind": "zmod", "n": 2}} in specs


def test_bad_config():
    with pytest.raises(ValueError):
        CorpusConfig(max_ring_order=0)
    with pytest.raises(ValueError):
        list(generate_rings(CorpusConfig(exhaustive=True, include=("nope",))))


def test_config_round_trip():
    cfg = CorpusConfig(seed=7, count=3)
    assert CorpusConfig.from_json(json.loads(json.dumps(cfg.to_json()))) == cfg
