import pytest
from hypothesis import given

import oracles
import samples
from baerlab import bitset
from baerlab.corpus import Z, gen_tri
from baerlab.errors import NotEssential, NotSubmodule, PreconditionFailed, ZeroElement
from baerlab.module_core import Submodule, build_module, is_projective, is_s_baer, quotient, regular, submodule_module
from baerlab.module_core.structure import second_singular_mask
from baerlab.ring_core import build_ring, essential_nilpotent_ideal_search, upper_triangular, zmod
from baerlab.torsion_lab import (
    beta_radical,
    cyclic_torsion_test,
    is_torsion,
    is_torsion_free,
    radical_structure_check,
    ring_beta,
    s_baer_core,
    stability_check,
    triangular_radical_check,
)

T2Z4 = {"kind": "upper_triangular", "k": 2, "base": {"kind": "zmod", "n": 4}}


@given(samples.modules)
def test_beta_matches_brute_force(M):
    assert set(beta_radical(M).beta.members) == oracles.beta(M)


@given(samples.modules)
def test_pruning_does_not_change_beta(M):
    assert beta_radical(M).beta == beta_radical(M, pruned=False).beta


@given(samples.modules)
def test_radical_is_idempotent(M):
    b = beta_radical(M).beta.mask
    assert is_torsion(submodule_module(M, b))
    assert is_torsion_free(quotient(M, b))


@given(samples.modules)
def test_torsion_free_iff_s_baer(M):
    assert is_torsion_free(M) == is_s_baer(M).holds


@given(samples.modules)
def test_goldie_torsion_inside_beta(M):
    assert bitset.subset(second_singular_mask(M), beta_radical(M).beta.mask)


@given(samples.modules)
def test_preradical_inclusion(M):
    b = beta_radical(M).beta.mask
    MbR = M.times_ideal(ring_beta(M.ring))
    assert bitset.subset(MbR, b)
    if is_projective(M).holds:
        assert MbR == b


def test_worked_triangular_example():
    R = build_ring(T2Z4)
    M = regular(R)
    assert R.order == 64
    assert second_singular_mask(M) == M.full_mask
    assert beta_radical(M).beta.mask == M.full_mask
    assert essential_nilpotent_ideal_search(R).holds


@pytest.mark.parametrize(
    "ring,recipe,expected",
    [
        ({"kind": "zmod", "n": 6}, None, "torsion_free"),
        ({"kind": "zmod", "n": 4}, None, "torsion"),
        ({"kind": "zmod", "n": 4}, {"kind": "quotient", "sub": [2]}, "torsion"),
        ({"kind": "zmod", "n": 4}, {"kind": "zero"}, "torsion_free"),
    ],
)
def test_classification(ring, recipe, expected):
    M = build_module(build_ring(ring), recipe)
    assert beta_radical(M).classification == expected


def test_mixed_classification():
    # Z12 = Z4 x Z3 and only the Z4 factor is torsion
    M = regular(zmod(12))
    r = beta_radical(M)
    assert r.classification == "mixed"
    assert set(r.beta.members) == {0, 3, 6, 9} == oracles.beta(M)


def test_cyclic_torsion_test():
    M = regular(zmod(4))
    v = cyclic_torsion_test(M, 2)
    assert v.holds and v.certificate["cyclic_is_torsion"]
    Mb = regular(zmod(6))
    assert not cyclic_torsion_test(Mb, 2).holds
    with pytest.raises(ZeroElement):
        cyclic_torsion_test(M, 0)


@given(samples.modules)
def test_s_baer_core_matches_cyclic_oracle(M):
    core = set(s_baer_core(M).core)
    want = {s for s in range(M.order) if oracles.is_s_baer(submodule_module(M, M.cyclic[s]))}
    assert core == want


def test_radical_structure_needs_proper_beta():
    with pytest.raises(PreconditionFailed):
        radical_structure_check(regular(zmod(4)))
    report = radical_structure_check(regular(zmod(12)))
    assert report.holds, [c.to_json() for c in report.failures()]


@given(samples.modules)
def test_radical_structure_clauses(M):
    if beta_radical(M).beta.mask == M.full_mask:
        return
    report = radical_structure_check(M)
    assert report.holds, [c.to_json() for c in report.failures()]


def test_stability_check_validates_pairs():
    M = regular(zmod(4))
    T = Submodule(M, bitset.from_indices([0, 2]))
    assert stability_check([(T, M)]).holds
    N = regular(zmod(6))
    with pytest.raises(NotEssential):
        stability_check([(Submodule(N, bitset.from_indices([0, 3])), N)])
    with pytest.raises(NotSubmodule):
        stability_check([(T, regular(zmod(4)))])


@given(samples.modules)
def test_stability_on_essential_submodules(M):
    pairs = [(Submodule(M, s), M) for s in M.submodules if M.is_essential_mask(s)]
    assert stability_check(pairs).holds


def test_triangular_radical_over_t2_f2():
    report = triangular_radical_check(upper_triangular(2, zmod(2)))
    assert report.holds


def test_triangular_block_may_need_e_equal_one():
    # beta(R) is the whole top row, so only e = 1 gives a block containing it
    R = build_ring(gen_tri(Z(4), Z(2), {"kind": "regular"}, {"kind": "scalar"}))
    report = triangular_radical_check(R)
    clause = report.clauses[0]
    assert clause.holds
    assert clause.witness["block_e"] == [R.triangular.a.one]
    assert clause.witness["block_e_not_1"] == []
    assert clause.witness["beta_proper"] and clause.witness["C_baer"]


def test_triangular_radical_over_t2_f3():
    R = upper_triangular(2, build_ring(samples.F3))
    report = triangular_radical_check(R)
    assert report.holds and report.beta == [0]
