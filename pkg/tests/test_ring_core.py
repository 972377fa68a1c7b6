import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
import samples
from baerlab import bitset
from baerlab.errors import CapExceeded, InvalidSpec
from baerlab.ring_core import (
    RightIdeal,
    build_ring,
    essential_nilpotent_ideal_search,
    has_sip,
    has_ssip,
    idempotent_report,
    is_baer,
    is_generated_by_idempotent,
    is_right_rickart,
    left_annihilator_ring,
    matrix_ring,
    opposite,
    prime_field,
    product_ring,
    quotient_ring,
    right_annihilator_ring,
    ring_predicates,
    structural_ideals,
    table_ring,
    upper_triangular,
    zmod,
)

F3 = samples.F3
small_rings = samples.rings


def test_zmod_tables():
    R = zmod(6)
    assert R.order == 6 and R.zero == 0 and R.one == 1
    assert all(R.add[a, b] == (a + b) % 6 and R.mul[a, b] == (a * b) % 6 for a in range(6) for b in range(6))


def test_prime_field_rejects_composite():
    with pytest.raises(InvalidSpec):
        prime_field(4)


@pytest.mark.parametrize("spec", [{"kind": "nope"}, {"kind": "zmod"}, [1, 2], {"kind": "zmod", "n": 0}])
def test_build_ring_rejects_bad_expressions(spec):
    with pytest.raises(InvalidSpec):
        build_ring(spec)


def test_table_ring_validation():
    add = [[0, 1], [1, 0]]
    with pytest.raises(InvalidSpec):
        table_ring(add, [[0, 0], [0, 0]])  # no identity
    R = table_ring(add, [[0, 0], [0, 1]])
    assert R.order == 2 and R.one == 1


def test_caps_are_enforced():
    with pytest.raises(CapExceeded):
        matrix_ring(2, zmod(4), cap=100)
    with pytest.raises(CapExceeded):
        build_ring({"kind": "matrix", "k": 3, "base": F3}, cap=1000)


def test_known_orders():
    assert upper_triangular(2, prime_field(3)).order == 27
    assert matrix_ring(2, prime_field(2)).order == 16
    assert product_ring([zmod(2), zmod(3)]).order == 6


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16])
def test_zmod_baer_iff_squarefree(n):
    R = zmod(n)
    assert is_baer(R).holds == oracles.squarefree(n)
    assert is_right_rickart(R).holds == oracles.squarefree(n)


def test_zmod4_rickart_witness():
    v = is_right_rickart(zmod(4))
    assert not v.holds and v.witness == 2
    assert v.certificate["annihilator"] == [0, 2]


@pytest.mark.parametrize("p", [2, 3])
def test_triangular_over_field_is_baer(p):
    R = upper_triangular(2, prime_field(p))
    assert is_baer(R).holds and is_right_rickart(R).holds


def test_zmod6_is_baer():
    assert is_baer(zmod(6)).holds


@given(small_rings)
def test_idempotents_match_brute_force(R):
    rep = idempotent_report(R)
    assert list(rep.all) == oracles.idempotents(R)
    n = R.order
    for e in rep.left_semicentral:
        assert all(R.mul[x, e] == R.mul[e, R.mul[x, e]] for x in range(n))
    for e in rep.right_semicentral:
        assert all(R.mul[e, x] == R.mul[R.mul[e, x], e] for x in range(n))
    assert set(rep.central) == set(rep.left_semicentral) & set(rep.right_semicentral)


@given(small_rings, st.data())
def test_annihilators_match_brute_force(R, data):
    S = data.draw(st.sets(st.integers(0, R.order - 1), min_size=1, max_size=4))
    assert set(right_annihilator_ring(R, S).members) == oracles.right_ann(R, S)
    assert set(bitset.to_list(left_annihilator_ring(R, S))) == oracles.left_ann(R, S)


@given(small_rings)
def test_baer_and_rickart_match_brute_force(R):
    assert is_baer(R).holds == oracles.is_baer(R)
    assert is_right_rickart(R).holds == oracles.is_right_rickart(R)


@given(small_rings)
def test_baer_witness_is_a_real_failure(R):
    v = is_baer(R)
    if not v.holds:
        assert not oracles.idempotent_generated(R, oracles.right_ann(R, v.witness))


@given(small_rings)
def test_right_ideals_match_brute_force(R):
    assert {frozenset(bitset.to_list(m)) for m in R.right_ideals} == set(oracles.right_ideals(R))


@given(small_rings)
def test_sip_equals_ssip(R):
    assert has_sip(R).holds == has_ssip(R).holds


@given(small_rings)
def test_opposite_is_involutive(R):
    O = opposite(opposite(R))
    assert np.array_equal(O.mul, R.mul) and np.array_equal(O.add, R.add)


def test_generated_by_idempotent():
    R = zmod(6)
    assert is_generated_by_idempotent(RightIdeal(R, bitset.from_indices([0, 3]))).witness == 3
    R4 = zmod(4)
    assert not is_generated_by_idempotent(RightIdeal(R4, bitset.from_indices([0, 2]))).holds


def test_structural_ideals_of_z4():
    s = structural_ideals(zmod(4))
    assert list(s.jacobson_radical.members) == [0, 2]
    assert list(s.socle.members) == [0, 2]
    assert [list(i.members) for i in s.minimal_right_ideals] == [[0, 2]]


def test_essential_nilpotent_ideal_of_z4():
    v = essential_nilpotent_ideal_search(zmod(4))
    assert v.holds and v.witness["ideal"] == [0, 2]
    assert not essential_nilpotent_ideal_search(zmod(6)).holds
    assert not essential_nilpotent_ideal_search(zmod(1)).holds


def test_ring_predicates_json_is_plain():
    import json

    out = ring_predicates(matrix_ring(2, prime_field(2))).to_json()
    json.dumps(out)
    assert out["is_semisimple"]["holds"] and out["has_SSIP"]["holds"]
    assert not out["is_right_duo"]["holds"]


def test_quotient_ring():
    Q = quotient_ring(zmod(12), [4])
    assert Q.order == 4 and not is_baer(Q).holds
