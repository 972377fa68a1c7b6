"""Subjects small enough for the brute-force oracles."""

from hypothesis import strategies as st

from baerlab.module_core import build_module
from baerlab.ring_core import build_ring

F2 = {"kind": "prime_field", "p": 2}
F3 = {"kind": "prime_field", "p": 3}
T2F2 = {"kind": "upper_triangular", "k": 2, "base": F2}

RINGS = [{"kind": "zmod", "n": n} for n in (1, 2, 3, 4, 6, 8, 9)] + [
    {"kind": "product", "factors": [F2, F2]},
    {"kind": "product", "factors": [{"kind": "zmod", "n": 2}, {"kind": "zmod", "n": 4}]},
    T2F2,
    {"kind": "trivial_extension", "base": F2},
    {"kind": "quotient", "base": {"kind": "zmod", "n": 8}, "gens": [4]},
]

MODULES = [
    ({"kind": "zmod", "n": 4}, None),
    ({"kind": "zmod", "n": 4}, {"kind": "quotient", "sub": [2]}),
    ({"kind": "zmod", "n": 6}, None),
    ({"kind": "zmod", "n": 8}, {"kind": "quotient", "sub": [4]}),
    ({"kind": "zmod", "n": 2}, {"kind": "direct_sum", "parts": [{"kind": "regular"}, {"kind": "regular"}]}),
    ({"kind": "zmod", "n": 4}, {"kind": "direct_sum", "parts": [{"kind": "regular"}, {"kind": "quotient", "sub": [2]}]}),
    (T2F2, None),
    (T2F2, {"kind": "idempotent_piece", "e": 4}),
    (T2F2, {"kind": "quotient", "sub": [2]}),
    (T2F2, {"kind": "quotient", "sub": [1]}),
    ({"kind": "product", "factors": [F2, F2]}, {"kind": "quotient", "sub": [1]}),
    ({"kind": "trivial_extension", "base": F2}, None),
    ({"kind": "trivial_extension", "base": F2}, {"kind": "quotient", "sub": [1]}),
    ({"kind": "zmod", "n": 9}, {"kind": "quotient", "sub": [3]}),
]


def build(pair):
    ring, recipe = pair
    return build_module(build_ring(ring), recipe)


rings = st.sampled_from(RINGS).map(build_ring)
modules = st.sampled_from(MODULES).map(build)
