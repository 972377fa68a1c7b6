"""Finite rings: construction, idempotents, annihilators and ring predicates."""

from baerlab.ring_core.ring import (
    FiniteRing,
    IdempotentReport,
    RightIdeal,
    TriangularData,
    axiom_failures,
    idempotent_report,
    left_annihilator_ring,
    opposite,
    right_annihilator_ring,
)
from baerlab.ring_core.predicates import (
    RingPredicates,
    StructuralIdeals,
    essential_nilpotent_ideal_search,
    has_sip,
    has_ssip,
    is_baer,
    is_generated_by_idempotent,
    is_right_rickart,
    ring_predicates,
    structural_ideals,
)
from baerlab.ring_core.construct import (
    build_ring,
    gen_triangular,
    matrix_ring,
    prime_field,
    product_ring,
    quotient_ring,
    subring_generated,
    table_ring,
    trivial_extension,
    upper_triangular,
    zmod,
)
