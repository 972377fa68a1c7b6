"""Finite right modules and module-level annihilator predicates."""

from baerlab.module_core.module import (
    FiniteModule,
    Submodule,
    build_module,
    cyclic,
    direct_sum,
    from_tables,
    idempotent_piece,
    quotient,
    quotient_map,
    regular,
    submodule_generated,
    submodule_module,
    zero_module,
)
from baerlab.module_core.baer import (
    is_s_baer,
    is_s_rickart,
    module_annihilator_mask,
    right_annihilator,
)
from baerlab.module_core.homs import (
    EndoRing,
    HomSet,
    endomorphisms,
    enumerate_homs,
    hom_module,
    hom_set,
    is_e_baer,
    is_e_rickart,
)
from baerlab.module_core.structure import (
    essential_in,
    essential_projective_witness,
    maximal_s_rickart_submodule,
    relative_complement,
    singular_submodules,
    structure_predicates,
    verify_essential_projective,
)
from baerlab.module_core.projective import is_injective, is_projective, verify_splitting
from baerlab.module_core.triangular import triangular_annihilator_case
