"""Checks whose subject is a corpus module."""

from __future__ import annotations

import json

import numpy as np

from baerlab import bitset
from baerlab.errors import CapExceeded, PreconditionFailed
from baerlab.module_core.baer import annihilator_closure, is_s_baer, is_s_rickart, module_annihilator_mask
from baerlab.module_core.homs import enumerate_homs, hom_module
from baerlab.module_core.module import module_axiom_failures, submodule_module
from baerlab.module_core.projective import is_projective
from baerlab.module_core.structure import (
    essential_projective_witness,
    is_finitely_idempotent_faithful,
    is_semisimple_module,
    singular_mask,
    verify_essential_projective,
)
from baerlab.ring_core.predicates import has_ssip
from baerlab.ring_core.construct import quotient_ring
from baerlab.torsion_lab import quotient_is_s_baer, submodule_is_s_baer
from baerlab.verifier import memo
from baerlab.verifier.registry import NotApplicable, register, skip_unless


def _sbaer(M) -> bool:
    return is_s_baer(M).holds


def _nonsingular(M) -> bool:
    return singular_mask(M) == M.zero_mask


def _partners(ctx, M, k, pred=None, max_product=None):
    """Up to k other corpus modules, chosen reproducibly."""
    pool = [N for N in ctx.modules if N is not M and (pred is None or pred(N))]
    if max_product is not None:
        pool = [N for N in pool if N.order * M.order <= max_product]
    rng = ctx.rng("partners", json.dumps(M.recipe, sort_keys=True))
    return rng.sample(pool, min(k, len(pool)))


def _homs(src, tgt):
    try:
        return enumerate_homs(src, tgt)
    except CapExceeded as exc:
        raise NotApplicable(f"hom cap: {exc}") from None


@register("module_axioms", "Every constructed module satisfies the right module axioms.", "module")
def module_axioms(ctx, M):
    problems = module_axiom_failures(M.ring, M.add, M.act, M.zero)
    return not problems, {"problems": problems[:5]}


@register(
    "srickart_eq_sbaer",
    "Over an orthogonally finite ring (every finite ring) s.Rickart and s.Baer coincide.",
    "module",
)
def srickart_eq_sbaer(ctx, M):
    r, b = is_s_rickart(M), is_s_baer(M)
    return r.holds == b.holds, {"s_rickart": r.holds, "s_baer": b.holds,
                                "rickart_witness": r.witness, "baer_witness": b.witness}


def _guard_sbaer(ctx, M):
    skip_unless(_sbaer(M), "module is not s.Baer")


def _guard_srickart(ctx, M):
    skip_unless(is_s_rickart(M).holds, "module is not s.Rickart")


@register(
    "submodule_closure",
    "Submodules of an s.Baer module are s.Baer.",
    "module",
    guard=_guard_sbaer,
)
def submodule_closure(ctx, M):
    for N in M.submodules:
        if not _sbaer(submodule_module(M, N)):
            return False, {"submodule": bitset.to_list(N)}
    return True, {"submodules": len(M.submodules)}


@register(
    "extension_closure",
    "If K and M/K are both s.Baer then so is M.",
    "module",
)
def extension_closure(ctx, M):
    whole = _sbaer(M)
    for K in M.submodules:
        if submodule_is_s_baer(M, K) and quotient_is_s_baer(M, K) and not whole:
            return False, {"K": bitset.to_list(K)}
    return True, {}


def _compat_samples(ctx, M):
    rng = ctx.rng("compat", json.dumps(M.recipe, sort_keys=True))
    out = []
    for _ in range(4):
        a = rng.randrange(M.ring.order)
        X = sorted(rng.sample(range(M.order), rng.randint(1, min(3, M.order))))
        out.append({"a": a, "X": X})
    return out


@register(
    "compatibility_identity",
    "aR ∩ r_R(X) = a·r_R(Xa) for every a in R and nonempty X ⊆ M.",
    "module",
    sampler=_compat_samples,
)
def compatibility_identity(ctx, M, a, X):
    R = M.ring
    X = np.array(X)
    # r(X) and r(Xa) by direct scan of the action table
    rX = (M.act[X] == M.zero).all(axis=0)
    Xa = M.act[X, a]
    rXa = np.flatnonzero((M.act[Xa] == M.zero).all(axis=0))
    aR = np.zeros(R.order, dtype=bool)
    aR[R.mul[a]] = True
    lhs = bitset.from_bool(aR & rX)
    rhs = bitset.from_indices(R.mul[a, rXa].tolist())
    return lhs == rhs, {"lhs": bitset.to_list(lhs), "rhs": bitset.to_list(rhs)}


@register(
    "summand_intersection",
    "In an s.Baer module eR ∩ r_R(X) is a direct summand of R for all idempotents e.",
    "module",
    guard=_guard_sbaer,
)
def summand_intersection(ctx, M):
    R = M.ring
    gens = R.idempotent_generators
    for ann in annihilator_closure(M):
        for e in R.idempotents:
            meet = R.principal_right[e] & ann
            if meet not in gens:
                return False, {"e": e, "annihilator": bitset.to_list(ann), "meet": bitset.to_list(meet)}
    return True, {}


@register(
    "finite_direct_sums",
    "M ⊕ N is s.Baer iff M and N are, over a finite index set.",
    "module",
    sampler=lambda ctx, M: [{"other": N.recipe} for N in _partners(ctx, M, 3, max_product=64)],
)
def finite_direct_sums(ctx, M, other):
    N = ctx.module(other)
    S = ctx.module({"kind": "direct_sum", "parts": [M.recipe, other]})
    lhs, m, n = _sbaer(S), _sbaer(M), _sbaer(N)
    return lhs == (m and n), {"sum": lhs, "M": m, "N": n}


@register("srickart_nonsingular", "s.Rickart modules are nonsingular.", "module", guard=_guard_srickart)
def srickart_nonsingular(ctx, M):
    Z = singular_mask(M)
    return Z == M.zero_mask, {"Z": bitset.to_list(Z)}


@register(
    "annihilator_ssip",
    "For s.Baer M, r_R(M) = eR with e left semicentral, and R/r_R(M) has SSIP.",
    "module",
    guard=_guard_sbaer,
)
def annihilator_ssip(ctx, M):
    R = M.ring
    ann = module_annihilator_mask(M)
    e = next((x for x in R.left_semicentral if R.principal_right[x] == ann), None)
    Q = quotient_ring(R, bitset.to_list(ann), provenance={"kind": "quotient", "base": R.provenance,
                                                         "gens": bitset.to_list(ann)})
    ssip = has_ssip(Q).holds
    return e is not None and ssip, {"annihilator": bitset.to_list(ann), "e": e, "quotient_ssip": ssip}


def _guard_sip(ctx, M):
    skip_unless(is_s_rickart(M).holds, "module is not s.Rickart")
    skip_unless(is_finitely_idempotent_faithful(M).holds, "module is not finitely idempotent faithful")


@register(
    "sip_consequence",
    "An s.Rickart, finitely idempotent faithful module forces R_R to have SIP.",
    "module",
    guard=_guard_sip,
)
def sip_consequence(ctx, M):
    return memo.sip(M.ring), {}


def _guard_semisimple(ctx, M):
    skip_unless(is_semisimple_module(M).holds, "module is not semisimple")


@register(
    "semisimple_module_equivalences",
    "For semisimple M: nonsingular, projective, s.Rickart and s.Baer are equivalent.",
    "module",
    guard=_guard_semisimple,
)
def semisimple_module_equivalences(ctx, M):
    flags = {
        "nonsingular": _nonsingular(M),
        "projective": is_projective(M).holds,
        "s_rickart": is_s_rickart(M).holds,
        "s_baer": _sbaer(M),
    }
    return len(set(flags.values())) == 1, flags


def _guard_g_extending(ctx, M):
    g = memo.g_extending(M.ring)
    skip_unless(g is not None, "R_R lattice over cap")
    skip_unless(g, "R_R is not G-extending")


@register(
    "g_extending_base",
    "If R_R is G-extending, M is s.Rickart iff Z(M) = 0.",
    "module",
    guard=_guard_g_extending,
)
def g_extending_base(ctx, M):
    r, z = is_s_rickart(M).holds, _nonsingular(M)
    return r == z, {"s_rickart": r, "nonsingular": z}


def _guard_indecomposable(ctx, M):
    skip_unless(memo.trivial_idempotents(M.ring), "R has a nontrivial idempotent")


@register(
    "indecomposable_base",
    "If R has only trivial idempotents, M is s.Baer iff r_R(m) = 0 for every m != 0.",
    "module",
    guard=_guard_indecomposable,
)
def indecomposable_base(ctx, M):
    R = M.ring
    torsionless = all(M.ann_masks[m] == R.zero_mask for m in M.elements if m != M.zero)
    b = _sbaer(M)
    return b == torsionless, {"s_baer": b, "faithful_elements": torsionless}


def _least_proper_essential(M):
    for N in M.submodules:
        if N != M.full_mask and M.is_essential_mask(N):
            return N
    return None


def _vanishing_samples(ctx, M):
    T = _least_proper_essential(M)
    if T is None:
        return []
    parts = _partners(ctx, M, 3, pred=lambda K: is_s_rickart(K).holds and not K.is_zero)
    return [{"T": bitset.to_list(T), "K": K.recipe} for K in parts]


@register(
    "essential_hom_vanishing",
    "If T ≤ess M, K is s.Rickart and Hom(T, K) = 0, then Hom(M, K) = 0.",
    "module",
    sampler=_vanishing_samples,
)
def essential_hom_vanishing(ctx, M, T, K):
    Kmod = ctx.module(K)
    Tmod = submodule_module(M, bitset.from_indices(T))
    skip_unless(_homs(Tmod, Kmod).shape[0] == 1, "Hom(T, K) is nonzero")
    n = _homs(M, Kmod).shape[0]
    return n == 1, {"homs_M_K": n}


@register(
    "essential_projective",
    "Every s.Rickart module is an essential extension of a projective module.",
    "module",
    guard=_guard_srickart,
)
def essential_projective(ctx, M):
    try:
        wit = essential_projective_witness(M)
    except PreconditionFailed as exc:
        return False, {"error": str(exc)}
    cert = json.loads(json.dumps(wit.certificate))
    problems = verify_essential_projective(M, cert)
    projective = is_projective(wit.P.as_module()).holds
    essential = M.is_essential_mask(wit.P.mask)
    ok = not problems and projective and essential
    return ok, {"P": cert["P"], "problems": problems, "projective": projective, "essential": essential}


def _guard_baer_projective(ctx, M):
    skip_unless(memo.baer(M.ring), "R is not Baer")
    skip_unless(is_projective(M).holds, "module is not projective")


@register(
    "projective_sbaer_over_baer",
    "Over a Baer ring every projective module is s.Baer.",
    "module",
    guard=_guard_baer_projective,
)
def projective_sbaer_over_baer(ctx, M):
    return _sbaer(M), {}


def _guard_commutative_sbaer(ctx, M):
    skip_unless(M.ring.is_commutative, "R is not commutative")
    skip_unless(_sbaer(M), "module is not s.Baer")


@register(
    "hom_monomorphism",
    "For commutative R and s.Baer M, if every nonzero M -> N is monic then Hom(M, N) is s.Baer with r(Hom) = r(M).",
    "module",
    guard=_guard_commutative_sbaer,
    sampler=lambda ctx, M: [{"N": N.recipe} for N in _partners(ctx, M, 3)],
)
def hom_monomorphism(ctx, M, N):
    Nmod = ctx.module(N)
    maps = _homs(M, Nmod)
    zero = Nmod.zero
    monic = all(
        (row == zero).all() or (row == zero).sum() == 1
        for row in maps
    )
    skip_unless(monic, "some nonzero hom is not monic")
    # with Hom(M, N) = 0 the annihilator equality fails for trivial reasons
    skip_unless(maps.shape[0] > 1 or M.is_zero, "Hom(M, N) = 0")
    try:
        H = hom_module(M, Nmod)
    except CapExceeded as exc:
        raise NotApplicable(str(exc)) from None
    hb = _sbaer(H)
    same = module_annihilator_mask(H) == module_annihilator_mask(M)
    return hb and same, {"hom_s_baer": hb, "annihilators_agree": same, "homs": H.order}


@register(
    "hom_bimodule",
    "For commutative R and s.Baer M, Hom(N, M) is an s.Baer module.",
    "module",
    guard=_guard_commutative_sbaer,
    sampler=lambda ctx, M: [{"N": N.recipe} for N in _partners(ctx, M, 3)],
)
def hom_bimodule(ctx, M, N):
    try:
        H = hom_module(ctx.module(N), M)
    except CapExceeded as exc:
        raise NotApplicable(str(exc)) from None
    return _sbaer(H), {"homs": H.order}


def _guard_obstruction(ctx, M):
    skip_unless(memo.nilpotent_obstruction(M.ring).holds, "R has no essential nilpotent ideal")
    skip_unless(not M.is_zero, "zero module")


@register(
    "essential_nilpotent_obstruction",
    "A ring with an essential nilpotent ideal has no nonzero s.Baer module.",
    "module",
    guard=_guard_obstruction,
)
def essential_nilpotent_obstruction(ctx, M):
    v = is_s_baer(M)
    return not v.holds, {"ideal": memo.nilpotent_obstruction(M.ring).witness}


def _guard_nonsingular_extending(ctx, M):
    ne = memo.nonsingular_extending(M.ring)
    skip_unless(ne is not None, "R_R lattice over cap")
    skip_unless(ne, "R_R is not nonsingular extending")


@register(
    "nonsingular_extending_base",
    "If R_R is nonsingular and extending then R is Baer, M is s.Baer iff Z(M) = 0, "
    "and projective modules are s.Baer.",
    "module",
    guard=_guard_nonsingular_extending,
)
def nonsingular_extending_base(ctx, M):
    b, z = _sbaer(M), _nonsingular(M)
    p = is_projective(M).holds
    ok = memo.baer(M.ring) and b == z and (b or not p)
    return ok, {"ring_baer": memo.baer(M.ring), "s_baer": b, "nonsingular": z, "projective": p}


def _guard_essential_lemma(ctx, M):
    R = M.ring
    g = memo.g_extending(R)
    duo = memo.right_duo(R)
    central_ann = set(R.left_semicentral) == set(R.central_idempotents) and all(
        R.is_two_sided_mask(M.ann_masks[m]) for m in M.elements
    )
    skip_unless(bool(g) or duo or central_ann, "R is not G-extending, not right duo, no central annihilators")


def _essential_sbaer_samples(ctx, M):
    for N in M.submodules:
        if N != M.zero_mask and M.is_essential_mask(N) and submodule_is_s_baer(M, N):
            return [{"S": bitset.to_list(N)}]
    return []


@register(
    "essential_sbaer_extension",
    "An essential extension of an s.Baer module is s.Rickart when R_R is G-extending, R is right duo, "
    "or idempotents are central and element annihilators are ideals.",
    "module",
    guard=_guard_essential_lemma,
    sampler=_essential_sbaer_samples,
)
def essential_sbaer_extension(ctx, M, S):
    return is_s_rickart(M).holds, {"S": S}
