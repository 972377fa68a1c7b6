"""Checks of the torsion theory cogenerated by the s.Baer modules."""

from __future__ import annotations

import numpy as np

from baerlab import bitset
from baerlab.errors import HypothesisFailed
from baerlab.module_core.baer import is_s_baer
from baerlab.module_core.module import Submodule, cyclic, quotient, submodule_module
from baerlab.module_core.projective import is_projective
from baerlab.module_core.structure import is_fi_extending, second_singular_mask
from baerlab.ring_core.predicates import is_semicentral_reduced
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
from baerlab.verifier import memo
from baerlab.verifier.checks_module import _homs, _partners
from baerlab.verifier.registry import register, skip_unless


def _beta(M) -> int:
    return beta_radical(M).beta.mask


@register(
    "beta_radical_axioms",
    "β is an idempotent radical: β(β(M)) = β(M), β(M/β(M)) = 0, homs carry β(M) into β(N), "
    "and Mβ(R) ⊆ β(M) with equality for projective M.",
    "module",
    sampler=lambda ctx, M: [{"targets": [N.recipe for N in _partners(ctx, M, 2)]}],
)
def beta_radical_axioms(ctx, M, targets):
    beta = _beta(M)
    detail = {"beta": bitset.to_list(beta)}
    if not is_torsion(submodule_module(M, beta)):
        return False, dict(detail, clause="beta_of_beta")
    if not is_torsion_free(quotient(M, beta)):
        return False, dict(detail, clause="quotient_torsion_free")
    xs = bitset.to_array(beta)
    for recipe in targets:
        N = ctx.module(recipe)
        inside = bitset.to_bool(_beta(N), N.order)
        maps = _homs(M, N)
        bad = np.flatnonzero(~inside[maps[:, xs]].all(axis=1))
        if bad.size:
            return False, dict(detail, clause="hom_image", target=recipe, map=maps[bad[0]].tolist())
    M_beta_R = M.times_ideal(ring_beta(M.ring))
    if not bitset.subset(M_beta_R, beta):
        return False, dict(detail, clause="preradical_inclusion", M_beta_R=bitset.to_list(M_beta_R))
    projective = is_projective(M).holds
    if projective and M_beta_R != beta:
        return False, dict(detail, clause="projective_equality", M_beta_R=bitset.to_list(M_beta_R))
    return True, dict(detail, projective=projective, homs_checked=len(targets))


@register("torsion_free_eq_sbaer", "β(M) = 0 exactly when M is s.Baer.", "module")
def torsion_free_eq_sbaer(ctx, M):
    tf, b = is_torsion_free(M), is_s_baer(M).holds
    return tf == b, {"torsion_free": tf, "s_baer": b}


@register("goldie_comparison", "Z2(M) ⊆ β(M): Goldie torsion is s.Baer torsion.", "module")
def goldie_comparison(ctx, M):
    z2, beta = second_singular_mask(M), _beta(M)
    return bitset.subset(z2, beta), {"Z2": bitset.to_list(z2), "beta": bitset.to_list(beta)}


@register(
    "torsion_free_closure",
    "Torsion-free modules are closed under submodules and finite direct sums.",
    "module",
    guard=lambda ctx, M: skip_unless(is_torsion_free(M), "module is not torsion-free"),
    sampler=lambda ctx, M: [{"other": N.recipe} for N in _partners(ctx, M, 2, pred=is_torsion_free,
                                                                     max_product=64)],
)
def torsion_free_closure(ctx, M, other):
    for N in M.submodules:
        if not is_torsion_free(submodule_module(M, N)):
            return False, {"submodule": bitset.to_list(N)}
    S = ctx.module({"kind": "direct_sum", "parts": [M.recipe, other]})
    return is_torsion_free(S), {"sum_order": S.order}


@register(
    "beta_pruned_oracle",
    "Restricting the intersection to K ⊇ Z2(M) leaves β unchanged.",
    "module",
)
def beta_pruned_oracle(ctx, M):
    a = beta_radical(M).beta.mask
    b = beta_radical(M, pruned=False).beta.mask
    return a == b, {"pruned": bitset.to_list(a), "unpruned": bitset.to_list(b)}


@register(
    "cyclic_torsion",
    "If r_R(m) lies in no eR for an idempotent e != 1, then mR is torsion.",
    "module",
)
def cyclic_torsion(ctx, M):
    seen, fired = set(), 0
    for m in M.elements:
        if m == M.zero or M.cyclic[m] in seen:
            continue
        seen.add(M.cyclic[m])
        v = cyclic_torsion_test(M, m)
        if v.holds:
            fired += 1
            # a nonzero torsion cyclic cannot be s.Baer, so this also
            # covers the contrapositive
            if not v.certificate["cyclic_is_torsion"]:
                return False, {"m": m}
    return True, {"fired": fired}


@register(
    "s_baer_core",
    "The s.Baer core contains 0, is closed under the action, and is all of M for s.Baer M.",
    "module",
)
def s_baer_core_check(ctx, M):
    core = s_baer_core(M)
    members = set(core.core)
    closed = all(int(M.act[s, r]) in members for s in core.core for r in M.ring.elements)
    # independent per-element oracle on built cyclic modules
    oracle = {s for s in M.elements if is_s_baer(cyclic(M, s)).holds}
    whole = len(members) == M.order
    ok = M.zero in members and closed and oracle == members and whole == is_s_baer(M).holds
    return ok, {"core": sorted(members), "closed": closed, "oracle_agrees": oracle == members}


@register(
    "radical_structure",
    "When β(M) != M: r(core M) ∩ r(core R) = cR for a left semicentral c != 1 with β(R) ⊆ cR, "
    "(1-c)R s.Baer, and the companion inclusions, dichotomy and splitting consequences.",
    "module",
    guard=lambda ctx, M: skip_unless(_beta(M) != M.full_mask, "β(M) = M"),
)
def radical_structure(ctx, M):
    report = radical_structure_check(M)
    return report.holds, {"failed": [c.to_json() for c in report.failures()],
                          "clauses": len(report.clauses)}


def _guard_dichotomy(ctx, M):
    skip_unless(is_semicentral_reduced(M.ring).holds, "R is not semicentral reduced")
    skip_unless(is_projective(M).holds, "module is not projective")


@register(
    "projective_dichotomy",
    "Over a semicentral reduced ring a projective module is torsion or torsion-free.",
    "module",
    guard=_guard_dichotomy,
)
def projective_dichotomy(ctx, M):
    beta = _beta(M)
    return beta in (M.zero_mask, M.full_mask), {"beta": bitset.to_list(beta)}


@register(
    "fi_extending_splits",
    "In an FI-extending module β(M) is a direct summand.",
    "module",
    guard=lambda ctx, M: skip_unless(is_fi_extending(M).holds, "module is not FI-extending"),
)
def fi_extending_splits(ctx, M):
    beta = _beta(M)
    comp = M.summand_complements.get(beta)
    return comp is not None, {"beta": bitset.to_list(beta),
                              "complement": None if comp is None else bitset.to_list(comp)}


def _essential_pairs(ctx, M):
    out = []
    for N in M.submodules:
        if N != M.full_mask and N != M.zero_mask and M.is_essential_mask(N):
            out.append({"T": bitset.to_list(N)})
            if len(out) == 3:
                break
    return out


@register(
    "stability",
    "Torsion is preserved by essential extensions: T ≤ess M and T torsion give M torsion.",
    "module",
    sampler=_essential_pairs,
    keep_evidence=True,
)
def stability(ctx, M, T):
    report = stability_check([(Submodule(M, bitset.from_indices(T)), M)])
    clause = report.clauses[0]
    return report.holds, {"T_torsion": clause.applicable, "M_torsion": is_torsion(M)}


def _guard_hereditary(ctx, M):
    R = M.ring
    skip_unless(memo.right_duo(R) or bool(memo.g_extending(R)), "R neither right duo nor G-extending")
    skip_unless(is_torsion(M), "module is not torsion")


@register(
    "hereditary_duo_gextending",
    "Over a right duo ring, or one with R_R G-extending, submodules of torsion modules are torsion.",
    "module",
    guard=_guard_hereditary,
)
def hereditary_duo_gextending(ctx, M):
    for N in M.submodules:
        if not is_torsion(submodule_module(M, N)):
            return False, {"submodule": bitset.to_list(N)}
    return True, {}


@register(
    "indecomposable_torsion_sum",
    "For R_R indecomposable the sum of the mR with r(m) != 0 lies in β(M), is zero only if β(M) is, "
    "and is essential in β(M) when R is commutative.",
    "module",
    guard=lambda ctx, M: skip_unless(memo.trivial_idempotents(M.ring), "R_R is decomposable"),
)
def indecomposable_torsion_sum(ctx, M):
    R = M.ring
    S = M.generated([m for m in M.elements if M.ann_masks[m] != R.zero_mask])
    beta = _beta(M)
    ok = bitset.subset(S, beta) and (S != M.zero_mask or beta == M.zero_mask)
    if ok and R.is_commutative:
        ok = M.is_essential_mask(S, beta)
    return ok, {"sum": bitset.to_list(S), "beta": bitset.to_list(beta)}


def _triangular_guard(ctx, R):
    skip_unless(R.triangular is not None, "not a triangular ring")


@register(
    "triangular_radical",
    "For (A M; 0 C) with C semicentral reduced and A acting faithfully on M: β(R) is proper iff it sits "
    "in an (eA eM; 0 0) block iff C is Baer, with the corner and X-essentiality refinements.",
    "ring",
    guard=_triangular_guard,
    keep_evidence=True,
)
def triangular_radical(ctx, R):
    try:
        report = triangular_radical_check(R)
    except HypothesisFailed as exc:
        skip_unless(False, str(exc))
    return report.holds, {"beta": report.beta, "clauses": [c.to_json() for c in report.clauses]}
