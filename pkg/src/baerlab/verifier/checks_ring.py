"""Checks whose subject is a ring."""

from __future__ import annotations

import numpy as np

from baerlab import bitset
from baerlab.errors import HypothesisFailed
from baerlab.module_core.baer import is_s_baer
from baerlab.module_core.module import quotient, submodule_module
from baerlab.module_core.structure import is_faithful
from baerlab.module_core.triangular import corner_mask, triangular_annihilator_case
from baerlab.ring_core.construct import build_ring
from baerlab.ring_core.predicates import has_ssip, is_baer, is_right_rickart, minimal_right_ideal_masks
from baerlab.ring_core.ring import axiom_failures, opposite
from baerlab.torsion_lab import quotient_is_s_baer, regular_of
from baerlab.verifier import memo
from baerlab.verifier.registry import register, skip_unless


@register("ring_axioms", "Every constructed table is an associative unital ring.", "ring")
def ring_axioms(ctx, R):
    problems = axiom_failures(R.add, R.mul, R.zero, R.one)
    return not problems, {"problems": problems[:5]}


def _subset_samples(ctx, R):
    rng = ctx.rng("subsets")
    out = []
    for _ in range(6):
        k = rng.randint(1, min(4, R.order))
        out.append({"S": sorted(rng.sample(range(R.order), k))})
    return out


@register(
    "annihilator_intersection",
    "The right annihilator of a set is the meet of the annihilators of its elements.",
    "ring",
    sampler=_subset_samples,
)
def annihilator_intersection(ctx, R, S):
    # direct scan of every a with s a = 0 for all s
    direct = bitset.from_bool((R.mul[np.array(S)] == R.zero).all(axis=0))
    meet = R.full_mask
    for s in S:
        meet &= R.right_ann_masks[s]
    return direct == meet, {"direct": bitset.to_list(direct), "meet": bitset.to_list(meet)}


@register(
    "semicentral_containment",
    "Central idempotents are left semicentral; e is left semicentral iff 1 - e is right semicentral.",
    "ring",
)
def semicentral_containment(ctx, R):
    B, Sl, Sr = set(R.central_idempotents), set(R.left_semicentral), set(R.right_semicentral)
    idem = set(R.idempotents)
    bad = [e for e in idem if (e in Sl) != (R.complement_idempotent(e) in Sr)]
    ok = B <= Sl <= idem and B == Sl & Sr and not bad and {R.zero, R.one} <= B
    return ok, {"mismatch": bad}


@register("sip_eq_ssip", "Over a finite ring finite and arbitrary summand intersections agree.", "ring")
def sip_eq_ssip(ctx, R):
    return memo.sip(R) == memo.ssip(R), {"sip": memo.sip(R), "ssip": memo.ssip(R)}


@register("baer_eq_rickart", "A finite ring is Baer exactly when it is right Rickart.", "ring")
def baer_eq_rickart(ctx, R):
    b, r = is_baer(R), is_right_rickart(R)
    return b.holds == r.holds, {"baer": b.holds, "rickart": r.holds, "rickart_witness": r.witness}


@register("opposite_baer", "Being Baer is left-right symmetric.", "ring")
def opposite_baer(ctx, R):
    b, bo = is_baer(R).holds, is_baer(opposite(R)).holds
    return b == bo, {"baer": b, "opposite_baer": bo}


@register(
    "semisimple_iff_all_cyclics_sbaer",
    "R is semisimple exactly when every cyclic module R/I is s.Baer.",
    "ring",
    keep_evidence=True,
)
def semisimple_iff_all_cyclics_sbaer(ctx, R):
    RR = regular_of(R)
    failing = next((I for I in R.right_ideals if not quotient_is_s_baer(RR, I)), None)
    ss = memo.semisimple(R)
    detail = {"semisimple": ss, "failing_ideal": None if failing is None else bitset.to_list(failing)}
    if failing is not None:
        # confirm with a full evaluation on the built quotient module
        Q = quotient(RR, failing)
        v = is_s_baer(Q)
        detail["failing_cyclic"] = {"module": {"kind": "quotient", "sub": bitset.to_list(failing)},
                                    "witness": v.to_json()["witness"]}
        if v.holds:
            return False, dict(detail, error="coset test and full test disagree")
    return ss == (failing is None), detail


def _simple_artinian(ctx, R):
    skip_unless(R.order > 1 and len(R.two_sided_ideals) == 2, "R is not simple")


@register(
    "primitive_simple_artinian",
    "A finite primitive ring is simple Artinian; it has SSIP and its faithful simple modules are s.Baer.",
    "ring",
    guard=_simple_artinian,
    keep_evidence=True,
)
def primitive_simple_artinian(ctx, R):
    RR = regular_of(R)
    verdicts = []
    for I in minimal_right_ideal_masks(R):
        S = submodule_module(RR, I)
        if is_faithful(S).holds:
            verdicts.append((bitset.to_list(I), is_s_baer(S).holds))
    ok = memo.ssip(R) and bool(verdicts) and all(v for _, v in verdicts)
    return ok, {"ssip": memo.ssip(R), "faithful_simples": verdicts[:4]}


def _tri_indecomposable(ctx, R):
    tri = R.triangular
    skip_unless(tri is not None, "not a triangular ring")
    skip_unless(memo.trivial_idempotents(tri.a) and memo.trivial_idempotents(tri.c),
                "A or C has a nontrivial idempotent")


@register(
    "triangular_ssip_lemma",
    "For (A M; 0 C) with A, C indecomposable: R has SSIP iff r_C(m) = 0 for every m != 0.",
    "ring",
    guard=_tri_indecomposable,
    keep_evidence=True,
)
def triangular_ssip_lemma(ctx, R):
    Mb = R.triangular.bimodule
    faithful = all(Mb.ann_masks[m] == Mb.ring.zero_mask for m in Mb.elements if m != Mb.zero)
    ssip = has_ssip(R).holds
    return ssip == faithful, {"ssip": ssip, "r_C_trivial": faithful}


def _triangular(ctx, R):
    skip_unless(R.triangular is not None, "not a triangular ring")


@register(
    "triangular_corner_sbaer",
    "K = (0 M; 0 C) is s.Baer over R iff both M_C and C_C are s.Baer.",
    "ring",
    guard=_triangular,
)
def triangular_corner_sbaer(ctx, R):
    tri = R.triangular
    K = submodule_module(regular_of(R), corner_mask(R))
    k = is_s_baer(K).holds
    m = is_s_baer(tri.bimodule).holds
    c = is_s_baer(regular_of(tri.c)).holds
    return k == (m and c), {"K": k, "M_C": m, "C_C": c}


@register(
    "triangular_annihilator_cases",
    "Over field corners with a faithful bimodule the annihilator of (a m; 0 c) follows the shape table.",
    "ring",
    guard=_triangular,
    keep_evidence=True,
)
def triangular_annihilator_cases(ctx, R):
    tags = {}
    for x in R.elements:
        try:
            case = triangular_annihilator_case(R, x)
        except HypothesisFailed as exc:
            skip_unless(False, str(exc))
        if not case.matches:
            return False, {"element": x, "case": case.to_json()}
        tags[case.tag] = tags.get(case.tag, 0) + 1
    return True, {"cases": tags}


@register("provenance_replay", "Ring expressions rebuild to identical tables.", "ring")
def provenance_replay(ctx, R):
    again = build_ring(R.provenance)
    same = again.order == R.order and (again.add == R.add).all() and (again.mul == R.mul).all()
    return bool(same), {}
