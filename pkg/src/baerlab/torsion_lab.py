"""The torsion theory whose torsion-free class is the s.Baer modules.

β(M) is the intersection of all K ≤ M with M/K s.Baer.  The s.Baer class
is closed under submodules and finite products, and M/β(M) embeds in the
product of those M/K, so over a finite ring this intersection is the
torsion radical.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from baerlab import _lattice, bitset
from baerlab.errors import HypothesisFailed, NotEssential, NotSubmodule, PreconditionFailed, ZeroElement
from baerlab.module_core.baer import is_s_baer
from baerlab.module_core.homs import endomorphisms, image_mask
from baerlab.module_core.module import FiniteModule, Submodule, cyclic, regular, submodule_module
from baerlab.module_core.projective import is_projective
from baerlab.module_core.structure import (
    essential_projective_witness,
    is_fi_extending,
    relative_complement,
    second_singular_mask,
)
from baerlab.ring_core.predicates import is_baer, is_semicentral_reduced
from baerlab.ring_core.ring import FiniteRing, RightIdeal
from baerlab.verdict import Verdict, jsonable


def family_is_s_baer(R: FiniteRing, ann_masks) -> bool:
    """Whether the meet-closure of the given annihilators is idempotent-generated."""
    gens = R.idempotent_generators
    bases = {m: 0 for m in set(ann_masks)}
    if any(m not in gens for m in bases):
        return False
    return all(m in gens for m in _lattice.meet_closure(bases))


def quotient_is_s_baer(M: FiniteModule, K: int) -> bool:
    """M/K is s.Baer, decided from the coset annihilators r(x + K)."""
    return family_is_s_baer(M.ring, M.coset_ann_masks(K))


def submodule_is_s_baer(M: FiniteModule, N: int) -> bool:
    return family_is_s_baer(M.ring, [M.ann_masks[x] for x in bitset.to_list(N)])


@dataclass(frozen=True)
class RadicalResult:
    module: FiniteModule
    beta: Submodule
    contributing_quotients: list
    classification: str

    def to_json(self) -> dict:
        return {
            "module": self.module.spec(),
            "beta": list(self.beta.members),
            "order": self.module.order,
            "contributing_quotients": [bitset.to_list(K) for K in self.contributing_quotients],
            "classification": self.classification,
        }


def _classify(M: FiniteModule, beta: int) -> str:
    if beta == M.zero_mask:
        return "torsion_free"
    if beta == M.full_mask:
        return "torsion"
    return "mixed"


def beta_radical(M: FiniteModule, pruned: bool = True) -> RadicalResult:
    """β(M) by intersecting every K with M/K s.Baer.

    With ``pruned`` only K containing Z2(M) are tried: s.Baer modules are
    nonsingular, so Z2(M) lies in every contributing K.
    """
    cached = _beta_cache.get(M)
    if cached is not None and pruned:
        return cached
    seed = second_singular_mask(M) if pruned else M.zero_mask
    contributing = [
        K for K in M.submodules
        if bitset.subset(seed, K) and quotient_is_s_baer(M, K)
    ]
    beta = M.full_mask
    for K in contributing:
        beta &= K
    result = RadicalResult(M, Submodule(M, beta), contributing, _classify(M, beta))
    if pruned:
        _beta_cache[M] = result
    return result


_beta_cache: "weakref.WeakKeyDictionary[FiniteModule, RadicalResult]" = weakref.WeakKeyDictionary()
_regular_cache: "weakref.WeakKeyDictionary[FiniteRing, FiniteModule]" = weakref.WeakKeyDictionary()


def regular_of(R: FiniteRing) -> FiniteModule:
    M = _regular_cache.get(R)
    if M is None:
        M = regular(R)
        _regular_cache[R] = M
    return M


def ring_beta(R: FiniteRing) -> int:
    """β(R_R) as a mask over R."""
    return beta_radical(regular_of(R)).beta.mask


def is_torsion(M: FiniteModule) -> bool:
    return beta_radical(M).beta.mask == M.full_mask


def is_torsion_free(M: FiniteModule) -> bool:
    return beta_radical(M).beta.mask == M.zero_mask


def cyclic_torsion_test(M: FiniteModule, m: int) -> Verdict:
    """r_R(m) lies in no eR with e idempotent, e != 1; then mR is torsion.

    e = 0 counts, so the test needs r_R(m) != 0.
    """
    if m == M.zero:
        raise ZeroElement("cyclic torsion test needs a nonzero element")
    R = M.ring
    ann = M.ann_masks[m]
    for e in R.idempotents:
        if e == R.one:
            continue
        if bitset.subset(ann, R.principal_right[e]):
            return Verdict(
                "cyclic_torsion", False, e,
                {"annihilator": bitset.to_list(ann)}, M.spec(),
            )
    C = cyclic(M, m)
    confirmed = is_torsion(C)
    return Verdict(
        "cyclic_torsion", True, m,
        {"annihilator": bitset.to_list(ann), "cyclic_is_torsion": confirmed},
        M.spec(),
    )


@dataclass(frozen=True)
class CoreResult:
    core: tuple
    annihilator: RightIdeal
    generator: int | None  # least c in S_l(R) with r_R(core) = cR

    def to_json(self) -> dict:
        return {
            "core": list(self.core),
            "annihilator": list(self.annihilator.members),
            "generator": self.generator,
        }


def s_baer_core(M: FiniteModule) -> CoreResult:
    """{s : sR is s.Baer}, tested once per distinct cyclic submodule."""
    verdicts: dict[int, bool] = {}
    core = []
    for s in M.elements:
        c = M.cyclic[s]
        if c not in verdicts:
            verdicts[c] = submodule_is_s_baer(M, c)
        if verdicts[c]:
            core.append(s)
    R = M.ring
    ann = R.full_mask
    for s in core:
        ann &= M.ann_masks[s]
    generator = next((c for c in R.left_semicentral if R.principal_right[c] == ann), None)
    return CoreResult(tuple(core), RightIdeal(R, ann), generator)


# -- reports ---------------------------------------------------------------


@dataclass
class Clause:
    name: str
    holds: bool
    applicable: bool = True
    witness: Any = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "holds": bool(self.holds),
            "applicable": self.applicable,
            "witness": jsonable(self.witness),
        }


@dataclass
class Report:
    check: str
    subject: Any
    beta: list | None = None
    clauses: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.clauses if c.applicable)

    def failures(self) -> list:
        return [c for c in self.clauses if c.applicable and not c.holds]

    def add(self, name: str, holds: bool, witness: Any = None, applicable: bool = True) -> None:
        self.clauses.append(Clause(name, bool(holds), applicable, witness))

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "module": jsonable(self.subject),
            "beta": self.beta,
            "holds": self.holds,
            "clauses": [c.to_json() for c in self.clauses],
        }


def _cR_one_minus_c(R: FiniteRing, c: int) -> int:
    f = R.complement_idempotent(c)
    return bitset.from_indices(np.unique(R.mul[R.mul[c, :], f]).tolist())


def summand_idempotent(M: FiniteModule, mask: int) -> list | None:
    """An idempotent endomorphism with image ``mask``, if one exists."""
    E = endomorphisms(M)
    for e in E.ring.idempotents:
        if image_mask(E, e) == mask:
            return E.maps[e].tolist()
    return None


def radical_structure_check(M: FiniteModule) -> Report:
    """Consequences of β(M) != M, each recorded as a clause."""
    beta = beta_radical(M).beta.mask
    if beta == M.full_mask:
        raise PreconditionFailed("β(M) = M")
    R = M.ring
    RR = regular_of(R)
    beta_R = ring_beta(R)
    report = Report("radical_structure", M.spec(), bitset.to_list(beta))

    core_M = s_baer_core(M)
    core_R = s_baer_core(RR)
    meet = core_M.annihilator.mask & core_R.annihilator.mask
    c = next((x for x in R.left_semicentral if R.principal_right[x] == meet), None)
    report.add("annihilator_is_cR", c is not None and meet != R.full_mask,
               {"c": c, "cR": bitset.to_list(meet)})
    if c is None:
        return report
    cR = R.principal_right[c]
    report.add("beta_R_in_cR", bitset.subset(beta_R, cR), {"c": c, "beta_R": bitset.to_list(beta_R)})
    f = R.complement_idempotent(c)
    report.add("complement_s_baer", submodule_is_s_baer(RR, R.principal_right[f]), {"1-c": f})

    M_beta_R = M.times_ideal(beta_R)
    report.add("preradical_inclusion", bitset.subset(M_beta_R, beta), {"M_beta_R": bitset.to_list(M_beta_R)})
    projective = is_projective(M).holds
    report.add("projective_equality", M_beta_R == beta, {"M_beta_R": bitset.to_list(M_beta_R)},
               applicable=projective)
    report.add("beta_in_McR", bitset.subset(beta, M.times_ideal(cR)), None,
               applicable=M_beta_R == beta)

    essential = RR.is_essential_mask(beta_R, cR)
    report.add("essential_gives_equality", beta_R == cR, None, applicable=essential)
    if not essential:
        K = relative_complement(Submodule(RR, beta_R), Submodule(RR, cR)).mask
        report.add("complement_in_cR1c", bitset.subset(K, _cR_one_minus_c(R, c)), {"K": bitset.to_list(K)})
        Kmod = submodule_module(RR, K)
        try:
            wit = essential_projective_witness(Kmod)
        except PreconditionFailed:
            report.add("projective_in_complement", False, {"K": bitset.to_list(K), "reason": "K not s.Rickart"})
        else:
            members = bitset.to_array(K)
            P = bitset.from_indices(members[bitset.to_array(wit.P.mask)].tolist())
            direct = P & beta_R == R.zero_mask
            total = RR.sum(beta_R, P)
            report.add("projective_in_complement",
                       direct and RR.is_essential_mask(total, cR) and is_projective(wit.P.as_module()).holds,
                       {"P": bitset.to_list(P)})

    reduced = is_semicentral_reduced(R).holds
    report.add("dichotomy", beta in (M.zero_mask, M.full_mask), None, applicable=reduced and projective)

    all_central = set(R.left_semicentral) <= set(R.central_idempotents)
    if all_central and M_beta_R == beta:
        Mc = bitset.from_indices(np.unique(M.act[:, c]).tolist())
        Mf = bitset.from_indices(np.unique(M.act[:, f]).tolist())
        report.add("central_split", Mc == beta and submodule_is_s_baer(M, Mf),
                   {"Mc": bitset.to_list(Mc)})

    if is_fi_extending(M).holds:
        e = summand_idempotent(M, beta)
        report.add("fi_extending_splits", e is not None, {"idempotent": e})
    return report


def stability_check(pairs) -> Report:
    """For T <=ess M: T torsion implies M torsion.

    Each pair is ``(T, M)`` with T a Submodule of M.
    """
    report = Report("stability", None)
    for i, (T, M) in enumerate(pairs):
        if not isinstance(T, Submodule) or T.parent is not M:
            raise NotSubmodule(f"pair {i}: T is not a submodule of M")
        if not T.is_essential:
            raise NotEssential(f"pair {i}: T is not essential in M")
        t_torsion = is_torsion(T.as_module())
        holds = (not t_torsion) or is_torsion(M)
        report.add(f"pair_{i}", holds, {"module": M.spec(), "T": list(T.members)}, applicable=t_torsion)
    return report


def triangular_radical_check(R: FiniteRing) -> Report:
    """β(R) for R = (A M; 0 C) against its block predictions."""
    tri = R.triangular
    if tri is None:
        raise HypothesisFailed("ring has no triangular block data")
    A, C, Mb = tri.a, tri.c, tri.bimodule
    if not is_semicentral_reduced(C).holds:
        raise HypothesisFailed("C is not semicentral reduced")
    for a in A.left_semicentral:
        if a != A.one and all(tri.left[a, m] == m for m in Mb.elements):
            raise HypothesisFailed(f"left semicentral {a} of A fixes all of M")
    beta = ring_beta(R)
    report = Report("triangular_radical", {"ring": R.provenance}, bitset.to_list(beta))
    K = tri.block(A.zero_mask, Mb.full_mask, C.full_mask)
    proper = [e for e in A.left_semicentral if e != A.one]

    def eA(e):
        return A.principal_right[e]

    def eM(e):
        return bitset.from_indices(np.unique(tri.left[e, :]).tolist())

    # c = diag(e, 0) != 1 allows e = 1; the blocks with e != 1 are reported too
    in_block_any = [e for e in A.left_semicentral
                    if bitset.subset(beta, tri.block(eA(e), eM(e), C.zero_mask))]
    in_block = [e for e in in_block_any if e != A.one]
    c_baer = is_baer(C).holds
    report.add("proper_iff_block_iff_C_baer",
               (beta != R.full_mask) == bool(in_block_any) == c_baer,
               {"beta_proper": beta != R.full_mask, "block_e": in_block_any[:1],
                "block_e_not_1": in_block[:1], "C_baer": c_baer})
    in_corner = [e for e in proper if bitset.subset(beta, tri.block(eA(e), Mb.zero_mask, C.zero_mask))]
    report.add("corner_iff_misses_K", bool(in_corner) == (beta & K == R.zero_mask),
               {"corner_e": in_corner[:1]})
    if beta != R.full_mask:
        X = bitset.from_indices(
            m for m in Mb.elements if beta >> tri.index(A.zero, m, C.zero) & 1
        )
        # the clause speaks about an e from the first clause, i.e. one whose
        # block contains β(R); "X != 0" needs that block to be nonzero
        for e in in_block:
            ok = all(
                any(tri.left[x, k] != Mb.zero for k in Mb.elements)
                for x in bitset.to_list(eA(e)) if x != A.zero
            )
            if not ok:
                continue
            full = tri.block(eA(e), eM(e), C.zero_mask)
            if beta == full and full != R.zero_mask:
                report.add(f"X_nonzero_e{e}", X != Mb.zero_mask, {"X": bitset.to_list(X)})
            if bitset.subset(X, eM(e)) and Mb.is_essential_mask(X, eM(e)):
                report.add(f"X_essential_forces_block_e{e}", beta == full, {"X": bitset.to_list(X)})
    return report
