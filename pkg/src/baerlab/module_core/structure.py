"""Singular submodules, essentiality, complements and lattice-level
structure predicates of a finite module."""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from baerlab import bitset
from baerlab.errors import NotSubmodule, PreconditionFailed
from baerlab.module_core.baer import is_s_rickart, module_annihilator_mask
from baerlab.module_core.module import FiniteModule, Submodule
from baerlab.verdict import Verdict


@dataclass(frozen=True)
class SingularSubmodules:
    Z: Submodule
    Z2: Submodule


def singular_mask(M: FiniteModule) -> int:
    """Z(M) = {m : r_R(m) essential in R_R}."""
    R = M.ring
    return bitset.from_indices(m for m in M.elements if R.essential(M.ann_masks[m]))


def second_singular_mask(M: FiniteModule) -> int:
    """Z2(M): m with {a : ma in Z(M)} essential, i.e. m + Z in Z(M/Z)."""
    R = M.ring
    coset = M.coset_ann_masks(singular_mask(M))
    return bitset.from_indices(m for m in M.elements if R.essential(coset[m]))


def singular_submodules(M: FiniteModule) -> SingularSubmodules:
    return SingularSubmodules(Submodule(M, singular_mask(M)), Submodule(M, second_singular_mask(M)))


def _mask(N, M: FiniteModule | None) -> int:
    if isinstance(N, Submodule):
        if M is not None and N.parent is not M:
            raise NotSubmodule("submodule of a different module")
        return N.mask
    mask = int(N)
    if M is None or not M.is_submodule_mask(mask):
        raise NotSubmodule("subset is not a submodule")
    return mask


def essential_in(N, M: FiniteModule | None = None, ambient=None) -> bool:
    """N <=ess A (A = ``ambient`` or all of M)."""
    M = N.parent if isinstance(N, Submodule) else M
    mask = _mask(N, M)
    amb = M.full_mask if ambient is None else _mask(ambient, M)
    if not bitset.subset(mask, amb):
        raise NotSubmodule("N is not inside the ambient submodule")
    return M.is_essential_mask(mask, amb)


def relative_complement(N, inside=None, M: FiniteModule | None = None) -> Submodule:
    """A submodule K of ``inside`` maximal with N ∩ K = 0.

    Elements are scanned once in index order, adding xR whenever that keeps
    the intersection zero.  Any K' above the result with K' ∩ N = 0 would
    have had each of its elements accepted, so the result is maximal.
    """
    M = N.parent if isinstance(N, Submodule) else M
    n_mask = _mask(N, M)
    bound = M.full_mask if inside is None else _mask(inside, M)
    K = M.zero_mask
    for x in bitset.to_list(bound):
        if K >> x & 1:
            continue
        trial = M.sum(K, M.cyclic[x])
        if trial & n_mask == M.zero_mask:
            K = trial
    return Submodule(M, K)


def minimal_submodule_masks(M: FiniteModule) -> list[int]:
    out = []
    for mask in M.submodules:
        if mask == M.zero_mask:
            continue
        if all(M.cyclic[x] == mask for x in bitset.to_list(mask & ~M.zero_mask)):
            out.append(mask)
    return out


def socle_mask(M: FiniteModule) -> int:
    mask = M.zero_mask
    for s in minimal_submodule_masks(M):
        mask = M.sum(mask, s)
    return mask


def simple_isomorphic(M: FiniteModule, s: int, t: int) -> bool:
    """Simple xR and yR are isomorphic iff some y' in yR has r(y') = r(x)."""
    x = bitset.least(s & ~M.zero_mask)
    target = M.ann_masks[x]
    return any(M.ann_masks[y] == target for y in bitset.to_list(t & ~M.zero_mask))


def homogeneous_components(M: FiniteModule) -> list[int]:
    """Sums of the simple submodules of each isomorphism type."""
    groups: list[list[int]] = []
    for s in minimal_submodule_masks(M):
        for grp in groups:
            if simple_isomorphic(M, grp[0], s):
                grp.append(s)
                break
        else:
            groups.append([s])
    comps = []
    for grp in groups:
        mask = M.zero_mask
        for s in grp:
            mask = M.sum(mask, s)
        comps.append(mask)
    return comps


def is_semisimple_module(M: FiniteModule) -> Verdict:
    for N in M.submodules:
        if not M.is_summand_mask(N):
            return Verdict("semisimple", False, bitset.to_list(N), {}, M.spec())
    return Verdict("semisimple", True, None, {}, M.spec())


def _summands_over(M: FiniteModule, mask: int) -> list[int]:
    return [D for D in M.summand_complements if bitset.subset(mask, D)]


def essential_closure_summand(M: FiniteModule, mask: int) -> int | None:
    """Least summand D with N <=ess D, if one exists."""
    for D in sorted(_summands_over(M, mask), key=bitset.canonical_key):
        if M.is_essential_mask(mask, D):
            return D
    return None


def is_extending(M: FiniteModule) -> Verdict:
    for N in M.submodules:
        if essential_closure_summand(M, N) is None:
            return Verdict("extending", False, bitset.to_list(N), {}, M.spec())
    return Verdict("extending", True, None, {}, M.spec())


def is_g_extending(M: FiniteModule) -> Verdict:
    """For every X some summand D has X ∩ D essential in both X and D."""
    summands = sorted(M.summand_complements, key=bitset.canonical_key)
    for X in M.submodules:
        if not any(
            M.is_essential_mask(X & D, X) and M.is_essential_mask(X & D, D)
            for D in summands
        ):
            return Verdict("G_extending", False, bitset.to_list(X), {}, M.spec())
    return Verdict("G_extending", True, None, {}, M.spec())


def fully_invariant_masks(M: FiniteModule) -> list[int]:
    from baerlab.module_core.homs import endomorphisms

    maps = endomorphisms(M).maps
    out = []
    for N in M.submodules:
        xs = bitset.to_array(N)
        inside = bitset.to_bool(N, M.order)
        if inside[maps[:, xs]].all():
            out.append(N)
    return out


def is_fi_extending(M: FiniteModule) -> Verdict:
    for N in fully_invariant_masks(M):
        if essential_closure_summand(M, N) is None:
            return Verdict("FI_extending", False, bitset.to_list(N), {}, M.spec())
    return Verdict("FI_extending", True, None, {}, M.spec())


def is_finitely_idempotent_faithful(M: FiniteModule) -> Verdict:
    """Each nontrivial idempotent e has r_R(S) ∩ eR = 0 for a finite S;
    for finite M the best choice is S = M."""
    R = M.ring
    ann = module_annihilator_mask(M)
    for e in R.idempotents:
        if e in (R.zero, R.one):
            continue
        if ann & R.principal_right[e] != R.zero_mask:
            return Verdict(
                "finitely_idempotent_faithful", False, e,
                {"module_annihilator": bitset.to_list(ann)}, M.spec(),
            )
    return Verdict("finitely_idempotent_faithful", True, None, {}, M.spec())


def is_faithful(M: FiniteModule) -> Verdict:
    ann = module_annihilator_mask(M)
    if ann != M.ring.zero_mask:
        return Verdict("faithful", False, bitset.to_list(ann), {}, M.spec())
    return Verdict("faithful", True, None, {}, M.spec())


@dataclass(frozen=True)
class StructurePredicates:
    is_semisimple: Verdict
    socle: Submodule
    homogeneous_components: list
    is_extending: Verdict
    is_G_extending: Verdict
    is_FI_extending: Verdict
    is_finitely_idempotent_faithful: Verdict
    is_faithful: Verdict

    def to_json(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, Verdict):
                out[f.name] = {"holds": v.holds, "witness": v.to_json()["witness"]}
            elif isinstance(v, Submodule):
                out[f.name] = list(v.members)
            else:
                out[f.name] = [list(c.members) for c in v]
        return out


def structure_predicates(M: FiniteModule) -> StructurePredicates:
    return StructurePredicates(
        is_semisimple=is_semisimple_module(M),
        socle=Submodule(M, socle_mask(M)),
        homogeneous_components=[Submodule(M, c) for c in homogeneous_components(M)],
        is_extending=is_extending(M),
        is_G_extending=is_g_extending(M),
        is_FI_extending=is_fi_extending(M),
        is_finitely_idempotent_faithful=is_finitely_idempotent_faithful(M),
        is_faithful=is_faithful(M),
    )


# -- essential projective submodules ----------------------------------------


@dataclass(frozen=True)
class EssentialProjective:
    P: Submodule
    certificate: dict


def essential_projective_witness(M: FiniteModule) -> EssentialProjective:
    """A direct sum P of cyclics, each isomorphic to some (1-e)R, with P
    essential in M.

    Cyclics are added greedily in index order while the sum stays direct;
    a maximal independent family of cyclics always has essential sum.
    """
    if not is_s_rickart(M).holds:
        raise PreconditionFailed("module is not s.Rickart")
    R = M.ring
    P = M.zero_mask
    size = 1
    pieces = []
    for x in M.elements:
        if x == M.zero or M.cyclic[x] & P != M.zero_mask:
            continue
        e = R.idempotent_generators[M.ann_masks[x]]
        pieces.append({"generator": x, "e": e, "complement": R.complement_idempotent(e)})
        P = M.sum(P, M.cyclic[x])
        size *= M.cyclic[x].bit_count()
    cert = {"P": bitset.to_list(P), "pieces": pieces, "order": size}
    return EssentialProjective(Submodule(M, P), cert)


def verify_essential_projective(M: FiniteModule, cert: dict) -> list[str]:
    """Independent re-check of an essential_projective_witness certificate."""
    R = M.ring
    problems = []
    P = bitset.from_indices(cert["P"])
    span = M.zero_mask
    product = 1
    for piece in cert["pieces"]:
        x, e = piece["generator"], piece["e"]
        f = R.complement_idempotent(e)
        if R.mul[e, e] != e:
            problems.append(f"{e} is not idempotent")
            continue
        if M.ann_masks[x] != R.principal_right[e]:
            problems.append(f"r({x}) is not {e}R")
        # y -> x y is an isomorphism (1-e)R -> xR
        fR = bitset.to_array(R.principal_right[f])
        images = M.act[x, fR]
        if len(np.unique(images)) != len(fR) or bitset.from_indices(images.tolist()) != M.cyclic[x]:
            problems.append(f"(1-e)R does not map onto {x}R bijectively")
        span = M.sum(span, M.cyclic[x])
        product *= M.cyclic[x].bit_count()
    if span != P:
        problems.append("pieces do not sum to P")
    if product != P.bit_count():
        problems.append("sum of the pieces is not direct")
    if not M.is_essential_mask(P):
        problems.append("P is not essential")
    return problems


# -- maximal s.Rickart submodules -------------------------------------------


@dataclass(frozen=True)
class MaximalSRickart:
    submodule: Submodule
    maximal: list
    unique: bool


def maximal_s_rickart_submodule(M: FiniteModule) -> MaximalSRickart:
    """Maximal submodules all of whose elements have idempotent-generated
    annihilators.  ``submodule`` is the largest one (least mask on ties)."""
    gens = M.ring.idempotent_generators
    good = bitset.from_indices(m for m in M.elements if M.ann_masks[m] in gens)
    cands = [N for N in M.submodules if bitset.subset(N, good)]
    maximal = [
        N for N in cands
        if not any(N != K and bitset.subset(N, K) for K in cands)
    ]
    maximal.sort(key=lambda N: (-N.bit_count(), N))
    subs = [Submodule(M, N) for N in maximal]
    return MaximalSRickart(subs[0], subs, len(subs) == 1)
