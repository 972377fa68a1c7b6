"""Annihilator conditions on modules: s.Rickart and s.Baer."""

from __future__ import annotations

from baerlab import _lattice, bitset
from baerlab.errors import EmptySubset, InvalidSpec
from baerlab.module_core.module import FiniteModule
from baerlab.ring_core.ring import RightIdeal
from baerlab.verdict import Verdict


def annihilator_mask(M: FiniteModule, S) -> int:
    items = sorted(set(int(s) for s in S))
    if not items:
        raise EmptySubset("annihilator of the empty set")
    acc = M.ring.full_mask
    for s in items:
        if not 0 <= s < M.order:
            raise InvalidSpec(f"element {s} out of range")
        acc &= M.ann_masks[s]
    return acc


def right_annihilator(M: FiniteModule, S) -> RightIdeal:
    """r_R(S) = {a : s a = 0 for every s in S}."""
    return RightIdeal(M.ring, annihilator_mask(M, S))


def module_annihilator_mask(M: FiniteModule) -> int:
    """r_R(M)."""
    acc = M.ring.full_mask
    for mask in set(M.ann_masks):
        acc &= mask
    return acc


def is_s_rickart(M: FiniteModule) -> Verdict:
    gens = M.ring.idempotent_generators
    for m, mask in enumerate(M.ann_masks):
        if mask not in gens:
            return Verdict(
                "s_rickart", False, m,
                {"annihilator": bitset.to_list(mask)}, M.spec(),
            )
    return Verdict("s_rickart", True, None, {}, M.spec())


def annihilator_closure(M: FiniteModule) -> dict[int, tuple]:
    """Meet-closure of the element annihilators, with derivation trace.

    Every r_R(S) for nonempty S is a finite meet of element annihilators,
    so this is exactly the family of annihilators of subsets of M.
    """
    bases: dict[int, int] = {}
    for m, mask in enumerate(M.ann_masks):
        bases.setdefault(mask, m)
    return _lattice.meet_closure(bases)


def is_s_baer(M: FiniteModule) -> Verdict:
    gens = M.ring.idempotent_generators
    trace = annihilator_closure(M)
    bad = [mask for mask in trace if mask not in gens]
    if not bad:
        return Verdict(
            "s_baer", True, None,
            {"annihilators": len(trace)}, M.spec(),
        )
    target = min(bad, key=bitset.canonical_key)
    origins = _lattice.trace_origins(trace, target)
    subset = _lattice.prune_witness(origins, lambda m: M.ann_masks[m], target)
    return Verdict(
        "s_baer", False, subset,
        {"annihilator": bitset.to_list(target)}, M.spec(),
    )


def annihilator_generator(M: FiniteModule, S) -> int | None:
    """Least idempotent e with r_R(S) = eR, if any."""
    return M.ring.idempotent_generators.get(annihilator_mask(M, S))
