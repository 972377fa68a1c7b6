"""Ring-level predicates and structural ideals, each with a witness."""

from __future__ import annotations

from dataclasses import dataclass, fields

from baerlab import _lattice, bitset
from baerlab.ring_core.ring import FiniteRing, RightIdeal
from baerlab.verdict import Verdict


def idempotent_generator(R: FiniteRing, mask: int) -> int | None:
    """Least idempotent e with eR equal to the mask, or None."""
    return R.idempotent_generators.get(mask)


def is_generated_by_idempotent(I: RightIdeal) -> Verdict:
    R = I.parent
    e = idempotent_generator(R, I.mask)
    if e is not None:
        return Verdict("generated_by_idempotent", True, e, {"ideal": bitset.to_list(I.mask)})
    inside = [f for f in R.idempotents if bitset.subset(R.principal_right[f], I.mask)]
    return Verdict(
        "generated_by_idempotent",
        False,
        None,
        {"ideal": bitset.to_list(I.mask), "idempotents_inside": inside},
    )


def element_annihilator_bases(R: FiniteRing) -> dict[int, int]:
    """Distinct r_R(x), each labelled with the least x producing it."""
    bases: dict[int, int] = {}
    for x, mask in enumerate(R.right_ann_masks):
        bases.setdefault(mask, x)
    return bases


def _closure_failure(R: FiniteRing, trace: dict[int, tuple], mask_of) -> tuple[int, list[int]] | None:
    bad = [m for m in trace if m not in R.idempotent_generators]
    if not bad:
        return None
    target = min(bad, key=bitset.canonical_key)
    origins = _lattice.trace_origins(trace, target)
    return target, _lattice.prune_witness(origins, mask_of, target)


def is_baer(R: FiniteRing) -> Verdict:
    """Every r_R(S) is idempotent-generated; r_R(S) is the meet of the r_R(s)."""
    trace = _lattice.meet_closure(element_annihilator_bases(R))
    fail = _closure_failure(R, trace, lambda x: R.right_ann_masks[x])
    if fail is None:
        return Verdict("baer", True, None, {"closure_size": len(trace)})
    target, subset = fail
    return Verdict("baer", False, subset, {"annihilator": bitset.to_list(target)})


def is_right_rickart(R: FiniteRing) -> Verdict:
    for x, mask in enumerate(R.right_ann_masks):
        if mask not in R.idempotent_generators:
            return Verdict("right_rickart", False, x, {"annihilator": bitset.to_list(mask)})
    return Verdict("right_rickart", True)


def has_sip(R: FiniteRing) -> Verdict:
    """eR ∩ fR is idempotent-generated for every pair of idempotents."""
    gens = R.idempotent_generators
    summands = sorted(gens, key=bitset.canonical_key)
    for i, a in enumerate(summands):
        for b in summands[i + 1:]:
            if a & b not in gens:
                return Verdict(
                    "SIP", False, [gens[a], gens[b]],
                    {"intersection": bitset.to_list(a & b)},
                )
    return Verdict("SIP", True)


def has_ssip(R: FiniteRing) -> Verdict:
    """The meet-closure of all summands eR consists of summands."""
    gens = R.idempotent_generators
    trace = _lattice.meet_closure({m: e for m, e in gens.items()})
    fail = _closure_failure(R, trace, lambda e: R.principal_right[e])
    if fail is None:
        return Verdict("SSIP", True, None, {"summands": len(gens)})
    target, subset = fail
    return Verdict("SSIP", False, subset, {"intersection": bitset.to_list(target)})


def is_semisimple_ring(R: FiniteRing) -> Verdict:
    """Every right ideal is a direct summand, i.e. of the form eR."""
    for mask in R.right_ideals:
        if mask not in R.idempotent_generators:
            return Verdict("semisimple", False, bitset.to_list(mask))
    return Verdict("semisimple", True)


def is_semiprime(R: FiniteRing) -> Verdict:
    """No nonzero a with aRa = 0 (equivalently no nonzero nilpotent ideal)."""
    for a in R.elements:
        if a == R.zero:
            continue
        if (R.mul[R.mul[a, :], a] == R.zero).all():
            return Verdict("semiprime", False, a)
    return Verdict("semiprime", True)


def is_right_duo(R: FiniteRing) -> Verdict:
    """Every right ideal is two-sided: Rx ⊆ xR for all x."""
    for x in R.elements:
        if not bitset.subset(R.principal_left[x], R.principal_right[x]):
            return Verdict("right_duo", False, x)
    return Verdict("right_duo", True)


def is_semicentral_reduced(R: FiniteRing) -> Verdict:
    for e in R.left_semicentral:
        if e not in (R.zero, R.one):
            return Verdict("semicentral_reduced", False, e)
    return Verdict("semicentral_reduced", True)


def is_indecomposable_right(R: FiniteRing) -> Verdict:
    """R_R is indecomposable iff 0 and 1 are the only idempotents."""
    for e in R.idempotents:
        if e not in (R.zero, R.one):
            return Verdict("indecomposable_right", False, e)
    return Verdict("indecomposable_right", True)


@dataclass(frozen=True)
class RingPredicates:
    is_baer: Verdict
    is_right_rickart: Verdict
    has_SIP: Verdict
    has_SSIP: Verdict
    is_semisimple: Verdict
    is_semiprime: Verdict
    is_right_duo: Verdict
    is_semicentral_reduced: Verdict
    is_indecomposable_as_right_module: Verdict
    # every finite ring has no infinite orthogonal family of idempotents
    orthogonally_finite: bool = True

    def to_json(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, Verdict):
                out[f.name] = {"holds": v.holds, "witness": v.to_json()["witness"]}
            else:
                out[f.name] = v
        return out


def ring_predicates(R: FiniteRing) -> RingPredicates:
    return RingPredicates(
        is_baer=is_baer(R),
        is_right_rickart=is_right_rickart(R),
        has_SIP=has_sip(R),
        has_SSIP=has_ssip(R),
        is_semisimple=is_semisimple_ring(R),
        is_semiprime=is_semiprime(R),
        is_right_duo=is_right_duo(R),
        is_semicentral_reduced=is_semicentral_reduced(R),
        is_indecomposable_as_right_module=is_indecomposable_right(R),
    )


@dataclass(frozen=True)
class StructuralIdeals:
    socle: RightIdeal
    jacobson_radical: RightIdeal
    two_sided_ideals: list[RightIdeal]
    minimal_right_ideals: list[RightIdeal]
    maximal_right_ideals: list[RightIdeal]

    def to_json(self) -> dict:
        return {
            "socle": list(self.socle.members),
            "jacobson_radical": list(self.jacobson_radical.members),
            "two_sided_ideals": [list(i.members) for i in self.two_sided_ideals],
            "minimal_right_ideals": [list(i.members) for i in self.minimal_right_ideals],
            "maximal_right_ideals": [list(i.members) for i in self.maximal_right_ideals],
        }


def minimal_right_ideal_masks(R: FiniteRing) -> list[int]:
    """Nonzero right ideals generated by each of their nonzero elements."""
    out = []
    for mask in R.right_ideals:
        if mask == R.zero_mask:
            continue
        nonzero = bitset.to_list(mask & ~R.zero_mask)
        if all(R.principal_right[x] == mask for x in nonzero):
            out.append(mask)
    return out


def maximal_right_ideal_masks(R: FiniteRing) -> list[int]:
    """Proper right ideals I with I + xR = R for every x outside I."""
    out = []
    for mask in R.right_ideals:
        if mask == R.full_mask:
            continue
        outside = bitset.to_list(R.full_mask & ~mask)
        if all(_lattice.subgroup_sum(R.add, mask, R.principal_right[x]) == R.full_mask for x in outside):
            out.append(mask)
    return out


def socle_mask(R: FiniteRing) -> int:
    mask = R.zero_mask
    for m in minimal_right_ideal_masks(R):
        mask = _lattice.subgroup_sum(R.add, mask, m)
    return mask


def jacobson_mask(R: FiniteRing) -> int:
    mask = R.full_mask
    for m in maximal_right_ideal_masks(R):
        mask &= m
    return mask


def structural_ideals(R: FiniteRing) -> StructuralIdeals:
    return StructuralIdeals(
        socle=RightIdeal(R, socle_mask(R)),
        jacobson_radical=RightIdeal(R, jacobson_mask(R)),
        two_sided_ideals=[RightIdeal(R, m) for m in R.two_sided_ideals],
        minimal_right_ideals=[RightIdeal(R, m) for m in minimal_right_ideal_masks(R)],
        maximal_right_ideals=[RightIdeal(R, m) for m in maximal_right_ideal_masks(R)],
    )


def nilpotency_index(R: FiniteRing, mask: int) -> int | None:
    """Least n with I^n = 0, or None when the powers stabilise above 0."""
    power, n = mask, 1
    while power != R.zero_mask:
        nxt = R.ideal_product(power, mask)
        if nxt == power:
            return None
        power, n = nxt, n + 1
    return n


def essential_nilpotent_ideal_search(R: FiniteRing) -> Verdict:
    """Least two-sided ideal that is nilpotent and essential in R_R.

    The zero ring is excluded: its only ideal is both zero and the ring.
    """
    if R.order == 1:
        return Verdict("essential_nilpotent_ideal", False, None, {"note": "zero ring"})
    for mask in R.two_sided_ideals:
        if mask == R.zero_mask or not R.essential(mask):
            continue
        n = nilpotency_index(R, mask)
        if n is not None:
            return Verdict(
                "essential_nilpotent_ideal",
                True,
                {"ideal": bitset.to_list(mask), "n": n},
            )
    return Verdict("essential_nilpotent_ideal", False)
