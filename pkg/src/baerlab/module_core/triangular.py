"""Annihilators of elements (a m; 0 c) in a triangular ring (A M; 0 C)
over domains with a faithful bimodule, classified by shape."""

from __future__ import annotations

from dataclasses import dataclass

from baerlab import bitset
from baerlab.errors import HypothesisFailed
from baerlab.ring_core.ring import FiniteRing, TriangularData, right_annihilator_ring


def is_domain(R: FiniteRing) -> bool:
    if R.order == 1:
        return False
    return all(R.right_ann_masks[x] == R.zero_mask for x in R.elements if x != R.zero)


def check_faithful_bimodule(tri: TriangularData) -> None:
    """A, C domains; l_A(m) = 0 and r_C(m) = 0 for every m != 0."""
    A, C, M = tri.a, tri.c, tri.bimodule
    if not is_domain(A) or not is_domain(C):
        raise HypothesisFailed("A and C must be domains")
    for m in M.elements:
        if m == M.zero:
            continue
        if M.ann_masks[m] != C.zero_mask:
            raise HypothesisFailed(f"r_C({m}) != 0")
        if any(tri.left[a, m] == M.zero for a in A.elements if a != A.zero):
            raise HypothesisFailed(f"l_A({m}) != 0")


@dataclass(frozen=True)
class AnnihilatorCase:
    tag: str
    predicted: int | None      # mask of the predicted annihilator, None = not eR
    generator: int | None      # idempotent e with predicted = eR
    actual: int
    matches: bool

    def to_json(self) -> dict:
        return {
            "case": self.tag,
            "predicted": None if self.predicted is None else bitset.to_list(self.predicted),
            "generator": self.generator,
            "actual": bitset.to_list(self.actual),
            "matches": self.matches,
        }


def triangular_annihilator_case(R: FiniteRing, x: int) -> AnnihilatorCase:
    """Classify r_R(x), predict its generator, and compare with brute force.

    Tags: ``zero``; ``m0.a0`` (a = 0, c != 0); ``m0.c0`` (a != 0, c = 0);
    ``m0.ac`` (a, c != 0); ``m.ac``; ``m.c0.summand`` / ``m.c0.not_summand``
    (a != 0, c = 0, by whether mC lies in aM); ``m.a0.c0``; ``m.a0``.
    """
    tri = R.triangular
    if tri is None:
        raise HypothesisFailed("ring has no triangular block data")
    check_faithful_bimodule(tri)
    A, C, M = tri.a, tri.c, tri.bimodule
    a, m, c = tri.components(x)
    actual = right_annihilator_ring(R, [x]).mask
    e11 = tri.index(A.one, M.zero, C.zero)
    e22 = tri.index(A.zero, M.zero, C.one)
    generator: int | None
    if x == R.zero:
        tag, generator = "zero", R.one
    elif m == M.zero:
        if a == A.zero:
            tag, generator = "m0.a0", e11
        elif c == C.zero:
            tag, generator = "m0.c0", e22
        else:
            tag, generator = "m0.ac", R.zero
    else:
        if a != A.zero and c != C.zero:
            tag, generator = "m.ac", R.zero
        elif a != A.zero:
            # m = a k for some k iff mC lies in aM; then r = (0 -k; 0 1) R
            ks = [k for k in M.elements if tri.left[a, k] == m]
            if ks:
                tag = "m.c0.summand"
                generator = tri.index(A.zero, int(M.neg[ks[0]]), C.one)
            else:
                tag, generator = "m.c0.not_summand", None
        elif c == C.zero:
            tag, generator = "m.a0.c0", e11
        else:
            tag, generator = "m.a0", e11
    if generator is None:
        predicted = None
        matches = actual not in R.idempotent_generators
    else:
        predicted = R.principal_right[generator]
        matches = predicted == actual and R.mul[generator, generator] == generator
    return AnnihilatorCase(tag, predicted, generator, actual, bool(matches))


def corner_mask(R: FiniteRing) -> int:
    """K = (0 M; 0 C) as a right ideal of R."""
    tri = R.triangular
    return tri.block(tri.a.zero_mask, tri.bimodule.full_mask, tri.c.full_mask)
