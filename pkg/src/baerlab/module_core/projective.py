"""Projectivity by splitting the free cover, injectivity by the Baer criterion."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from baerlab import bitset
from baerlab.config import caps
from baerlab.errors import CapExceeded
from baerlab.module_core.homs import enumerate_homs
from baerlab.module_core.module import (
    FiniteModule,
    minimal_generators_greedy,
    regular,
    submodule_module,
)
from baerlab.verdict import Verdict

# subsets of cyclic submodules tried when confirming a generator count
_CONFIRM_BUDGET = 200_000


def minimal_generating_set(M: FiniteModule) -> tuple[list[int], bool]:
    """A generating set of least size, plus whether minimality was confirmed.

    Greedy descent gives an upper bound; smaller sizes are then ruled out by
    trying every family of distinct cyclic submodules of that size.
    """
    greedy = minimal_generators_greedy(M)
    if len(greedy) <= 1:
        return greedy, True
    reps: dict[int, int] = {}
    for x in M.elements:
        reps.setdefault(M.cyclic[x], x)
    cyclics = sorted(reps, key=lambda c: (-c.bit_count(), c))
    tried = 0
    best = greedy
    for k in range(1, len(greedy)):
        for combo in combinations(cyclics, k):
            tried += 1
            if tried > _CONFIRM_BUDGET:
                return best, False
            span = M.zero_mask
            for c in combo:
                span = M.sum(span, c)
            if span == M.full_mask:
                return sorted(reps[c] for c in combo), True
    return best, True


def is_projective(M: FiniteModule) -> Verdict:
    """Search for s: M -> R^g with pi s = id, pi(r_1..r_g) = sum g_j r_j.

    s is a tuple of homs h_j: M -> R_R; the condition only needs checking on
    the generators.  Partial sums over j are deduplicated level by level.
    """
    if M.is_zero:
        return Verdict("projective", True, {"generators": [], "splitting": []}, {}, M.spec())
    gens, confirmed = minimal_generating_set(M)
    g = len(gens)
    H = enumerate_homs(M, regular(M.ring))
    gens_arr = np.array(gens)
    # contribution of h_j to the partial sum at generator i: g_j * h(g_i)
    layer: dict[tuple, tuple] = {tuple([M.zero] * g): ()}
    cap = caps().free_fiber
    for j in range(g):
        nxt: dict[tuple, tuple] = {}
        contrib = M.act[gens[j]][H[:, gens_arr]]  # [h, i]
        for state, chosen in layer.items():
            st = np.array(state)
            sums = M.add[st[None, :], contrib]
            for h, row in enumerate(map(tuple, sums.tolist())):
                if row not in nxt:
                    nxt[row] = chosen + (h,)
                    if len(nxt) > cap:
                        raise CapExceeded("splitting search states", len(nxt), cap)
        layer = nxt
    goal = tuple(gens)
    cert = {"generators": gens, "generators_minimal": confirmed, "homs_to_R": int(H.shape[0])}
    if goal in layer:
        chosen = layer[goal]
        # s(g_i) = (h_1(g_i), ..., h_g(g_i)) in R^g
        splitting = [[int(H[h, gi]) for h in chosen] for gi in gens]
        return Verdict("projective", True, {"generators": gens, "splitting": splitting}, cert, M.spec())
    return Verdict("projective", False, None, cert, M.spec())


def verify_splitting(M: FiniteModule, witness: dict) -> bool:
    """Replay a projectivity witness: each coordinate of s extends to a hom
    M -> R_R, and pi s fixes every generator."""
    gens = witness["generators"]
    rows = witness["splitting"]
    if not gens:
        return M.is_zero
    R = M.ring
    span = M.generated(gens)
    if span != M.full_mask:
        return False
    reg = regular(R)
    for j in range(len(gens)):
        images = [rows[i][j] for i in range(len(gens))]
        if not _extends(M, reg, gens, images):
            return False
    for i, gi in enumerate(gens):
        acc = M.zero
        for j, gj in enumerate(gens):
            acc = int(M.add[acc, M.act[gj, rows[i][j]]])
        if acc != gi:
            return False
    return True


def _extends(src: FiniteModule, tgt: FiniteModule, gens, images) -> bool:
    """Whether g_i -> images[i] extends to a hom."""
    img = np.full(src.order, -1, dtype=np.int64)
    img[src.zero] = tgt.zero
    dom = np.array([src.zero])
    for g, n in zip(gens, images):
        X = src.add[dom[:, None], src.act[g][None, :]]
        Y = tgt.add[img[dom][:, None], tgt.act[n][None, :]]
        img[X] = Y
        if not (img[X] == Y).all():
            return False
        dom = np.unique(X)
    return True


def is_injective(M: FiniteModule) -> Verdict:
    """Every hom f: I -> M from a right ideal extends to R, i.e. f(i) = m i."""
    R = M.ring
    if M.is_zero:
        return Verdict("injective", True, None, {}, M.spec())
    reg = regular(R)
    for I in R.right_ideals:
        members = bitset.to_array(I)
        src = submodule_module(reg, I)
        homs = enumerate_homs(src, M)
        # left multiplications restricted to I, in the same element order
        restrictions = {tuple(row) for row in M.act[:, members].tolist()}
        for f in homs.tolist():
            if tuple(f) not in restrictions:
                return Verdict(
                    "injective", False,
                    {"ideal": members.tolist(), "map": f},
                    {}, M.spec(),
                )
    return Verdict("injective", True, None, {"right_ideals": len(R.right_ideals)}, M.spec())
