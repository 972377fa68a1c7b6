"""Table-level primitives shared by rings (as right modules over themselves)
and modules: cyclic submodules, sums, generated submodules, the submodule
lattice.  ``add`` is an n-by-n index table, ``act`` an n-by-|R| table."""

from __future__ import annotations

import numpy as np

from baerlab import bitset
from baerlab.errors import CapExceeded


def cyclic_masks(act: np.ndarray) -> list[int]:
    n = act.shape[0]
    flags = np.zeros((n, n), dtype=bool)
    flags[np.arange(n)[:, None], act] = True
    return bitset.rows_to_masks(flags)


def subgroup_sum(add: np.ndarray, a: int, b: int) -> int:
    """A + B for additive subgroups A, B given as masks."""
    if bitset.subset(b, a):
        return a
    if bitset.subset(a, b):
        return b
    xs = bitset.to_array(a)
    ys = bitset.to_array(b)
    flags = np.zeros(add.shape[0], dtype=bool)
    flags[add[np.ix_(xs, ys)].ravel()] = True
    return bitset.from_bool(flags)


def generated(add: np.ndarray, cyclic: list[int], zero: int, gens) -> int:
    """Submodule generated by ``gens``: the sum of their cyclic submodules."""
    mask = 1 << zero
    for g in gens:
        mask = subgroup_sum(add, mask, cyclic[g])
    return mask


def additive_closure(add: np.ndarray, zero: int, seed: int) -> int:
    """Smallest additive subgroup containing the elements of ``seed``."""
    mask = seed | (1 << zero)
    while True:
        xs = bitset.to_array(mask)
        flags = np.zeros(add.shape[0], dtype=bool)
        flags[add[np.ix_(xs, xs)].ravel()] = True
        grown = bitset.from_bool(flags) | mask
        if grown == mask:
            return mask
        mask = grown


def lattice(add: np.ndarray, cyclic: list[int], zero: int, cap: int) -> list[int]:
    """All submodules, in canonical ``(size, mask)`` order.

    Every submodule of a finite module is a finite sum of cyclic submodules,
    so the lattice is the join-closure of the cyclic ones.
    """
    gens = sorted(set(cyclic), key=bitset.canonical_key)
    seen = {1 << zero}
    frontier = [1 << zero]
    while frontier:
        fresh = []
        for s in frontier:
            for c in gens:
                if bitset.subset(c, s):
                    continue
                t = subgroup_sum(add, s, c)
                if t not in seen:
                    seen.add(t)
                    fresh.append(t)
                    if len(seen) > cap:
                        raise CapExceeded("submodule lattice", len(seen), cap)
        frontier = fresh
    return sorted(seen, key=bitset.canonical_key)


def preimage_masks(act: np.ndarray, target: int) -> list[int]:
    """For each x, the mask of ring elements a with x*a in ``target``."""
    inside = bitset.to_bool(target, act.shape[0])
    return bitset.rows_to_masks(inside[act])


def meet_closure(bases: dict[int, int]) -> dict[int, tuple]:
    """Closure of a family of masks under pairwise intersection.

    ``bases`` maps each starting mask to an origin label (e.g. the least
    element whose annihilator it is).  The result maps every member of the
    closure to its derivation: ``("base", origin)`` or ``("meet", a, b)``.
    """
    trace: dict[int, tuple] = {m: ("base", o) for m, o in bases.items()}
    members = sorted(trace, key=bitset.canonical_key)
    frontier = list(members)
    while frontier:
        fresh = []
        for a in frontier:
            for b in members:
                c = a & b
                if c not in trace:
                    trace[c] = ("meet", a, b)
                    fresh.append(c)
        members.extend(fresh)
        frontier = fresh
    return trace


def trace_origins(trace: dict[int, tuple], mask: int) -> set[int]:
    """Origins of the base masks whose intersection produced ``mask``."""
    out: set[int] = set()
    stack = [mask]
    seen = set()
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        step = trace[m]
        if step[0] == "base":
            out.add(step[1])
        else:
            stack.extend(step[1:])
    return out


def prune_witness(origins, mask_of, target: int) -> list[int]:
    """Drop origins (largest first) while the intersection stays ``target``."""
    keep = sorted(origins)
    for o in sorted(origins, reverse=True):
        trial = [x for x in keep if x != o]
        if not trial:
            continue
        acc = -1
        for x in trial:
            acc &= mask_of(x)
        if acc == target:
            keep = trial
    return keep
