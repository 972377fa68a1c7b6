"""Brute-force reference implementations that read only the raw tables.

Nothing here calls library predicates; each definition is evaluated
literally by enumerating subsets, so these are only usable on tiny inputs.
"""

from __future__ import annotations

from itertools import combinations, product
from math import gcd


def _n(R):
    return R.add.shape[0]


def idempotents(R):
    return [e for e in range(_n(R)) if R.mul[e, e] == e]


def principal_right(R, x):
    return frozenset(int(R.mul[x, r]) for r in range(_n(R)))


def right_ann(R, S):
    return frozenset(a for a in range(_n(R)) if all(R.mul[s, a] == R.zero for s in S))


def left_ann(R, S):
    return frozenset(a for a in range(_n(R)) if all(R.mul[a, s] == R.zero for s in S))


def idempotent_generated(R, ideal) -> bool:
    return any(principal_right(R, e) == ideal for e in idempotents(R))


def nonempty_subsets(n, limit=None):
    items = range(n)
    for k in range(1, n + 1):
        if limit is not None and k > limit:
            return
        yield from combinations(items, k)


def is_baer(R) -> bool:
    return all(idempotent_generated(R, right_ann(R, S)) for S in nonempty_subsets(_n(R)))


def is_right_rickart(R) -> bool:
    return all(idempotent_generated(R, right_ann(R, [x])) for x in range(_n(R)))


def right_ideals(R):
    n = _n(R)
    out = []
    for k in range(1, n + 1):
        for S in combinations(range(n), k):
            s = set(S)
            if R.zero not in s:
                continue
            if all(int(R.add[a, b]) in s for a in s for b in s) and all(
                int(R.mul[a, r]) in s for a in s for r in range(n)
            ):
                out.append(frozenset(s))
    return out


def is_essential_right_ideal(R, I, ideals=None) -> bool:
    ideals = right_ideals(R) if ideals is None else ideals
    return all(len(I & J) > 1 for J in ideals if len(J) > 1)


# -- modules -------------------------------------------------------------------


def _m(M):
    return M.add.shape[0]


def module_ann(M, S):
    R = M.ring
    return frozenset(a for a in range(_n(R)) if all(M.act[s, a] == M.zero for s in S))


def is_s_baer(M) -> bool:
    return all(idempotent_generated(M.ring, module_ann(M, S)) for S in nonempty_subsets(_m(M)))


def is_s_rickart(M) -> bool:
    return all(idempotent_generated(M.ring, module_ann(M, [m])) for m in range(_m(M)))


def submodules(M):
    n, r = _m(M), _n(M.ring)
    out = []
    for k in range(1, n + 1):
        for S in combinations(range(n), k):
            s = set(S)
            if M.zero not in s:
                continue
            if all(int(M.add[a, b]) in s for a in s for b in s) and all(
                int(M.act[a, x]) in s for a in s for x in range(r)
            ):
                out.append(frozenset(s))
    return out


def quotient_is_s_baer(M, K) -> bool:
    """M/K s.Baer, tested on every nonempty set of representatives."""
    R = M.ring
    for S in nonempty_subsets(_m(M)):
        ann = frozenset(a for a in range(_n(R)) if all(int(M.act[s, a]) in K for s in S))
        if not idempotent_generated(R, ann):
            return False
    return True


def beta(M):
    """Intersection of all K with M/K s.Baer."""
    out = frozenset(range(_m(M)))
    for K in submodules(M):
        if quotient_is_s_baer(M, K):
            out &= K
    return out


def singular(M):
    R = M.ring
    ideals = right_ideals(R)
    return frozenset(m for m in range(_m(M)) if is_essential_right_ideal(R, module_ann(M, [m]), ideals))


def all_homs(M, N):
    """Every R-linear map, by enumerating all functions; only for tiny modules."""
    R = M.ring
    m, n = _m(M), _m(N)
    out = []
    for f in product(range(n), repeat=m):
        if f[M.zero] != N.zero:
            continue
        if any(f[int(M.add[x, y])] != N.add[f[x], f[y]] for x in range(m) for y in range(m)):
            continue
        if any(f[int(M.act[x, r])] != N.act[f[x], r] for x in range(m) for r in range(_n(R))):
            continue
        out.append(f)
    return out


def zmod_hom_count(a: int, b: int) -> int:
    """|Hom_Z(Z_a, Z_b)|."""
    return gcd(a, b)


def zmod_cyclic_projective(n: int, d: int) -> bool:
    """Z_d as a Z_n-module (d | n) is projective iff it is a summand of Z_n."""
    return gcd(d, n // d) == 1


def squarefree(n: int) -> bool:
    return all(n % (p * p) for p in range(2, int(n**0.5) + 1))


def has_ssip(R) -> bool:
    """Summands eR closed under intersection; pairwise closure suffices for
    a finite family."""
    summands = {principal_right(R, e) for e in idempotents(R)}
    return all(a & b in summands for a in summands for b in summands)


def bimodule_right_faithful(Mb) -> bool:
    """r_C(m) = 0 for every nonzero m of the right C-module Mb."""
    C = Mb.ring
    return all(module_ann(Mb, [m]) == {C.zero} for m in range(_m(Mb)) if m != Mb.zero)
