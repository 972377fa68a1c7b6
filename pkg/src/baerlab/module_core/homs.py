"""Homomorphism sets, Hom modules and endomorphism rings.

A hom is stored as its full graph: a vector ``h`` with ``h[m]`` the image
of source element m.  Maps are enumerated by choosing images for a fixed
generating set of the source and extending one generator at a time; a
partial map on a submodule D extends along g -> n exactly when
``h(d) + n r`` depends only on ``d + g r`` over all d in D, r in R.

Endomorphisms are written on the left, so the product in End(M) is
composition: ``(f g)(m) = f(g(m))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from baerlab import bitset
from baerlab.config import caps
from baerlab.errors import CapExceeded, InvalidSpec, NoModuleStructure
from baerlab.module_core.module import FiniteModule, minimal_generators_greedy
from baerlab.ring_core.ring import FiniteRing
from baerlab.verdict import Verdict


def enumerate_homs(src: FiniteModule, tgt: FiniteModule, cap: int | None = None,
                   gens: list[int] | None = None) -> np.ndarray:
    """Every R-hom src -> tgt as rows of a (k, |src|) array, zero map first
    when the target zero has the least index."""
    if src.ring is not tgt.ring:
        raise InvalidSpec("modules over different rings")
    cap = caps().homs if cap is None else cap
    gens = minimal_generators_greedy(src) if gens is None else list(gens)
    # candidates: r(g) must be inside r(n)
    cands = []
    for g in gens:
        need = src.ann_masks[g]
        cands.append([n for n in tgt.elements if bitset.subset(need, tgt.ann_masks[n])])
    results: list[np.ndarray] = []

    def extend(i: int, dom: np.ndarray, img: np.ndarray) -> None:
        if i == len(gens):
            results.append(img.copy())
            if len(results) > cap:
                raise CapExceeded("hom set", len(results), cap)
            return
        g = gens[i]
        X = src.add[dom[:, None], src.act[g][None, :]]
        for n in cands[i]:
            Y = tgt.add[img[dom][:, None], tgt.act[n][None, :]]
            trial = img.copy()
            trial[X] = Y
            if (trial[X] == Y).all():
                extend(i + 1, np.unique(X), trial)

    start = np.full(src.order, -1, dtype=np.int64)
    start[src.zero] = tgt.zero
    extend(0, np.array([src.zero]), start)
    if not results:
        return np.zeros((0, src.order), dtype=np.int64)
    return np.stack(results)


def is_hom(src: FiniteModule, tgt: FiniteModule, h) -> bool:
    h = np.asarray(h, dtype=np.int64)
    if h.shape != (src.order,) or h.min() < 0 or h.max() >= tgt.order:
        return False
    additive = (h[src.add] == tgt.add[h[:, None], h[None, :]]).all()
    linear = (h[src.act] == tgt.act[h, :]).all()
    return bool(additive and linear)


def _row_keys(maps: np.ndarray, gens: list[int], base: int) -> np.ndarray:
    """A map is determined by its generator images; encode them as one int."""
    key = np.zeros(maps.shape[0], dtype=object if len(gens) * base.bit_length() > 62 else np.int64)
    for g in gens:
        key = key * base + maps[:, g]
    return key


@dataclass(frozen=True, eq=False)
class HomSet:
    source: FiniteModule
    target: FiniteModule
    maps: np.ndarray
    gens: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.maps.shape[0]

    @cached_property
    def index(self) -> dict:
        keys = _row_keys(self.maps, list(self.gens), self.target.order)
        return {int(k): i for i, k in enumerate(keys.tolist())}

    def locate(self, h: np.ndarray) -> int:
        key = 0
        for g in self.gens:
            key = key * self.target.order + int(h[g])
        return self.index[key]

    @cached_property
    def zero_index(self) -> int:
        return self.locate(np.full(self.source.order, self.target.zero))

    @property
    def is_zero(self) -> bool:
        return self.order == 1


def hom_set(src: FiniteModule, tgt: FiniteModule, cap: int | None = None) -> HomSet:
    gens = minimal_generators_greedy(src)
    return HomSet(src, tgt, enumerate_homs(src, tgt, cap, gens), tuple(gens))


def _pointwise_add(H: HomSet) -> np.ndarray:
    maps = H.maps
    k = H.order
    add = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        sums = H.target.add[maps[i][None, :], maps]
        add[i] = _locate_rows(H, sums)
    return add


def _locate_rows(H: HomSet, rows: np.ndarray) -> np.ndarray:
    keys = _row_keys(rows, list(H.gens), H.target.order)
    index = H.index
    try:
        return np.array([index[int(k)] for k in keys.tolist()], dtype=np.int64)
    except KeyError as exc:
        raise NoModuleStructure("operation leaves the hom set", H) from exc


def hom_module(src: FiniteModule, tgt: FiniteModule, scalar_ring: FiniteRing | None = None,
               scalar_action: np.ndarray | None = None) -> FiniteModule:
    """Hom(src, tgt) as a right module with (h r)(m) = h(m) r.

    By default the scalars are the base ring, which needs R commutative.
    Otherwise pass a ring T and a right T-action on the target
    (``scalar_action[n, t]``) commuting with the R-action, i.e. the target
    is an (R, T)-bimodule in the right-right sense.
    """
    H = hom_set(src, tgt)
    if scalar_action is None:
        if not src.ring.is_commutative:
            raise NoModuleStructure("Hom over a noncommutative ring needs a declared bimodule side", H)
        scalar_ring, scalar_action = src.ring, tgt.act
    scalar_action = np.asarray(scalar_action, dtype=np.int64)
    if scalar_ring is None or scalar_action.shape != (tgt.order, scalar_ring.order):
        raise InvalidSpec("scalar action table has the wrong shape")
    # the two actions must commute for h r to stay a hom
    lhs = scalar_action[tgt.act]  # [n, r, t] -> (n r) t
    rhs = tgt.act[scalar_action[:, None, :], np.arange(src.ring.order)[None, :, None]]
    if not (lhs == rhs).all():
        raise NoModuleStructure("declared scalar action does not commute with the module action", H)
    k = H.order
    act = np.empty((k, scalar_ring.order), dtype=np.int64)
    for t in range(scalar_ring.order):
        act[:, t] = _locate_rows(H, scalar_action[H.maps, t])
    add = _pointwise_add(H)
    return FiniteModule(
        ring=scalar_ring,
        add=add,
        act=act,
        zero=H.zero_index,
        recipe={"kind": "hom", "source": src.recipe, "target": tgt.recipe},
    )


@dataclass(frozen=True, eq=False)
class EndoRing:
    """End(M) with maps on the left; ``ring`` is its table form."""

    module: FiniteModule
    homs: HomSet
    ring: FiniteRing

    @property
    def maps(self) -> np.ndarray:
        return self.homs.maps

    @property
    def order(self) -> int:
        return self.ring.order


_endo_cache: dict[int, tuple[FiniteModule, EndoRing]] = {}


def endomorphisms(M: FiniteModule, cap: int | None = None) -> EndoRing:
    hit = _endo_cache.get(id(M))
    if hit is not None and hit[0] is M:
        return hit[1]
    cap = caps().endo if cap is None else cap
    H = hom_set(M, M, cap)
    maps = H.maps
    k = H.order
    mul = np.empty((k, k), dtype=np.int64)
    for f in range(k):
        # (f g)(m) = f(g(m))
        mul[f] = _locate_rows(H, maps[f][maps])
    add = _pointwise_add(H)
    one = H.locate(np.arange(M.order))
    ring = FiniteRing(add, mul, H.zero_index, one, provenance={"kind": "endomorphisms", "module": M.spec()})
    out = EndoRing(M, H, ring)
    if len(_endo_cache) > 256:
        _endo_cache.clear()
    _endo_cache[id(M)] = (M, out)
    return out


def left_annihilator_of_submodule(E: EndoRing, mask: int) -> int:
    """l_S(N) = {f : f(N) = 0} as a mask over End(M)."""
    xs = bitset.to_array(mask)
    flags = (E.maps[:, xs] == E.module.zero).all(axis=1)
    return bitset.from_bool(flags)


def image_mask(E: EndoRing, f: int) -> int:
    return bitset.from_indices(np.unique(E.maps[f]).tolist())


def kernel_mask(E: EndoRing, f: int) -> int:
    return bitset.from_bool(E.maps[f] == E.module.zero)


def is_e_baer(M: FiniteModule) -> Verdict:
    """l_S(N) = Se with e idempotent in S = End(M), for every submodule N."""
    E = endomorphisms(M)
    gens = E.ring.left_idempotent_generators
    for N in M.submodules:
        left = left_annihilator_of_submodule(E, N)
        if left not in gens:
            return Verdict(
                "e_baer", False, bitset.to_list(N),
                {"left_annihilator": bitset.to_list(left), "endomorphisms": E.order},
                M.spec(),
            )
    return Verdict("e_baer", True, None, {"endomorphisms": E.order}, M.spec())


def is_e_rickart(M: FiniteModule) -> Verdict:
    """ker(f) = eM with e idempotent in End(M), for every endomorphism f."""
    E = endomorphisms(M)
    images: dict[int, int] = {}
    for e in E.ring.idempotents:
        images.setdefault(image_mask(E, e), e)
    for f in range(E.order):
        ker = kernel_mask(E, f)
        if ker not in images:
            return Verdict(
                "e_rickart", False, E.maps[f].tolist(),
                {"kernel": bitset.to_list(ker), "endomorphisms": E.order},
                M.spec(),
            )
    return Verdict("e_rickart", True, None, {"endomorphisms": E.order}, M.spec())
