"""Finite right modules over a FiniteRing, their submodules and constructors."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Sequence

import numpy as np

from baerlab import _lattice, bitset
from baerlab.config import caps
from baerlab.errors import CapExceeded, InvalidSpec, NotIdempotent, NotSubmodule
from baerlab.ring_core.ring import FiniteRing


@dataclass(frozen=True, eq=False)
class FiniteModule:
    ring: FiniteRing
    add: np.ndarray
    act: np.ndarray
    zero: int
    recipe: Any = None
    labels: tuple | None = None
    # element -> ring element, when the module is a right ideal of its ring
    ring_embedding: np.ndarray | None = None

    def __repr__(self) -> str:
        return f"FiniteModule(order={self.order}, recipe={self.recipe!r})"

    @property
    def order(self) -> int:
        return self.add.shape[0]

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def zero_mask(self) -> int:
        return 1 << self.zero

    @property
    def is_zero(self) -> bool:
        return self.order == 1

    def spec(self) -> dict:
        """Replayable description: the ring expression plus the module recipe."""
        return {"ring": self.ring.provenance, "module": self.recipe}

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add == self.zero, axis=1)

    @cached_property
    def cyclic(self) -> list[int]:
        """Mask of mR for every m."""
        return _lattice.cyclic_masks(self.act)

    @cached_property
    def ann_masks(self) -> list[int]:
        """Mask (over the ring) of r_R(m) for every m."""
        return bitset.rows_to_masks(self.act == self.zero)

    @cached_property
    def submodules(self) -> list[int]:
        """Every submodule as a mask, in canonical order."""
        return _lattice.lattice(self.add, self.cyclic, self.zero, caps().submodules)

    @cached_property
    def submodule_set(self) -> frozenset[int]:
        return frozenset(self.submodules)

    def generated(self, gens: Iterable[int]) -> int:
        return _lattice.generated(self.add, self.cyclic, self.zero, gens)

    def sum(self, a: int, b: int) -> int:
        return _lattice.subgroup_sum(self.add, a, b)

    def is_submodule_mask(self, mask: int) -> bool:
        if not mask >> self.zero & 1 or mask >> self.order:
            return False
        xs = bitset.to_array(mask)
        inside = bitset.to_bool(mask, self.order)
        return bool(inside[self.add[np.ix_(xs, xs)]].all() and inside[self.act[xs, :]].all())

    def times_ideal(self, ideal_mask: int, within: int | None = None) -> int:
        """The submodule N*I generated by {n a : n in N, a in I} (N = ``within``)."""
        xs = bitset.to_array(self.full_mask if within is None else within)
        ys = bitset.to_array(ideal_mask)
        seed = bitset.from_indices(np.unique(self.act[np.ix_(xs, ys)]).tolist())
        return self.generated(bitset.to_list(seed))

    def coset_ann_masks(self, sub: int) -> list[int]:
        """r_R(x + N) = {a : xa in N} for every x, without forming M/N."""
        return _lattice.preimage_masks(self.act, sub)

    def is_essential_mask(self, sub: int, ambient: int | None = None) -> bool:
        """N <=ess A iff N meets xR nontrivially for each 0 != x in A."""
        ambient = self.full_mask if ambient is None else ambient
        nonzero = ~self.zero_mask
        for x in bitset.to_list(ambient & nonzero):
            if not sub & self.cyclic[x] & nonzero:
                return False
        return True

    @cached_property
    def summand_complements(self) -> dict[int, int]:
        """Direct summands mapped to their least complement."""
        by_size: dict[int, list[int]] = {}
        for s in self.submodules:
            by_size.setdefault(s.bit_count(), []).append(s)
        out = {}
        n = self.order
        for s in self.submodules:
            k = s.bit_count()
            if n % k:
                continue
            for t in by_size.get(n // k, ()):
                if s & t == self.zero_mask:
                    out[s] = t
                    break
        return out

    def is_summand_mask(self, sub: int) -> bool:
        return sub in self.summand_complements

    def members(self, mask: int) -> list[int]:
        return bitset.to_list(mask)


@dataclass(frozen=True, eq=False)
class Submodule:
    """A verified submodule of ``parent``; flags are computed lazily."""

    parent: FiniteModule
    mask: int

    def __post_init__(self):
        if not self.parent.is_submodule_mask(self.mask):
            raise NotSubmodule("subset is not a submodule")

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(bitset.to_list(self.mask))

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __eq__(self, other) -> bool:
        if isinstance(other, Submodule):
            return self.parent is other.parent and self.mask == other.mask
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __repr__(self) -> str:
        return f"Submodule({list(self.members)})"

    @cached_property
    def is_essential(self) -> bool:
        return self.parent.is_essential_mask(self.mask)

    @cached_property
    def is_direct_summand(self) -> bool:
        return self.parent.is_summand_mask(self.mask)

    @cached_property
    def is_fully_invariant(self) -> bool:
        from baerlab.module_core.homs import endomorphisms

        maps = endomorphisms(self.parent).maps
        xs = bitset.to_array(self.mask)
        inside = bitset.to_bool(self.mask, self.parent.order)
        return bool(inside[maps[:, xs]].all()) if len(xs) else True

    def as_module(self) -> FiniteModule:
        return submodule_module(self.parent, self.mask)


# -- constructors ----------------------------------------------------------


def _check_order(n: int) -> None:
    cap = caps().module
    if n > cap:
        raise CapExceeded("module order", n, cap)


def regular(R: FiniteRing) -> FiniteModule:
    return FiniteModule(
        ring=R,
        add=R.add,
        act=R.mul,
        zero=R.zero,
        recipe={"kind": "regular"},
        labels=R.labels,
        ring_embedding=np.arange(R.order),
    )


def zero_module(R: FiniteRing) -> FiniteModule:
    return FiniteModule(
        ring=R,
        add=np.zeros((1, 1), dtype=np.int64),
        act=np.zeros((1, R.order), dtype=np.int64),
        zero=0,
        recipe={"kind": "zero"},
    )


def minimal_generators_greedy(M: FiniteModule) -> list[int]:
    """A generating set built greedily: repeatedly add the element whose
    cyclic submodule enlarges the span most (ties to the least index)."""
    span = M.zero_mask
    gens: list[int] = []
    while span != M.full_mask:
        best, best_size = -1, -1
        for x in bitset.to_list(M.full_mask & ~span):
            k = M.sum(span, M.cyclic[x]).bit_count()
            if k > best_size:
                best, best_size = x, k
        gens.append(best)
        span = M.sum(span, M.cyclic[best])
    return gens


def _generators_of(M: FiniteModule, mask: int) -> list[int]:
    span = M.zero_mask
    gens = []
    for x in bitset.to_list(mask):
        if not span >> x & 1:
            gens.append(x)
            span = M.sum(span, M.cyclic[x])
    return gens


def submodule_module(M: FiniteModule, mask: int, recipe=None) -> FiniteModule:
    """The submodule ``mask`` of M as a module in its own right.

    Elements are reindexed in increasing parent order.
    """
    if not M.is_submodule_mask(mask):
        raise NotSubmodule("subset is not a submodule")
    mem = bitset.to_array(mask)
    inv = np.full(M.order, -1, dtype=np.int64)
    inv[mem] = np.arange(len(mem))
    if recipe is None:
        recipe = {"kind": "submodule", "of": M.recipe, "gens": _generators_of(M, mask)}
    emb = None if M.ring_embedding is None else M.ring_embedding[mem]
    return FiniteModule(
        ring=M.ring,
        add=inv[M.add[np.ix_(mem, mem)]],
        act=inv[M.act[mem, :]],
        zero=int(inv[M.zero]),
        recipe=recipe,
        labels=None if M.labels is None else tuple(M.labels[i] for i in mem),
        ring_embedding=emb,
    )


def idempotent_piece(R: FiniteRing, e: int) -> FiniteModule:
    if R.mul[e, e] != e:
        raise NotIdempotent(f"element {e} is not idempotent")
    return submodule_module(regular(R), R.principal_right[e], {"kind": "idempotent_piece", "e": int(e)})


def cyclic(M: FiniteModule, m: int) -> FiniteModule:
    return submodule_module(M, M.cyclic[m], {"kind": "cyclic", "of": M.recipe, "m": int(m)})


def submodule_generated(M: FiniteModule, gens: Sequence[int]) -> FiniteModule:
    gens = [int(g) for g in gens]
    return submodule_module(M, M.generated(gens), {"kind": "submodule", "of": M.recipe, "gens": gens})


def quotient(M: FiniteModule, sub, recipe=None) -> FiniteModule:
    """M/N with cosets indexed by increasing least representative."""
    if isinstance(sub, Submodule):
        mask = sub.mask
    elif isinstance(sub, (list, tuple, set, frozenset)):
        mask = bitset.from_indices(sub)
    else:
        mask = int(sub)
    if not M.is_submodule_mask(mask):
        raise NotSubmodule("quotient by a subset that is not a submodule")
    mem = bitset.to_array(mask)
    reps = M.add[:, mem].min(axis=1)
    distinct = np.unique(reps)
    inv = np.full(M.order, -1, dtype=np.int64)
    inv[distinct] = np.arange(len(distinct))
    coset = inv[reps]
    if recipe is None:
        recipe = {"kind": "quotient", "of": M.recipe, "sub": _generators_of(M, mask)}
    return FiniteModule(
        ring=M.ring,
        add=coset[M.add[np.ix_(distinct, distinct)]],
        act=coset[M.act[distinct, :]],
        zero=int(coset[M.zero]),
        recipe=recipe,
        labels=tuple(int(d) for d in distinct),
    )


def quotient_map(M: FiniteModule, mask: int) -> np.ndarray:
    """Element of M -> index of its coset in ``quotient(M, mask)``."""
    mem = bitset.to_array(mask)
    reps = M.add[:, mem].min(axis=1)
    distinct = np.unique(reps)
    inv = np.full(M.order, -1, dtype=np.int64)
    inv[distinct] = np.arange(len(distinct))
    return inv[reps]


def direct_sum(parts: Sequence[FiniteModule]) -> FiniteModule:
    if not parts:
        raise InvalidSpec("direct sum of no modules")
    R = parts[0].ring
    if any(p.ring is not R for p in parts):
        raise InvalidSpec("direct sum of modules over different rings")
    total = 1
    for p in parts:
        total *= p.order
    _check_order(total)
    add = np.zeros((1, 1), dtype=np.int64)
    act = np.zeros((1, R.order), dtype=np.int64)
    zero = 0
    labels: list[tuple] = [()]
    for p in parts:
        n1, n2 = add.shape[0], p.order
        # (x, y) -> x * n2 + y
        add = (add[:, None, :, None] * n2 + p.add[None, :, None, :]).reshape(n1 * n2, n1 * n2)
        act = (act[:, None, :] * n2 + p.act[None, :, :]).reshape(n1 * n2, R.order)
        zero = zero * n2 + p.zero
        plabels = p.labels if p.labels is not None else tuple(range(p.order))
        labels = [a + (b,) for a in labels for b in plabels]
    return FiniteModule(
        ring=R,
        add=add,
        act=act,
        zero=zero,
        recipe={"kind": "direct_sum", "parts": [p.recipe for p in parts]},
        labels=tuple(labels),
    )


def module_axiom_failures(R: FiniteRing, add: np.ndarray, act: np.ndarray, zero: int) -> list[str]:
    n = add.shape[0]
    idx = np.arange(n)
    problems = []
    if add.shape != (n, n) or act.shape != (n, R.order):
        return ["table shapes do not match"]
    if add.min() < 0 or add.max() >= n or act.min() < 0 or act.max() >= n:
        return ["table entries out of range"]
    if not (add == add.T).all():
        problems.append("addition is not commutative")
    if not (add[add[:, :, None], idx[None, None, :]] == add[idx[:, None, None], add[None, :, :]]).all():
        problems.append("addition is not associative")
    if not (add[zero, :] == idx).all():
        problems.append("zero is not an additive identity")
    if not (add == zero).any(axis=1).all():
        problems.append("some element has no additive inverse")
    if not (act[:, R.one] == idx).all():
        problems.append("m*1 != m")
    if not (act[act] == act[:, R.mul]).all():
        problems.append("(m r) s != m (r s)")
    if not (act[:, R.add] == add[act[:, :, None], act[:, None, :]]).all():
        problems.append("m (r + s) != m r + m s")
    if not (act[add] == add[act[:, None, :], act[None, :, :]]).all():
        problems.append("(m + n) r != m r + n r")
    return problems


def from_tables(R: FiniteRing, add, act, zero: int | None = None) -> FiniteModule:
    add = np.asarray(add, dtype=np.int64)
    act = np.asarray(act, dtype=np.int64)
    if add.ndim != 2 or add.shape[0] != add.shape[1]:
        raise InvalidSpec("addition table must be square")
    _check_order(add.shape[0])
    if zero is None:
        idx = np.arange(add.shape[0])
        found = [z for z in range(add.shape[0]) if (add[z, :] == idx).all()]
        if not found:
            raise InvalidSpec("addition table has no identity")
        zero = found[0]
    problems = module_axiom_failures(R, add, act, zero)
    if problems:
        raise InvalidSpec("module tables fail axioms: " + "; ".join(problems))
    return FiniteModule(
        ring=R,
        add=add,
        act=act,
        zero=int(zero),
        recipe={"kind": "table", "add": add.tolist(), "action": act.tolist()},
    )


def build_module(R: FiniteRing, recipe: dict | None) -> FiniteModule:
    """Evaluate a module recipe (JSON mirror of the ring grammar) over R."""
    if recipe is None:
        return regular(R)
    if not isinstance(recipe, dict) or "kind" not in recipe:
        raise InvalidSpec(f"module recipe must be an object with a 'kind': {recipe!r}")
    kind = recipe["kind"]
    try:
        if kind == "regular":
            return regular(R)
        if kind == "zero":
            return zero_module(R)
        if kind == "idempotent_piece":
            return idempotent_piece(R, int(recipe["e"]))
        if kind == "direct_sum":
            return direct_sum([build_module(R, p) for p in recipe["parts"]])
        if kind == "quotient":
            base = build_module(R, recipe.get("of"))
            mask = base.generated([int(g) for g in recipe.get("sub", [])])
            out = quotient(base, mask)
            if "of" not in recipe:
                out = _with_recipe(out, recipe)
            return out
        if kind == "cyclic":
            return cyclic(build_module(R, recipe.get("of")), int(recipe["m"]))
        if kind == "submodule":
            return submodule_generated(build_module(R, recipe.get("of")), recipe["gens"])
        if kind == "table":
            return from_tables(R, recipe["add"], recipe["action"], recipe.get("zero"))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidSpec(f"malformed module recipe {recipe!r}: {exc}") from exc
    raise InvalidSpec(f"unknown module kind {kind!r}")


def _with_recipe(M: FiniteModule, recipe) -> FiniteModule:
    return FiniteModule(M.ring, M.add, M.act, M.zero, recipe, M.labels, M.ring_embedding)
