"""Finite associative unital rings stored as dense index tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import TYPE_CHECKING, Any, Iterable

import numpy as np

from baerlab import _lattice, bitset
from baerlab.config import caps
from baerlab.errors import EmptySubset, InvalidSpec, NotSubmodule

if TYPE_CHECKING:
    from baerlab.module_core.module import FiniteModule


@dataclass(frozen=True, eq=False)
class TriangularData:
    """Block structure of a ring ``(A M; 0 C)`` built from an (A, C)-bimodule.

    Element ``i`` of the ring is the triple ``components(i) = (a, m, c)``.
    ``left[a, m]`` is the A-action on M; the C-action is ``bimodule.act``.
    """

    a: FiniteRing
    c: FiniteRing
    bimodule: "FiniteModule"
    left: np.ndarray

    def index(self, a: int, m: int, c: int) -> int:
        return (a * self.bimodule.order + m) * self.c.order + c

    def components(self, x: int) -> tuple[int, int, int]:
        nc = self.c.order
        nm = self.bimodule.order
        return (x // (nm * nc), (x // nc) % nm, x % nc)

    def block(self, a_mask: int, m_mask: int, c_mask: int) -> int:
        """Mask of all triples with components drawn from the given masks."""
        out = 0
        for a, m, c in product(bitset.to_list(a_mask), bitset.to_list(m_mask), bitset.to_list(c_mask)):
            out |= 1 << self.index(a, m, c)
        return out


@dataclass(frozen=True, eq=False)
class FiniteRing:
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    provenance: Any = None
    labels: tuple | None = None
    triangular: TriangularData | None = field(default=None, repr=False)

    def __repr__(self) -> str:
        return f"FiniteRing(order={self.order}, provenance={self.provenance!r})"

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

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add == self.zero, axis=1)

    def sub(self, x: int, y: int) -> int:
        return int(self.add[x, self.neg[y]])

    @cached_property
    def is_commutative(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def label(self, x: int):
        return self.labels[x] if self.labels is not None else x

    # -- principal ideals and annihilators -------------------------------

    @cached_property
    def principal_right(self) -> list[int]:
        """Mask of xR for every x."""
        return _lattice.cyclic_masks(self.mul)

    @cached_property
    def principal_left(self) -> list[int]:
        return _lattice.cyclic_masks(self.mul.T)

    @cached_property
    def right_ann_masks(self) -> list[int]:
        """Mask of r_R(x) = {a : xa = 0} for every x."""
        return bitset.rows_to_masks(self.mul == self.zero)

    @cached_property
    def left_ann_masks(self) -> list[int]:
        return bitset.rows_to_masks(self.mul.T == self.zero)

    # -- idempotents -----------------------------------------------------

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        diag = self.mul[np.arange(self.order), np.arange(self.order)]
        return tuple(np.flatnonzero(diag == np.arange(self.order)).tolist())

    @cached_property
    def right_semicentral(self) -> tuple[int, ...]:
        # ex = exe for all x
        out = []
        for e in self.idempotents:
            ex = self.mul[e, :]
            if (self.mul[ex, e] == ex).all():
                out.append(e)
        return tuple(out)

    @cached_property
    def left_semicentral(self) -> tuple[int, ...]:
        # xe = exe for all x
        out = []
        for e in self.idempotents:
            xe = self.mul[:, e]
            if (self.mul[e, xe] == xe).all():
                out.append(e)
        return tuple(out)

    @cached_property
    def central_idempotents(self) -> tuple[int, ...]:
        right = set(self.right_semicentral)
        return tuple(e for e in self.left_semicentral if e in right)

    @cached_property
    def idempotent_generators(self) -> dict[int, int]:
        """Map eR (as a mask) to the least idempotent e generating it."""
        table: dict[int, int] = {}
        for e in self.idempotents:
            table.setdefault(self.principal_right[e], e)
        return table

    @cached_property
    def left_idempotent_generators(self) -> dict[int, int]:
        """Map Re (as a mask) to the least idempotent e generating it."""
        table: dict[int, int] = {}
        for e in self.idempotents:
            table.setdefault(self.principal_left[e], e)
        return table

    def complement_idempotent(self, e: int) -> int:
        return self.sub(self.one, e)

    # -- ideals ----------------------------------------------------------

    @cached_property
    def right_ideals(self) -> list[int]:
        """All right ideals as masks, canonical order."""
        return _lattice.lattice(self.add, self.principal_right, self.zero, caps().submodules)

    def right_ideal_generated(self, gens: Iterable[int]) -> int:
        return _lattice.generated(self.add, self.principal_right, self.zero, gens)

    def is_two_sided_mask(self, mask: int) -> bool:
        return all(bitset.subset(self.principal_left[x], mask) for x in bitset.to_list(mask))

    def is_right_ideal_mask(self, mask: int) -> bool:
        if not mask >> self.zero & 1:
            return False
        xs = bitset.to_array(mask)
        inside = bitset.to_bool(mask, self.order)
        return bool(inside[self.add[np.ix_(xs, xs)]].all() and inside[self.mul[xs, :]].all())

    @cached_property
    def two_sided_ideals(self) -> list[int]:
        return [m for m in self.right_ideals if self.is_two_sided_mask(m)]

    def is_essential_right_ideal(self, mask: int) -> bool:
        """I <=ess R_R iff I meets xR nontrivially for every x != 0."""
        nonzero = ~self.zero_mask
        return all(
            mask & self.principal_right[x] & nonzero
            for x in self.elements
            if x != self.zero
        )

    @cached_property
    def essential_cache(self) -> dict[int, bool]:
        return {}

    def essential(self, mask: int) -> bool:
        cache = self.essential_cache
        if mask not in cache:
            cache[mask] = self.is_essential_right_ideal(mask)
        return cache[mask]

    def ideal_product(self, a: int, b: int) -> int:
        """Additive span of {xy : x in A, y in B}."""
        xs = bitset.to_array(a)
        ys = bitset.to_array(b)
        seed = bitset.from_indices(np.unique(self.mul[np.ix_(xs, ys)]).tolist())
        return _lattice.additive_closure(self.add, self.zero, seed)

    def mask_times_element(self, mask: int, x: int, left: bool = False) -> int:
        """The set {a x} (or {x a} when ``left``) for a in the mask."""
        xs = bitset.to_array(mask)
        vals = self.mul[x, xs] if left else self.mul[xs, x]
        return bitset.from_indices(np.unique(vals).tolist())


@dataclass(frozen=True, eq=False)
class RightIdeal:
    """A verified right ideal of ``parent``."""

    parent: FiniteRing
    mask: int

    def __post_init__(self):
        if not self.parent.is_right_ideal_mask(self.mask):
            raise NotSubmodule("subset is not a right ideal")

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(bitset.to_list(self.mask))

    @property
    def order(self) -> int:
        return bitset.size(self.mask)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __eq__(self, other) -> bool:
        if isinstance(other, RightIdeal):
            return self.parent is other.parent and self.mask == other.mask
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __repr__(self) -> str:
        return f"RightIdeal({list(self.members)})"


@dataclass(frozen=True)
class IdempotentReport:
    all: tuple[int, ...]
    left_semicentral: tuple[int, ...]
    right_semicentral: tuple[int, ...]
    central: tuple[int, ...]
    semicentral_reduced: bool

    def to_json(self) -> dict:
        return {
            "all": list(self.all),
            "left_semicentral": list(self.left_semicentral),
            "right_semicentral": list(self.right_semicentral),
            "central": list(self.central),
            "semicentral_reduced": self.semicentral_reduced,
        }


def idempotent_report(R: FiniteRing) -> IdempotentReport:
    trivial = {R.zero, R.one}
    return IdempotentReport(
        all=R.idempotents,
        left_semicentral=R.left_semicentral,
        right_semicentral=R.right_semicentral,
        central=R.central_idempotents,
        semicentral_reduced=set(R.left_semicentral) <= trivial,
    )


def _subset_mask(R: FiniteRing, S) -> list[int]:
    items = sorted(set(int(s) for s in S))
    if not items:
        raise EmptySubset("annihilator of the empty set")
    for s in items:
        if not 0 <= s < R.order:
            raise InvalidSpec(f"element {s} out of range")
    return items


def right_annihilator_ring(R: FiniteRing, S) -> RightIdeal:
    """r_R(S) = {a : sa = 0 for all s in S}."""
    items = _subset_mask(R, S)
    flags = (R.mul[items, :] == R.zero).all(axis=0)
    return RightIdeal(R, bitset.from_bool(flags))


def left_annihilator_ring(R: FiniteRing, S) -> int:
    """l_R(S) as a mask; it is a left ideal, so it is returned raw."""
    items = _subset_mask(R, S)
    flags = (R.mul[:, items] == R.zero).all(axis=1)
    return bitset.from_bool(flags)


def opposite(R: FiniteRing) -> FiniteRing:
    return FiniteRing(
        add=R.add,
        mul=np.ascontiguousarray(R.mul.T),
        zero=R.zero,
        one=R.one,
        provenance={"kind": "opposite", "base": R.provenance},
        labels=R.labels,
    )


def axiom_failures(add: np.ndarray, mul: np.ndarray, zero: int, one: int) -> list[str]:
    """Every ring axiom violated by the tables, audited on all triples."""
    n = add.shape[0]
    idx = np.arange(n)
    problems = []
    if not (add == add.T).all():
        problems.append("addition is not commutative")
    if not ((add[zero, :] == idx).all() and (add[:, zero] == idx).all()):
        problems.append("zero is not an additive identity")
    if not (add == zero).any(axis=1).all():
        problems.append("some element has no additive inverse")
    if not ((mul[one, :] == idx).all() and (mul[:, one] == idx).all()):
        problems.append("one is not a multiplicative identity")
    checks = {
        "addition is not associative": False,
        "multiplication is not associative": False,
        "left distributivity fails": False,
        "right distributivity fails": False,
    }
    # one slab of triples (x, *, *) at a time keeps memory at n^2
    for x in range(n):
        if not (add[add[x, :][:, None], idx[None, :]] == add[x, add]).all():
            checks["addition is not associative"] = True
        if not (mul[mul[x, :][:, None], idx[None, :]] == mul[x, mul]).all():
            checks["multiplication is not associative"] = True
        if not (mul[x, add] == add[mul[x, :][:, None], mul[x, :][None, :]]).all():
            checks["left distributivity fails"] = True
        if not (mul[add[x, :][:, None], idx[None, :]] == add[mul[x, :][None, :], mul]).all():
            checks["right distributivity fails"] = True
    problems.extend(name for name, bad in checks.items() if bad)
    return problems
