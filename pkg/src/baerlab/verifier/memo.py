"""Per-object memo tables for ring-level facts used as check guards."""

from __future__ import annotations

import weakref
from functools import wraps

from baerlab.errors import CapExceeded
from baerlab.module_core.structure import is_extending, is_g_extending, singular_mask
from baerlab.ring_core.predicates import (
    essential_nilpotent_ideal_search,
    has_sip,
    has_ssip,
    is_baer,
    is_right_duo,
    is_semisimple_ring,
)
from baerlab.torsion_lab import regular_of


def weak_memo(fn):
    table: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()

    @wraps(fn)
    def wrapper(obj):
        try:
            return table[obj]
        except KeyError:
            value = table[obj] = fn(obj)
            return value

    return wrapper


@weak_memo
def baer(R) -> bool:
    return is_baer(R).holds


@weak_memo
def ssip(R) -> bool:
    return has_ssip(R).holds


@weak_memo
def sip(R) -> bool:
    return has_sip(R).holds


@weak_memo
def semisimple(R) -> bool:
    return is_semisimple_ring(R).holds


@weak_memo
def right_duo(R) -> bool:
    return is_right_duo(R).holds


@weak_memo
def nilpotent_obstruction(R):
    return essential_nilpotent_ideal_search(R)


@weak_memo
def g_extending(R) -> bool | None:
    """Whether R_R is G-extending; None when the lattice is over the cap."""
    try:
        return is_g_extending(regular_of(R)).holds
    except CapExceeded:
        return None


@weak_memo
def nonsingular_extending(R) -> bool | None:
    try:
        RR = regular_of(R)
        return singular_mask(RR) == RR.zero_mask and is_extending(RR).holds
    except CapExceeded:
        return None


@weak_memo
def trivial_idempotents(R) -> bool:
    return set(R.idempotents) <= {R.zero, R.one}
