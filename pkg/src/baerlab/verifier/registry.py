"""Check records and the registry that maps ids to them."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from baerlab.errors import UnknownCheck
from baerlab.module_core.module import FiniteModule, build_module
from baerlab.ring_core.ring import FiniteRing


class NotApplicable(Exception):
    """Raised by a guard or body when the instance misses a hypothesis."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def skip_unless(condition: bool, reason: str) -> None:
    if not condition:
        raise NotApplicable(reason)


@dataclass
class Context:
    """Everything a check body may consult for one ring of the corpus."""

    ring: FiniteRing
    modules: list
    seed: int
    check: str
    ring_index: int = 0
    _by_recipe: dict = field(default_factory=dict)

    def __post_init__(self):
        for M in self.modules:
            self._by_recipe.setdefault(_key(M.recipe), M)

    def rng(self, *salt) -> random.Random:
        return random.Random(":".join(map(str, (self.seed, self.check, self.ring_index) + salt)))

    def module(self, recipe) -> FiniteModule:
        key = _key(recipe)
        M = self._by_recipe.get(key)
        if M is None:
            M = build_module(self.ring, recipe)
            self._by_recipe[key] = M
        return M


def _key(recipe) -> str:
    return json.dumps(recipe, sort_keys=True)


@dataclass(frozen=True)
class Check:
    """A named executable statement.

    ``scope`` is "ring" (one subject per corpus ring) or "module" (one per
    corpus module).  ``sampler`` turns a subject into parameter sets, each an
    instance of its own; ``guard`` raises NotApplicable on hypothesis misses.
    The body returns ``(ok, detail)``.
    """

    name: str
    anchor: str
    scope: str
    body: Callable[..., tuple[bool, dict]]
    guard: Callable[[Context, Any], None] | None = None
    sampler: Callable[[Context, Any], list] | None = None
    keep_evidence: bool = False


CHECKS: dict[str, Check] = {}


def register(name: str, anchor: str, scope: str, *, guard=None, sampler=None, keep_evidence=False):
    if scope not in ("ring", "module"):
        raise ValueError(f"bad scope {scope!r}")

    def deco(fn):
        if name in CHECKS:
            raise ValueError(f"check {name!r} registered twice")
        CHECKS[name] = Check(name, anchor, scope, fn, guard, sampler, keep_evidence)
        return fn

    return deco


def get_check(name: str) -> Check:
    _load()
    try:
        return CHECKS[name]
    except KeyError:
        raise UnknownCheck(f"no check named {name!r}; known: {', '.join(sorted(CHECKS))}") from None


def check_names() -> list[str]:
    _load()
    return sorted(CHECKS)


def _load() -> None:
    from baerlab.verifier import checks_module, checks_ring, checks_torsion  # noqa: F401
