"""Deterministic streams of small rings and modules.

Rings come from a fixed fixture list followed by random constructor terms
sampled from the grammar and deduplicated by a cheap fingerprint.  Every
stream element carries its constructor expression, so a dump can be
replayed exactly.
"""

from __future__ import annotations

import json
import random

import numpy as np
from dataclasses import asdict, dataclass, field
from typing import Iterator

from baerlab import bitset
from baerlab.errors import BaerLabError
from baerlab.module_core.module import FiniteModule, build_module
from baerlab.ring_core.construct import build_ring, predicted_order
from baerlab.ring_core.ring import FiniteRing

FIXTURE_GROUPS = (
    "zmod",
    "prime_field",
    "products",
    "matrix_f2",
    "t2_f2",
    "t2_f3",
    "t2_z4",
    "gen_triangular",
    "trivial_extension",
    "m2_f3",
)

EXHAUSTIVE_FAMILIES = ("zmod", "prime_field", "products", "upper_triangular", "matrix", "trivial_extension")

DEFAULT_RANDOM_QUOTA = 24
DEFAULT_MODULES_PER_RING = 24


@dataclass(frozen=True)
class CorpusConfig:
    max_ring_order: int = 16
    max_module_order: int = 16
    seed: int = 42
    grammar_depth: int = 3
    count: int | None = None
    exhaustive: bool = False
    include: tuple = FIXTURE_GROUPS
    modules_per_ring: int = DEFAULT_MODULES_PER_RING

    def __post_init__(self):
        if self.max_ring_order < 1 or self.max_module_order < 1:
            raise ValueError("caps must be positive")
        if self.count is not None and self.count < 0:
            raise ValueError("count must be nonnegative")
        object.__setattr__(self, "include", tuple(self.include))

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "CorpusConfig":
        return cls(**data)


def Z(n: int) -> dict:
    return {"kind": "zmod", "n": n}


def F(p: int) -> dict:
    return {"kind": "prime_field", "p": p}


def _primes(limit: int) -> list[int]:
    return [p for p in range(2, limit + 1) if all(p % d for d in range(2, p))]


REGULAR = {"kind": "regular"}
ZERO = {"kind": "zero"}
SCALAR = {"kind": "scalar"}
# F4 as the subring of M2(F2) generated by [[0,1],[1,1]] (index 7)
F4 = {"kind": "subring", "base": {"kind": "matrix", "k": 2, "base": F(2)}, "gens": [7]}
DUAL_NUMBERS_F2 = {"kind": "trivial_extension", "base": Z(2), "module": REGULAR}


def gen_tri(a: dict, c: dict, module: dict, left: dict | None = None) -> dict:
    bimodule = {"module": module}
    if left is not None:
        bimodule["left"] = left
    return {"kind": "gen_triangular", "a": a, "c": c, "bimodule": bimodule}


def gen_triangular_fixtures() -> list[dict]:
    """(A M; 0 C) samples with A and C indecomposable; r_C(m) = 0 for all
    m != 0 holds for some and fails for others."""
    return [
        gen_tri(F(2), F(2), REGULAR),
        gen_tri(F(2), F(2), {"kind": "direct_sum", "parts": [REGULAR, REGULAR]}, SCALAR),
        gen_tri(Z(2), Z(4), {"kind": "quotient", "sub": [2]}, SCALAR),
        gen_tri(Z(4), Z(2), REGULAR, SCALAR),
        gen_tri(Z(2), Z(2), ZERO, SCALAR),
        gen_tri(Z(3), Z(3), ZERO, SCALAR),
        gen_tri(Z(2), Z(4), ZERO, SCALAR),
        gen_tri(Z(2), DUAL_NUMBERS_F2, {"kind": "quotient", "sub": [1]}, SCALAR),
        gen_tri(F(3), F(3), REGULAR),
        gen_tri(Z(4), Z(4), REGULAR),
        gen_tri(Z(4), Z(4), {"kind": "quotient", "sub": [2]}, SCALAR),
        gen_tri(F(2), F4, REGULAR, SCALAR),
        gen_tri(F(2), DUAL_NUMBERS_F2, REGULAR, SCALAR),
    ]


def trivial_extension_fixtures() -> list[dict]:
    return [
        DUAL_NUMBERS_F2,
        {"kind": "trivial_extension", "base": Z(3), "module": REGULAR},
        {"kind": "trivial_extension", "base": Z(4), "module": {"kind": "quotient", "sub": [2]}},
        {"kind": "trivial_extension", "base": Z(2), "module": {"kind": "direct_sum", "parts": [REGULAR, REGULAR]}},
    ]


def fixture_specs(cfg: CorpusConfig) -> list[dict]:
    n = cfg.max_ring_order
    groups = {
        "zmod": [Z(k) for k in range(1, n + 1)],
        "prime_field": [F(p) for p in _primes(n)],
        "products": [
            {"kind": "product", "factors": [Z(a), Z(b)]}
            for a in range(2, n + 1) for b in range(a, n + 1) if a * b <= n
        ],
        "matrix_f2": [{"kind": "matrix", "k": 2, "base": F(2)}],
        "t2_f2": [{"kind": "upper_triangular", "k": 2, "base": F(2)}],
        "t2_f3": [{"kind": "upper_triangular", "k": 2, "base": F(3)}],
        "t2_z4": [{"kind": "upper_triangular", "k": 2, "base": Z(4)}],
        "gen_triangular": gen_triangular_fixtures(),
        "trivial_extension": trivial_extension_fixtures(),
        "m2_f3": [{"kind": "matrix", "k": 2, "base": F(3)}],
    }
    out = []
    for name in FIXTURE_GROUPS:
        if name in cfg.include:
            out.extend(groups[name])
    return out


def exhaustive_specs(cfg: CorpusConfig) -> list[dict]:
    """Every member of the requested families with order within the cap."""
    n = cfg.max_ring_order
    fams = {
        "zmod": lambda: [Z(k) for k in range(1, n + 1)],
        "prime_field": lambda: [F(p) for p in _primes(n)],
        "products": lambda: [
            {"kind": "product", "factors": [Z(a), Z(b)]}
            for a in range(2, n + 1) for b in range(a, n + 1) if a * b <= n
        ],
        "upper_triangular": lambda: [
            {"kind": "upper_triangular", "k": 2, "base": Z(b)} for b in range(2, n + 1) if b**3 <= n
        ],
        "matrix": lambda: [{"kind": "matrix", "k": 2, "base": Z(b)} for b in range(2, n + 1) if b**4 <= n],
        "trivial_extension": lambda: [
            {"kind": "trivial_extension", "base": Z(b), "module": REGULAR} for b in range(2, n + 1) if b * b <= n
        ],
    }
    out = []
    for name in cfg.include:
        if name not in fams:
            raise ValueError(f"no exhaustive family {name!r}; known: {', '.join(EXHAUSTIVE_FAMILIES)}")
        out.extend(fams[name]())
    return out


def fingerprint(R: FiniteRing) -> tuple:
    """Isomorphism invariants; equal fingerprints are treated as duplicates."""
    squares = R.mul[np.arange(R.order), np.arange(R.order)]
    return (
        R.order,
        R.is_commutative,
        len(R.idempotents),
        len(R.left_semicentral),
        len(R.two_sided_ideals),
        len(R.right_ideals),
        int((squares == R.zero).sum()),
        tuple(sorted(bitset.size(m) for m in R.right_ann_masks)),
    )


class _Grammar:
    """Random constructor terms of bounded depth and order."""

    def __init__(self, rng: random.Random, max_order: int, depth: int):
        self.rng = rng
        self.max_order = max_order
        self.depth = depth

    def leaf(self) -> dict:
        return Z(self.rng.randint(2, min(self.max_order, 9)))

    def term(self, depth: int) -> dict:
        if depth <= 0:
            return self.leaf()
        kind = self.rng.choice(
            ["zmod", "product", "upper_triangular", "quotient", "subring", "trivial_extension", "opposite", "gen_triangular"]
        )
        rng = self.rng
        if kind == "zmod":
            return self.leaf()
        if kind == "product":
            return {"kind": "product", "factors": [self.term(depth - 1), self.term(depth - 1)]}
        if kind == "upper_triangular":
            return {"kind": "upper_triangular", "k": 2, "base": Z(rng.choice([2, 2, 3]))}
        if kind == "quotient":
            base = self.term(depth - 1)
            n = _order_hint(base)
            return {"kind": "quotient", "base": base, "gens": [rng.randrange(n)] if n else []}
        if kind == "subring":
            base = self.term(depth - 1)
            n = _order_hint(base)
            return {"kind": "subring", "base": base, "gens": [rng.randrange(n)] if n else []}
        if kind == "trivial_extension":
            base = Z(rng.randint(2, 4))
            module = rng.choice([REGULAR, {"kind": "quotient", "sub": [rng.randrange(base["n"])]}])
            return {"kind": "trivial_extension", "base": base, "module": module}
        if kind == "opposite":
            return {"kind": "opposite", "base": self.term(depth - 1)}
        a = Z(rng.choice([2, 3, 4]))
        c = Z(rng.choice([2, 3, 4]))
        module = rng.choice([REGULAR, ZERO, {"kind": "quotient", "sub": [rng.randrange(c["n"])]}])
        return gen_tri(a, c, module, SCALAR)


def _order_hint(spec: dict) -> int | None:
    try:
        return predicted_order(spec)
    except (KeyError, TypeError):
        return None


def _safe_build(spec: dict, cap: int) -> FiniteRing | None:
    predicted = _order_hint(spec)
    if predicted is not None and predicted > cap:
        return None
    try:
        R = build_ring(spec, cap=max(cap, 1))
    except BaerLabError:
        return None
    return R if R.order <= cap else None


def generate_rings(cfg: CorpusConfig = CorpusConfig()) -> Iterator[FiniteRing]:
    """Fixtures (or exhaustive families) first, then random terms."""
    limit = cfg.count
    emitted = 0
    if cfg.exhaustive:
        for spec in exhaustive_specs(cfg):
            if limit is not None and emitted >= limit:
                return
            yield build_ring(spec)
            emitted += 1
        return
    seen: set[tuple] = set()
    for spec in fixture_specs(cfg):
        if limit is not None and emitted >= limit:
            return
        R = build_ring(spec)
        seen.add(fingerprint(R))
        yield R
        emitted += 1
    quota = DEFAULT_RANDOM_QUOTA if limit is None else limit - emitted
    rng = random.Random(cfg.seed)
    grammar = _Grammar(rng, cfg.max_ring_order, cfg.grammar_depth)
    made, attempts = 0, 0
    while made < quota and attempts < 50 * max(quota, 1):
        attempts += 1
        spec = grammar.term(rng.randint(1, cfg.grammar_depth))
        R = _safe_build(spec, cfg.max_ring_order)
        if R is None:
            continue
        fp = fingerprint(R)
        if fp in seen:
            continue
        seen.add(fp)
        made += 1
        yield R


def _module_recipes(R: FiniteRing, cfg: CorpusConfig, rng: random.Random) -> Iterator[dict]:
    yield REGULAR
    gens = R.idempotent_generators
    for mask in sorted(gens, key=bitset.canonical_key):
        e = gens[mask]
        if e not in (R.zero, R.one):
            yield {"kind": "idempotent_piece", "e": e}
    for I in R.right_ideals:
        if I in (R.zero_mask, R.full_mask):
            continue
        yield {"kind": "quotient", "sub": _ideal_generators(R, I)}


def _ideal_generators(R: FiniteRing, I: int) -> list[int]:
    span = R.zero_mask
    out = []
    for x in bitset.to_list(I):
        if not span >> x & 1:
            out.append(x)
            span = R.right_ideal_generated(out)
    return out


def generate_modules(R: FiniteRing, cfg: CorpusConfig = CorpusConfig()) -> Iterator[FiniteModule]:
    """Regular module, idempotent pieces, cyclic quotients R/I, pairwise
    sums, then random submodules and quotients; each at most the module cap."""
    rng = random.Random(f"{cfg.seed}:{json.dumps(R.provenance, sort_keys=True)}")
    cap = cfg.max_module_order
    budget = cfg.modules_per_ring
    seen: set[str] = set()
    basics: list[FiniteModule] = []
    out = 0

    def admit(recipe: dict) -> FiniteModule | None:
        key = json.dumps(recipe, sort_keys=True)
        if key in seen:
            return None
        seen.add(key)
        try:
            M = build_module(R, recipe)
        except BaerLabError:
            return None
        return M if M.order <= cap else None

    for recipe in _module_recipes(R, cfg, rng):
        if out >= budget:
            return
        if recipe is REGULAR and R.order > cap:
            continue
        M = admit(recipe)
        if M is None:
            continue
        basics.append(M)
        out += 1
        yield M
    small = [M for M in basics if M.order > 1]
    sums = 0
    for i in range(len(small)):
        for j in range(i, len(small)):
            if sums >= budget // 3 or out >= budget:
                break
            if small[i].order * small[j].order > cap:
                continue
            M = admit({"kind": "direct_sum", "parts": [small[i].recipe, small[j].recipe]})
            if M is not None:
                basics.append(M)
                sums += 1
                out += 1
                yield M
    pool = [M for M in basics if M.order > 2]
    tries = 0
    while pool and out < budget and tries < 4 * budget:
        tries += 1
        M = rng.choice(pool)
        x = rng.randrange(M.order)
        if rng.random() < 0.5:
            recipe = {"kind": "submodule", "of": M.recipe, "gens": [x]}
        else:
            recipe = {"kind": "quotient", "of": M.recipe, "sub": [x]}
        N = admit(recipe)
        if N is not None:
            out += 1
            yield N


def corpus(cfg: CorpusConfig = CorpusConfig()) -> Iterator[tuple[FiniteRing, list[FiniteModule]]]:
    for R in generate_rings(cfg):
        yield R, list(generate_modules(R, cfg))


def dump_lines(cfg: CorpusConfig, modules: bool = False) -> Iterator[str]:
    """JSON lines: one ring expression per line, or one {ring, module} pair."""
    for R in generate_rings(cfg):
        if not modules:
            yield json.dumps(R.provenance, sort_keys=True)
            continue
        for M in generate_modules(R, cfg):
            yield json.dumps(M.spec(), sort_keys=True)
