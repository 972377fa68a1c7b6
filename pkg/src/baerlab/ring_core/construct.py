"""Evaluation of constructor expressions into FiniteRing tables.

Expressions are JSON-shaped dicts, e.g. ``{"kind": "zmod", "n": 6}`` or
``{"kind": "upper_triangular", "k": 2, "base": {"kind": "prime_field", "p": 2}}``.
Element indexing is lexicographic in the construction: tuple-valued
elements are ordered by their component indices, cosets by their least
representative.
"""

from __future__ import annotations

import json
from itertools import product
from typing import Any

import numpy as np

from baerlab import _lattice, bitset
from baerlab.config import caps
from baerlab.errors import CapExceeded, InvalidSpec
from baerlab.ring_core.ring import FiniteRing, TriangularData, axiom_failures, opposite

KINDS = (
    "zmod",
    "prime_field",
    "product",
    "matrix",
    "upper_triangular",
    "gen_triangular",
    "quotient",
    "subring",
    "trivial_extension",
    "table",
    "opposite",
)


def _check_order(n: int, cap: int | None) -> None:
    cap = caps().ring if cap is None else cap
    if n > cap:
        raise CapExceeded("ring order", n, cap)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def zmod(n: int, cap: int | None = None) -> FiniteRing:
    if n < 1:
        raise InvalidSpec(f"Zmod needs n >= 1, got {n}")
    _check_order(n, cap)
    idx = np.arange(n)
    return FiniteRing(
        add=(idx[:, None] + idx[None, :]) % n,
        mul=(idx[:, None] * idx[None, :]) % n,
        zero=0,
        one=1 % n,
        provenance={"kind": "zmod", "n": n},
    )


def prime_field(p: int, cap: int | None = None) -> FiniteRing:
    if not _is_prime(p):
        raise InvalidSpec(f"PrimeField needs a prime, got {p}")
    R = zmod(p, cap)
    return _with(R, provenance={"kind": "prime_field", "p": p})


def _with(R: FiniteRing, **changes) -> FiniteRing:
    fields = dict(
        add=R.add, mul=R.mul, zero=R.zero, one=R.one,
        provenance=R.provenance, labels=R.labels, triangular=R.triangular,
    )
    fields.update(changes)
    return FiniteRing(**fields)


def product_ring(factors: list[FiniteRing], cap: int | None = None) -> FiniteRing:
    if not factors:
        raise InvalidSpec("product of no rings")
    total = 1
    for f in factors:
        total *= f.order
    _check_order(total, cap)
    add = np.zeros((1, 1), dtype=np.int64)
    mul = np.zeros((1, 1), dtype=np.int64)
    zero = one = 0
    for f in factors:
        n1, n2 = add.shape[0], f.order
        add = (add[:, None, :, None] * n2 + f.add[None, :, None, :]).reshape(n1 * n2, n1 * n2)
        mul = (mul[:, None, :, None] * n2 + f.mul[None, :, None, :]).reshape(n1 * n2, n1 * n2)
        zero = zero * n2 + f.zero
        one = one * n2 + f.one
    labels = tuple(product(*[range(f.order) for f in factors]))
    return FiniteRing(add, mul, zero, one, {"kind": "product", "factors": [f.provenance for f in factors]}, labels)


def _encode(entries: np.ndarray, n: int) -> np.ndarray:
    """Mixed-radix index of rows of base indices (last column fastest)."""
    out = np.zeros(entries.shape[:-1], dtype=np.int64)
    for j in range(entries.shape[-1]):
        out = out * n + entries[..., j]
    return out


def _matrix_like(base: FiniteRing, k: int, positions: list[tuple[int, int]], cap, provenance) -> FiniteRing:
    n = base.order
    w = len(positions)
    total = n**w
    _check_order(total, cap)
    entries = np.array(list(product(range(n), repeat=w)), dtype=np.int64).reshape(total, w)
    pos = {p: i for i, p in enumerate(positions)}
    add = _encode(base.add[entries[:, None, :], entries[None, :, :]], n)
    prod_cols = []
    for i, j in positions:
        acc = np.full((total, total), base.zero, dtype=np.int64)
        for l in range(k):
            if (i, l) in pos and (l, j) in pos:
                term = base.mul[entries[:, pos[(i, l)]][:, None], entries[:, pos[(l, j)]][None, :]]
                acc = base.add[acc, term]
        prod_cols.append(acc)
    mul = _encode(np.stack(prod_cols, axis=-1), n)
    one_entries = np.array([base.one if i == j else base.zero for i, j in positions])
    one = int(_encode(one_entries, n)) if w else 0
    zero = int(_encode(np.full(w, base.zero), n)) if w else 0
    labels = tuple(tuple(int(v) for v in row) for row in entries)
    return FiniteRing(add, mul, zero, one, provenance, labels)


def matrix_ring(k: int, base: FiniteRing, cap: int | None = None) -> FiniteRing:
    if k < 1:
        raise InvalidSpec("matrix size must be >= 1")
    positions = [(i, j) for i in range(k) for j in range(k)]
    return _matrix_like(base, k, positions, cap, {"kind": "matrix", "k": k, "base": base.provenance})


def upper_triangular(k: int, base: FiniteRing, cap: int | None = None) -> FiniteRing:
    """T_k(base); for k = 2 the result also carries its (A M; 0 C) block data."""
    if k < 1:
        raise InvalidSpec("matrix size must be >= 1")
    prov = {"kind": "upper_triangular", "k": k, "base": base.provenance}
    if k == 2:
        from baerlab.module_core.module import regular

        M = regular(base)
        R = gen_triangular(base, base, M, base.mul.copy(), cap)
        return _with(R, provenance=prov)
    positions = [(i, j) for i in range(k) for j in range(i, k)]
    return _matrix_like(base, k, positions, cap, prov)


def check_bimodule(A: FiniteRing, M, left: np.ndarray) -> list[str]:
    """Axioms of an (A, C)-bimodule where M is a right C-module and
    ``left[a, m]`` is the left A-action."""
    n = M.order
    idx = np.arange(n)
    if left.shape != (A.order, n) or left.min() < 0 or left.max() >= n:
        return ["left action table has the wrong shape or range"]
    problems = []
    if not (left[A.one, :] == idx).all():
        problems.append("1*m != m")
    # (a a') m == a (a' m)
    if not (left[A.mul] == left[np.arange(A.order)[:, None, None], left[None, :, :]]).all():
        problems.append("(a a') m != a (a' m)")
    if not (left[A.add] == M.add[left[:, None, :], left[None, :, :]]).all():
        problems.append("(a + a') m != a m + a' m")
    if not (left[:, M.add] == M.add[left[:, :, None], left[:, None, :]]).all():
        problems.append("a (m + m') != a m + a m'")
    # (a m) c == a (m c)
    if not (M.act[left] == left[:, M.act]).all():
        problems.append("(a m) c != a (m c)")
    return problems


def gen_triangular(A: FiniteRing, C: FiniteRing, M, left: np.ndarray, cap: int | None = None,
                   provenance: Any = None) -> FiniteRing:
    """The ring (A M; 0 C) with (a,m,c)(a',m',c') = (aa', am' + mc', cc')."""
    if M.ring is not C and M.ring.provenance != C.provenance:
        raise InvalidSpec("bimodule must be a right module over C")
    left = np.asarray(left, dtype=np.int64)
    problems = check_bimodule(A, M, left)
    if problems:
        raise InvalidSpec("invalid bimodule: " + "; ".join(problems))
    na, nm, nc = A.order, M.order, C.order
    total = na * nm * nc
    _check_order(total, cap)
    a_i, m_i, c_i = (g.ravel() for g in np.meshgrid(np.arange(na), np.arange(nm), np.arange(nc), indexing="ij"))

    def enc(a, m, c):
        return (a * nm + m) * nc + c

    add = enc(
        A.add[a_i[:, None], a_i[None, :]],
        M.add[m_i[:, None], m_i[None, :]],
        C.add[c_i[:, None], c_i[None, :]],
    )
    mid = M.add[left[a_i[:, None], m_i[None, :]], M.act[m_i[:, None], c_i[None, :]]]
    mul = enc(A.mul[a_i[:, None], a_i[None, :]], mid, C.mul[c_i[:, None], c_i[None, :]])
    zero = enc(A.zero, M.zero, C.zero)
    one = enc(A.one, M.zero, C.one)
    labels = tuple(zip(a_i.tolist(), m_i.tolist(), c_i.tolist()))
    R = FiniteRing(add, mul, int(zero), int(one), provenance, labels)
    tri = TriangularData(a=A, c=C, bimodule=M, left=left)
    return _with(R, triangular=tri)


def trivial_extension(base: FiniteRing, M, left: np.ndarray, cap: int | None = None,
                      provenance: Any = None) -> FiniteRing:
    """R ⋉ M: pairs (r, m) with (r, m)(r', m') = (rr', r m' + m r')."""
    left = np.asarray(left, dtype=np.int64)
    problems = check_bimodule(base, M, left)
    if problems:
        raise InvalidSpec("invalid bimodule: " + "; ".join(problems))
    nr, nm = base.order, M.order
    total = nr * nm
    _check_order(total, cap)
    r_i, m_i = (g.ravel() for g in np.meshgrid(np.arange(nr), np.arange(nm), indexing="ij"))
    add = base.add[r_i[:, None], r_i[None, :]] * nm + M.add[m_i[:, None], m_i[None, :]]
    mid = M.add[left[r_i[:, None], m_i[None, :]], M.act[m_i[:, None], r_i[None, :]]]
    mul = base.mul[r_i[:, None], r_i[None, :]] * nm + mid
    labels = tuple(zip(r_i.tolist(), m_i.tolist()))
    return FiniteRing(add, mul, base.zero * nm + M.zero, base.one * nm + M.zero, provenance, labels)


def quotient_ring(base: FiniteRing, gens, cap: int | None = None, provenance: Any = None) -> FiniteRing:
    """R/I where I is the two-sided ideal generated by ``gens``."""
    gens = [int(g) for g in gens]
    for g in gens:
        if not 0 <= g < base.order:
            raise InvalidSpec(f"generator {g} out of range")
    # I = sum of (R g) R, i.e. the right ideal generated by all r g
    left_products = set()
    for g in gens:
        left_products.update(bitset.to_list(base.principal_left[g]))
    ideal = base.right_ideal_generated(sorted(left_products))
    if not base.is_two_sided_mask(ideal):
        raise InvalidSpec("generated ideal is not two-sided")
    mem = bitset.to_array(ideal)
    reps = base.add[:, mem].min(axis=1)
    distinct = np.unique(reps)
    _check_order(len(distinct), cap)
    inv = np.full(base.order, -1, dtype=np.int64)
    inv[distinct] = np.arange(len(distinct))
    coset = inv[reps]
    return FiniteRing(
        add=coset[base.add[np.ix_(distinct, distinct)]],
        mul=coset[base.mul[np.ix_(distinct, distinct)]],
        zero=int(coset[base.zero]),
        one=int(coset[base.one]),
        provenance=provenance,
        labels=tuple(int(d) for d in distinct),
    )


def subring_generated(base: FiniteRing, gens, cap: int | None = None, provenance: Any = None) -> FiniteRing:
    seed = bitset.from_indices([base.one] + [int(g) for g in gens])
    mask = _lattice.additive_closure(base.add, base.zero, seed)
    while True:
        xs = bitset.to_array(mask)
        prods = bitset.from_indices(np.unique(base.mul[np.ix_(xs, xs)]).tolist())
        grown = _lattice.additive_closure(base.add, base.zero, mask | prods)
        if grown == mask:
            break
        mask = grown
    mem = bitset.to_array(mask)
    _check_order(len(mem), cap)
    inv = np.full(base.order, -1, dtype=np.int64)
    inv[mem] = np.arange(len(mem))
    return FiniteRing(
        add=inv[base.add[np.ix_(mem, mem)]],
        mul=inv[base.mul[np.ix_(mem, mem)]],
        zero=int(inv[base.zero]),
        one=int(inv[base.one]),
        provenance=provenance,
        labels=tuple(int(m) for m in mem),
    )


def table_ring(add, mul, cap: int | None = None, provenance: Any = None) -> FiniteRing:
    add = np.asarray(add, dtype=np.int64)
    mul = np.asarray(mul, dtype=np.int64)
    n = add.shape[0] if add.ndim == 2 else 0
    if n == 0 or add.shape != (n, n) or mul.shape != (n, n):
        raise InvalidSpec("ring tables must be nonempty square matrices of equal size")
    if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
        raise InvalidSpec("table entries out of range")
    _check_order(n, cap)
    idx = np.arange(n)
    zeros = [z for z in range(n) if (add[z, :] == idx).all() and (add[:, z] == idx).all()]
    ones = [u for u in range(n) if (mul[u, :] == idx).all() and (mul[:, u] == idx).all()]
    if not zeros:
        raise InvalidSpec("addition table has no identity")
    if not ones:
        raise InvalidSpec("multiplication table has no identity")
    problems = axiom_failures(add, mul, zeros[0], ones[0])
    if problems:
        raise InvalidSpec("ring tables fail axioms: " + "; ".join(problems))
    if provenance is None:
        provenance = {"kind": "table", "add": add.tolist(), "mul": mul.tolist()}
    return FiniteRing(add, mul, zeros[0], ones[0], provenance)


def _integer_multiples(A: FiniteRing) -> np.ndarray:
    """k with a = k * 1 for every a; fails unless (A, +) is generated by 1."""
    k_of = np.full(A.order, -1, dtype=np.int64)
    x, k = A.zero, 0
    while k_of[x] < 0:
        k_of[x] = k
        x = int(A.add[x, A.one])
        k += 1
    if (k_of < 0).any():
        raise InvalidSpec("scalar action needs a ring whose additive group is generated by 1")
    return k_of


def _left_action(A: FiniteRing, M, spec) -> np.ndarray:
    """Left A-action on M from a bimodule ``left`` spec."""
    if isinstance(spec, list):
        return np.asarray(spec, dtype=np.int64)
    kind = spec.get("kind")
    if kind == "table":
        return np.asarray(spec["table"], dtype=np.int64)
    if kind == "scalar":
        k_of = _integer_multiples(A)
        left = np.zeros((A.order, M.order), dtype=np.int64)
        cur = np.full(M.order, M.zero, dtype=np.int64)
        steps = {0: cur.copy()}
        for k in range(1, int(k_of.max()) + 1):
            cur = M.add[cur, np.arange(M.order)]
            steps[k] = cur.copy()
        for a in range(A.order):
            left[a] = steps[int(k_of[a])]
        return left
    if kind == "multiply":
        # a . m = phi(a) m computed in C, with M a right ideal of C
        C = M.ring
        if M.ring_embedding is None:
            raise InvalidSpec("'multiply' left action needs M to be a right ideal of C")
        images = spec.get("images")
        if images is None:
            if A.order != C.order:
                raise InvalidSpec("'multiply' without images needs A = C")
            images = list(range(A.order))
        images = np.asarray(images, dtype=np.int64)
        emb = M.ring_embedding
        back = {int(r): i for i, r in enumerate(emb)}
        prod_ = C.mul[images[:, None], emb[None, :]]
        try:
            return np.vectorize(lambda r: back[int(r)])(prod_).astype(np.int64)
        except KeyError as exc:
            raise InvalidSpec("left multiplication leaves the submodule") from exc
    if kind == "right":
        # a . m = m a, for commutative situations
        if A.order != M.ring.order:
            raise InvalidSpec("'right' left action needs A = C")
        return np.ascontiguousarray(M.act.T)
    raise InvalidSpec(f"unknown left action {spec!r}")


def build_ring(spec: dict, cap: int | None = None) -> FiniteRing:
    """Evaluate a constructor expression; raises InvalidSpec or CapExceeded."""
    from baerlab.module_core.module import build_module

    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"not JSON: {exc}") from exc
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidSpec(f"ring expression must be an object with a 'kind': {spec!r}")
    kind = spec["kind"]
    try:
        if kind == "zmod":
            return zmod(int(spec["n"]), cap)
        if kind == "prime_field":
            return prime_field(int(spec["p"]), cap)
        if kind == "product":
            return _with(product_ring([build_ring(f, cap) for f in spec["factors"]], cap), provenance=spec)
        if kind == "matrix":
            return _with(matrix_ring(int(spec["k"]), build_ring(spec["base"], cap), cap), provenance=spec)
        if kind == "upper_triangular":
            return _with(upper_triangular(int(spec["k"]), build_ring(spec["base"], cap), cap), provenance=spec)
        if kind == "gen_triangular":
            A = build_ring(spec["a"], cap)
            C = build_ring(spec["c"], cap)
            bi = spec.get("bimodule", {})
            M = build_module(C, bi.get("module"))
            left = _left_action(A, M, bi.get("left", {"kind": "multiply"}))
            return gen_triangular(A, C, M, left, cap, provenance=spec)
        if kind == "trivial_extension":
            base = build_ring(spec["base"], cap)
            M = build_module(base, spec.get("module"))
            left = _left_action(base, M, spec.get("left", {"kind": "right"}))
            return trivial_extension(base, M, left, cap, provenance=spec)
        if kind == "quotient":
            return quotient_ring(build_ring(spec["base"], cap), spec.get("gens", []), cap, provenance=spec)
        if kind == "subring":
            return subring_generated(build_ring(spec["base"], cap), spec.get("gens", []), cap, provenance=spec)
        if kind == "table":
            return table_ring(spec["add"], spec["mul"], cap, provenance=spec)
        if kind == "opposite":
            return _with(opposite(build_ring(spec["base"], cap)), provenance=spec)
        if kind == "endomorphisms":
            from baerlab.module_core.homs import endomorphisms

            sub = spec["module"]
            M = build_module(build_ring(sub["ring"], cap), sub.get("module"))
            return endomorphisms(M).ring
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidSpec(f"malformed {kind!r} expression: {exc}") from exc
    raise InvalidSpec(f"unknown ring kind {kind!r}")


def predicted_order(spec: dict) -> int | None:
    """Order of the ring an expression denotes, when it is cheap to know."""
    kind = spec.get("kind")
    if kind == "zmod":
        return spec["n"]
    if kind == "prime_field":
        return spec["p"]
    if kind in ("product",):
        sizes = [predicted_order(f) for f in spec["factors"]]
        if None in sizes:
            return None
        return int(np.prod(sizes))
    if kind in ("matrix", "upper_triangular"):
        b = predicted_order(spec["base"])
        if b is None:
            return None
        k = spec["k"]
        return b ** (k * k if kind == "matrix" else k * (k + 1) // 2)
    if kind == "opposite":
        return predicted_order(spec["base"])
    return None
