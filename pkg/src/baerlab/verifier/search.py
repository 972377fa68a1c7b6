"""Counterexample searches over the corpus for delimiting examples."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from baerlab.corpus import CorpusConfig
from baerlab.errors import CapExceeded, UnknownCheck
from baerlab.module_core.baer import is_s_baer
from baerlab.module_core.homs import is_e_baer
from baerlab.module_core.module import build_module, submodule_module
from baerlab.module_core.projective import is_projective
from baerlab.ring_core.construct import build_ring
from baerlab.ring_core.predicates import has_sip, has_ssip
from baerlab.torsion_lab import is_torsion, is_torsion_free
from baerlab.verdict import Verdict
from baerlab import bitset

SIP_SSIP_JUSTIFICATION = (
    "A finite ring has finitely many right ideals, so any family of direct summands eR is finite "
    "and its intersection is an iterated pairwise intersection. SIP therefore already gives SSIP, "
    "and no finite ring has SIP without SSIP."
)


@dataclass(frozen=True)
class Goal:
    name: str
    description: str
    scope: str  # "module" or "ring"
    probe: Callable  # subject -> witness dict or None
    confirm: Callable | None = None  # rebuilt subject -> bool
    ring_order: Callable | None = None  # key for reordering corpus rings
    impossible: str | None = None


def _sbaer_not_projective(M):
    if is_s_baer(M).holds and not is_projective(M).holds:
        return {"s_baer": True, "projective": False}
    return None


def _ebaer_not_sbaer(M):
    b = is_s_baer(M)
    if b.holds:
        return None
    if is_e_baer(M).holds:
        return {"e_baer": True, "s_baer": False, "s_baer_witness": b.witness}
    return None


def _sbaer_not_ebaer(M):
    if not is_s_baer(M).holds:
        return None
    e = is_e_baer(M)
    if not e.holds:
        return {"s_baer": True, "e_baer": False, "e_baer_witness": e.witness}
    return None


def _torsion_hereditary(M):
    if M.is_zero or not is_torsion(M):
        return None
    for N in M.submodules:
        sub = submodule_module(M, N)
        if not is_torsion(sub):
            return {"submodule": bitset.to_list(N), "submodule_torsion_free": is_torsion_free(sub)}
    return None


def _sip_not_ssip(R):
    if has_sip(R).holds and not has_ssip(R).holds:
        return {"sip": True, "ssip": False}
    return None


GOALS: dict[str, Goal] = {
    g.name: g
    for g in [
        Goal("sBaer_not_projective_module", "an s.Baer module that is not projective", "module",
             _sbaer_not_projective),
        Goal("eBaer_not_sBaer_module", "an e.Baer module that is not s.Baer", "module", _ebaer_not_sbaer,
             ring_order=lambda R: R.triangular is None),
        Goal("sBaer_not_eBaer_module", "an s.Baer module that is not e.Baer", "module", _sbaer_not_ebaer),
        Goal("torsion_hereditary_failure", "a torsion module with a submodule that is not torsion", "module",
             _torsion_hereditary),
        Goal("SIP_without_SSIP_ring", "a ring with SIP but not SSIP", "ring", _sip_not_ssip,
             impossible=SIP_SSIP_JUSTIFICATION),
    ]
}


def goal_names() -> list[str]:
    return sorted(GOALS)


def find_counterexample(goal: str, budget: int | None = None, cfg: CorpusConfig = CorpusConfig()) -> Verdict:
    """First corpus witness for ``goal``, re-verified on a fresh rebuild.

    ``budget`` bounds the number of subjects examined.  Running out of budget
    or corpus is a normal outcome recorded in the certificate.
    """
    from baerlab.verifier.runner import materialize

    try:
        g = GOALS[goal]
    except KeyError:
        raise UnknownCheck(f"no search goal {goal!r}; known: {', '.join(goal_names())}") from None
    units = list(enumerate(materialize(cfg)))
    if g.ring_order is not None:
        units.sort(key=lambda item: (g.ring_order(item[1][0]), item[0]))
    examined, capped = 0, 0
    for _, (R, modules) in units:
        subjects = [R] if g.scope == "ring" else list(modules)
        for S in subjects:
            if budget is not None and examined >= budget:
                return _miss(g, "budget_exhausted", examined, capped)
            examined += 1
            try:
                hit = g.probe(S)
            except CapExceeded:
                capped += 1
                continue
            if hit is None:
                continue
            subject = {"ring": R.provenance, "module": None if g.scope == "ring" else S.recipe}
            rebuilt = build_ring(subject["ring"])
            if g.scope == "module":
                rebuilt = build_module(rebuilt, subject["module"])
            again = g.probe(rebuilt)
            return Verdict(
                f"search:{goal}", True, dict(hit, subject=subject),
                {"outcome": "found", "examined": examined, "confirmed_on_rebuild": again == hit},
                subject,
            )
    return _miss(g, "exhausted", examined, capped)


def _miss(g: Goal, outcome: str, examined: int, capped: int) -> Verdict:
    cert = {"outcome": outcome, "examined": examined, "skipped_over_cap": capped, "description": g.description}
    if g.impossible is not None:
        cert["outcome"] = "provably_impossible"
        cert["scan"] = outcome
        cert["justification"] = g.impossible
    return Verdict(f"search:{g.name}", False, None, cert, None)
