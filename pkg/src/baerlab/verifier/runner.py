"""Evaluate registered checks over the corpus and collect reports."""

from __future__ import annotations

import json
import time
import xml.etree.ElementTree as ET
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from baerlab.corpus import CorpusConfig, generate_modules, generate_rings
from baerlab.errors import CapExceeded
from baerlab.module_core.module import build_module
from baerlab.ring_core.construct import build_ring
from baerlab.verdict import jsonable
from baerlab.verifier.registry import Check, Context, NotApplicable, get_check


@dataclass
class CheckReport:
    check_name: str
    anchor: str
    instances_tested: int
    passes: int
    failures: list
    inapplicable: dict
    elapsed_ms: float
    seed: int
    rings_covered: int
    evidence: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def inapplicable_total(self) -> int:
        return sum(self.inapplicable.values())

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "check_name": self.check_name,
            "anchor": self.anchor,
            "instances_tested": self.instances_tested,
            "passes": self.passes,
            "failures": self.failures,
            "inapplicable": self.inapplicable_total,
            "inapplicable_reasons": dict(sorted(self.inapplicable.items())),
            "rings_covered": self.rings_covered,
            "seed": self.seed,
            "evidence": self.evidence,
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


@lru_cache(maxsize=4)
def materialize(cfg: CorpusConfig) -> tuple:
    """The corpus as (ring, modules) pairs, kept alive so structure caches
    are shared by every check run in this process."""
    return tuple((R, tuple(generate_modules(R, cfg))) for R in generate_rings(cfg))


def _subjects(check: Check, ctx: Context):
    if check.scope == "ring":
        yield (None, ctx.ring)
    else:
        yield from enumerate(ctx.modules)


def evaluate(check: Check, ctx: Context, subject, params: dict, guard: bool = True) -> tuple[str, dict]:
    """One instance: ("pass" | "fail" | "inapplicable", detail)."""
    try:
        if guard and check.guard is not None:
            check.guard(ctx, subject)
        ok, detail = check.body(ctx, subject, **params)
    except NotApplicable as exc:
        return "inapplicable", {"reason": exc.reason}
    except CapExceeded as exc:
        return "inapplicable", {"reason": f"cap: {exc.what}"}
    return ("pass" if ok else "fail"), detail


def _subject_spec(R, M) -> dict:
    return {"ring": R.provenance, "module": None if M is None else M.recipe}


def evaluate_unit(check: Check, ctx: Context) -> list[dict]:
    """All instances for one corpus ring, in canonical order."""
    out = []
    for mi, subject in _subjects(check, ctx):
        M = None if mi is None else subject
        try:
            if check.guard is not None:
                check.guard(ctx, subject)
            param_sets = check.sampler(ctx, subject) if check.sampler else [{}]
        except NotApplicable as exc:
            out.append({"status": "inapplicable", "reason": exc.reason})
            continue
        except CapExceeded as exc:
            out.append({"status": "inapplicable", "reason": f"cap: {exc.what}"})
            continue
        if not param_sets:
            out.append({"status": "inapplicable", "reason": "no instances sampled"})
            continue
        for pi, params in enumerate(param_sets):
            status, detail = evaluate(check, ctx, subject, params, guard=False)
            rec = {"status": status, "index": [ctx.ring_index, mi, pi]}
            if status == "inapplicable":
                rec["reason"] = detail["reason"]
            else:
                rec["subject"] = _subject_spec(ctx.ring, M)
                rec["params"] = jsonable(params)
                rec["detail"] = jsonable(detail)
            out.append(rec)
    return out


def _worker(name: str, cfg_json: dict, ring_index: int) -> list[dict]:
    cfg = CorpusConfig.from_json(cfg_json)
    R, modules = materialize(cfg)[ring_index]
    return evaluate_unit(get_check(name), Context(R, list(modules), cfg.seed, name, ring_index))


def run_check(name: str, cfg: CorpusConfig = CorpusConfig(), jobs: int = 1) -> CheckReport:
    """Evaluate a registered check on every corpus instance.

    Results are merged by instance index, so the report does not depend on
    ``jobs``.  Inapplicable instances are tallied by reason and never count
    as passes.
    """
    check = get_check(name)
    start = time.perf_counter()
    units = materialize(cfg)
    if jobs > 1 and len(units) > 1:
        cfg_json = cfg.to_json()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_worker, [name] * len(units), [cfg_json] * len(units), range(len(units))))
    else:
        results = [
            evaluate_unit(check, Context(R, list(mods), cfg.seed, name, i))
            for i, (R, mods) in enumerate(units)
        ]
    passes, failures, evidence = 0, [], []
    skipped: Counter = Counter()
    rings = set()
    for unit in results:
        for rec in unit:
            if rec["status"] == "inapplicable":
                skipped[rec["reason"]] += 1
                continue
            rings.add(rec["index"][0])
            if rec["status"] == "pass":
                passes += 1
                if check.keep_evidence:
                    evidence.append({k: rec[k] for k in ("index", "subject", "params", "detail")})
            else:
                failures.append(failure_certificate(check, rec))
    elapsed = (time.perf_counter() - start) * 1000
    return CheckReport(
        check_name=name,
        anchor=check.anchor,
        instances_tested=passes + len(failures),
        passes=passes,
        failures=failures,
        inapplicable=dict(skipped),
        elapsed_ms=elapsed,
        seed=cfg.seed,
        rings_covered=len(rings),
        evidence=evidence,
    )


def failure_certificate(check: Check, rec: dict) -> dict:
    return {
        "check": check.name,
        "index": rec["index"],
        "subject": rec["subject"],
        "params": rec["params"],
        "detail": rec["detail"],
        "replay": "baerlab verify --recheck FILE rebuilds the subject and re-evaluates the check",
    }


def replay_certificate(cert: dict, seed: int = 0) -> tuple[str, dict]:
    """Rebuild a certificate's subject from its expressions alone and
    re-evaluate the named check on it."""
    check = get_check(cert["check"])
    R = build_ring(cert["subject"]["ring"])
    recipe = cert["subject"].get("module")
    subject = R if check.scope == "ring" else build_module(R, recipe)
    modules = [] if check.scope == "ring" else [subject]
    ctx = Context(R, modules, seed, check.name, cert.get("index", [0])[0])
    return evaluate(check, ctx, subject, cert.get("params") or {})


def junit_xml(reports: list[CheckReport], timing: bool = True) -> str:
    suite = ET.Element(
        "testsuite",
        name="baerlab.verify",
        tests=str(len(reports)),
        failures=str(sum(1 for r in reports if not r.ok)),
    )
    for r in reports:
        case = ET.SubElement(suite, "testcase", classname="baerlab.checks", name=r.check_name,
                             time=f"{r.elapsed_ms / 1000 if timing else 0:.3f}")
        ET.SubElement(case, "system-out").text = (
            f"{r.passes}/{r.instances_tested} passed, {r.inapplicable_total} inapplicable"
        )
        if not r.ok:
            fail = ET.SubElement(case, "failure", message=f"{len(r.failures)} failing instances")
            fail.text = json.dumps(r.failures[:3], sort_keys=True)
    return ET.tostring(suite, encoding="unicode")
