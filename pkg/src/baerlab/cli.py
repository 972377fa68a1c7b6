"""Command line front end.

Every JSON record carries a ``request`` block holding the command and its
normalized arguments.  ``--recheck FILE`` reads such a record, rebuilds
everything from the expressions in it, reruns the request, and compares the
canonical output.  Failure certificates inside the record are also replayed
one by one.

Exit codes: 0 ok, 1 failed verdict or counterexample, 2 usage or input
error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from baerlab import bitset, config
from baerlab.corpus import CorpusConfig, dump_lines
from baerlab.errors import BaerLabError, CapExceeded, InvalidSpec, PreconditionFailed, UnknownCheck
from baerlab.module_core import (
    build_module,
    essential_projective_witness,
    is_e_baer,
    is_e_rickart,
    is_injective,
    is_projective,
    is_s_baer,
    is_s_rickart,
    singular_submodules,
)
from baerlab.module_core.structure import (
    is_extending,
    is_faithful,
    is_fi_extending,
    is_finitely_idempotent_faithful,
    is_g_extending,
    is_semisimple_module,
)
from baerlab.ring_core import (
    build_ring,
    essential_nilpotent_ideal_search,
    idempotent_report,
    ring_predicates,
    structural_ideals,
)
from baerlab.torsion_lab import beta_radical, regular_of, ring_beta
from baerlab.verdict import Verdict, jsonable
from baerlab.verifier import check_names, find_counterexample, goal_names, junit_xml, replay_certificate, run_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
COMMANDS = ("ring-info", "module-check", "radical", "verify", "search", "corpus-dump")


class UsageError(Exception):
    pass


# -- module predicates ---------------------------------------------------------


def _nonsingular(M) -> Verdict:
    Z = singular_submodules(M).Z.mask
    rest = Z & ~(1 << M.zero)
    witness = bitset.to_list(rest)[0] if rest else None
    return Verdict("nonsingular", not rest, witness, {"Z": bitset.to_list(Z)})


def _torsion(M) -> Verdict:
    beta = beta_radical(M).beta.mask
    outside = M.full_mask & ~beta
    witness = bitset.to_list(outside)[0] if outside else None
    return Verdict("torsion", not outside, witness, {"beta": bitset.to_list(beta)})


def _torsion_free(M) -> Verdict:
    beta = beta_radical(M).beta.mask & ~(1 << M.zero)
    witness = bitset.to_list(beta)[0] if beta else None
    return Verdict("torsion_free", not beta, witness, {"beta": bitset.to_list(beta | 1 << M.zero)})


def _essential_projective(M) -> Verdict:
    try:
        w = essential_projective_witness(M)
    except PreconditionFailed:
        return Verdict("essential_projective", False, is_s_rickart(M).witness,
                       {"reason": "module is not s.Rickart"})
    return Verdict("essential_projective", True, list(w.P.members), w.certificate)


MODULE_PREDICATES = {
    "s_baer": is_s_baer,
    "s_rickart": is_s_rickart,
    "e_baer": is_e_baer,
    "e_rickart": is_e_rickart,
    "projective": is_projective,
    "injective": is_injective,
    "semisimple": is_semisimple_module,
    "extending": is_extending,
    "g_extending": is_g_extending,
    "fi_extending": is_fi_extending,
    "finitely_idempotent_faithful": is_finitely_idempotent_faithful,
    "faithful": is_faithful,
    "nonsingular": _nonsingular,
    "torsion": _torsion,
    "torsion_free": _torsion_free,
    "essential_projective": _essential_projective,
}


def _predicate(name: str):
    key = name.removeprefix("is_").replace("-", "_").lower()
    try:
        return key, MODULE_PREDICATES[key]
    except KeyError:
        raise UsageError(f"unknown predicate {name!r}; known: {', '.join(sorted(MODULE_PREDICATES))}") from None


# -- input ----------------------------------------------------------------------


def _read_json(source: str):
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith(("{", "[")):
        text = source
    else:
        path = Path(source)
        if not path.is_file():
            raise UsageError(f"{source!r} is neither inline JSON nor a readable file")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidSpec(f"input is not valid JSON: {exc}") from exc


def _split_subject(data) -> tuple[dict, dict | None]:
    """A bare ring expression means its regular module."""
    if not isinstance(data, dict):
        raise InvalidSpec("input must be a JSON object")
    if "kind" in data:
        return data, None
    if "ring" not in data:
        raise InvalidSpec("module input needs a 'ring' expression and an optional 'module' recipe")
    return data["ring"], data.get("module")


def _module(data):
    ring, recipe = _split_subject(data)
    return build_module(build_ring(ring), recipe)


# -- commands -------------------------------------------------------------------


def _ring_info(req: dict) -> tuple[dict, int]:
    ring, _ = _split_subject(req["input"])
    R = build_ring(ring)
    singular = singular_submodules(regular_of(R))
    out = {
        "ring": R.provenance,
        "order": R.order,
        "is_commutative": R.is_commutative,
        "idempotents": idempotent_report(R).to_json(),
        **ring_predicates(R).to_json(),
        "structural_ideals": structural_ideals(R).to_json(),
        "singular": {"Z": list(singular.Z.members), "Z2": list(singular.Z2.members)},
        "beta": bitset.to_list(ring_beta(R)),
        "essential_nilpotent_ideal": _verdict_json(essential_nilpotent_ideal_search(R), R.provenance),
    }
    return out, EXIT_OK


def _verdict_json(v: Verdict, subject) -> dict:
    if v.subject is None:
        v = dataclasses.replace(v, subject=subject)
    return v.to_json()


def _module_check(req: dict) -> tuple[dict, int]:
    key, fn = _predicate(req["predicate"])
    M = _module(req["input"])
    v = fn(M)
    return _verdict_json(v, M.spec()), EXIT_OK if v.holds else EXIT_FAIL


def _radical(req: dict) -> tuple[dict, int]:
    return beta_radical(_module(req["input"])).to_json(), EXIT_OK


def _corpus_config(req: dict) -> CorpusConfig:
    try:
        return CorpusConfig.from_json(req["corpus"])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad corpus options: {exc}") from exc


def _verify(req: dict) -> tuple[dict, int]:
    cfg = _corpus_config(req)
    names = req["checks"] or check_names()
    reports = [run_check(n, cfg, jobs=req["jobs"]) for n in names]
    out = {
        "ok": all(r.ok for r in reports),
        "checks": len(reports),
        "failing_checks": [r.check_name for r in reports if not r.ok],
        "reports": [r.to_json(timing=req["timing"]) for r in reports],
    }
    out["_reports"] = reports
    return out, EXIT_OK if out["ok"] else EXIT_FAIL


def _search(req: dict) -> tuple[dict, int]:
    v = find_counterexample(req["goal"], budget=req["budget"], cfg=_corpus_config(req))
    return v.to_json(), EXIT_FAIL if v.holds else EXIT_OK


def _corpus_dump(req: dict) -> tuple[dict, int]:
    return {"lines": list(dump_lines(_corpus_config(req), modules=req["modules"]))}, EXIT_OK


HANDLERS = {
    "ring-info": _ring_info,
    "module-check": _module_check,
    "radical": _radical,
    "verify": _verify,
    "search": _search,
    "corpus-dump": _corpus_dump,
}


def execute(req: dict) -> tuple[dict, int]:
    """Run a normalized request under its caps."""
    saved = config.caps()
    try:
        if req.get("caps"):
            config.set_caps(config.Caps(**req["caps"]))
        return HANDLERS[req["command"]](req)
    finally:
        config.set_caps(saved)


# -- recheck --------------------------------------------------------------------


def _strip(value, keys=("elapsed_ms", "_reports")):
    if isinstance(value, dict):
        return {k: _strip(v, keys) for k, v in value.items() if k not in keys}
    if isinstance(value, list):
        return [_strip(v, keys) for v in value]
    return value


def _certificates(record) -> list[dict]:
    if isinstance(record, list):
        return [c for item in record for c in _certificates(item)]
    if not isinstance(record, dict):
        return []
    if "check" in record and "subject" in record and "detail" in record:
        return [record]
    return [c for r in record.get("reports", []) for c in r.get("failures", [])]


def recheck(record) -> tuple[dict, int]:
    certs = _certificates(record)
    seed = record.get("request", {}).get("corpus", {}).get("seed", 0) if isinstance(record, dict) else 0
    replays = []
    for cert in certs:
        status, detail = replay_certificate(cert, seed=seed)
        replays.append({"check": cert["check"], "index": cert.get("index"), "status": status,
                        "reproduced": status == "fail"})
    out = {"certificates_replayed": len(replays), "replays": replays}
    ok = all(r["reproduced"] for r in replays)
    req = record.get("request") if isinstance(record, dict) else None
    if req is not None:
        fresh, code = execute(req)
        fresh = jsonable(_strip(dict(fresh, request=req)))
        old = _strip(record)
        diff = sorted(k for k in set(old) | set(fresh) if old.get(k) != fresh.get(k))
        out.update(command=req["command"], rerun_exit_code=code, differences=diff)
        ok = ok and not diff
    elif not certs:
        raise InvalidSpec("record has neither a request block nor failure certificates")
    out["recheck"] = "reproduced" if ok else "mismatch"
    return out, EXIT_OK if ok else EXIT_FAIL


# -- rendering ------------------------------------------------------------------


def _text_value(v) -> str:
    if isinstance(v, dict) and "holds" in v:
        s = str(bool(v["holds"])).lower()
        return s if v.get("witness") is None else f"{s} (witness {json.dumps(v['witness'])})"
    return json.dumps(v, sort_keys=True)


def render_text(command: str, payload: dict) -> str:
    if command == "verify" and "reports" in payload:
        lines = []
        for r in payload["reports"]:
            tag = "PASS" if not r["failures"] else "FAIL"
            line = (f"{tag} {r['check_name']}: {r['passes']}/{r['instances_tested']} passed, "
                    f"{r['inapplicable']} inapplicable, {r['rings_covered']} rings")
            if "elapsed_ms" in r:
                line += f", {r['elapsed_ms']:.0f} ms"
            lines.append(line)
        lines.append("ok" if payload["ok"] else f"failing: {', '.join(payload['failing_checks'])}")
        return "\n".join(lines) + "\n"
    if command == "corpus-dump" and "lines" in payload:
        return "".join(line + "\n" for line in payload["lines"])
    skip = {"request", "recheck"} if "certificates_replayed" not in payload else {"request"}
    return "".join(f"{k}: {_text_value(v)}\n" for k, v in payload.items() if k not in skip)


def render(req: dict, payload: dict, fmt: str) -> str:
    if fmt == "junit":
        if "_reports" not in payload:
            raise UsageError("--format junit applies only to verify")
        return junit_xml(payload["_reports"], timing=req["timing"]) + "\n"
    if fmt == "text":
        return render_text(req["command"], payload)
    if req["command"] == "corpus-dump" and "lines" in payload:
        return "".join(line + "\n" for line in payload["lines"])
    return json.dumps(jsonable(_strip(payload, ("_reports",))), sort_keys=True, indent=2) + "\n"


# -- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42, help="corpus and sampling seed")
    common.add_argument("--max-ring-order", type=int, default=16, help="corpus ring order cap")
    common.add_argument("--max-module-order", type=int, default=16, help="corpus module order cap")
    common.add_argument("--count", type=int, default=None, help="number of corpus rings")
    common.add_argument("--exhaustive", action="store_true", help="enumerate table rings exhaustively")
    common.add_argument("--cap", default=None,
                        help="construction caps, a single integer or key=value list as in BAERLAB_CAP")
    common.add_argument("--jobs", type=int, default=1, help="worker processes across corpus rings")
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    common.add_argument("--format", choices=("json", "text", "junit"), default="json")
    common.add_argument("--junit", default=None, metavar="PATH", help="also write a JUnit XML mirror (verify)")
    common.add_argument("--timing", action="store_true", help="include elapsed times (not byte-stable)")
    common.add_argument("--recheck", default=None, metavar="FILE",
                        help="replay a previously emitted record instead of running the command")

    parser = argparse.ArgumentParser(prog="baerlab", description="Annihilator conditions on finite rings and modules.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [("ring-info", "order, idempotents, ring predicates and structural ideals"),
                            ("module-check", "decide one module predicate"),
                            ("radical", "the torsion radical of a module")]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", nargs="?", help="inline JSON, a file path, or - for stdin")
        if name == "module-check":
            p.add_argument("--predicate", "-p", default="s_baer",
                           help=f"one of: {', '.join(sorted(MODULE_PREDICATES))}")
    p = sub.add_parser("verify", parents=[common], help="run registered checks over the corpus")
    p.add_argument("--check", "-c", action="append", default=[], help="check name (repeatable; default all)")
    p.add_argument("--list", action="store_true", help="list check names and exit")
    p = sub.add_parser("search", parents=[common], help="search the corpus for a delimiting example")
    p.add_argument("goal", nargs="?", help=f"one of: {', '.join(goal_names())}")
    p.add_argument("--budget", type=int, default=None, help="maximum subjects examined")
    p = sub.add_parser("corpus-dump", parents=[common], help="print corpus expressions as JSON lines")
    p.add_argument("--modules", action="store_true", help="emit {ring, module} pairs")
    return parser


def _caps_json(spec: str | None) -> dict | None:
    if spec is None:
        return None
    saved = os.environ.get("BAERLAB_CAP")
    os.environ["BAERLAB_CAP"] = spec
    try:
        return dataclasses.asdict(config._from_env(config.Caps()))
    finally:
        if saved is None:
            del os.environ["BAERLAB_CAP"]
        else:
            os.environ["BAERLAB_CAP"] = saved


def request_from_args(args) -> dict:
    req = {"command": args.command, "timing": bool(args.timing), "caps": _caps_json(args.cap)}
    if args.command in ("ring-info", "module-check", "radical"):
        if args.input is None:
            raise UsageError(f"{args.command} needs an input expression")
        req["input"] = _read_json(args.input)
        if args.command == "module-check":
            req["predicate"] = _predicate(args.predicate)[0]
        return req
    try:
        cfg = CorpusConfig(max_ring_order=args.max_ring_order, max_module_order=args.max_module_order,
                           seed=args.seed, count=args.count, exhaustive=args.exhaustive)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    req["corpus"] = cfg.to_json()
    if args.command == "verify":
        known = set(check_names())
        bad = [c for c in args.check if c not in known]
        if bad:
            raise UsageError(f"unknown check(s): {', '.join(bad)}")
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        req.update(checks=list(args.check), jobs=args.jobs)
    elif args.command == "search":
        if args.goal is None:
            raise UsageError(f"search needs a goal: {', '.join(goal_names())}")
        if args.goal not in goal_names():
            raise UsageError(f"unknown goal {args.goal!r}; known: {', '.join(goal_names())}")
        req.update(goal=args.goal, budget=args.budget)
    else:
        req["modules"] = bool(args.modules)
    return req


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        config.reload_caps()
        if getattr(args, "list", False):
            _emit("".join(n + "\n" for n in check_names()), args.output)
            return EXIT_OK
        if args.recheck is not None:
            payload, code = recheck(_read_json(args.recheck))
            req = {"command": "recheck", "timing": False}
            fmt = "json" if args.format == "junit" else args.format
        else:
            req = request_from_args(args)
            payload, code = execute(req)
            payload["request"] = req
            fmt = args.format
        _emit(render(req, payload, fmt), args.output)
        if args.junit and "_reports" in payload:
            Path(args.junit).write_text(junit_xml(payload["_reports"], timing=req["timing"]) + "\n")
        return code
    except CapExceeded as exc:
        print(f"baerlab: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, UnknownCheck, BaerLabError, OSError) as exc:
        print(f"baerlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
