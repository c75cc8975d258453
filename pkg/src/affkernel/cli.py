"""Command-line entry point and report serialization."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__, classify, fixtures, subsystem
from .braiding import (
    braiding_matrix, heckenberger_gcm, lusztig_condition, u_name,
)
from .root_datum import (
    LabelError, TypeLabel, affine_labels, build_datum, decompose, dual_datum, format_matrix,
    parse_label,
)

PASS, FAIL, AMBIGUOUS = "pass", "fail", "ambiguous"


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict | list
    diagnostics: list[str] = field(default_factory=list)
    verdict: str = PASS
    text: list[str] = field(default_factory=list)  # human-readable rendering

    def as_dict(self) -> dict:
        return {
            "version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "diagnostics": list(self.diagnostics),
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        head = [f"affkernel {__version__}  {self.command}",
                "inputs: " + ", ".join(f"{k}={_inline(v)}" for k, v in self.inputs.items())]
        tail = [f"note: {d}" for d in self.diagnostics] + [f"verdict: {self.verdict}"]
        return "\n".join(head + [""] + self.text + [""] + tail) + "\n"


def _inline(v) -> str:
    if isinstance(v, list):
        return " ".join(_inline(x) for x in v)
    return str(v)


def _block(title: str, body: str) -> list[str]:
    return [f"{title}:"] + ["  " + line for line in body.splitlines()]


def _label(text: str) -> TypeLabel:
    try:
        return parse_label(text)
    except LabelError as err:
        raise UsageError(str(err)) from None


def _vec(text: str, size: int) -> tuple[int, ...]:
    try:
        v = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad degree {text!r}: expected comma-separated integers") from None
    if len(v) != size:
        raise UsageError(f"degree {text!r} has {len(v)} entries, expected {size}")
    return v


# -- single-case commands ------------------------------------------------------

def cmd_datum(type_text: str) -> Report:
    lab = _label(type_text)
    d = build_datum(lab)
    res: dict = {
        "label": str(lab),
        "cartan": [list(r) for r in d.cartan],
        "form": [list(r) for r in d.form],
    }
    text = [f"type {lab.pretty()}"] + _block("cartan matrix", format_matrix(d.cartan))
    text += _block("bilinear form", format_matrix(d.form))
    if d.affine:
        dual, perm = dual_datum(lab)
        res.update({"marks": list(d.delta), "delta": list(d.delta), "a0": d.a0, "k": d.k,
                    "a0k": d.a0k, "dual": str(dual), "dual_node_map": list(perm)})
        text += [f"marks: {' '.join(map(str, d.delta))}", f"a0 = {d.a0}, k = {d.k}, a0k = {d.a0k}",
                 f"dual: {dual.pretty()} ({dual}), node map {list(perm)}"]
    return Report("datum", {"type": str(lab)}, res, text=text)


def cmd_subsystem(type_text: str, t: int, level: int) -> Report:
    lab = _label(type_text)
    if t < 1:
        raise UsageError("--t must be positive")
    if lab.affine and level < 2:
        raise UsageError("--level must be at least 2 for affine types")
    r = subsystem.subsystem_report(lab, t, level)
    res = r.as_dict()
    diags: list[str] = []
    verdict = PASS
    entries = [e for e in subsystem.finite_table(8) + subsystem.affine_table(8)
               if e.parent == lab and e.t == t]
    if entries:
        chk = subsystem.verify_pi_table(entries[0], level)
        res["table_check"] = chk.as_dict()
        verdict = PASS if chk.passed else FAIL
        if entries[0].note:
            diags.append(entries[0].note)
    if any(not isinstance(x, TypeLabel) for x in r.identified):
        verdict = FAIL
        diags.append("subsystem GCM is not a catalog type")
    text = [f"parent {lab.pretty()}, t = {t}, level bound {level}",
            f"divisible roots: {len(r.roots)}",
            "simple system: " + "  ".join(",".join(map(str, v)) for v in r.simple)]
    text += _block("GCM", format_matrix(r.gcm)) if r.gcm else []
    text += ["identified: " + " x ".join(x.pretty() for x in r.identified)]
    if lab.affine:
        text.append(f"delta factor: {r.delta_factor}")
    if "table_check" in res:
        text.append("table check: " + ", ".join(
            f"{k}={'ok' if v else 'FAIL'}" for k, v in res["table_check"]["checks"].items()))
    return Report("subsystem", {"type": str(lab), "t": t, "level": level}, res, diags,
                  verdict, text)


def cmd_classify(type_text: str, ell: int, level: int) -> Report:
    lab = _label(type_text)
    if not lab.affine:
        raise UsageError("classify needs an affine type")
    if ell < 1:
        raise UsageError("--ell must be positive")
    try:
        r = classify.classify_case(lab, ell, level)
    except classify.UnsupportedCase as err:
        return Report("classify", {"type": str(lab), "ell": ell, "level": level}, {},
                      [str(err)], FAIL, [str(err)])
    res = r.as_dict()
    verdict = {"match": PASS, "mismatch": FAIL, "ambiguous": AMBIGUOUS}[r.status]
    text = [f"{'type':<8}{'ell':>4}  {'kind':<14}{'M':<24}{'q prime':<10}status",
            f"{str(lab):<8}{ell:>4}  {r.kind:<14}{' x '.join(x.pretty() for x in r.m_type) or '-':<24}"
            f"{_qname(r.q_prime_u, ell):<10}{r.status}"]
    if r.primitive_degrees:
        text.append("degrees: " + "  ".join(",".join(map(str, v)) for v in r.primitive_degrees))
    text += [f"expected ({r.expected.row}): {r.expected.kind}, "
             f"{' x '.join(x.pretty() for x in r.expected.m_type) or '-'}, "
             f"{_qname(r.expected.q_prime, ell)}"]
    text += [f"diff: {d}" for d in r.diffs]
    return Report("classify", {"type": str(lab), "ell": ell, "level": level}, res,
                  list(r.flags), verdict, text)


def _qname(u, ell: int) -> str:
    if u == fixtures.TWIST:
        return "twist"
    return u_name(u, ell)


def cmd_braiding(type_text: str, ell: int, degrees: Sequence[str] | None) -> Report:
    lab = _label(type_text)
    if ell < 1:
        raise UsageError("--ell must be positive")
    d = build_datum(lab)
    degs = [_vec(s, d.size) for s in degrees] if degrees else d.simple_roots()
    if any(not any(v) for v in degs):
        raise UsageError("degrees must be nonzero")
    b = braiding_matrix(d, degs, ell)
    g = heckenberger_gcm(b)
    comps = decompose(g)
    ident = [c.label for c in comps]
    res = {
        **b.as_dict(),
        "gcm": [list(r) for r in g],
        "identified": [str(x) for x in ident],
    }
    text = ["degrees: " + "  ".join(",".join(map(str, v)) for v in degs)]
    text += _block("exponents e_ij (q_ij = q^e_ij)", format_matrix(b.exps))
    text += _block("GCM", format_matrix(g))
    text += ["identified: " + " x ".join(x.pretty() for x in ident)]
    diags: list[str] = []
    if all(isinstance(x, TypeLabel) for x in ident):
        strict, twists = classify.q_prime(b, ident)
        res["q_prime_u"], res["twist_u"] = strict, twists
        text.append(f"standard parameter: {u_name(strict, ell)}; up to twist: {twists}")
    if not degrees:
        lus = lusztig_condition(d, ell)
        res["lusztig"] = {"cond_a": lus.cond_a, "cond_b": lus.cond_b,
                          "violations": [list(p) for p in lus.violations]}
        if not lus.cond_a:
            diags.append(f"condition A fails at {[list(p) for p in lus.violations]}")
    inputs = {"type": str(lab), "ell": ell, "degrees": [",".join(map(str, v)) for v in degs]}
    return Report("braiding", inputs, res, diags, PASS, text)


# -- batch verification -------------------------------------------------------

def _entry(section: str, case: str, checks: dict[str, bool], ambiguous=(), notes=(),
           payload: dict | None = None) -> dict:
    """One verified case; checks named in ``ambiguous`` never fail the run."""
    amb = set(ambiguous)
    rows = [{"check": k, "ok": bool(v),
             "status": PASS if v else (AMBIGUOUS if k in amb else FAIL)}
            for k, v in checks.items()]
    if any(r["status"] == FAIL for r in rows):
        status = FAIL
    elif amb:
        status = AMBIGUOUS
    else:
        status = PASS
    out = {"section": section, "case": case, "status": status, "checks": rows,
           "notes": list(notes)}
    if payload is not None:
        out["payload"] = payload
    return out


def _run_task(task: tuple) -> list[dict]:
    kind, arg, level = task
    if kind == "pi":
        table = subsystem.finite_table(8) if arg[0] == "finite" else subsystem.affine_table(8)
        e = table[arg[1]]
        c = subsystem.verify_pi_table(e, level)
        return [_entry(f"{arg[0]}-subsystems", f"{e.parent} t={e.t}", c.checks,
                       notes=[e.note] if e.note else [], payload={"details": c.details})]
    if kind == "generic":
        out = []
        for lab in affine_labels(8):
            d = build_datum(lab)
            g = heckenberger_gcm(braiding_matrix(d, d.simple_roots(), arg))
            out.append(_entry("generic-sanity", f"{lab} ell={arg}",
                              {"cartan unchanged": g == d.cartan}))
        return out
    if kind == "classify":
        lab, ell = parse_label(arg[0]), arg[1]
        r = classify.classify_case(lab, ell, level)
        checks = {"table agrees": not r.diffs, **r.checks}
        amb = ["table agrees"] if r.expected.ambiguous else []
        notes = list(r.flags)
        if r.expected.ambiguous:
            notes.append(f"computed: {r.kind}, {[str(x) for x in r.m_type]}, "
                         f"u={r.q_prime_u}; table: {r.expected.kind}, "
                         f"{[str(x) for x in r.expected.m_type]}, u={r.expected.q_prime}")
        return [_entry("classification", f"{lab} ell={ell}", checks, amb, notes,
                       {"kind": r.kind, "m_type": [str(x) for x in r.m_type],
                        "q_prime_u": r.q_prime_u, "diffs": list(r.diffs)})]
    if kind == "primitive":
        e = fixtures.primitive_table(6)[arg]
        c = classify.verify_primitive_degrees(e.label, e.ell, level, e)
        checks = dict(c.checks)
        for t in fixtures.fmap_pairs(e.label, e.ell):
            f = classify.f_map_bijection_check(e.label, e.ell, t, level)
            checks[f"f-map t={t}"] = f.ok
        checks["grading functional"] = classify.grading_functional(e.degrees) is not None
        return [_entry("primitive-degrees", f"{e.label} ell={e.ell}", checks,
                       notes=list(c.notes) + ([e.note] if e.note else []))]
    if kind == "exotic":
        lab, ell = parse_label(arg[0]), arg[1]
        r = classify.exotic_verify(lab, ell, level)
        out = [_entry("exotic", f"{lab} ell={ell}", r.checks.checks, r.errata, r.flags,
                      {"m_type": [str(x) for x in r.m_type], "delta_factor": r.delta_factor,
                       "details": r.checks.details})]
        if r.isotropic:
            diff = [list(row) for row in r.isotropic if row[1] != row[2]]
            out.append(_entry("isotropic", f"{lab} ell={ell}", {}, notes=[
                f"multiplicity of m*delta (m, parent, generated) differs at {diff}"] if diff else [],
                payload={"rows": [list(row) for row in r.isotropic]}))
        return out
    raise ValueError(f"unknown task {kind}")


def verify_tasks(level: int | None) -> list[tuple]:
    sub_level = level if level is not None else 6
    case_level = level if level is not None else 4
    tasks: list[tuple] = []
    tasks += [("pi", ("finite", i), sub_level) for i in range(len(subsystem.finite_table(8)))]
    tasks += [("pi", ("affine", i), sub_level) for i in range(len(subsystem.affine_table(8)))]
    tasks += [("generic", ell, 0) for ell in (7, 9, 11, 13)]
    tasks += [("classify", (str(lab), ell), case_level)
              for lab in affine_labels(6) for ell in range(1, 13)]
    tasks += [("primitive", i, case_level) for i in range(len(fixtures.primitive_table(6)))]
    exotic = list(classify.ADDED_DEGREES) + [(f"A{2 * n}~2", ell) for n in range(2, 6)
                                             for ell in (3, 6)]
    tasks += [("exotic", key, case_level) for key in exotic]
    return tasks


def cmd_verify_all(level: int | None, workers: int | None) -> Report:
    if level is not None and level < 2:
        raise UsageError("--level must be at least 2")
    tasks = verify_tasks(level)
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_task, tasks, chunksize=8))
    else:
        chunks = [_run_task(t) for t in tasks]
    entries = [e for chunk in chunks for e in chunk]
    diags = [f"{e['section']} {e['case']}: {n}" for e in entries
             if e["status"] != PASS for n in e["notes"]]
    diags += [f"{e['section']} {e['case']}: {n}" for e in entries
              if e["section"] == "isotropic" for n in e["notes"]]
    failed = [e for e in entries if e["status"] == FAIL]
    ambiguous = [e for e in entries if e["status"] == AMBIGUOUS]
    sections: dict[str, dict[str, int]] = {}
    for e in entries:
        s = sections.setdefault(e["section"], {PASS: 0, FAIL: 0, AMBIGUOUS: 0})
        s[e["status"]] += 1
    res = {"summary": sections, "entries": entries}
    text = [f"{'section':<22}{'pass':>6}{'fail':>6}{'ambig':>7}"]
    text += [f"{k:<22}{v[PASS]:>6}{v[FAIL]:>6}{v[AMBIGUOUS]:>7}" for k, v in sections.items()]
    for e in failed + ambiguous:
        bad = [c["check"] for c in e["checks"] if c["status"] != PASS]
        text.append(f"{e['status'].upper():<10}{e['section']:<20}{e['case']:<16}{', '.join(bad)}")
    # the worker count does not change the payload, so it is not echoed
    inputs = {"level": level if level is not None else "default"}
    return Report("verify-all", inputs, res, diags, FAIL if failed else PASS, text)


# -- argument handling -------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="affkernel", description="Root systems, divisibility subsystems and "
                "small quantum group kernels of affine Lie algebras.")
    p.add_argument("--version", action="version", version=f"affkernel {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--out", help="write the report to this path instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("datum", parents=[common], help="Cartan data of a type")
    s.add_argument("type", help="type string such as A5~2, F4~1 or B3")

    s = sub.add_parser("subsystem", parents=[common], help="divisibility subsystem")
    s.add_argument("type")
    s.add_argument("--t", type=int, required=True, help="divisor of the root norm")
    s.add_argument("--level", type=int, default=6, help="level bound for affine roots")

    s = sub.add_parser("classify", parents=[common], help="classify a (type, ell) case")
    s.add_argument("type")
    s.add_argument("--ell", type=int, required=True, help="order of q")
    s.add_argument("--level", type=int, default=4)

    s = sub.add_parser("braiding", parents=[common], help="braiding matrix of degrees")
    s.add_argument("type")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--degrees", nargs="+", metavar="V",
                   help="comma-separated coefficient vectors (default: simple roots)")

    s = sub.add_parser("verify-all", parents=[common], help="rerun every table and diff")
    s.add_argument("--level", type=int, default=None,
                   help="level bound for every section (default 6 for subsystems, 4 otherwise)")
    s.add_argument("--workers", type=int, default=None, help="parallel worker processes")
    return p


def run(args: argparse.Namespace) -> Report:
    if args.command == "datum":
        return cmd_datum(args.type)
    if args.command == "subsystem":
        return cmd_subsystem(args.type, args.t, args.level)
    if args.command == "classify":
        return cmd_classify(args.type, args.ell, args.level)
    if args.command == "braiding":
        return cmd_braiding(args.type, args.ell, args.degrees)
    return cmd_verify_all(args.level, args.workers)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        report = run(args)
    except UsageError as err:
        print(f"affkernel: usage error: {err}", file=sys.stderr)
        return 2
    payload = report.to_json() if args.json else report.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 1 if report.verdict == FAIL else 0


if __name__ == "__main__":
    sys.exit(main())
