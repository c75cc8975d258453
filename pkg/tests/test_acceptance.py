"""Acceptance suite: one test per criterion, each printing a single pass/fail line.

Run directly with ``python tests/test_acceptance.py`` for just the summary lines.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from affkernel import cli, fixtures  # noqa: E402
from affkernel.braiding import braiding_matrix, heckenberger_gcm, simple_braiding  # noqa: E402
from affkernel.classify import (  # noqa: E402
    classify_case, exotic_verify, f_map_bijection_check, grading_functional,
    verify_primitive_degrees,
)
from affkernel.root_datum import (  # noqa: E402
    TypeLabel, affine_labels, build_datum, catalog, decompose, dual_datum, normalize,
    primitive_kernel,
)
from affkernel.root_enum import datum_roots, level, real_roots  # noqa: E402
from affkernel.subsystem import (  # noqa: E402
    affine_table, finite_table, verify_pi_table,
)
from oracles import closure_violations, orbit_roots  # noqa: E402

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, title: str, problems: list[str]) -> None:
    ok = not problems
    detail = "" if ok else "; ".join(problems[:6]) + (" ..." if len(problems) > 6 else "")
    RESULTS[n] = (ok, title)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {title}" + (f" [{detail}]" if detail else ""))
    assert ok, detail


def _family(e) -> tuple:
    lab = e.parent
    if lab.family == "A" and lab.twist == 2:
        kind = "A2" if lab.rank == 2 else ("even" if lab.rank % 2 == 0 else "odd")
        return ("A", 2, kind, e.t if kind != "odd" else None)
    return (lab.family, lab.twist)


def test_criterion_1_finite_table():
    problems = []
    rows = finite_table(8)
    for e in rows:
        chk = verify_pi_table(e)
        for name in ("a_members", "b_type", "c_closure", "d_search", "e_minimal"):
            if not chk.checks.get(name):
                problems.append(f"{e.parent} t={e.t} {name}")
        problems += [f"{e.parent} {k}" for k, v in chk.checks.items() if not v and k.startswith("count")]
        if not any(k.startswith("count") for k in chk.checks):
            problems.append(f"{e.parent}: no counting check")
    b = {str(e.parent): dict(e.counts) for e in rows if e.parent.family == "B"}
    for n in range(2, 9):
        c = b[f"B{n}"]
        if c.get("roots") != 2 * n * n or c.get("divisible roots") != 2 * n * (n - 1):
            problems.append(f"B{n} counts")
    record(1, "finite divisibility table (B_n, C_n n=2..8, F4, G2)", problems)


def test_criterion_2_affine_table():
    problems = []
    rows = affine_table(8)
    for e in rows:
        chk = verify_pi_table(e, 6)
        problems += [f"{e.parent} t={e.t} {k}" for k, v in chk.checks.items() if not v]
    fams = {_family(e) for e in rows}
    if len(fams) != 12:
        problems.append(f"{len(fams)} row families instead of 12")
    for e in rows:
        n = e.parent.finite_rank
        if e.parent.family in "BCD" and e.parent.twist in (1, 2) and not 2 <= n <= 8:
            problems.append(f"{e.parent} outside n=2..8")
    ranks = {e.parent.finite_rank for e in rows if e.parent.family == "B"}
    if ranks != set(range(3, 9)):
        problems.append(f"B_n ranks {sorted(ranks)}")
    record(2, "affine divisibility table (12 row families, level 6)", problems)


def test_criterion_3_generic_sanity():
    problems = []
    for lab in affine_labels(8):
        d = build_datum(lab)
        for ell in (7, 9, 11, 13):
            if heckenberger_gcm(simple_braiding(lab, ell)) != d.cartan:
                problems.append(f"{lab} ell={ell}")
    record(3, "generic ell keeps the Cartan matrix", problems)


def test_criterion_4_main_table():
    problems = []
    ambiguous = set()
    for lab in affine_labels(6):
        for ell in range(1, 13):
            r = classify_case(lab, ell)
            if r.expected.ambiguous:
                ambiguous.add(r.expected.row)
                if r.status != "ambiguous" or not any("ambiguous" in f for f in r.flags):
                    problems.append(f"{lab} ell={ell} ambiguous row not reported")
            elif r.status != "match":
                problems.append(f"{lab} ell={ell}: {r.diffs}")
    for row in ("A2^(1), l=8", "G2^(2), D4^(3), l=3,6"):
        if row not in ambiguous:
            problems.append(f"row {row!r} not marked ambiguous")
    a21 = classify_case("A2~1", 8)
    if a21.kind != "generic":
        problems.append("A2^(1) at ell=8 computed verdict is not generic")
    record(4, "main classification table over catalog n<=6, ell 1..12", problems)


def test_criterion_5_displayed_matrices():
    problems = []
    for m in fixtures.displayed_matrices():
        d = build_datum(m.label)
        b = braiding_matrix(d, m.degrees, m.ell)
        shown = fixtures.parse_displayed(m.matrix, m.ell)
        tag = f"{m.label} ell={m.ell} {len(m.degrees)}x{len(m.degrees)}"
        for i in range(len(shown)):
            for j in range(len(shown)):
                if shown[i][j] != b.exps[i][j]:
                    problems.append(f"{tag} entry ({i},{j}) shown q^{shown[i][j]} "
                                    f"computed q^{b.exps[i][j]}")
        comps = decompose(heckenberger_gcm(b))
        if normalize([c.label for c in comps]) != list(m.expected_type):
            problems.append(f"{tag} type {[str(c.label) for c in comps]}")
        if m.center is not None:
            c = comps[0]
            if c.nodes[2 if c.label.affine else 1] != m.center:
                problems.append(f"{tag} center")
    record(5, "displayed braiding matrices reproduced entrywise and typed", problems)


def _delta_of(d, lab, nodes, degrees):
    marks = build_datum(lab).delta
    v = [0] * d.size
    for k, i in enumerate(nodes):
        for j in range(d.size):
            v[j] += marks[k] * degrees[i][j]
    return tuple(v)


def test_criterion_6_delta_identities():
    problems = []
    for (lab, ell), c in (("G2~1", 4), 1), (("A2~2", 3), 2), (("A2~2", 6), 2), (("D4~3", 4), 3):
        d = build_datum(lab)
        r = exotic_verify(lab, ell)
        (comp,) = decompose(heckenberger_gcm(braiding_matrix(d, r.degrees, ell)))
        got = _delta_of(d, comp.label, comp.nodes, r.degrees)
        if got != tuple(c * x for x in d.delta):
            problems.append(f"{lab} ell={ell}: {got}")
    for e in affine_table(8):
        d = build_datum(e.parent)
        g = tuple(tuple(2 * d.pairing(a, b) // d.norm(a) for b in e.expected_simple)
                  for a in e.expected_simple)
        for comp in decompose(g):
            got = _delta_of(d, comp.label, comp.nodes, e.expected_simple)
            if got != tuple(e.delta_factor * x for x in d.delta):
                problems.append(f"{e.parent} t={e.t} component {comp.label}")
    record(6, "null-root identities as lattice equations", problems)


def test_criterion_7_real_root_coverage():
    problems = []
    for lab, ell in (("G2~1", 4), ("A2~2", 3), ("A2~2", 6), ("D4~3", 4)):
        r = exotic_verify(lab, ell, 4)
        if not r.checks.checks.get("real roots"):
            problems.append(f"{lab} ell={ell}: {r.checks.details.get('real roots')}")
    for n in range(2, 6):
        lab = TypeLabel("A", 2 * n, 2)
        for ell in (3, 6):
            if heckenberger_gcm(simple_braiding(lab, ell)) != build_datum(lab).cartan:
                problems.append(f"{lab} ell={ell}")
    record(7, "exotic root coverage and pseudo-exotic Cartan matrices", problems)


def test_criterion_8_primitive_degrees():
    problems = []
    for e in fixtures.primitive_table(6):
        c = verify_primitive_degrees(e.label, e.ell, 4, e)
        problems += [f"{e.label} ell={e.ell} {k}" for k, v in c.checks.items() if not v]
        for t in fixtures.fmap_pairs(e.label, e.ell):
            if not f_map_bijection_check(e.label, e.ell, t, 4).ok:
                problems.append(f"{e.label} ell={e.ell} f-map t={t}")
    for ell in (4, 8):
        for t in (4, 8):
            if not f_map_bijection_check("A2~2", ell, t, 4).ok:
                problems.append(f"A2~2 crossed ell={ell} t={t}")
    record(8, "primitive degrees and dual-subsystem correspondence", problems)


def test_criterion_9_properties():
    problems = []
    small = [lab for lab, _ in catalog(8) if lab.size <= 7]
    for lab in small:
        d = build_datum(lab)
        roots = real_roots(d, 4).roots if d.affine else datum_roots(lab).roots
        problems += [f"closure {lab} t={t}" for t in closure_violations(roots, d.form)]
        if d.affine:
            top = max(d.delta)
            C, L = 2 * top, 1
            region = lambda v: max(map(abs, v)) <= C and abs(level(d, v)) <= L  # noqa: E731
            if {v for v in real_roots(d, L).roots if region(v)} != \
                    {v for v in orbit_roots(d.cartan, C + top * (L + 2)) if region(v)}:
                problems.append(f"oracle {lab}")
    for lab in affine_labels(8):
        d = build_datum(lab)
        dual, perm = dual_datum(lab)
        back, perm2 = dual_datum(dual)
        if back != lab or [perm2[p] for p in perm] != list(range(d.size)):
            problems.append(f"duality {lab}")
        if primitive_kernel(d.cartan) != d.delta or \
                any(d.pairing(d.delta, e) for e in d.simple_roots()):
            problems.append(f"marks {lab}")
    for e in fixtures.primitive_table(6):
        if grading_functional(list(e.degrees)) is None:
            problems.append(f"grading {e.label} ell={e.ell}")
    runs = [
        ["datum", "E6~2"], ["subsystem", "A6~2", "--t", "8"], ["classify", "D4~3", "--ell", "4"],
        ["braiding", "G2~1", "--ell", "4", "--degrees", "1,0,0", "0,1,0", "0,0,1", "0,1,2"],
        ["verify-all"],
    ]
    for argv in runs:
        outs = [cli.run(cli.build_parser().parse_args(argv)) for _ in range(2)]
        if outs[0].to_json() != outs[1].to_json() or outs[0].to_text() != outs[1].to_text():
            problems.append(f"nondeterministic {argv[0]}")
        json.loads(outs[0].to_json())
    record(9, "property suites (closure, oracle, duality, marks, grading, determinism)", problems)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
