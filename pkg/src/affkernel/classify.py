"""Classification of (type, ell) cases and the checks behind each verdict."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Sequence

import sympy

from . import fixtures
from .braiding import (
    BraidingMat, braiding_matrix, heckenberger_gcm, lusztig_condition,
    standard_braiding_parameter, twist_parameters,
)
from .fixtures import TWIST, ExpectedRow, PrimitiveTableEntry
from .root_datum import (
    CartanDatum, Matrix, TypeLabel, Vec, build_datum, decompose, dual_datum,
    normalize, parse_label,
)
from .root_enum import (
    add, isotropic_multiplicity, level, real_roots,
)
from .subsystem import delta_factor, divisible_subsystem, simple_gcm

KINDS = ("trivial", "generic", "degenerate", "exotic", "pseudo-exotic", "deaffinized")

# Extra primitive degrees found in the exotic cases, beyond the simple roots.
ADDED_DEGREES: dict[tuple[str, int], list[Vec]] = {
    ("G2~1", 4): [(0, 1, 2)],
    ("A2~2", 3): [(3, 1)],
    ("A2~2", 6): [(3, 1)],
    ("D4~3", 4): [(0, 2, 1), (2, 2, 1)],
}


class UnsupportedCase(ValueError):
    pass


def _lab(x) -> TypeLabel:
    return parse_label(x) if isinstance(x, str) else x


def product_form(labels: Sequence[TypeLabel]) -> Matrix:
    """Block-diagonal form of a product of catalog types."""
    blocks = [build_datum(x).form for x in labels]
    n = sum(len(b) for b in blocks)
    m = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b):
            for j, x in enumerate(r):
                m[off + i][off + j] = x
        off += len(b)
    return tuple(tuple(r) for r in m)


def names(labels) -> list[str]:
    return [str(x) for x in labels]


def q_prime(b: BraidingMat, labels: Sequence[TypeLabel]) -> tuple[int | None, list[int]]:
    """Strict standard parameter and the twist-compatible ones against a product type."""
    if not labels or any(not isinstance(x, TypeLabel) for x in labels):
        return None, []
    form = product_form(labels)
    if len(form) != b.size:
        return None, []
    cand = CartanDatum(labels[0], form, form, None, 0, 0, 0)
    return standard_braiding_parameter(b, cand), twist_parameters(b, cand)


def q_prime_matches(expected: int | str, strict: int | None, twists: list[int]) -> bool:
    if expected == TWIST:
        return strict is None and bool(twists)
    return strict == expected or (strict is None and expected in twists)


def _is_degenerate(d: CartanDatum, ell: int) -> bool:
    return any(d.form[i][i] % ell == 0 for i in range(d.size))


# -- primitive degrees --------------------------------------------------------

def primitive_degrees(lab, ell: int) -> list[Vec]:
    lab = _lab(lab)
    d = build_datum(lab)
    if ell in (1, 2):
        return []
    if _is_degenerate(d, ell):
        e = fixtures.primitive_table_entry(lab, ell)
        if e is None:
            raise UnsupportedCase(f"no tabulated degrees for {lab} at ell={ell}")
        return list(e.degrees)
    if (str(lab), ell) in ADDED_DEGREES or fixtures.listed_lusztig_failure(lab, ell):
        raise UnsupportedCase("exotic degrees come from exotic_verify")
    return d.simple_roots()


@dataclass
class Checks:
    """Named boolean checks with optional details."""

    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, object] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: object = None) -> None:
        self.checks[name] = bool(ok)
        if detail is not None and detail != "":
            self.details[name] = detail

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {"checks": dict(self.checks), "details": dict(self.details),
                "notes": list(self.notes), "passed": self.passed}


def verify_primitive_degrees(lab, ell: int, L: int = 4,
                             entry: PrimitiveTableEntry | None = None) -> Checks:
    lab = _lab(lab)
    d = build_datum(lab)
    entry = entry or fixtures.primitive_table_entry(lab, ell)
    out = Checks()
    if entry is None:
        out.add("tabulated", False, "no table row")
        return out
    degs = list(entry.degrees)
    short = [i for i in range(d.size) if d.form[i][i] % ell]
    out.add("a_nondegenerate", all(d.norm(v) % ell for v in degs),
            [d.norm(v) for v in degs])
    one_short = all([v[i] for i in short if v[i]] == [1] for v in degs)
    out.add("b_one_short_simple", one_short)
    others = all(d.form[i][i] % ell == 0 for v in degs for i in range(d.size)
                 if v[i] and i not in short)
    out.add("c_rest_degenerate", others)
    try:
        g = simple_gcm(d, degs)
        g0 = [c.label for c in decompose(g)]
    except ValueError as err:
        g, g0 = (), [str(err)]
    b = braiding_matrix(d, degs, ell)
    strict, _ = q_prime(b, list(entry.target)) if g0 == list(entry.target) else (None, [])
    out.add("d_target_type", g0 == list(entry.target) and strict is not None,
            {"identified": names(g0), "target": names(entry.target), "u": strict})
    roots = real_roots(d, L)
    out.add("e_real_roots", all(v in roots for v in degs))
    out.notes.append("degrees satisfy q^(a,a) != 1, the membership condition")
    if entry.note:
        out.notes.append(entry.note)
    return out


# -- dual correspondence -----------------------------------------------------

def coroot_image(src: CartanDatum, dst: CartanDatum, perm: Sequence[int], v: Vec) -> Vec | None:
    """Send a root of ``src`` to the matching root of ``dst`` (rescaled coroot).

    ``perm[i]`` is the ``dst`` index of ``src`` node i.
    """
    nv = src.norm(v)
    out = [0] * dst.size
    for i, c in enumerate(v):
        if not c:
            continue
        num = c * src.form[i][i]
        if num % nv:
            return None
        out[perm[i]] = num // nv
    return tuple(out)


@dataclass
class FMapResult:
    label: TypeLabel
    ell: int
    t: int
    ok: bool
    counts: dict[str, int]

    def as_dict(self) -> dict:
        return {"label": str(self.label), "ell": self.ell, "t": self.t, "ok": self.ok,
                "counts": dict(self.counts)}


def f_map_bijection_check(lab, ell: int, t: int, L: int = 4) -> FMapResult:
    lab = _lab(lab)
    if t not in fixtures.fmap_pairs(lab, ell):
        raise UnsupportedCase(f"(ell={ell}, t={t}) is not a tabulated pair for {lab}")
    d = build_datum(lab)
    dual_lab, perm = dual_datum(lab)
    dd = build_datum(dual_lab)
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    target = {v for v in real_roots(d, L).roots if d.norm(v) % ell}
    pre = [coroot_image(d, dd, perm, v) for v in target]
    integral = all(p is not None for p in pre)
    need = max((abs(level(dd, p)) for p in pre if p is not None), default=Fraction(0))
    Ld = ceil(need)
    dual_sub = divisible_subsystem(real_roots(dd, Ld), t)
    images = [coroot_image(dd, d, inv, v) for v in dual_sub.roots]
    image = {v for v in images if v is not None and abs(level(d, v)) <= L}
    ok = integral and all(p in dual_sub.roots for p in pre) and image == target
    return FMapResult(lab, ell, t, ok, {
        "target": len(target), "image": len(image), "dual_level": Ld,
        "dual_subsystem": len(dual_sub)})


# -- coradical grading --------------------------------------------------------

def grading_functional(degrees: Sequence[Vec], datum: CartanDatum | None = None
                       ) -> tuple[Fraction, ...] | None:
    """A rational linear functional taking the value 1 on every degree, if one exists."""
    if not degrees:
        raise ValueError("need at least one degree")
    n = len(degrees[0])
    A = sympy.Matrix([list(v) for v in degrees])
    rhs = sympy.Matrix([1] * len(degrees))
    try:
        sol, params = A.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    sol = sol.subs({p: 0 for p in params})
    f = tuple(Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in sol)
    assert len(f) == n
    return f


# -- classification --------------------------------------------------------

@dataclass
class CaseReport:
    label: TypeLabel
    ell: int
    kind: str
    m_type: list
    g0_type: list
    q_prime_u: int | str | None
    twist_us: list[int]
    primitive_degrees: list[Vec]
    flags: list[str]
    expected: ExpectedRow
    diffs: list[str]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.expected.ambiguous:
            return "ambiguous"
        return "match" if not self.diffs else "mismatch"

    def as_dict(self) -> dict:
        e = self.expected
        return {
            "label": str(self.label),
            "ell": self.ell,
            "kind": self.kind,
            "m_type": names(self.m_type),
            "g0_type": names(self.g0_type),
            "q_prime_u": self.q_prime_u,
            "twist_u": list(self.twist_us),
            "primitive_degrees": [list(v) for v in self.primitive_degrees],
            "flags": list(self.flags),
            "checks": dict(self.checks),
            "expected": {"kind": e.kind, "m_type": names(e.m_type), "q_prime_u": e.q_prime,
                         "row": e.row, "ambiguous": e.ambiguous, "note": e.note},
            "diffs": list(self.diffs),
            "status": self.status,
        }


def _has_affine_a1(labels) -> bool:
    return any(isinstance(x, TypeLabel) and x == TypeLabel("A", 1, 1) for x in labels)


def classify_case(lab, ell: int, L: int = 4) -> CaseReport:
    lab = _lab(lab)
    d = build_datum(lab)
    exp = fixtures.expected_row(lab, ell)
    flags: list[str] = []
    checks: dict[str, bool] = {}
    twists: list[int] = []
    if ell in (1, 2):
        kind, m_type, g0, u, degs = "trivial", [], [], 1 % ell, []
    elif _is_degenerate(d, ell):
        entry = fixtures.primitive_table_entry(lab, ell)
        if entry is None:
            raise UnsupportedCase(f"degenerate case {lab} at ell={ell} is not tabulated")
        degs = list(entry.degrees)
        vr = verify_primitive_degrees(lab, ell, L, entry)
        checks.update({f"degrees {k}": v for k, v in vr.checks.items()})
        b = braiding_matrix(d, degs, ell)
        g0 = identify(simple_gcm(d, degs))
        heck = heckenberger_gcm(b)
        m_type = identify(heck)
        deaff = _has_affine_a1(g0) and heck != simple_gcm(d, degs)
        kind = "deaffinized" if deaff else "degenerate"
        u, twists = q_prime(b, g0)
        if deaff:
            flags.append("affine A1 factors collapse to finite A1 x A1 under the braiding")
        if entry.note:
            flags.append(entry.note)
        checks["grading functional"] = grading_functional(degs) is not None
        for t in fixtures.fmap_pairs(lab, ell):
            checks[f"f-map t={t}"] = f_map_bijection_check(lab, ell, t, L).ok
    else:
        lus = lusztig_condition(d, ell)
        listed = fixtures.listed_lusztig_failure(lab, ell)
        b = braiding_matrix(d, d.simple_roots(), ell)
        heck = heckenberger_gcm(b)
        if not lus.cond_a and not listed:
            flags.append(f"condition A fails at {list(lus.violations)} but the case is not listed")
        if not lus.cond_a or listed:
            if lus.cond_a:
                flags.append("condition A holds here although the case is listed as failing it")
            key = (str(lab), ell)
            if heck == d.cartan:
                kind, degs = "pseudo-exotic", d.simple_roots()
                m_type = g0 = [lab]
                u, twists = q_prime(b, [lab])
            elif key in ADDED_DEGREES:
                rep = exotic_verify(lab, ell, L)
                kind, degs = "exotic", rep.degrees
                m_type = g0 = rep.m_type
                u, twists = rep.u, rep.twist_us
                blocking = rep.blocking()
                checks.update({f"exotic {k}": v or k not in blocking
                               for k, v in rep.checks.checks.items()})
                flags.extend(rep.flags)
            else:
                kind, degs = "deaffinized", d.simple_roots()
                m_type = identify(heck)
                g0 = [lab]
                u, twists = q_prime(b, g0)
                flags.append("no further real-root primitives: braiding is of finite type")
                if lab == TypeLabel("A", 1, 1) and ell == 4:
                    prod = (b.exps[0][1] + b.exps[1][0]) % ell
                    flags.append(f"q01*q10 = q^{prod} = +1, not -1 as recorded alongside "
                                 "the displayed matrix")
        else:
            kind, degs = "generic", d.simple_roots()
            m_type = g0 = [lab]
            u, twists = q_prime(b, [lab])
            checks["cartan unchanged"] = heck == d.cartan
            if not lus.cond_b:
                flags.append("odd-cycle: A_n^(1) with n even fails condition B")
    if exp.ambiguous:
        flags.append(f"ambiguous table row '{exp.row}': {exp.note}")
    elif exp.note:
        flags.append(exp.note)
    if any(not v for v in checks.values()):
        flags.append("failed checks: " + ", ".join(k for k, v in checks.items() if not v))
    diffs = []
    if kind != exp.kind:
        diffs.append(f"kind {kind} vs {exp.kind}")
    if kind != "trivial" and normalize_any(m_type) != list(exp.m_type):
        diffs.append(f"M {names(m_type)} vs {names(exp.m_type)}")
    if kind != "trivial" and not q_prime_matches(exp.q_prime, u, twists):
        diffs.append(f"q' u={u} twists={twists} vs {exp.q_prime}")
    if any(not v for v in checks.values()):
        diffs.append("checks failed")
    qp: int | str | None = u if u is not None else (TWIST if twists else None)
    return CaseReport(lab, ell, kind, m_type, g0, qp, twists, degs, flags, exp, diffs, checks)


def identify(g: Matrix) -> list:
    return [c.label for c in decompose(g)]


def normalize_any(labels) -> list:
    if all(isinstance(x, TypeLabel) for x in labels):
        return normalize(labels)
    return list(labels)


# -- exotic cases -------------------------------------------------------------

@dataclass
class ExoticReport:
    label: TypeLabel
    ell: int
    degrees: list[Vec]
    m_type: list
    u: int | None
    twist_us: list[int]
    delta_factor: int
    checks: Checks
    flags: list[str]
    isotropic: list[tuple[int, int, int]]
    errata: list[str] = field(default_factory=list)

    def blocking(self) -> list[str]:
        """Failed checks not explained by a recorded erratum."""
        return [k for k, v in self.checks.checks.items() if not v and k not in self.errata]

    def as_dict(self) -> dict:
        return {
            "label": str(self.label), "ell": self.ell, "errata": list(self.errata),
            "degrees": [list(v) for v in self.degrees],
            "m_type": names(self.m_type), "u": self.u, "twist_u": self.twist_us,
            "delta_factor": self.delta_factor, **self.checks.as_dict(),
            "flags": list(self.flags),
            "isotropic": [list(r) for r in self.isotropic],
        }


EXOTIC_DELTA = {("G2~1", 4): 1, ("A2~2", 3): 2, ("A2~2", 6): 2, ("D4~3", 4): 3}
EXOTIC_TYPE = {("G2~1", 4): ("A", 3, 1), ("A2~2", 3): ("A", 2, 1), ("A2~2", 6): ("A", 2, 1),
               ("D4~3", 4): ("D", 4, 1)}


def mapped_roots(d: CartanDatum, comp_labels, nodes, degrees: Sequence[Vec], L: int) -> set[Vec]:
    """Real roots of an affine type pushed into the parent through the degree vectors."""
    (lab,) = comp_labels
    md = build_datum(lab)

    def push(v: Vec) -> Vec:
        out = tuple([0] * d.size)
        for k, c in enumerate(v):
            if c:
                out = add(out, degrees[nodes[k]], c)
        return out

    fin = real_roots(md, 0).roots
    spread = max(abs(level(d, push(v))) for v in fin)
    per = level(d, push(md.delta))
    Lm = ceil((L + spread) / per) + 1 if per > 0 else L
    return {push(v) for v in real_roots(md, Lm).roots}


def exotic_verify(lab, ell: int, L: int = 4) -> ExoticReport:
    lab = _lab(lab)
    d = build_datum(lab)
    key = (str(lab), ell)
    pseudo = lab.twist == 2 and lab.family == "A" and lab.rank % 2 == 0 and lab.rank > 2
    if not (key in ADDED_DEGREES or (pseudo and ell in (3, 6))):
        raise UnsupportedCase(f"{lab} at ell={ell} is not an exotic case")
    out = Checks()
    flags: list[str] = []
    degs = d.simple_roots() + ADDED_DEGREES.get(key, [])
    b = braiding_matrix(d, degs, ell)

    shown = [m for m in fixtures.displayed_matrices() if m.label == lab and m.ell == ell]
    if pseudo:
        shown_text = fixtures.a2n_displayed(lab.finite_rank)
        out.add("matrix simple", fixtures.parse_displayed(shown_text, ell) == b.exps)
    errata: list[str] = []
    for m in shown:
        mb = braiding_matrix(d, m.degrees, ell)
        tag = f"matrix {len(m.degrees)}x{len(m.degrees)}"
        want = fixtures.parse_displayed(m.matrix, ell)
        diff = [(i, j) for i in range(len(want)) for j in range(len(want))
                if want[i][j] != mb.exps[i][j]]
        out.add(tag, not diff, {"differences": [
            {"entry": [i, j], "shown": want[i][j], "computed": mb.exps[i][j]} for i, j in diff]}
            if diff else None)
        if diff and set(diff) <= set(m.errata):
            errata.append(tag)
            flags.append(f"{tag}: shown entries {diff} disagree with the pairing (known erratum)")
        comps = decompose(heckenberger_gcm(mb))
        out.add(f"type {len(m.degrees)}x{len(m.degrees)}",
                normalize_any([c.label for c in comps]) == list(m.expected_type),
                names(c.label for c in comps))
        if m.center is not None:
            (c,) = comps
            center = 2 if c.label.affine else 1
            out.add(f"center {len(m.degrees)}x{len(m.degrees)}", c.nodes[center] == m.center)

    heck = heckenberger_gcm(b)
    comps = decompose(heck)
    m_type = [c.label for c in comps]
    if pseudo:
        out.add("cartan unchanged", heck == d.cartan)
        expected_type = [lab]
        c_exp = 1
    else:
        expected_type = normalize([EXOTIC_TYPE[key]])
        c_exp = EXOTIC_DELTA[key]
    out.add("type", normalize_any(m_type) == expected_type, names(m_type))
    strict, twists = q_prime(b, m_type)
    c = delta_factor(d, degs, heck)
    out.add("delta identity", c == c_exp, f"delta of {names(m_type)} = {c} x parent delta")

    if len(comps) == 1 and isinstance(comps[0].label, TypeLabel) and comps[0].label.affine:
        image = mapped_roots(d, m_type, comps[0].nodes, degs, L)
        image = {v for v in image if abs(level(d, v)) <= L}
        target = {v for v in real_roots(d, L).roots if d.norm(v) % ell}
        out.add("real roots", image == target, f"{len(image)} vs {len(target)}")
    else:
        out.add("real roots", False, "generated type is not a single affine component")

    iso = isotropic_mismatch_report(lab, m_type[0], c_exp, 6) if c else []
    if any(p != q for _, p, q in iso):
        flags.append("isotropic multiplicities differ between parent and generated type")
    if key == ("D4~3", 4):
        quoted = fixtures.QUOTED_D43_MULTIPLICITIES
        computed = (tuple(p for _, p, _ in iso), tuple(q for _, _, q in iso))
        if computed != quoted:
            flags.append(f"quoted multiplicities {quoted[0]} differ from computed {computed[0]}")
    return ExoticReport(lab, ell, degs, m_type, strict, twists, c, out, flags, iso, errata)


def isotropic_mismatch_report(parent, target, c: int, M: int) -> list[tuple[int, int, int]]:
    """Rows (m, mult of m*delta in parent, mult in target at m/c or 0)."""
    if c < 1:
        raise ValueError("delta factor must be positive")
    parent, target = _lab(parent), _lab(target)
    return [(m, isotropic_multiplicity(parent, m),
             isotropic_multiplicity(target, m // c) if m % c == 0 else 0)
            for m in range(1, M + 1)]
