"""Subsystems of roots whose norm is divisible by t, and their simple systems."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .root_datum import (
    CartanDatum, Matrix, TypeLabel, Unrecognized, Vec, build_datum, decompose,
    normalize, parse_label,
)
from .root_enum import RootSet, add, datum_roots, is_positive, level, neg, root_key


def divisible_subsystem(roots: RootSet, t: int) -> RootSet:
    if t < 1:
        raise ValueError("t must be positive")
    d = roots.datum
    return roots.with_roots(r for r in roots.roots if d.norm(r) % t == 0)


def _delta_multiple(d: CartanDatum, v: Vec) -> int:
    """m > 0 with v == m * delta, else 0."""
    if not d.affine or not any(v):
        return 0
    delta = d.delta
    m, r = divmod(v[0], delta[0])
    if r or m <= 0:
        return 0
    return m if all(x == m * y for x, y in zip(v, delta)) else 0


def find_simple_system(sub: RootSet) -> list[Vec]:
    """Positive roots of ``sub`` at level <= L/2 that are not a sum of two positive ones.

    Null-root multiples count as members of every subsystem, so a root that
    differs from another member by such a multiple is not simple.
    """
    d = sub.datum
    bound = None
    if d.affine:
        if sub.level_bound is None or sub.level_bound < 2:
            raise ValueError("simple-system search needs a level bound of at least 2")
        bound = Fraction(sub.level_bound) / 2
    pos = [r for r in sub.roots if is_positive(r)]
    out = []
    for a in pos:
        if bound is not None and level(d, a) > bound:
            continue
        decomposable = False
        for g in pos:
            if g == a or any(x > y for x, y in zip(g, a)):
                continue
            rest = add(a, g, -1)
            if rest in sub.roots or _delta_multiple(d, rest):
                decomposable = True
                break
        if not decomposable:
            out.append(a)
    return sorted(out, key=root_key)


def simple_gcm(d: CartanDatum, simple: Sequence[Vec]) -> Matrix:
    rows = []
    for b in simple:
        nb = d.norm(b)
        row = []
        for c in simple:
            num = 2 * d.pairing(b, c)
            if num % nb:
                raise ValueError("simple system does not give an integral Cartan matrix")
            row.append(num // nb)
        rows.append(tuple(row))
    return tuple(rows)


def delta_factor(d: CartanDatum, simple: Sequence[Vec], g: Matrix | None = None) -> int:
    """c with null root of the generated type equal to c times the parent's; 0 if none."""
    if not d.affine or not simple:
        return 0
    g = g if g is not None else simple_gcm(d, simple)
    factors = set()
    for comp in decompose(g):
        if not isinstance(comp.label, TypeLabel) or not comp.label.affine:
            return 0
        marks = build_datum(comp.label).marks
        v = tuple([0] * d.size)
        for k, i in enumerate(comp.nodes):
            v = add(v, simple[i], marks[k])
        c = _delta_multiple(d, v)
        if not c:
            return 0
        factors.add(c)
    return factors.pop() if len(factors) == 1 else 0


@dataclass(frozen=True)
class SubsystemResult:
    parent: TypeLabel
    t: int
    roots: RootSet
    simple: list[Vec]
    gcm: Matrix
    identified: list[TypeLabel | Unrecognized]
    delta_factor: int

    def as_dict(self) -> dict:
        out = {
            "parent": str(self.parent),
            "t": self.t,
            "level_bound": self.roots.level_bound,
            "root_count": len(self.roots),
            "simple": [list(v) for v in self.simple],
            "gcm": [list(r) for r in self.gcm],
            "identified": [str(x) for x in self.identified],
            "delta_factor": self.delta_factor,
        }
        if self.parent.affine:
            # null-root multiples belong to every subsystem; report their multiplicities
            from .root_enum import isotropic_multiplicity
            out["isotropic"] = [[m, isotropic_multiplicity(self.parent, m)] for m in (1, 2, 3)]
        return out


def subsystem_report(parent: TypeLabel | str, t: int, L: int = 6) -> SubsystemResult:
    if isinstance(parent, str):
        parent = parse_label(parent)
    d = build_datum(parent)
    sub = divisible_subsystem(datum_roots(parent, L), t)
    simple = find_simple_system(sub) if len(sub) else []
    g = simple_gcm(d, simple) if simple else ()
    ident = [c.label for c in decompose(g)] if simple else []
    return SubsystemResult(parent, t, sub, simple, g, ident, delta_factor(d, simple, g))


# -- table fixtures ----------------------------------------------------------

@dataclass(frozen=True)
class PiTableEntry:
    parent: TypeLabel
    t: int
    expected_type: tuple[TypeLabel, ...]
    expected_simple: tuple[Vec, ...]
    delta_factor: int = 0  # 0 for finite parents
    counts: tuple[tuple[str, int], ...] = ()
    note: str = ""


def _v(size: int, coeffs: dict[int, int]) -> Vec:
    out = [0] * size
    for i, c in coeffs.items():
        out[i] += c
    return tuple(out)


def _tail_sums(size: int, start: dict[int, int], idx: Sequence[int], step: int) -> list[Vec]:
    """start, start + step*idx[0], start + step*(idx[0]+idx[1]), ..."""
    cur = dict(start)
    out = [_v(size, cur)]
    for i in idx:
        cur[i] = cur.get(i, 0) + step
        out.append(_v(size, cur))
    return out


def _entry(parent: str, t: int, types, simple, factor=0, counts=(), note="") -> PiTableEntry:
    return PiTableEntry(parse_label(parent), t, tuple(normalize(types)), tuple(simple),
                        factor, tuple(counts), note)


def finite_table(max_n: int = 8) -> list[PiTableEntry]:
    """Simple systems of the divisibility subsystems of finite types (0-based indices)."""
    out = []
    for n in range(2, max_n + 1):
        s = [_v(n, {i: 1}) for i in range(n - 1)] + [_v(n, {n - 2: 1, n - 1: 2})]
        out.append(_entry(f"B{n}", 4, [("D", n, 0)], s,
                          counts=[("roots", 2 * n * n), ("divisible roots", 2 * n * (n - 1))]))
        s = _tail_sums(n, {n - 1: 1}, list(range(n - 2, -1, -1)), 2)
        out.append(_entry(f"C{n}", 4, [("A", 1, 0)] * n, s,
                          counts=[("roots", 2 * n * n), ("divisible roots", 2 * n)]))
    s = [_v(4, {0: 1}), _v(4, {1: 1}), _v(4, {1: 1, 2: 2}), _v(4, {1: 1, 2: 2, 3: 2})]
    out.append(_entry("F4", 4, [("D", 4, 0)], s, counts=[("roots", 48), ("divisible roots", 24)]))
    for t in (3, 6):
        s = [_v(2, {0: 1}), _v(2, {0: 1, 1: 3})]
        out.append(_entry("G2", t, [("A", 2, 0)], s,
                          counts=[("positive roots", 6), ("positive divisible roots", 3)]))
    return out


def affine_table(max_n: int = 8) -> list[PiTableEntry]:
    """Simple systems of the divisibility subsystems of affine types."""
    out = []
    for n in range(2, max_n + 1):
        z = n + 1
        if n >= 3:
            s = [_v(z, {i: 1}) for i in range(n)] + [_v(z, {n - 1: 1, n: 2})]
            out.append(_entry(f"B{n}~1", 4, [("D", n, 1)], s, 1))
        s = _tail_sums(z, {n: 1}, list(range(n - 1, 0, -1)), 2)
        s += _tail_sums(z, {0: 1}, list(range(1, n)), 2)
        out.append(_entry(f"C{n}~1", 4, [("A", 1, 1)] * n, s, 1))
        a0p = {0: 2, 1: 1}
        s = [_v(z, a0p)] + [_v(z, {i: 1}) for i in range(1, n)] + [_v(z, {n - 1: 1, n: 2})]
        note = ""
        if n == 2:
            # the general list yields only three roots when n = 2
            s.append(_v(z, {0: 2, 1: 1, 2: 2}))
            note = "n=2 needs the extra root 2a0+a1+2a2"
        out.append(_entry(f"D{n + 1}~2", 4, [("D", n, 1)], s, 2, note=note))
        if n >= 3:
            a0p = {0: 2, n: 1, **{i: 2 for i in range(2, n)}}
            s = _tail_sums(z, {n: 1}, list(range(n - 1, 0, -1)), 2)
            s += _tail_sums(z, a0p, list(range(1, n)), 2)
            out.append(_entry(f"A{2 * n - 1}~2", 4, [("A", 1, 1)] * n, s, 2))
        s = [_v(z, {0: 2, 1: 1})] + [_v(z, {i: 1}) for i in range(1, n + 1)]
        out.append(_entry(f"A{2 * n}~2", 4, [("A", 2 * n - 1, 2)], s, 1))
        a0pp = {0: 4, 1: 2, n: 1, **{i: 2 for i in range(2, n)}}
        s = _tail_sums(z, {n: 1}, list(range(n - 1, 0, -1)), 2)
        s += _tail_sums(z, a0pp, list(range(1, n)), 2)
        out.append(_entry(f"A{2 * n}~2", 8, [("A", 1, 1)] * n, s, 2))
    out.append(_entry("F4~1", 4, [("D", 4, 1)],
                      [_v(5, {0: 1}), _v(5, {1: 1}), _v(5, {2: 1}), _v(5, {2: 1, 3: 2}),
                       _v(5, {2: 1, 3: 2, 4: 2})], 1))
    out.append(_entry("E6~2", 4, [("D", 4, 1)],
                      [_v(5, {0: 2, 1: 2, 2: 2, 3: 1}), _v(5, {4: 1}), _v(5, {3: 1}),
                       _v(5, {3: 1, 2: 2}), _v(5, {3: 1, 2: 2, 1: 2})], 2))
    for t in (3, 6):
        out.append(_entry("G2~1", t, [("A", 2, 1)],
                          [_v(3, {0: 1}), _v(3, {1: 1}), _v(3, {1: 1, 2: 3})], 1))
        out.append(_entry("D4~3", t, [("A", 2, 1)],
                          [_v(3, {0: 3, 1: 3, 2: 1}), _v(3, {2: 1}), _v(3, {2: 1, 1: 3})], 3))
    for t in (4, 8):
        out.append(_entry("A2~2", t, [("A", 1, 1)], [_v(2, {0: 4, 1: 1}), _v(2, {1: 1})], 2))
    return out


# -- verification ------------------------------------------------------------

@dataclass
class TableCheck:
    entry: PiTableEntry
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = bool(ok)
        if detail:
            self.details[name] = detail

    def as_dict(self) -> dict:
        e = self.entry
        return {
            "parent": str(e.parent),
            "t": e.t,
            "expected_type": [str(x) for x in e.expected_type],
            "checks": dict(self.checks),
            "details": dict(self.details),
            "note": e.note,
            "passed": self.passed,
        }


def _reflect(d: CartanDatum, x: Vec, b: Vec, nb: int) -> Vec:
    c = 2 * d.pairing(x, b)
    assert c % nb == 0
    return add(x, b, -(c // nb))


def reflection_span(d: CartanDatum, simple: Sequence[Vec], L: int | None) -> set[Vec]:
    """Orbit of +-simple under the reflections they define, kept within |level| <= L."""
    norms = [d.norm(b) for b in simple]
    seen = set(simple) | {neg(b) for b in simple}
    todo = list(seen)
    while todo:
        x = todo.pop()
        for b, nb in zip(simple, norms):
            y = _reflect(d, x, b, nb)
            if y in seen or (L is not None and abs(level(d, y)) > L):
                continue
            seen.add(y)
            todo.append(y)
    return seen


def minimality_ok(d: CartanDatum, t: int, v: Vec) -> bool:
    """v contains exactly one t-divisible simple root, with coefficient 1."""
    hits = [v[i] for i in range(d.size) if v[i] and d.form[i][i] % t == 0]
    return hits == [1]


def verify_pi_table(entry: PiTableEntry, L: int = 6) -> TableCheck:
    d = build_datum(entry.parent)
    sub = divisible_subsystem(datum_roots(entry.parent, L), entry.t)
    rep = TableCheck(entry)
    exp = list(entry.expected_simple)

    missing = [v for v in exp if v not in sub or not is_positive(v)]
    rep.add("a_members", not missing, f"not positive members: {missing}" if missing else "")

    try:
        g = simple_gcm(d, exp)
        ident = [c.label for c in decompose(g)]
    except ValueError as err:
        g, ident = (), [str(err)]
    rep.add("b_type", ident == list(entry.expected_type),
            f"identified {[str(x) for x in ident]}")

    bound = L if d.affine else None
    span = reflection_span(d, exp, bound) if not missing else set()
    rep.add("c_closure", span == set(sub.roots),
            f"{len(span)} generated vs {len(sub)} divisible roots")

    found = find_simple_system(sub)
    rep.add("d_search", sorted(found) == sorted(exp),
            "" if sorted(found) == sorted(exp) else f"search found {[list(v) for v in found]}")

    bad = [v for v in exp if not minimality_ok(d, entry.t, v)]
    rep.add("e_minimal", not bad, f"not minimal: {bad}" if bad else "")

    if d.affine:
        c = delta_factor(d, exp, g) if g else 0
        rep.add("delta_factor", c == entry.delta_factor, f"computed {c}")
    for name, value in entry.counts:
        allr = datum_roots(entry.parent)
        if name == "roots":
            got = len(allr)
        elif name == "divisible roots":
            got = len(sub)
        elif name == "positive roots":
            got = len(allr.positive())
        else:
            got = len(sub.positive())
        rep.add(f"count {name}", got == value, f"{got} vs {value}")
    if not d.affine and ident and all(isinstance(x, TypeLabel) for x in ident):
        total = sum(len(datum_roots(x)) for x in ident)
        rep.add("count identified", total == len(sub), f"{total} vs {len(sub)}")
    return rep
