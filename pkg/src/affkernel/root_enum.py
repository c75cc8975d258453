"""Real roots of finite and affine systems, plus null-root multiplicities."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .root_datum import (
    CartanDatum, TypeLabel, Vec, build_datum, closure_roots, parse_label, unit,
)


@dataclass(frozen=True)
class RootSet:
    """A finite, negation-closed set of real roots in simple-root coordinates.

    ``level_bound`` is None for finite systems.
    """

    datum: CartanDatum
    roots: frozenset[Vec]
    level_bound: Fraction | int | None = None

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self) -> Iterator[Vec]:
        return iter(sorted(self.roots))

    def __contains__(self, v) -> bool:
        return tuple(v) in self.roots

    def positive(self) -> list[Vec]:
        return sorted((r for r in self.roots if is_positive(r)), key=root_key)

    def with_roots(self, roots: Iterable[Vec]) -> RootSet:
        return RootSet(self.datum, frozenset(roots), self.level_bound)


def is_positive(v: Vec) -> bool:
    return all(x >= 0 for x in v) and any(v)


def root_key(v: Vec) -> tuple:
    return (sum(v), tuple(-x for x in v))


def level(datum: CartanDatum, v: Vec) -> Fraction:
    """Coefficient of the null root once the finite part is split off."""
    if not datum.affine:
        return Fraction(0)
    return Fraction(v[0], datum.a0)


def add(u: Vec, v: Vec, c: int = 1) -> Vec:
    return tuple(a + c * b for a, b in zip(u, v))


def neg(v: Vec) -> Vec:
    return tuple(-x for x in v)


def finite_roots(datum: CartanDatum) -> RootSet:
    if datum.affine:
        raise ValueError("finite_roots needs a finite datum")
    return RootSet(datum, frozenset(closure_roots(datum.form)))


def _finite_part(datum: CartanDatum) -> list[Vec]:
    """Roots of the parabolic system on nodes 1..n, embedded with a zero in slot 0."""
    sub = tuple(r[1:] for r in datum.form[1:])
    return [(0,) + r for r in closure_roots(sub)]


def real_roots(datum: CartanDatum, L: int) -> RootSet:
    """Closed-form real roots with |level| <= L."""
    if not datum.affine:
        raise ValueError("real_roots needs an affine datum")
    if L < 0:
        raise ValueError("level bound must be non-negative")
    delta = datum.delta
    bar = _finite_part(datum)
    out: set[Vec] = set()
    if datum.a0k == 1:
        for r in bar:
            for m in range(-L, L + 1):
                out.add(add(r, delta, m))
    elif datum.a0k in (2, 3):
        short = min(datum.norm(r) for r in bar)
        for r in bar:
            step = 1 if datum.norm(r) == short else datum.k
            for m in range(-(L // step), L // step + 1):
                out.add(add(r, delta, m * step))
    else:
        for r in bar:
            if datum.norm(r) < datum.s:
                for m in range(-L, L + 1):
                    out.add(add(r, delta, m))
            else:
                for m in range(-(L // 2), L // 2 + 1):
                    out.add(add(r, delta, 2 * m))
                # half-integer levels: (r + (2m+1) delta) / 2
                for m in range(-L, L):
                    if abs(Fraction(2 * m + 1, 2)) <= L:
                        w = add(r, delta, 2 * m + 1)
                        assert all(x % 2 == 0 for x in w)
                        out.add(tuple(x // 2 for x in w))
    return RootSet(datum, frozenset(out), L)


def real_roots_by_reflection(datum: CartanDatum, coeff_bound: int) -> RootSet:
    """Orbit of the simple roots under simple reflections, kept inside a coefficient box."""
    n = datum.size
    a = datum.cartan
    start = {unit(n, i) for i in range(n)} | {neg(unit(n, i)) for i in range(n)}
    seen = {v for v in start if max(abs(x) for x in v) <= coeff_bound}
    todo = list(seen)
    while todo:
        v = todo.pop()
        for i in range(n):
            c = sum(a[i][j] * v[j] for j in range(n))
            if not c:
                continue
            w = tuple(v[j] - (c if j == i else 0) for j in range(n))
            if abs(w[i]) <= coeff_bound and w not in seen:
                seen.add(w)
                todo.append(w)
    return RootSet(datum, frozenset(seen), None)


def isotropic_multiplicity(lab: TypeLabel | str, m: int) -> int:
    """Multiplicity of m times the null root."""
    if isinstance(lab, str):
        lab = parse_label(lab)
    if not lab.affine:
        raise ValueError("only affine types have isotropic roots")
    if m == 0:
        raise ValueError("m must be nonzero")
    n = lab.finite_rank
    if lab.twist == 2 and m % 2:
        if lab.family == "A" and lab.rank % 2 == 1:
            return n - 1
        if lab.family == "D":
            return 1
        if lab.family == "E":
            return 2
    if lab.twist == 3 and m % 3:
        return 1
    return n


def datum_roots(lab: TypeLabel | str, L: int = 0) -> RootSet:
    d = build_datum(lab)
    return real_roots(d, L) if d.affine else finite_roots(d)
