"""Cartan data for finite and affine root systems.

Every datum is normalized so that the shortest real simple root has norm 2.
Finite types use Bourbaki numbering. Affine types put the extra node at
index 0 and keep the finite part on indices 1..n.
"""
from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import sympy

Matrix = tuple[tuple[int, ...], ...]
Vec = tuple[int, ...]

FAMILIES = "ABCDEFG"
TWIST_NAMES = {0: "finite", 1: "(1)", 2: "(2)", 3: "(3)"}


class LabelError(ValueError):
    """Raised for unknown or out-of-range type labels."""


@dataclass(frozen=True, order=True)
class TypeLabel:
    family: str
    rank: int
    twist: int = 0  # 0 means finite

    def __post_init__(self) -> None:
        if not _legal(self.family, self.rank, self.twist):
            raise LabelError(f"no catalog entry for {self.family}{self.rank} twist {self.twist}")

    @property
    def affine(self) -> bool:
        return self.twist > 0

    @property
    def finite_rank(self) -> int:
        """Rank of the finite part (the n in the usual affine naming)."""
        if self.twist == 0:
            return self.rank
        if self.twist == 1:
            return self.rank
        if self.family == "A":
            return self.rank // 2 if self.rank % 2 == 0 else (self.rank + 1) // 2
        if self.family == "D" and self.twist == 2:
            return self.rank - 1
        if self.family == "E":
            return 4
        return 2  # D4~3

    @property
    def size(self) -> int:
        return self.finite_rank + (1 if self.affine else 0)

    def __str__(self) -> str:
        return f"{self.family}{self.rank}" + (f"~{self.twist}" if self.twist else "")

    def pretty(self) -> str:
        return f"{self.family}{self.rank}" + (f"^({self.twist})" if self.twist else "")


@dataclass(frozen=True)
class Unrecognized:
    """A connected generalized Cartan matrix with no catalog match."""

    matrix: Matrix

    def __str__(self) -> str:
        return f"unrecognized{list(map(list, self.matrix))}"

    def pretty(self) -> str:
        return str(self)


def _legal(family: str, r: int, twist: int) -> bool:
    if family not in FAMILIES or r < 1:
        return False
    if twist == 0:
        return {
            "A": r >= 1, "B": r >= 2, "C": r >= 2, "D": r >= 4,
            "E": r in (6, 7, 8), "F": r == 4, "G": r == 2,
        }[family]
    if twist == 1:
        return {
            "A": r >= 1, "B": r >= 3, "C": r >= 2, "D": r >= 4,
            "E": r in (6, 7, 8), "F": r == 4, "G": r == 2,
        }[family]
    if twist == 2:
        if family == "A":
            # A_{2n}^(2) for n >= 1 and A_{2n-1}^(2) for n >= 3
            return r % 2 == 0 or r >= 5
        if family == "D":
            return r >= 3
        return family == "E" and r == 6
    if twist == 3:
        return family == "D" and r == 4
    return False


_LABEL_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*(?:~\s*([0-3]))?\s*$")


def parse_label(text: str) -> TypeLabel:
    """Parse strings like ``A5~2``, ``F4~1`` or ``B3``."""
    m = _LABEL_RE.match(text)
    if not m:
        raise LabelError(f"cannot parse type {text!r}")
    return TypeLabel(m.group(1).upper(), int(m.group(2)), int(m.group(3) or 0))


@dataclass(frozen=True)
class CartanDatum:
    label: TypeLabel
    cartan: Matrix
    form: Matrix
    marks: Vec | None  # None for finite types
    a0: int
    k: int
    s: int

    @property
    def size(self) -> int:
        return len(self.form)

    @property
    def affine(self) -> bool:
        return self.marks is not None

    @property
    def delta(self) -> Vec:
        if self.marks is None:
            raise ValueError("finite datum has no null root")
        return self.marks

    @property
    def a0k(self) -> int:
        return self.a0 * self.k

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        return pairing(self.form, u, v)

    def norm(self, v: Sequence[int]) -> int:
        return pairing(self.form, v, v)

    def simple_roots(self) -> list[Vec]:
        return [unit(self.size, i) for i in range(self.size)]


def pairing(form: Matrix, u: Sequence[int], v: Sequence[int]) -> int:
    total = 0
    for ui, row in zip(u, form):
        if ui:
            total += ui * sum(map(operator.mul, row, v))
    return total


def unit(n: int, i: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(n))


def cartan_from_form(form: Matrix) -> Matrix:
    n = len(form)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            num = 2 * form[i][j]
            if num % form[i][i]:
                raise ValueError(f"form entry ({i},{j}) does not give an integral Cartan entry")
            row.append(num // form[i][i])
        rows.append(tuple(row))
    return tuple(rows)


# -- finite forms -------------------------------------------------------------

def _chain(norms: Sequence[int], bonds: dict[tuple[int, int], int]) -> Matrix:
    n = len(norms)
    m = [[0] * n for _ in range(n)]
    for i, x in enumerate(norms):
        m[i][i] = x
    for (i, j), b in bonds.items():
        m[i][j] = m[j][i] = b
    return tuple(tuple(r) for r in m)


def finite_form(family: str, n: int) -> Matrix:
    """Bilinear form of a finite type in Bourbaki numbering (0-based)."""
    if family == "A":
        return _chain([2] * n, {(i, i + 1): -1 for i in range(n - 1)})
    if family == "B":
        return _chain([4] * (n - 1) + [2], {(i, i + 1): -2 for i in range(n - 1)})
    if family == "C":
        if n == 1:
            return ((4,),)
        bonds = {(i, i + 1): -1 for i in range(n - 2)}
        bonds[(n - 2, n - 1)] = -2
        return _chain([2] * (n - 1) + [4], bonds)
    if family == "D":
        bonds = {(i, i + 1): -1 for i in range(n - 2)}
        bonds[(n - 3, n - 1)] = -1
        return _chain([2] * n, bonds)
    if family == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
        return _chain([2] * n, {e: -1 for e in edges})
    if family == "F":
        return _chain([4, 4, 2, 2], {(0, 1): -2, (1, 2): -2, (2, 3): -1})
    if family == "G":
        return _chain([6, 2], {(0, 1): -3})
    raise LabelError(family)


def _reverse(form: Matrix) -> Matrix:
    return tuple(tuple(reversed(r)) for r in reversed(form))


def _scale(form: Matrix, c: int) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in form)


def closure_roots(form: Matrix) -> set[Vec]:
    """All roots of a finite system, by closing the simple roots under reflections."""
    n = len(form)
    cartan = cartan_from_form(form)
    start = {unit(n, i) for i in range(n)} | {tuple(-x for x in unit(n, i)) for i in range(n)}
    seen = set(start)
    todo = list(start)
    while todo:
        v = todo.pop()
        for i in range(n):
            c = sum(cartan[i][j] * v[j] for j in range(n))
            if c:
                w = tuple(v[j] - (c if j == i else 0) for j in range(n))
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
    return seen


def _highest(form: Matrix, norm: int | None = None) -> Vec:
    roots = closure_roots(form)
    if norm is not None:
        roots = {r for r in roots if pairing(form, r, r) == norm}
    return max(roots, key=lambda r: (sum(r), r))


def _affinize(fin: Matrix, theta: Vec, scale_div: int = 1) -> Matrix:
    """Prepend a node equal to (delta - theta)/scale_div to a finite form."""
    n = len(fin)
    t_norm = pairing(fin, theta, theta)
    row0 = [t_norm // (scale_div * scale_div)]
    for j in range(n):
        row0.append(-pairing(fin, theta, unit(n, j)) // scale_div)
    m = [row0] + [[row0[i + 1]] + list(fin[i]) for i in range(n)]
    return tuple(tuple(r) for r in m)


def _affine_form(lab: TypeLabel) -> tuple[Matrix, Vec, int]:
    """Return (form, expected marks, twist order)."""
    f, n, k = lab.family, lab.finite_rank, lab.twist
    if k == 1:
        fin = finite_form(f, n)
        theta = _highest(fin)
        return _affinize(fin, theta), (1,) + theta, 1
    if f == "A" and lab.rank % 2 == 0:
        fin = _scale(finite_form("C", n), 2)
        theta = _highest(fin)
        return _affinize(fin, theta, 2), (2,) + theta, 2
    if f == "A":
        fin = finite_form("C", n)
    elif f == "D" and k == 2:
        fin = finite_form("B", n)
    elif f == "E":
        fin = _reverse(finite_form("F", 4))
    else:
        fin = _reverse(finite_form("G", 2))
    theta_s = _highest(fin, 2)
    return _affinize(fin, theta_s), (1,) + theta_s, k


def primitive_kernel(cartan: Matrix) -> Vec:
    """Primitive positive integer vector spanning the kernel of a corank-1 matrix."""
    ns = sympy.Matrix(cartan).nullspace()
    if len(ns) != 1:
        raise ValueError("matrix does not have a one-dimensional kernel")
    v = ns[0]
    den = sympy.ilcm(*[sympy.fraction(x)[1] for x in v])
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = sympy.igcd(g, x)
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise ValueError("kernel vector is not positive")
    return tuple(ints)


@lru_cache(maxsize=None)
def build_datum(lab: TypeLabel | str) -> CartanDatum:
    if isinstance(lab, str):
        lab = parse_label(lab)
    if not lab.affine:
        form = finite_form(lab.family, lab.rank)
        return CartanDatum(lab, cartan_from_form(form), form, None, 0, 0,
                           max(r[i] for i, r in enumerate(form)))
    form, expected, k = _affine_form(lab)
    cartan = cartan_from_form(form)
    marks = primitive_kernel(cartan)
    assert marks == expected, (lab, marks, expected)
    return CartanDatum(lab, cartan, form, marks, marks[0], k,
                       max(r[i] for i, r in enumerate(form)))


# -- catalog --------------------------------------------------------------

def catalog(max_rank: int = 8) -> list[tuple[TypeLabel, str]]:
    """Every supported label up to the given finite rank, with its legal range."""
    out: list[tuple[TypeLabel, str]] = []
    ranges = {
        ("A", 0): (1, "n >= 1"), ("B", 0): (2, "n >= 2"), ("C", 0): (2, "n >= 2"),
        ("D", 0): (4, "n >= 4"), ("A", 1): (1, "n >= 1"), ("B", 1): (3, "n >= 3"),
        ("C", 1): (2, "n >= 2"), ("D", 1): (4, "n >= 4"),
    }
    for (f, tw), (lo, desc) in ranges.items():
        for n in range(lo, max_rank + 1):
            out.append((TypeLabel(f, n, tw), desc))
    for tw in (0, 1):
        for n in (6, 7, 8):
            out.append((TypeLabel("E", n, tw), "n in 6..8"))
        out.append((TypeLabel("F", 4, tw), "fixed"))
        out.append((TypeLabel("G", 2, tw), "fixed"))
    for n in range(2, max_rank + 1):
        out.append((TypeLabel("D", n + 1, 2), "D_{n+1}, n >= 2"))
    for n in range(3, max_rank + 1):
        out.append((TypeLabel("A", 2 * n - 1, 2), "A_{2n-1}, n >= 3"))
    for n in range(1, max_rank + 1):
        out.append((TypeLabel("A", 2 * n, 2), "A_{2n}, n >= 1"))
    out.append((TypeLabel("E", 6, 2), "fixed"))
    out.append((TypeLabel("D", 4, 3), "fixed"))
    return out


def affine_labels(max_rank: int = 8) -> list[TypeLabel]:
    return [lab for lab, _ in catalog(max_rank) if lab.affine]


def _labels_of_size(size: int) -> list[TypeLabel]:
    out = []
    for f in FAMILIES:
        for tw in (0, 1, 2, 3):
            for r in range(1, 2 * size + 1):
                try:
                    lab = TypeLabel(f, r, tw)
                except LabelError:
                    continue
                if lab.size == size:
                    out.append(lab)
    return out


# Isomorphic names that fall outside the catalog's ranges, mapped to catalog form.
_ALIASES: dict[tuple[str, int, int], list[tuple[str, int, int]]] = {
    ("C", 2, 0): [("B", 2, 0)],
    ("D", 3, 0): [("A", 3, 0)],
    ("D", 2, 0): [("A", 1, 0), ("A", 1, 0)],
    ("D", 3, 1): [("A", 3, 1)],
    ("D", 2, 1): [("A", 1, 1), ("A", 1, 1)],
    ("B", 2, 1): [("C", 2, 1)],
    ("A", 3, 2): [("D", 3, 2)],
}


def normalize(labels: Sequence[tuple[str, int, int] | TypeLabel]) -> list[TypeLabel]:
    """Canonical catalog labels for a product type, resolving small-rank aliases."""
    out: list[TypeLabel] = []
    for item in labels:
        key = (item.family, item.rank, item.twist) if isinstance(item, TypeLabel) else tuple(item)
        for f, r, tw in _ALIASES.get(key, [key]):
            out.append(TypeLabel(f, r, tw))
    return sorted(out, key=_sort_key)


def _sort_key(lab) -> tuple:
    if isinstance(lab, Unrecognized):
        return (len(lab.matrix), "~", 0, 0, lab.matrix)
    return (lab.size, lab.family, lab.rank, lab.twist, ())


# -- identification -----------------------------------------------------------

@dataclass(frozen=True)
class Component:
    """A connected piece of a GCM with its catalog match.

    ``nodes[k]`` is the original index playing the role of catalog node k.
    """

    label: TypeLabel | Unrecognized
    nodes: tuple[int, ...]


def check_gcm(g: Matrix) -> None:
    n = len(g)
    for i in range(n):
        if g[i][i] != 2:
            raise ValueError("diagonal of a GCM must be 2")
        for j in range(n):
            if i != j and (g[i][j] > 0 or (g[i][j] == 0) != (g[j][i] == 0)):
                raise ValueError(f"invalid GCM entry at ({i},{j})")


def components(g: Matrix) -> list[list[int]]:
    n = len(g)
    seen: set[int] = set()
    comps = []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and g[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _signature(m: Matrix, i: int) -> tuple:
    off = sorted((m[i][j], m[j][i]) for j in range(len(m)) if j != i and (m[i][j] or m[j][i]))
    return (m[i][i], tuple(off))


def match_matrix(target: Matrix, sub: Matrix) -> tuple[int, ...] | None:
    """Find p with sub[p[a]][p[b]] == target[a][b] for all a, b, or None."""
    n = len(target)
    if n != len(sub):
        return None
    tsig = [_signature(target, i) for i in range(n)]
    ssig = [_signature(sub, i) for i in range(n)]
    if sorted(tsig) != sorted(ssig):
        return None
    if target == sub:
        return tuple(range(n))
    assign: list[int] = []
    used = [False] * n

    def rec(a: int) -> bool:
        if a == n:
            return True
        for p in range(n):
            if used[p] or ssig[p] != tsig[a]:
                continue
            if all(sub[p][assign[b]] == target[a][b] and sub[assign[b]][p] == target[b][a]
                   for b in range(a)):
                assign.append(p)
                used[p] = True
                if rec(a + 1):
                    return True
                assign.pop()
                used[p] = False
        return False

    return tuple(assign) if rec(0) else None


def _submatrix(g: Matrix, idx: Sequence[int]) -> Matrix:
    return tuple(tuple(g[i][j] for j in idx) for i in idx)


def decompose(g: Matrix) -> list[Component]:
    """Split a GCM into components and match each against the catalog."""
    g = tuple(tuple(int(x) for x in r) for r in g)
    check_gcm(g)
    out = []
    for comp in components(g):
        sub = _submatrix(g, comp)
        found = None
        cands = _labels_of_size(len(comp))
        for lab in cands:
            if build_datum(lab).cartan == sub:
                found = (lab, tuple(range(len(comp))))
                break
        if found is None:
            for lab in cands:
                if lab == TypeLabel("C", 2, 0):
                    continue  # same diagram as B2
                p = match_matrix(build_datum(lab).cartan, sub)
                if p is not None:
                    found = (lab, p)
                    break
        if found is None:
            out.append(Component(Unrecognized(sub), tuple(comp)))
        else:
            lab, p = found
            out.append(Component(lab, tuple(comp[i] for i in p)))
    out.sort(key=lambda c: (_sort_key(c.label), c.nodes))
    return out


def identify_type(g: Matrix) -> list[TypeLabel | Unrecognized]:
    """Dynkin types of the connected components of a GCM, canonically ordered."""
    return [c.label for c in decompose(g)]


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def dual_datum(lab: TypeLabel | str) -> tuple[TypeLabel, tuple[int, ...]]:
    """Dual affine type and the index map: node i corresponds to dual node perm[i]."""
    if isinstance(lab, str):
        lab = parse_label(lab)
    if not lab.affine:
        raise LabelError("duality is only provided for affine labels")
    (comp,) = decompose(transpose(build_datum(lab).cartan))
    assert isinstance(comp.label, TypeLabel)
    perm = [0] * len(comp.nodes)
    for k, i in enumerate(comp.nodes):
        perm[i] = k
    return comp.label, tuple(perm)


def format_matrix(m: Matrix) -> str:
    width = max(len(str(x)) for r in m for x in r)
    return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in m)

