"""Independent reference computations used to cross-check the package.

Nothing here calls the package's algorithms; inputs are plain matrices.
"""
from __future__ import annotations

import cmath
from itertools import permutations

import networkx as nx
import numpy as np


def coxeter_marks(family: str, rank: int, twist: int) -> list[int]:
    """Multiset of marks from the standard closed formulas (order ignored)."""
    if twist == 1:
        n = rank
        table = {
            "A": [1] * (n + 1),
            "B": [1, 1] + [2] * (n - 1),
            "C": [1] + [2] * (n - 1) + [1],
            "D": [1, 1, 1, 1] + [2] * (n - 3),
            "E": {6: [1, 1, 1, 2, 2, 2, 3], 7: [1, 1, 2, 2, 2, 3, 3, 4],
                  8: [1, 2, 2, 3, 3, 4, 4, 5, 6]}.get(n),
            "F": [1, 2, 3, 4, 2],
            "G": [1, 2, 3],
        }
        return sorted(table[family])
    if twist == 2:
        if family == "A" and rank % 2 == 0:
            return sorted([2] * (rank // 2) + [1])
        if family == "A":
            n = (rank + 1) // 2
            return sorted([1, 1, 1] + [2] * (n - 2))
        if family == "D":
            return [1] * rank
        if family == "E":
            return [1, 1, 2, 2, 3]
    if twist == 3:
        return [1, 1, 2]
    raise ValueError("not an affine type")


def finite_root_count(family: str, n: int) -> int:
    return {
        "A": n * (n + 1), "B": 2 * n * n, "C": 2 * n * n, "D": 2 * n * (n - 1),
        "E": {6: 72, 7: 126, 8: 240}.get(n, 0), "F": 48, "G": 12,
    }[family]


def pair(form, u, v) -> int:
    n = len(form)
    return sum(u[i] * form[i][j] * v[j] for i in range(n) for j in range(n))


def orbit_roots(cartan, bound: int) -> set[tuple[int, ...]]:
    """Simple-reflection orbit of the simple roots inside a coefficient box."""
    n = len(cartan)
    start = []
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        start += [e, tuple(-x for x in e)]
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                c = sum(cartan[i][j] * v[j] for j in range(n))
                w = list(v)
                w[i] -= c
                w = tuple(w)
                if max(map(abs, w)) <= bound and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def indecomposable(positive: set[tuple[int, ...]]) -> set[tuple[int, ...]]:
    """Members of a positive set that are not the sum of two members."""
    out = set()
    for v in positive:
        if not any(tuple(a - b for a, b in zip(v, u)) in positive for u in positive):
            out.add(v)
    return out


def qint_vanishes(m: int, e: int, ell: int) -> bool:
    """(m)_x = 1 + x + ... + x^(m-1) == 0 for x = exp(2 pi i e / ell), numerically."""
    x = cmath.exp(2j * cmath.pi * e / ell)
    return abs(sum(x ** k for k in range(m))) < 1e-9


def is_one(e: int, ell: int) -> bool:
    return abs(cmath.exp(2j * cmath.pi * e / ell) - 1) < 1e-9


def heckenberger_numeric(exps, ell: int, cap: int = 200):
    """Cartan matrix of a diagonal braiding using floating roots of unity."""
    n = len(exps)
    out = [[2] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for m in range(cap):
                if qint_vanishes(m + 1, exps[i][i], ell) or \
                        is_one(m * exps[i][i] + exps[i][j] + exps[j][i], ell):
                    out[i][j] = -m
                    break
            else:
                raise ValueError("unbounded")
    return tuple(tuple(r) for r in out)


def dynkin_graph(cartan) -> nx.DiGraph:
    g = nx.DiGraph()
    n = len(cartan)
    g.add_nodes_from(range(n))
    for i in range(n):
        for j in range(n):
            if i != j and cartan[i][j]:
                g.add_edge(i, j, a=cartan[i][j])
    return g


def same_diagram(c1, c2) -> bool:
    """Cartan matrices equal up to simultaneous reindexing, via graph isomorphism."""
    if len(c1) != len(c2):
        return False
    return nx.is_isomorphic(dynkin_graph(c1), dynkin_graph(c2),
                            edge_match=lambda x, y: x["a"] == y["a"])


def standard_u_bruteforce(exps, form, ell: int) -> int | None:
    """Least u with exps = u * form after some reindexing, by full permutation search."""
    n = len(form)
    for u in range(ell):
        for p in permutations(range(n)):
            if all(exps[p[i]][p[j]] % ell == u * form[i][j] % ell
                   for i in range(n) for j in range(n)):
                return u
    return None


def _keys(arr: np.ndarray, base: int) -> np.ndarray:
    w = base ** np.arange(arr.shape[-1], dtype=np.int64)
    return (arr + base // 2) @ w


def closure_violations(roots, form) -> list[int]:
    """Divisors t for which some alpha + beta lies in the parent but not in the t-part."""
    R = np.array(sorted(roots), dtype=np.int64)
    F = np.array(form, dtype=np.int64)
    norms = np.einsum("ij,jk,ik->i", R, F, R)
    base = 4 * int(np.abs(R).max()) + 3
    parent = set(_keys(R, base).tolist())
    bad = []
    for t in sorted({int(x) for x in norms}):
        S = R[norms % t == 0]
        sub = set(_keys(S, base).tolist())
        sums = _keys((S[:, None, :] + S[None, :, :]).reshape(-1, R.shape[1]), base).tolist()
        if any(k in parent and k not in sub for k in sums):
            bad.append(t)
    return bad
