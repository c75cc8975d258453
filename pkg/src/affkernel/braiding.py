"""Root-of-unity arithmetic and diagonal braidings attached to lists of degrees.

A value q^e with q of order ell is stored as the residue e mod ell, so all
tests below are exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Sequence

from .root_datum import (
    CartanDatum, Matrix, TypeLabel, Vec, build_datum, match_matrix, parse_label,
)


@dataclass(frozen=True)
class UnityExp:
    ell: int
    e: int

    def __post_init__(self) -> None:
        if self.ell < 1:
            raise ValueError("ell must be positive")
        object.__setattr__(self, "e", self.e % self.ell)

    @property
    def order(self) -> int:
        return self.ell // gcd(self.ell, self.e)

    def is_one(self) -> bool:
        return self.e == 0

    def __mul__(self, other: UnityExp) -> UnityExp:
        if other.ell != self.ell:
            raise ValueError("mismatched roots of unity")
        return UnityExp(self.ell, self.e + other.e)

    def __pow__(self, m: int) -> UnityExp:
        return UnityExp(self.ell, self.e * m)

    def __str__(self) -> str:
        if self.e == 0:
            return "1"
        if 2 * self.e == self.ell:
            return "-1"
        return f"q^{self.e}"


class UnboundedEntry(ValueError):
    """No finite m_ij exists for some pair of degrees."""


@dataclass(frozen=True)
class BraidingMat:
    ell: int
    degrees: tuple[Vec, ...]
    exps: Matrix

    @property
    def size(self) -> int:
        return len(self.exps)

    def q(self, i: int, j: int) -> UnityExp:
        return UnityExp(self.ell, self.exps[i][j])

    def as_dict(self) -> dict:
        return {
            "ell": self.ell,
            "degrees": [list(v) for v in self.degrees],
            "exponents": [list(r) for r in self.exps],
        }


def ell_alpha(ell: int, norm: int) -> int:
    """Order of q^norm when q has order ell."""
    return ell // gcd(ell, norm)


def braiding_matrix(datum: CartanDatum, degrees: Sequence[Vec], ell: int) -> BraidingMat:
    if not degrees:
        raise ValueError("need at least one degree")
    degs = tuple(tuple(v) for v in degrees)
    exps = tuple(tuple(datum.pairing(a, b) % ell for b in degs) for a in degs)
    return BraidingMat(ell, degs, exps)


def from_exponents(ell: int, exps: Sequence[Sequence[int]]) -> BraidingMat:
    """A braiding given directly by its exponent matrix (not necessarily symmetric)."""
    m = tuple(tuple(x % ell for x in r) for r in exps)
    return BraidingMat(ell, (), m)


def heckenberger_gcm(b: BraidingMat) -> Matrix:
    """Cartan matrix of the Nichols algebra of a diagonal braiding.

    m_ij is the least m >= 0 with either (m+1)_{q_ii} = 0 or q_ii^m q_ij q_ji = 1.
    """
    ell, e = b.ell, b.exps
    n = b.size
    rows = []
    for i in range(n):
        o = ell // gcd(ell, e[i][i])
        bound = lcm(o, ell)
        row = []
        for j in range(n):
            if i == j:
                row.append(2)
                continue
            for m in range(bound + 1):
                if (o > 1 and (m + 1) % o == 0) or (m * e[i][i] + e[i][j] + e[j][i]) % ell == 0:
                    row.append(-m)
                    break
            else:
                raise UnboundedEntry(f"no finite m for pair ({i},{j})")
        rows.append(tuple(row))
    g = tuple(rows)
    for i in range(n):
        for j in range(n):
            assert (g[i][j] == 0) == (g[j][i] == 0)
    return g


def _candidate_form(candidate: TypeLabel | str | CartanDatum) -> Matrix:
    if isinstance(candidate, CartanDatum):
        return candidate.form
    return build_datum(candidate).form


def standard_braiding_parameter(b: BraidingMat, candidate) -> int | None:
    """Least u with exps[s(i)][s(j)] = u * (b_i, b_j) for some reindexing s."""
    form = _candidate_form(candidate)
    if len(form) != b.size:
        raise ValueError("candidate size does not match the braiding")
    ell = b.ell
    for u in range(ell):
        target = tuple(tuple(u * x % ell for x in r) for r in form)
        if match_matrix(target, b.exps) is not None:
            return u
    return None


def twist_parameters(b: BraidingMat, candidate) -> list[int]:
    """All u for which the braiding agrees with q^u-standard form up to a twist.

    Only q_ii and the products q_ij q_ji are compared.
    """
    form = _candidate_form(candidate)
    if len(form) != b.size:
        raise ValueError("candidate size does not match the braiding")
    ell, e, n = b.ell, b.exps, b.size
    sym = tuple(tuple(e[i][i] if i == j else (e[i][j] + e[j][i]) % ell for j in range(n))
                for i in range(n))
    out = []
    for u in range(ell):
        target = tuple(tuple((u if i == j else 2 * u) * form[i][j] % ell for j in range(n))
                       for i in range(n))
        if match_matrix(target, sym) is not None:
            out.append(u)
    return out


@dataclass(frozen=True)
class LusztigResult:
    cond_a: bool
    violations: tuple[tuple[int, int], ...]
    cond_b: bool

    @property
    def holds(self) -> bool:
        return self.cond_a and self.cond_b


def lusztig_condition(datum: CartanDatum | TypeLabel | str, ell: int) -> LusztigResult:
    if not isinstance(datum, CartanDatum):
        datum = build_datum(datum)
    n = datum.size
    la = [ell_alpha(ell, datum.form[i][i]) for i in range(n)]
    a = datum.cartan
    bad = tuple((i, j) for i in range(n) for j in range(n)
                if i != j and la[j] >= 2 and la[i] < -a[i][j] + 1)
    lab = datum.label
    odd_cycle = lab.family == "A" and lab.twist == 1 and lab.rank % 2 == 0
    return LusztigResult(not bad, bad, not odd_cycle)


def commutator_primitive(ell: int, alpha: Vec, beta: Vec, datum: CartanDatum) -> bool:
    """Whether q^(alpha, beta) is +-1, i.e. ell divides 2 (alpha, beta)."""
    return (2 * datum.pairing(alpha, beta)) % ell == 0


def u_name(u: int | None, ell: int) -> str:
    """Readable form of q' = q^u."""
    if u is None:
        return "none"
    if u == 1 % ell:
        return "q"
    if u == (ell - 1) % ell:
        return "qbar"
    if ell % 2 == 0 and u == (1 + ell // 2) % ell:
        return "-q"
    return f"q^{u}"


def simple_braiding(lab: TypeLabel | str, ell: int) -> BraidingMat:
    d = build_datum(parse_label(lab) if isinstance(lab, str) else lab)
    return braiding_matrix(d, d.simple_roots(), ell)
