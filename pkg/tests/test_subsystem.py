import pytest

from affkernel.root_datum import TypeLabel, build_datum, catalog
from affkernel.root_enum import datum_roots, is_positive, level, real_roots
from affkernel.subsystem import (
    PiTableEntry, affine_table, divisible_subsystem, find_simple_system, finite_table,
    subsystem_report, verify_pi_table,
)
from oracles import closure_violations, indecomposable

SMALL = [lab for lab, _ in catalog(8) if lab.size <= 7]


def _sub(lab, t, L=4):
    return divisible_subsystem(datum_roots(lab, L), t)


def test_divisible_examples():
    b3 = _sub("B3", 4)
    assert len(b3) == 12 and all(b3.datum.norm(r) == 4 for r in b3)
    full = datum_roots("C3~1", 2)
    assert divisible_subsystem(full, 1).roots == full.roots
    assert len(_sub("A3~1", 4)) == 0


def test_simple_system_examples():
    got = find_simple_system(_sub("C2~1", 4))
    assert sorted(got) == sorted([(0, 0, 1), (0, 2, 1), (1, 0, 0), (1, 2, 0)])
    assert find_simple_system(_sub("A2~1", 2)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert sorted(find_simple_system(_sub("A2~2", 8))) == [(0, 1), (4, 1)]
    with pytest.raises(ValueError):
        find_simple_system(_sub("A2~1", 2, L=1))


def test_report_examples():
    r = subsystem_report("D4~3", 3, 6)
    assert r.identified == [TypeLabel("A", 2, 1)] and r.delta_factor == 3
    assert sorted(r.simple) == sorted([(3, 3, 1), (0, 0, 1), (0, 3, 1)])
    r = subsystem_report("A4~2", 4, 6)
    assert r.identified == [TypeLabel("D", 3, 2)] and r.delta_factor == 1
    assert (2, 1, 0) in r.simple
    r = subsystem_report("E8~1", 4, 6)
    assert len(r.roots) == 0 and r.simple == []


def test_simple_system_order_independent():
    sub = _sub("B3~1", 4)
    shuffled = sub.with_roots(list(sub.roots)[::-1])
    assert find_simple_system(shuffled) == find_simple_system(sub)


@pytest.mark.parametrize("entry", finite_table(8) + affine_table(8),
                         ids=lambda e: f"{e.parent}-t{e.t}")
def test_pi_table_rows(entry):
    chk = verify_pi_table(entry, 6)
    assert chk.passed, chk.details


@pytest.mark.parametrize("entry", [e for e in affine_table(5)], ids=lambda e: f"{e.parent}-t{e.t}")
def test_simple_system_indecomposable_oracle(entry):
    L = 6
    d = build_datum(entry.parent)
    sub = _sub(entry.parent, entry.t, L)
    pos = {r for r in sub if is_positive(r)}
    pos |= {tuple(m * x for x in d.delta) for m in range(1, L + 1) if m * d.delta[0] <= L * d.a0}
    low = {v for v in indecomposable(pos) if 2 * level(d, v) <= L and d.norm(v)}
    assert low == set(entry.expected_simple)


def test_corrupted_entry_fails():
    e = [x for x in finite_table(4) if str(x.parent) == "F4"][0]
    bad_simple = list(e.expected_simple)
    bad_simple[-1] = tuple(c + (1 if i == 0 else 0) for i, c in enumerate(bad_simple[-1]))
    bad = PiTableEntry(e.parent, e.t, e.expected_type, tuple(bad_simple), e.delta_factor,
                       e.counts, e.note)
    chk = verify_pi_table(bad)
    assert not (chk.checks["a_members"] and chk.checks["b_type"])


def test_f4_and_b3_examples():
    f4 = [x for x in finite_table(4) if str(x.parent) == "F4"][0]
    assert sorted(f4.expected_simple) == sorted([(1, 0, 0, 0), (0, 1, 0, 0), (0, 1, 2, 0),
                                                 (0, 1, 2, 2)])
    assert verify_pi_table(f4).passed
    b3 = [x for x in affine_table(3) if str(x.parent) == "B3~1"][0]
    assert b3.expected_type == (TypeLabel("A", 3, 1),)
    assert verify_pi_table(b3).passed


def test_delta_factor_rule():
    # twist order, except A_{2n}^(2) at t=4 where the factor is 1
    for e in affine_table(8):
        lab = e.parent
        want = lab.twist
        if lab.family == "A" and lab.twist == 2 and lab.rank % 2 == 0:
            want = 1 if e.t == 4 and lab.rank > 2 else 2
        assert e.delta_factor == want, (lab, e.t)


@pytest.mark.parametrize("lab", SMALL, ids=str)
def test_divisibility_closure(lab):
    """alpha, beta in the subsystem and alpha+beta a root imply alpha+beta in the subsystem."""
    d = build_datum(lab)
    allr = real_roots(d, 4) if d.affine else datum_roots(lab)
    assert closure_violations(allr.roots, d.form) == []
