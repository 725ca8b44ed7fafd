import numpy as np
import pytest

from weylspin import enumeration, tits, weyl
from weylspin.errors import BudgetExceeded
from weylspin.rootsystem import build

# number of elements with no fixed vector equals the product of the degrees
# minus one; checked against the classical degree lists
DEGREES = {"A2": [2, 3], "B2": [2, 4], "B3": [2, 4, 6], "G2": [2, 6],
           "D4": [2, 4, 4, 6], "F4": [2, 6, 8, 12], "E6": [2, 5, 6, 8, 9, 12]}


def test_group_orders():
    assert enumeration.group_order(build("A3")) == 24
    assert enumeration.group_order(build("B4")) == 384
    assert enumeration.group_order(build("D4")) == 192
    assert enumeration.group_order(build("E7")) == 2903040


def test_enumerate_group_sizes_and_keys_unique():
    for name in ["A2", "B3", "D4", "G2"]:
        rs = build(name)
        table = enumeration.enumerate_group(rs)
        assert len(table) == enumeration.group_order(rs)
        assert len(np.unique(table.keys)) == len(table)


def test_elliptic_counts_match_degree_product():
    for name, degs in DEGREES.items():
        rs = build(name)
        table = enumeration.enumerate_group(rs)
        count = int(enumeration.elliptic_mask(table).sum())
        want = int(np.prod([d - 1 for d in degs]))
        assert count == want, name


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        enumeration.enumerate_group(build("E7"), budget=1000)


def test_conjugacy_partition_consistency():
    rs = build("B3")
    table = enumeration.enumerate_group(rs)
    classes = enumeration.elliptic_conjugacy_classes(rs, table)
    ell = enumeration.elliptic_mask(table)
    # every elliptic element classified, non-elliptic untouched
    assert (classes.class_id >= 0).sum() == ell.sum()
    assert all(classes.class_id[~ell] == -1)
    sizes = sorted(size for _, size in classes.reps)
    assert sum(sizes) == int(ell.sum())
    # class invariants constant on a sampled class
    cid = 0
    members = np.flatnonzero(classes.class_id == cid)[:10]
    cps = {enumeration.element_at(rs, table, int(i)).char_poly() for i in members}
    assert len(cps) == 1


def test_class_of_lookup():
    rs = build("C3")
    table = enumeration.enumerate_group(rs)
    classes = enumeration.elliptic_conjugacy_classes(rs, table)
    w = weyl.coxeter_element(rs)
    cid = enumeration.class_of(rs, table, classes, w)
    u = weyl.random_element(rs, 11)
    assert enumeration.class_of(rs, table, classes, u * w * u.inverse()) == cid


def test_sample_elliptic_yields_elliptic():
    rs = build("B3")
    mats = enumeration.sample_elliptic(rs, 64, seed=5)
    eye = np.eye(3)
    assert mats.shape == (64, 3, 3)
    assert np.all(np.abs(np.linalg.det(mats - eye)) > 0.5)


def test_sampling_is_seeded_and_reproducible():
    rs = build("D4")
    a = enumeration.sample_elliptic(rs, 32, seed=9)
    b = enumeration.sample_elliptic(rs, 32, seed=9)
    assert np.array_equal(a, b)
    c = enumeration.sample_elliptic(rs, 32, seed=10)
    assert not np.array_equal(a, c)


def test_batch_char_polys_exact():
    rs = build("F4")
    mats = enumeration.sample_elliptic(rs, 25, seed=3)
    cps = enumeration.batch_char_polys(mats)
    for k in range(25):
        w = weyl.WeylElement(rs, tuple(tuple(int(x) for x in row) for row in mats[k]))
        assert tuple(int(c) for c in cps[k][::-1]) == w.char_poly()


def test_batch_signatures_match_reference():
    for name in ["B4", "D5", "E6"]:
        rs = build(name)
        mats = enumeration.sample_elliptic(rs, 20, seed=2)
        orders, sigs = enumeration.batch_signatures(rs, mats)
        for k in range(20):
            w = weyl.WeylElement(rs, tuple(tuple(int(x) for x in row) for row in mats[k]))
            assert int(orders[k]) == w.order()
            assert tuple(int(b) for b in sigs[k]) == tits.spin_signature(w).bits
