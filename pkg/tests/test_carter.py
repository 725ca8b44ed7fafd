import json

import pytest

from weylspin import carter, tits, weyl
from weylspin.errors import BudgetExceeded, DomainError
from weylspin.rootsystem import build


def test_dynkin_diagram_gives_coxeter_class():
    rs = build("B3")
    diag = carter.diagram_of(rs, [r.coords for r in rs.simple_roots])
    assert diag.is_elliptic_shape()
    assert diag.element() == weyl.coxeter_element(rs)
    assert len(diag.components()) == 1
    assert diag.name == "B3"


def test_orthogonal_nodes_give_minus_identity():
    rs = build("D4")
    # e1-e2, e1+e2, e3-e4, e3+e4 in simple-root coordinates
    nodes = [(1, 0, 0, 0), (1, 2, 1, 1), (0, 0, 1, 0), (0, 0, 0, 1)]
    diag = carter.diagram_of(rs, nodes)
    assert diag.bonds == {}
    assert diag.name == "A1^4"
    w = diag.element()
    assert w.matrix == tuple(tuple(-1 if i == j else 0 for j in range(4)) for i in range(4))


def test_single_node_not_elliptic():
    rs = build("B3")
    diag = carter.diagram_of(rs, [(1, 0, 0)])
    assert not diag.is_elliptic_shape()
    assert not diag.element().is_elliptic()


def test_dependent_nodes_rejected():
    rs = build("A3")
    with pytest.raises(DomainError):
        carter.diagram_of(rs, [(1, 0, 0), (0, 1, 0), (1, 1, 0)])


def test_node_count_vs_ellipticity():
    # full-rank diagrams give elliptic products, truncated ones never do
    for name in ["B4", "C4", "D4"]:
        rs = build(name)
        for parts in carter.partitions(rs.rank):
            if rs.family == "D" and len(parts) % 2:
                continue
            if rs.family == "B":
                diag = carter.b_partition_diagram(rs, parts)
            elif rs.family == "C":
                diag = carter.c_partition_diagram(rs, parts)
            else:
                continue
            assert diag.element().is_elliptic()
            truncated = carter.diagram_of(rs, diag.nodes[:-1])
            assert not truncated.element().is_elliptic()


def test_spin_labeling():
    rs = build("E8")
    ext = carter.extended_nodes(rs)[-1]
    diag = carter.diagram_of(rs, [rs.simple_roots[0], ext])
    labels = diag.spin_labeling()
    assert labels == [(1,), (2, 4, 6)]
    rs = build("F4")
    ext = carter.extended_nodes(rs)[-1]
    assert carter.diagram_of(rs, [ext]).spin_labeling() == [(2, 4)]
    rs = build("B5")
    ext = carter.extended_nodes(rs)[-1]  # negative highest short root
    assert carter.diagram_of(rs, [ext]).spin_labeling() == [(5,)]


def test_content_and_relevance():
    rs = build("C6")
    diag = carter.c_partition_diagram(rs, (4, 2))
    comps = diag.components()
    assert sorted(len(c) for c in comps) == [2, 4]
    assert sorted(diag.component_orders()) == [4, 8]
    assert diag.content() == 3  # order 8
    rel = diag.relevant_components()
    assert len(rel) == 1 and len(rel[0]) == 4
    # n orthogonal nodes: everything relevant
    rs = build("D4")
    nodes = [(1, 0, 0, 0), (1, 2, 1, 1), (0, 0, 1, 0), (0, 0, 0, 1)]
    diag = carter.diagram_of(rs, nodes)
    assert len(diag.relevant_components()) == 4


def test_e7_a1_component_irrelevant():
    rs = build("E7")
    diag = carter.removal_diagram(rs, 4)  # A3^2 x A1
    rel = diag.relevant_components()
    assert sorted(len(c) for c in rel) == [3, 3]


def test_predict_b_examples():
    rs = build("B7")
    d1 = carter.b_partition_diagram(rs, (3, 3, 1))
    assert carter.b_signature_exponent([3, 3, 1]) == 2
    assert carter.predict_signature(d1) == (0,) * 7
    d2 = carter.b_partition_diagram(rs, (6, 1))
    assert carter.b_signature_exponent([6, 1]) == 1
    assert carter.predict_signature(d2) == (0, 0, 0, 0, 0, 0, 1)


def test_predict_c_examples():
    rs = build("C6")
    assert carter.predict_signature(carter.c_partition_diagram(rs, (4, 2))) == (0, 0, 1, 0, 1, 0)
    rs = build("C8")
    assert carter.predict_signature(carter.c_partition_diagram(rs, (6, 2))) == (1, 0, 1, 0, 1, 0, 1, 0)


def test_predict_matches_direct_for_all_b_partitions_small():
    for n in range(2, 7):
        rs = build(f"B{n}")
        for parts in carter.partitions(n):
            diag = carter.b_partition_diagram(rs, parts)
            assert carter.predict_signature(diag) == tits.spin_signature(diag.element()).bits


def test_predict_a_and_d():
    rs = build("A3")
    diag = carter.diagram_of(rs, [r.coords for r in rs.simple_roots])
    assert carter.predict_signature(diag) == (1, 0, 1)
    rs = build("A4")
    diag = carter.diagram_of(rs, [r.coords for r in rs.simple_roots])
    assert carter.predict_signature(diag) == (0,) * 4
    for n in (4, 5, 6, 7):
        rs = build(f"D{n}")
        diag = carter.diagram_of(rs, [r.coords for r in rs.simple_roots])
        want = (0,) * (n - 2) + (1, 1) if n % 4 in (2, 3) else (0,) * n
        assert carter.predict_signature(diag) == want
        assert tits.spin_signature(weyl.coxeter_element(rs)).bits == want


def test_predict_unsupported_shapes():
    rs = build("F4")
    diag = carter.removal_diagram(rs, 3)
    assert carter.predict_signature(diag) is None


def test_two_labelings_same_spin_different_signature():
    rs = build("C3")
    l1 = carter.removal_diagram(rs, 2)
    l2 = carter.removal_diagram(rs, 1)
    s1 = tits.spin_signature(l1.element()).bits
    s2 = tits.spin_signature(l2.element()).bits
    assert s1 == (1, 0, 0) and s2 == (0, 1, 0)
    for diag in (l1, l2):
        w = diag.element()
        assert tits.spin(w, rs.lattice("adjoint")) == -1
        assert tits.spin(w, rs.lattice("universal")) == -1


def test_component_labeling_rule_for_a_components():
    # a relevant simply laced A-chain contributes every other label
    rs = build("E6")
    diag = carter.removal_diagram(rs, 2)  # A5 x A1
    labels = diag.spin_labeling()
    comps = sorted(diag.components(), key=len)
    a1, a5 = comps
    path = [a5[0]]
    # walk the path order of the A5 component
    adj = {i: [j for j in a5 if (min(i, j), max(i, j)) in diag.bonds] for i in a5}
    ends = [i for i in a5 if len(adj[i]) == 1]
    prev, cur, path = None, ends[0], [ends[0]]
    while len(path) < len(a5):
        nxt = [x for x in adj[cur] if x != prev]
        prev, cur = cur, nxt[0]
        path.append(cur)
    bits = [0] * 6
    for pos in range(0, len(path), 2):
        for i in labels[path[pos]]:
            bits[i - 1] ^= 1
    for i in labels[a1[0]]:
        bits[i - 1] ^= 1
    assert tuple(bits) == tits.spin_signature(diag.element()).bits == (0,) * 6


# -- enumeration ----------------------------------------------------------

def test_diagram_class_counts():
    assert len(carter.enumerate_diagram_classes(build("A3"))) == 1
    assert len(carter.enumerate_diagram_classes(build("B5"))) == 7   # p(5)
    assert len(carter.enumerate_diagram_classes(build("C6"))) == 11  # p(6)
    assert len(carter.enumerate_diagram_classes(build("D6"))) == 6   # even-length partitions


def test_exhaustive_counts_exceptional():
    assert len(carter.enumerate_exhaustive_classes(build("G2"))) == 3
    assert len(carter.enumerate_exhaustive_classes(build("F4"))) == 9
    assert len(carter.enumerate_exhaustive_classes(build("E6"))) == 5


def test_exhaustive_budget():
    with pytest.raises(BudgetExceeded):
        carter.enumerate_exhaustive_classes(build("E8"), budget=1000000)


def test_diagram_vs_exhaustive_cross_check():
    for name in ["B3", "C4", "D5"]:
        rs = build(name)
        recs_d = {r.char_poly: r for r in carter.enumerate_diagram_classes(rs)}
        recs_e = carter.enumerate_exhaustive_classes(rs)
        assert len(recs_d) == len(recs_e)
        for e in recs_e:
            d = recs_d[e.char_poly]
            assert d.spins == e.spins and d.order == e.order


def test_sampling_strategy_g2():
    recs = carter.enumerate_sampling_classes(build("G2"), seed=3, count=300)
    # three distinct characteristic polynomials among the elliptic classes
    assert len(recs) == 3
    assert all(r.spins["universal"] == 1 for r in recs)
    assert sum(r.sample_count for r in recs) == 300


def test_final_chart_small():
    for name in ["A2", "A3", "B4", "C4", "D5", "G2", "F4", "E6"]:
        rep = carter.verify_final_chart(build(name))
        assert rep.passed, (name, rep.notes)


def test_final_chart_e8_sampling_mode():
    rep = carter.verify_final_chart(build("E8"), samples=400, seed=5)
    assert rep.strategy == "sampling"
    assert rep.passed, rep.notes
    assert sum(item.get("order", 0) > 0 for item in rep.items) == len(rep.items)


def test_f4_chart_identifies_unique_negative_class():
    rep = carter.verify_final_chart(build("F4"))
    negatives = [item for item in rep.items if item.get("adjoint") == -1]
    assert len(negatives) == 1
    assert negatives[0]["class"] == "A3x~A1"
    assert negatives[0]["order"] == 4


def test_d_even_signatures_limited_to_coxeter_center_element():
    for n in (4, 6, 8):
        rs = build(f"D{n}")
        allowed = {(0,) * n, (0,) * (n - 2) + (1, 1)}
        for rec in carter.enumerate_diagram_classes(rs):
            assert tuple(rec.signature_bits) in allowed


def test_record_serialization_and_csv():
    recs = carter.enumerate_diagram_classes(build("B3"))
    doc = json.loads(recs[0].to_json())
    assert doc["type"] == "B3" and "spins" in doc
    csv = carter.records_to_csv(recs)
    assert csv.splitlines()[0] == "phi,gamma,adjoint_spin,universal_spin"
    assert len(csv.splitlines()) == len(recs) + 1


def test_partition_helpers():
    assert list(carter.partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(carter.partitions(4, even_length=True)) == [(3, 1), (2, 2), (1, 1, 1, 1)]
    assert carter.d_partition_name((3, 1)) == "D4"
    assert carter.d_partition_name((1, 1, 1, 1)) == "A1^4"
    assert carter.d_partition_name((3, 2)) == "D5(a1)"


def test_canonical_names_for_known_classes():
    rs = build("E7")
    assert carter.removal_diagram(rs, 4).name == "A3^2xA1"
    assert carter.removal_diagram(rs, 6).name == "A5xA2"
    assert carter.removal_diagram(rs, 5).name == "A7"
    assert carter.removal_diagram(build("F4"), 3).name == "A3x~A1"
    assert carter.b_partition_diagram(build("B7"), (3, 3, 1)).name == "B3^2xB1"
    assert carter.c_partition_diagram(build("C6"), (4, 2)).name == "C4xC2"
    assert carter.c_partition_diagram(build("C3"), (2, 1)).name == "C2xA1"
