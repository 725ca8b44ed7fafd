import json

import pytest
from hypothesis import given, settings, strategies as st

from weylspin import tits
from weylspin.errors import ConfigurationError, DomainError
from weylspin.rootsystem import RootSystemType, build

ALL_SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"]

# classical root counts per family, the independent oracle for the closure
COUNTS = {"A": lambda n: n * (n + 1), "B": lambda n: 2 * n * n, "C": lambda n: 2 * n * n,
          "D": lambda n: 2 * n * (n - 1)}
EXCEPTIONAL_COUNTS = {"G2": 12, "F4": 48, "E6": 72, "E7": 126, "E8": 240}


def test_rank_bounds():
    for bad in [("A", 0), ("B", 1), ("C", 1), ("D", 3), ("E", 5), ("E", 9), ("F", 3), ("G", 3)]:
        with pytest.raises(ConfigurationError):
            RootSystemType(*bad)
    assert str(RootSystemType.parse("e7")) == "E7"


def test_root_counts():
    for name in ["A1", "A5", "B2", "B6", "C4", "D4", "D7"]:
        rs = build(name)
        assert len(rs.roots) == COUNTS[rs.family](rs.rank)
        assert 2 * len(rs.positive_roots) == len(rs.roots)
    for name, count in EXCEPTIONAL_COUNTS.items():
        assert len(build(name).roots) == count


def test_a1_trivial():
    rs = build("A1")
    assert [r.coords for r in rs.roots] == [(1,), (-1,)]


def test_g2_length_split():
    rs = build("G2")
    longs = [r for r in rs.roots if r.length_class == "long"]
    shorts = [r for r in rs.roots if r.length_class == "short"]
    assert len(longs) == len(shorts) == 6


def test_cartan_shape():
    for name in ALL_SMALL:
        rs = build(name)
        for i in range(rs.rank):
            assert rs.cartan[i][i] == 2
            for j in range(rs.rank):
                if i != j:
                    assert rs.cartan[i][j] <= 0


def test_reflection_closure_permutes_roots(rs_of):
    from weylspin import weyl

    for name in ["B3", "G2", "F4", "D4"]:
        rs = rs_of(name)
        coords = {r.coords for r in rs.roots}
        for alpha in rs.roots:
            s = weyl.reflection(rs, alpha)
            assert {s.act(c) for c in coords} == coords


def test_highest_root_dominates():
    for name in ALL_SMALL:
        rs = build(name)
        top = rs.highest_root.coords
        for r in rs.positive_roots:
            assert all(t >= c for t, c in zip(top, r.coords))


def test_simply_laced_all_long():
    for name in ["A3", "D4", "E6"]:
        rs = build(name)
        assert all(r.length_class == "long" for r in rs.roots)
        assert rs.highest_short_root == rs.highest_root


# -- coroots -------------------------------------------------------------

def test_coroot_of_simple_is_basis_vector():
    for name in ALL_SMALL:
        rs = build(name)
        for i, r in enumerate(rs.simple_roots):
            assert rs.coroot(r) == tuple(1 if j == i else 0 for j in range(rs.rank))


def test_coroot_negative_highest_e7():
    rs = build("E7")
    neg = tuple(-c for c in rs.highest_root.coords)
    assert rs.coroot(neg) == (-1, -2, -3, -4, -2, -3, -2)


def test_coroot_negative_highest_c_all_odd():
    for n in (3, 5, 8):
        rs = build(f"C{n}")
        neg = tuple(-c for c in rs.highest_root.coords)
        assert all(c % 2 for c in rs.coroot(neg))
        assert rs.coroot(neg) == (-1,) * n


def test_extension_node_labels_match_families():
    # coroot of the negative highest (short for B) root, reduced mod 2
    cases = {
        "B5": (0, 0, 0, 0, 1),
        "C5": (1, 1, 1, 1, 1),
        "E6": (1, 0, 1, 0, 0, 1),
        "E7": (1, 0, 1, 0, 0, 1, 0),
        "E8": (0, 1, 0, 1, 0, 1, 0, 0),
        "F4": (0, 1, 0, 1),
    }
    for name, bits in cases.items():
        rs = build(name)
        high = rs.highest_short_root if rs.family == "B" else rs.highest_root
        neg = tuple(-c for c in high.coords)
        assert tuple(c % 2 for c in rs.coroot(neg)) == bits


def test_coroot_rejects_non_roots():
    rs = build("B3")
    with pytest.raises(DomainError):
        rs.coroot((5, 5, 5))


# -- chains ----------------------------------------------------------------

def test_chain_examples():
    rs = build("B3")
    # short orthogonal pair e_2, e_3 in coordinates: e_2 = a2 + a3, e_3 = a3
    e2, e3 = (0, 1, 1), (0, 0, 1)
    assert rs.root_chain(e2, e3) == (1, 1)
    rs = build("A3")
    # orthogonal roots in a simply laced system have trivial chains
    a, b = (1, 0, 0), (0, 0, 1)
    assert rs.root_chain(a, b) == (0, 0)
    # adjacent simple roots on a single bond
    p, q = rs.root_chain((1, 0, 0), (0, 1, 0))
    assert {p, q} == {0, 1}


def test_chain_rejects_proportional():
    rs = build("A2")
    with pytest.raises(DomainError):
        rs.root_chain((1, 0), (-1, 0))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["B3", "C3", "G2", "D4", "A3"]), st.data())
def test_chain_identity_matches_pairing(name, data):
    rs = build(name)
    alpha = data.draw(st.sampled_from(rs.roots))
    beta = data.draw(st.sampled_from(rs.roots))
    if beta.coords == alpha.coords or beta.coords == tuple(-x for x in alpha.coords):
        return
    p, q = rs.root_chain(alpha, beta)
    assert p - q == rs._pair_roots(beta.coords, alpha.coords)


# -- center and lattices ----------------------------------------------------

def _center_expected(family: str, n: int) -> set[str]:
    if family == "A":
        return {"".join(f"h{i}" for i in range(1, n + 1, 2))} if (n + 1) % 2 == 0 else set()
    if family == "B":
        return {f"h{n}"}
    if family == "C":
        k = 2 * ((n - 1) // 2) + 1
        return {"".join(f"h{i}" for i in range(1, k + 1, 2))}
    if family == "D":
        if n % 2 == 0:
            return {
                "".join(f"h{i}" for i in range(1, n, 2)),
                f"h{n-1}h{n}",
                "".join(f"h{i}" for i in range(1, n - 2, 2)) + f"h{n}",
            }
        return {f"h{n-1}h{n}"}
    if family == "E" and n == 7:
        return {"h1h3h5"}
    return set()


def test_center_two_torsion_full_table():
    targets = ([f"A{n}" for n in range(1, 9)] + [f"B{n}" for n in range(2, 10)]
               + [f"C{n}" for n in range(2, 10)] + [f"D{n}" for n in range(4, 10)]
               + ["E6", "E7", "E8", "F4", "G2"])
    for name in targets:
        rs = build(name)
        got = {tits.torus_str(t) for t in rs.center_two_torsion()}
        assert got == _center_expected(rs.family, rs.rank), name


def test_lattice_enumeration_counts():
    # fundamental groups: Z/4 for A3 (3 subgroups), Z/2 x Z/2 for D4 (5)
    assert len(build("A3").cocharacter_lattices()) == 3
    assert len(build("D4").cocharacter_lattices()) == 5
    assert len(build("B4").cocharacter_lattices()) == 2
    assert len(build("G2").cocharacter_lattices()) == 1
    lats = build("A3").cocharacter_lattices()
    assert lats[0].kind == "universal" and lats[-1].kind == "adjoint"
    assert [l.index_over_coroots() for l in lats] == [1, 2, 4]


def test_lattices_contain_coroots_and_pair_integrally():
    from fractions import Fraction

    for name in ["A3", "D4", "B3", "E7"]:
        rs = build(name)
        for lat in rs.cocharacter_lattices():
            # every coroot is an integer combination of the basis
            for i in range(rs.rank):
                e = [Fraction(1 if j == i else 0) for j in range(rs.rank)]
                from weylspin.rootsystem import _rational_solve
                sol = _rational_solve([list(r) for r in lat.basis], e)
                assert all(x.denominator == 1 for x in sol)
            # every basis vector pairs integrally with every root
            for j in range(rs.rank):
                col = [lat.basis[i][j] for i in range(rs.rank)]
                for k in range(rs.rank):
                    pairing = sum(col[i] * rs.cartan[k][i] for i in range(rs.rank))
                    assert pairing.denominator == 1


def test_reduces_trivially():
    rs = build("B4")
    uni, adj = rs.lattice("universal"), rs.lattice("adjoint")
    zero = (0, 0, 0, 0)
    assert rs.reduces_trivially(zero, uni)
    h_n = (0, 0, 0, 1)
    assert not rs.reduces_trivially(h_n, uni)
    assert rs.reduces_trivially(h_n, adj)  # central, hence trivial in the adjoint group
    rs = build("E7")
    assert not rs.reduces_trivially((1, 0, 1, 0, 1, 0, 0), rs.lattice("universal"))
    assert rs.reduces_trivially((1, 0, 1, 0, 1, 0, 0), rs.lattice("adjoint"))


def test_json_serialization_is_canonical():
    rs = build("B3")
    doc = json.loads(rs.to_json())
    assert doc["type"] == "B3"
    assert len(doc["roots"]) == 18
    assert rs.to_json() == build("B3").to_json()
