"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Every expected value here is exact; there are no numeric tolerances anywhere
(the only floating point in the package is behind exactness checks).
"""

import numpy as np

from weylspin import carter, enumeration, intpoly, tits, weyl
from weylspin.oracles import (classical_spin_check, clifford_spin_check,
                              sl_realization, sp_realization, spin_realization,
                              verify_relations)
from weylspin.rootsystem import build

E8_SAMPLE_COUNT = 100_000
E8_SEED = 2024


def _report(num: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num:02d} {name}: {status}" + (f" [{detail}]" if detail else ""))
    assert ok, f"criterion {num} ({name}) failed: {detail}"


def _chart_targets():
    return ([f"A{n}" for n in range(1, 9)] + [f"B{n}" for n in range(2, 10)]
            + [f"C{n}" for n in range(2, 10)] + [f"D{n}" for n in range(4, 10)]
            + ["G2", "F4", "E6", "E7"])


def test_criterion_01_final_chart():
    failures = []
    rows = 0
    for name in _chart_targets():
        rep = carter.verify_final_chart(build(name))
        rows += len(rep.items)
        if not rep.passed:
            failures.extend(rep.notes or [f"{name} failed"])
    _report(1, "final chart replication", not failures,
            f"{rows} class rows over {len(_chart_targets())} systems" if not failures
            else "; ".join(failures[:4]))


def test_criterion_02_e8_uniform_spin():
    rs = build("E8")
    mats = enumeration.sample_elliptic(rs, E8_SAMPLE_COUNT, seed=E8_SEED)
    orders, sigs = enumeration.batch_signatures(rs, mats)
    bad_orders = int((orders <= 0).sum())
    nonzero = int(np.count_nonzero(sigs.any(axis=1)))
    cps = enumeration.batch_char_polys(mats)
    buckets: dict[tuple, int] = {}
    for row in map(tuple, cps):
        buckets[row] = buckets.get(row, 0) + 1
    print(f"  E8 charpoly buckets: {len(buckets)} distinct polynomials over "
          f"{E8_SAMPLE_COUNT} elliptic samples")
    for row, count in sorted(buckets.items(), key=lambda kv: -kv[1])[:5]:
        poly = tuple(int(c) for c in row[::-1])
        print(f"    {count:7d}  {intpoly.format_factored(None, poly)}")
    _report(2, "E8 uniform spin by sampling", bad_orders == 0 and nonzero == 0,
            f"{E8_SAMPLE_COUNT} samples, {len(buckets)} charpoly buckets, "
            f"{nonzero} nontrivial signatures")


def _expected_center(family: str, n: int) -> set[str]:
    if family == "A":
        return {"".join(f"h{i}" for i in range(1, n + 1, 2))} if (n + 1) % 2 == 0 else set()
    if family == "B":
        return {f"h{n}"}
    if family == "C":
        k = 2 * ((n - 1) // 2) + 1
        return {"".join(f"h{i}" for i in range(1, k + 1, 2))}
    if family == "D":
        if n % 2 == 0:
            return {"".join(f"h{i}" for i in range(1, n, 2)), f"h{n-1}h{n}",
                    "".join(f"h{i}" for i in range(1, n - 2, 2)) + f"h{n}"}
        return {f"h{n-1}h{n}"}
    if (family, n) == ("E", 7):
        return {"h1h3h5"}
    return set()


def test_criterion_03_center_table():
    targets = ([f"A{n}" for n in range(1, 9)] + [f"B{n}" for n in range(2, 10)]
               + [f"C{n}" for n in range(2, 10)] + [f"D{n}" for n in range(4, 10)]
               + ["E6", "E7", "E8", "F4", "G2"])
    bad = []
    for name in targets:
        rs = build(name)
        got = {tits.torus_str(t) for t in rs.center_two_torsion()}
        if got != _expected_center(rs.family, rs.rank):
            bad.append(name)
    _report(3, "center 2-torsion table", not bad,
            f"{len(targets)} systems" if not bad else f"mismatches: {bad}")


def test_criterion_04_coxeter_signatures():
    bad = []
    for n in range(2, 10):
        rs = build(f"A{n-1}")
        want = tuple(1 if i % 2 == 0 else 0 for i in range(n - 1)) if n % 2 == 0 else (0,) * (n - 1)
        if tits.spin_signature(weyl.coxeter_element(rs)).bits != want:
            bad.append(f"A{n-1}")
    for n in range(2, 10):
        rs = build(f"B{n}")
        k = (n + 1) // 2
        want = tuple(0 if i < n - 1 else k % 2 for i in range(n))
        if tits.spin_signature(weyl.minus_identity(rs)).bits != want:
            bad.append(f"B{n}")
        rs = build(f"C{n}")
        k = 2 * ((n - 1) // 2) + 1
        want = tuple(1 if (i % 2 == 0 and i < k) else 0 for i in range(n))
        if tits.spin_signature(weyl.minus_identity(rs)).bits != want:
            bad.append(f"C{n}")
    if tits.spin_signature(weyl.minus_identity(build("E7"))).bits != (1, 0, 1, 0, 1, 0, 0):
        bad.append("E7")
    for n in range(4, 10):
        rs = build(f"D{n}")
        want = (0,) * (n - 2) + (1, 1) if n % 4 in (2, 3) else (0,) * n
        if tits.spin_signature(weyl.coxeter_element(rs)).bits != want:
            bad.append(f"D{n}")
    _report(4, "closed-form signatures of Coxeter-type elements", not bad,
            "A/B/C/D/E7 families, ranks through 9" if not bad else f"mismatches: {bad}")


def test_criterion_05_type_b_formula():
    bad = []
    checked = 0
    for n in range(2, 10):
        rs = build(f"B{n}")
        for parts in carter.partitions(n):
            diag = carter.b_partition_diagram(rs, parts)
            pred = carter.predict_signature(diag)
            got = tits.spin_signature(diag.element()).bits
            checked += 1
            if pred != got:
                bad.append(f"B{n} {parts}")
    _report(5, "type B signature formula vs direct computation", not bad,
            f"{checked} partition diagrams" if not bad else f"mismatches: {bad[:4]}")


def test_criterion_06_type_c_rule():
    bad = []
    checked = 0
    for n in range(2, 10):
        rs = build(f"C{n}")
        uni, adj = rs.lattice("universal"), rs.lattice("adjoint")
        for parts in carter.partitions(n):
            w = carter.c_partition_diagram(rs, parts).element()
            checked += 1
            if tits.spin(w, uni) != -1:
                bad.append(f"C{n} {parts} universal")
            linked = weyl.is_linked_to_minus_identity(w)
            if (tits.spin(w, adj) == 1) != linked:
                bad.append(f"C{n} {parts} adjoint/linkage")
    _report(6, "type C rule (universal -1, adjoint by linkage)", not bad,
            f"{checked} classes" if not bad else f"mismatches: {bad[:4]}")


def test_criterion_07_worked_examples():
    cases = []

    def sig(w) -> str:
        return tits.torus_str(tits.spin_signature(w).bits)

    rs = build("B7")
    cases.append(("B7 (t^3+1)^2(t+1)", sig(carter.b_partition_diagram(rs, (3, 3, 1)).element()), "1"))
    cases.append(("B7 (t^6+1)(t+1)", sig(carter.b_partition_diagram(rs, (6, 1)).element()), "h7"))
    cases.append(("C6 C4xC2", sig(carter.c_partition_diagram(build("C6"), (4, 2)).element()), "h3h5"))
    cases.append(("C8 C6xC2", sig(carter.c_partition_diagram(build("C8"), (6, 2)).element()), "h1h3h5h7"))
    cases.append(("F4 A3x~A1", sig(carter.removal_diagram(build("F4"), 3).element()), "h4"))
    cases.append(("E6 A5xA1", sig(carter.removal_diagram(build("E6"), 2).element()), "1"))
    rs = build("E7")
    cases.append(("E7 A3^2xA1", sig(carter.removal_diagram(rs, 4).element()), "1"))
    cases.append(("E7 A5xA2", sig(carter.removal_diagram(rs, 6).element()), "h1h3h5"))
    cases.append(("E7 A7", sig(carter.removal_diagram(rs, 5).element()), "1"))
    rs = build("E8")
    cases.append(("E8 A5xA2xA1", sig(carter.removal_diagram(rs, 5).element()), "1"))
    cases.append(("E8 A7xA1", sig(carter.removal_diagram(rs, 7).element()), "1"))
    cases.append(("A3 coxeter", sig(weyl.coxeter_element(build("A3"))), "h1h3"))
    bad = [f"{label}: got {got}, want {want}" for label, got, want in cases if got != want]
    _report(7, "worked signature examples", not bad,
            f"{len(cases)} cases" if not bad else "; ".join(bad))


RELATION_TARGETS = ([f"A{n}" for n in range(1, 9)] + [f"B{n}" for n in range(2, 9)]
                    + [f"C{n}" for n in range(2, 9)] + [f"D{n}" for n in range(4, 9)]
                    + ["G2", "F4", "E6", "E7", "E8"])


def test_criterion_08_relation_suite(adjoint_of):
    failures = []
    pair_total = 0
    for name in RELATION_TARGETS:
        rep = verify_relations(build(name), sample_pairs=500, seed=17, adj=adjoint_of(name))
        pair_total += rep.checks.get("cr1", 0)
        if not rep.passed:
            failures.append(f"{name}: {rep.failures[0]}")
    _report(8, "relation suite in the adjoint oracle", not failures,
            f"{pair_total} sampled pairs over {len(RELATION_TARGETS)} systems"
            if not failures else "; ".join(failures[:3]))


def test_criterion_09_oracle_equivalence(adjoint_of):
    failures = []
    # adjoint oracle vs abstract model on sampled elliptic elements
    for name in RELATION_TARGETS:
        rs = build(name)
        adj = adjoint_of(name)
        lat = rs.lattice("adjoint")
        mats = enumeration.sample_elliptic(rs, 200, seed=31)
        orders, sigs = enumeration.batch_signatures(rs, mats)
        for k in range(mats.shape[0]):
            expected = 1 if rs.reduces_trivially(tuple(int(b) for b in sigs[k]), lat) else -1
            w = weyl.WeylElement(rs, tuple(tuple(int(x) for x in row) for row in mats[k]))
            if adj.spin_check(w) != expected:
                failures.append(f"adjoint {name} sample {k}")
                break
    # universal checks: SL for A, Sp for C, spin groups for B and D
    for n in range(1, 9):
        rs = build(f"A{n}")
        real = sl_realization(rs)
        w = weyl.coxeter_element(rs)
        if classical_spin_check(rs, w, real) != tits.spin(w, rs.lattice("universal")):
            failures.append(f"SL A{n}")
        for seed in range(25):
            w = _sampled_elliptic(rs, seed)
            if classical_spin_check(rs, w, real) != tits.spin(w, rs.lattice("universal")):
                failures.append(f"SL A{n} seed {seed}")
                break
    for n in range(2, 6):
        rs = build(f"C{n}")
        real = sp_realization(rs)
        uni = rs.lattice("universal")
        for rec in carter.enumerate_diagram_classes(rs):
            w = carter.c_partition_diagram(rs, rec.partition).element()
            if classical_spin_check(rs, w, real) != tits.spin(w, uni):
                failures.append(f"Sp C{n} {rec.name}")
        for seed in range(25):
            w = _sampled_elliptic(rs, seed)
            if classical_spin_check(rs, w, real) != tits.spin(w, uni):
                failures.append(f"Sp C{n} seed {seed}")
                break
    for name in ["B2", "B3", "B4", "D4", "D5"]:
        rs = build(name)
        real = spin_realization(rs)
        uni = rs.lattice("universal")
        for rec in carter.enumerate_diagram_classes(rs):
            if rs.family == "B":
                w = carter.b_partition_diagram(rs, rec.partition).element()
            else:
                w = carter.d_partition_element(rs, rec.partition)
            if clifford_spin_check(rs, w, real) != tits.spin(w, uni):
                failures.append(f"Spin {name} {rec.name}")
        for seed in range(6):
            w = _sampled_elliptic(rs, seed + 50)
            if clifford_spin_check(rs, w, real) != tits.spin(w, uni):
                failures.append(f"Spin {name} seed {seed}")
                break
    _report(9, "oracle equivalence (adjoint, SL, Sp, spin groups)", not failures,
            f"{len(RELATION_TARGETS)} adjoint systems x200 samples; classical and "
            "Clifford checks per class plus samples" if not failures
            else "; ".join(failures[:4]))


def _sampled_elliptic(rs, seed) -> weyl.WeylElement:
    mats = enumeration.sample_elliptic(rs, 1, seed=seed, batch=512)
    return weyl.WeylElement(rs, tuple(tuple(int(x) for x in row) for row in mats[0]))


def test_criterion_10_property_suite():
    import itertools
    import random

    failures = []
    # representative independence of the d-th power
    for name, exhaustive in [("A3", True), ("B3", True), ("C4", True), ("E7", False)]:
        rs = build(name)
        w = weyl.coxeter_element(rs)
        d = w.order()
        if exhaustive:
            torus_parts = itertools.product((0, 1), repeat=rs.rank)
        else:
            rng = random.Random(3)
            torus_parts = (tuple(rng.randrange(2) for _ in range(rs.rank)) for _ in range(32))
        sigs = {tits.power(tits.TitsElement(w, bits), d).t for bits in torus_parts}
        if len(sigs) != 1:
            failures.append(f"representative dependence in {name}")
    # reduced-word independence of the lift
    for name in ["B3", "F4", "D4"]:
        rs = build(name)
        for seed in range(4):
            w = weyl.random_element(rs, seed)
            g1 = tits.lift(w)
            word_high = _greedy_high_word(w)
            g2 = tits.identity(rs)
            for i in word_high:
                g2 = tits.multiply(g2, tits.lift(weyl.simple_reflection(rs, i)))
            folded = tits.multiply(tits.identity(rs), g1)
            if g2 != folded:
                failures.append(f"word dependence in {name} seed {seed}")
    # odd order forces a trivial signature
    for name in ["A4", "E6", "F4", "E8"]:
        rs = build(name)
        w = weyl.coxeter_element(rs)
        for r in sorted(weyl.elliptic_powers(w)):
            if r and (w.order() // _gcd(r, w.order())) % 2 == 1:
                p = _power(w, r)
                if not tits.spin_signature(p).is_trivial():
                    failures.append(f"odd-order signature in {name}")
                break
    # linked elements share signatures
    for name in ["B5", "E7", "G2"]:
        rs = build(name)
        w = weyl.coxeter_element(rs)
        base = tits.spin_signature(w).bits
        for r in sorted(weyl.elliptic_powers(w) - {0, 1}):
            if tits.spin_signature(_power(w, r)).bits != base:
                failures.append(f"linked signature mismatch in {name} power {r}")
    # the -I signature lies in the center span
    for name in ["B4", "C5", "D6", "E7", "F4"]:
        rs = build(name)
        mi = weyl.minus_identity(rs)
        sig = tits.spin_signature(mi).bits
        if any(sig):
            if tuple(sig) not in {tuple(c) for c in rs.center_two_torsion()}:
                failures.append(f"-I signature outside center in {name}")
    # associativity on random triples
    rng = random.Random(12)
    for name in ["B3", "C3", "D4", "F4"]:
        rs = build(name)
        for _ in range(40):
            a, b, c = (_random_tits(rs, rng) for _ in range(3))
            if tits.multiply(tits.multiply(a, b), c) != tits.multiply(a, tits.multiply(b, c)):
                failures.append(f"associativity in {name}")
                break
    _report(10, "property suite", not failures,
            "independence, parity, linkage, centrality, associativity"
            if not failures else "; ".join(failures[:4]))


def _random_tits(rs, rng):
    w = weyl.random_element(rs, rng.randrange(10**9))
    return tits.TitsElement(w, tuple(rng.randrange(2) for _ in range(rs.rank)))


def _greedy_high_word(w):
    letters = []
    cur = w
    while not cur.is_identity():
        for i in range(cur.rs.rank - 1, -1, -1):
            if cur.right_descent(i):
                letters.append(i)
                cur = cur.times_simple(i)
                break
    letters.reverse()
    return tuple(letters)


def _power(w, r):
    p = weyl.identity(w.rs)
    for _ in range(r):
        p = p * w
    return p


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
