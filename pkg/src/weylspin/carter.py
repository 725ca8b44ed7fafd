"""Carter diagrams and elliptic conjugacy class enumeration.

A Carter diagram is an ordered list of linearly independent roots with bonds
given by the usual angle rule; the associated Weyl element is the product of
the reflections in the node roots.  An element is elliptic exactly when the
node count equals the rank.

Class enumeration comes in three flavours:

* ``diagram``: classical types, one class per partition shape, with
  representatives realised on coordinate blocks (the same classes the
  iterated extend-and-remove process on extended Dynkin diagrams produces);
* ``exhaustive``: a full orbit partition of the elliptic elements under
  conjugation, for any group small enough to enumerate;
* ``sampling``: seeded random elliptic elements bucketed by characteristic
  polynomial, for groups too large to enumerate (E8).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import intpoly, tits, weyl
from .errors import BudgetExceeded, ConfigurationError, DomainError
from .rootsystem import Coords, Root, RootSystem

DEFAULT_EXHAUSTIVE_BUDGET = 4_000_000


# ----------------------------------------------------------------------
# diagrams


class CarterDiagram:
    """Ordered linearly independent roots with Dynkin-rule bonds."""

    def __init__(self, rs: RootSystem, nodes, name: str | None = None):
        self.rs = rs
        self.nodes: tuple[Root, ...] = tuple(rs.as_root(x) for x in nodes)
        if not self.nodes:
            raise DomainError("a Carter diagram needs at least one node")
        if _rank_of(self.nodes) != len(self.nodes):
            raise DomainError("diagram nodes must be linearly independent roots")
        k = len(self.nodes)
        self.bonds: dict[tuple[int, int], int] = {}
        for i in range(k):
            for j in range(i + 1, k):
                m = rs.bond(self.nodes[i], self.nodes[j])
                if m:
                    self.bonds[(i, j)] = m
        self._name = name

    # -- structure ------------------------------------------------------

    def components(self) -> list[list[int]]:
        """Connected components as lists of node indices."""
        k = len(self.nodes)
        seen = [False] * k
        comps = []
        for start in range(k):
            if seen[start]:
                continue
            comp = [start]
            seen[start] = True
            stack = [start]
            while stack:
                a = stack.pop()
                for b in range(k):
                    if not seen[b] and ((min(a, b), max(a, b)) in self.bonds):
                        seen[b] = True
                        comp.append(b)
                        stack.append(b)
            comps.append(sorted(comp))
        return comps

    def element(self) -> weyl.WeylElement:
        w = weyl.identity(self.rs)
        for node in self.nodes:
            w = w * weyl.reflection(self.rs, node)
        return w

    def component_element(self, comp: list[int]) -> weyl.WeylElement:
        w = weyl.identity(self.rs)
        for i in comp:
            w = w * weyl.reflection(self.rs, self.nodes[i])
        return w

    def is_elliptic_shape(self) -> bool:
        return len(self.nodes) == self.rs.rank

    # -- spin labelling and content --------------------------------------

    def spin_labeling(self) -> list[tuple[int, ...]]:
        """Per node, the 1-based indices i with h_node = prod h_i (mod squares)."""
        labels = []
        for node in self.nodes:
            cor = self.rs.coroot(node)
            labels.append(tuple(i + 1 for i, c in enumerate(cor) if c % 2))
        return labels

    def component_orders(self) -> list[int]:
        return [self.component_element(c).order() for c in self.components()]

    def content(self) -> int:
        """2-adic valuation of the order of the product element."""
        return _nu2(self.element().order())

    def relevant_components(self) -> list[list[int]]:
        comps = self.components()
        orders = [self.component_element(c).order() for c in comps]
        total = _nu2(lcm(*orders)) if orders else 0
        return [c for c, d in zip(comps, orders) if _nu2(d) == total]

    # -- naming -----------------------------------------------------------

    @property
    def name(self) -> str:
        if self._name is None:
            self._name = self._derive_name()
        return self._name

    def _derive_name(self) -> str:
        parts = []
        for comp in self.components():
            parts.append(self._component_name(comp))
        return format_component_names(parts)

    def _component_name(self, comp: list[int]) -> str:
        k = len(comp)
        nodes = [self.nodes[i] for i in comp]
        two_lengths = min(self.rs.lengths) != max(self.rs.lengths)
        all_short = two_lengths and all(n.length_class == "short" for n in nodes)
        tilde = "~" if all_short else ""
        if k == 1:
            return f"{tilde}A1"
        mults = [m for (a, b), m in self.bonds.items() if a in comp and b in comp]
        degree = {i: 0 for i in comp}
        for (a, b), m in self.bonds.items():
            if a in comp and b in comp:
                degree[a] += 1
                degree[b] += 1
        if any(d > 2 for d in degree.values()) and all(m == 1 for m in mults):
            # simply laced tree with one branch point
            branch = next(i for i, d in degree.items() if d > 2)
            arms = sorted(_arm_lengths(self, comp, branch))
            if arms == [1, 1, k - 3]:
                return f"D{k}"
            if arms == [1, 2, 2]:
                return "E6"
            if arms == [1, 2, 3]:
                return "E7"
            if arms == [1, 2, 4]:
                return "E8"
            return f"tree{k}"
        if all(m == 1 for m in mults):
            return f"{tilde}A{k}"
        if max(mults) == 2 and self.rs.family in ("B", "C"):
            return f"{self.rs.family}{k}"
        if max(mults) == 2:
            return f"{tilde}B{k}"
        return f"G{k}"


def _arm_lengths(diag: CarterDiagram, comp: list[int], branch: int) -> list[int]:
    adj = {i: [] for i in comp}
    for (a, b) in diag.bonds:
        if a in comp and b in comp:
            adj[a].append(b)
            adj[b].append(a)
    arms = []
    for start in adj[branch]:
        length = 1
        prev, cur = branch, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return arms


def format_component_names(parts: list[str]) -> str:
    """Canonical product name: sorted descending, repeats grouped with ^."""
    def sort_key(p: str) -> tuple:
        core = p.lstrip("~")
        fam = core[: core.index("(")] if "(" in core else core
        digits = "".join(ch for ch in fam if ch.isdigit())
        return (-int(digits or 0), p)

    parts = sorted(parts, key=sort_key)
    out = []
    i = 0
    while i < len(parts):
        j = i
        while j < len(parts) and parts[j] == parts[i]:
            j += 1
        out.append(parts[i] if j - i == 1 else f"{parts[i]}^{j - i}")
        i = j
    return "x".join(out)


def _rank_of(nodes: tuple[Root, ...]) -> int:
    rows = [[Fraction(c) for c in n.coords] for n in nodes]
    rank = 0
    ncols = len(rows[0])
    col = 0
    r = 0
    while r < len(rows) and col < ncols:
        piv = next((k for k in range(r, len(rows)) if rows[k][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        r += 1
        col += 1
        rank += 1
    return rank


def _nu2(m: int) -> int:
    v = 0
    while m % 2 == 0:
        m //= 2
        v += 1
    return v


def diagram_of(rs: RootSystem, roots, name: str | None = None) -> CarterDiagram:
    return CarterDiagram(rs, roots, name)


# ----------------------------------------------------------------------
# closed-form signature predictions


def predict_signature(diag: CarterDiagram) -> tuple[int, ...] | None:
    """Closed-form spin signature for classical diagram shapes.

    Supported: type A Coxeter diagrams, products of B-blocks in type B,
    products of C-blocks in type C, and the type D Coxeter diagram.  Returns
    None for anything else; callers fall back to the direct computation.
    """
    rs = diag.rs
    fam, n = rs.family, rs.rank
    if not diag.is_elliptic_shape():
        return None
    if fam == "A":
        comps = diag.components()
        if len(comps) != 1:
            return None
        # Coxeter class: trivial for odd order, the central involution else.
        if (n + 1) % 2:
            return (0,) * n
        return tuple(1 if i % 2 == 0 else 0 for i in range(n))
    if fam == "B":
        sizes = _b_component_sizes(diag)
        if sizes is None:
            return None
        e = b_signature_exponent(sizes)
        return tuple(0 if i < n - 1 else e % 2 for i in range(n))
    if fam == "C":
        return _predict_c(diag)
    if fam == "D":
        if set(r.coords for r in diag.nodes) != set(r.coords for r in rs.simple_roots):
            return None
        if n % 4 in (2, 3):
            return (0,) * (n - 2) + (1, 1)
        return (0,) * n
    return None


def b_signature_exponent(sizes: list[int]) -> int:
    """The exponent e with signature h_n^e for a product of B-blocks.

    f counts relevant blocks of size 1 or 2 mod 4; a correction of one is
    added exactly when the order is 2 mod 4 and the number of blocks is
    2 or 3 mod 4.
    """
    r = len(sizes)
    d = 2 * lcm(*sizes)
    top = max(_nu2(2 * s) for s in sizes)
    relevant = [s for s in sizes if _nu2(2 * s) == top]
    f = sum(1 for s in relevant if s % 4 in (1, 2))
    if d % 4 == 0 or r % 4 in (0, 1):
        return f
    return f + 1


def _b_component_sizes(diag: CarterDiagram) -> list[int] | None:
    """Component sizes when every component is a B-block, else None."""
    sizes = []
    for comp in diag.components():
        nodes = [diag.nodes[i] for i in comp]
        shorts = [x for x in nodes if x.length_class == "short"]
        if len(shorts) != 1:
            return None
        if len(comp) > 1 and _path_order(diag, comp) is None:
            return None
        sizes.append(len(comp))
    return sizes


def _predict_c(diag: CarterDiagram) -> tuple[int, ...] | None:
    rs = diag.rs
    n = rs.rank
    bits = [0] * n
    comps = diag.components()
    relevant = {tuple(c) for c in diag.relevant_components()}
    for comp in comps:
        nodes = [diag.nodes[i] for i in comp]
        longs = [x for x in nodes if x.length_class == "long"]
        if len(comp) == 1:
            if nodes[0].length_class != "long":
                return None
            ordered = comp
        else:
            if len(longs) != 1:
                return None
            path = _path_order(diag, comp)
            if path is None:
                return None
            # orient so the long root sits at the far end
            if diag.nodes[path[0]].length_class == "long":
                path = path[::-1]
            if diag.nodes[path[-1]].length_class != "long":
                return None
            ordered = path
        if tuple(comp) not in relevant:
            continue
        # every other node, starting from the end away from the long root
        for pos in range(0, len(ordered), 2):
            cor = rs.coroot(diag.nodes[ordered[pos]])
            for i in range(n):
                bits[i] ^= cor[i] % 2
    return tuple(bits)


def _path_order(diag: CarterDiagram, comp: list[int]) -> list[int] | None:
    """Order component nodes along a path, or None when not a path."""
    adj = {i: [] for i in comp}
    for (a, b) in diag.bonds:
        if a in comp and b in comp:
            adj[a].append(b)
            adj[b].append(a)
    if len(comp) == 1:
        return comp[:]
    ends = [i for i in comp if len(adj[i]) == 1]
    if len(ends) != 2 or any(len(adj[i]) > 2 for i in comp):
        return None
    path = [ends[0]]
    prev = None
    while len(path) < len(comp):
        nxt = [x for x in adj[path[-1]] if x != prev]
        if not nxt:
            return None
        prev = path[-1]
        path.append(nxt[0])
    return path


# ----------------------------------------------------------------------
# representatives for classical partitions


def b_partition_diagram(rs: RootSystem, parts) -> CarterDiagram:
    """A B-block diagram in type B_n for a partition of n.

    Block on coordinates a..b carries the chain alpha_a .. alpha_{b-1} plus
    the short root e_b; distinct blocks are orthogonal and the product is a
    product of commuting negative cycles.
    """
    if rs.family != "B":
        raise DomainError("B-partition diagrams live in type B")
    return _block_diagram(rs, parts, short_tail=True)


def c_partition_diagram(rs: RootSystem, parts) -> CarterDiagram:
    if rs.family != "C":
        raise DomainError("C-partition diagrams live in type C")
    return _block_diagram(rs, parts, short_tail=False)


def _block_diagram(rs: RootSystem, parts, short_tail: bool) -> CarterDiagram:
    # Ascending block order reproduces the labelings the extended-diagram
    # removal recursion produces (small factors split off at the left end).
    n = rs.rank
    parts = sorted(int(p) for p in parts)
    if sum(parts) != n or any(p < 1 for p in parts):
        raise DomainError(f"{parts} is not a partition of {n}")
    nodes: list[Coords] = []
    start = 1
    for p in parts:
        a, b = start, start + p - 1
        for i in range(a, b):
            nodes.append(tuple(1 if j == i - 1 else 0 for j in range(n)))
        if short_tail:
            tail = tuple(1 if j >= b - 1 else 0 for j in range(n))
        else:
            tail = tuple(0 if j < b - 1 else (1 if j == n - 1 else 2) for j in range(n))
        nodes.append(tail)
        start = b + 1
    fam = rs.family
    names = [f"{fam}{p}" if (p > 1 or fam == "B") else "A1" for p in parts]
    return CarterDiagram(rs, nodes, name=format_component_names(names))


def d_partition_element(rs: RootSystem, parts) -> weyl.WeylElement:
    """An elliptic element of W(D_n) whose negative cycle type is ``parts``.

    The number of parts must be even (otherwise the signed permutation has
    an odd number of sign changes and falls outside W(D_n)).
    """
    if rs.family != "D":
        raise DomainError("negative cycle elements live in type D")
    n = rs.rank
    parts = sorted((int(p) for p in parts), reverse=True)
    if sum(parts) != n or len(parts) % 2:
        raise DomainError(f"{parts} is not an even-length partition of {n}")
    # signed permutation: one negative cycle per block, in standard coordinates
    perm = [[0] * n for _ in range(n)]
    start = 0
    for p in parts:
        for k in range(start, start + p - 1):
            perm[k + 1][k] = 1
        perm[start][start + p - 1] = -1
        start += p
    # change of basis: columns of S are the simple roots in e-coordinates
    S = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n - 1):
        S[i][i] = Fraction(1)
        S[i + 1][i] = Fraction(-1)
    S[n - 2][n - 1] = Fraction(1)
    S[n - 1][n - 1] = Fraction(1)
    Sinv = _fraction_inverse(S)
    mat = _fraction_product(Sinv, [[Fraction(x) for x in row] for row in perm], S)
    rows = []
    for row in mat:
        out = []
        for x in row:
            if x.denominator != 1:
                raise DomainError("cycle type not realisable in W(D_n)")
            out.append(int(x))
        rows.append(tuple(out))
    return weyl.WeylElement(rs, tuple(rows))


def d_partition_name(parts) -> str:
    """Name a negative-cycle class by pairing parts, Coxeter style for (n-1,1)."""
    parts = sorted(parts, reverse=True)
    names = []
    for a, b in zip(parts[::2], parts[1::2]):
        if a == 1 and b == 1:
            names.extend(["A1", "A1"])
        elif b == 1:
            names.append(f"D{a+1}")
        else:
            names.append(f"D{a+b}(a{b-1})")
    return format_component_names(names)


def _fraction_inverse(mat):
    n = len(mat)
    aug = [row[:] + [Fraction(1 if j == i else 0) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _fraction_product(*mats):
    out = mats[0]
    for m in mats[1:]:
        n = len(out)
        out = [[sum(out[i][k] * m[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return out


# ----------------------------------------------------------------------
# extended-diagram node removal


def extended_nodes(rs: RootSystem, use_short_highest: bool | None = None) -> list[Root]:
    """Simple roots plus the negative highest (or highest short) root.

    Type B extends by the negative highest short root, every other family by
    the negative highest long root, matching how the classical diagram
    recursions are set up.
    """
    if use_short_highest is None:
        use_short_highest = rs.family == "B"
    high = rs.highest_short_root if use_short_highest else rs.highest_root
    neg = rs.as_root(tuple(-c for c in high.coords))
    return list(rs.simple_roots) + [neg]


def removal_diagram(rs: RootSystem, removed: int, name: str | None = None) -> CarterDiagram:
    """Extended diagram minus the simple node ``removed`` (1-based)."""
    if not 1 <= removed <= rs.rank:
        raise DomainError("can only remove one of the simple nodes")
    nodes = [r for i, r in enumerate(extended_nodes(rs)) if i != removed - 1]
    return CarterDiagram(rs, nodes, name)


# ----------------------------------------------------------------------
# class records and enumeration


@dataclass
class ClassRecord:
    """One elliptic conjugacy class (or sampling bucket)."""

    family: str
    rank: int
    name: str
    order: int
    char_poly: intpoly.Poly
    signature_bits: tuple[int, ...]
    spins: dict[str, int]
    provenance: str
    class_size: int | None = None
    sample_count: int | None = None
    partition: tuple[int, ...] | None = None
    linked_minus_identity: bool | None = None
    aliases: tuple[str, ...] = ()
    rep_matrix: tuple | None = None  # representative, not serialized

    def to_dict(self) -> dict:
        doc = {
            "type": f"{self.family}{self.rank}",
            "classId": self.name,
            "order": self.order,
            "charPoly": list(self.char_poly),
            "charPolyDisplay": intpoly.format_factored(None, self.char_poly),
            "signatureBits": list(self.signature_bits),
            "signature": tits.torus_str(self.signature_bits),
            "spins": dict(sorted(self.spins.items())),
            "provenance": self.provenance,
        }
        if self.class_size is not None:
            doc["classSize"] = self.class_size
        if self.sample_count is not None:
            doc["sampleCount"] = self.sample_count
        if self.partition is not None:
            doc["partition"] = list(self.partition)
        if self.linked_minus_identity is not None:
            doc["linkedToMinusIdentity"] = self.linked_minus_identity
        if self.aliases:
            doc["aliases"] = list(self.aliases)
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _spins_of(w: weyl.WeylElement) -> tuple[tuple[int, ...], dict[str, int]]:
    res = tits.spin_result(w)
    return res.signature.bits, {name: s for name, s in res.spins}


def _record_from_element(rs: RootSystem, w: weyl.WeylElement, name: str, provenance: str,
                         partition=None, class_size=None) -> ClassRecord:
    bits, spins = _spins_of(w)
    linked = None
    if weyl.minus_identity(rs) is not None:
        linked = weyl.is_linked_to_minus_identity(w)
    return ClassRecord(
        family=rs.family,
        rank=rs.rank,
        name=name,
        order=w.order(),
        char_poly=w.char_poly(),
        signature_bits=bits,
        spins=spins,
        provenance=provenance,
        partition=tuple(partition) if partition else None,
        class_size=class_size,
        linked_minus_identity=linked,
        rep_matrix=w.matrix,
    )


def record_representative(rs: RootSystem, rec: ClassRecord) -> weyl.WeylElement:
    if rec.rep_matrix is None:
        raise DomainError("record carries no representative matrix")
    return weyl.WeylElement(rs, rec.rep_matrix)


def partitions(n: int, even_length: bool = False):
    def gen(remaining, maxpart, acc):
        if remaining == 0:
            if not even_length or len(acc) % 2 == 0:
                yield tuple(acc)
            return
        for p in range(min(remaining, maxpart), 0, -1):
            acc.append(p)
            yield from gen(remaining - p, p, acc)
            acc.pop()

    yield from gen(n, n, [])


def enumerate_diagram_classes(rs: RootSystem) -> list[ClassRecord]:
    """Elliptic classes of a classical type, one per partition shape."""
    fam, n = rs.family, rs.rank
    records = []
    if fam == "A":
        w = weyl.coxeter_element(rs)
        records.append(_record_from_element(rs, w, f"A{n}", "diagram", partition=(n + 1,)))
    elif fam in ("B", "C"):
        for parts in partitions(n):
            diag = b_partition_diagram(rs, parts) if fam == "B" else c_partition_diagram(rs, parts)
            rec = _record_from_element(rs, diag.element(), diag.name, "diagram", partition=parts)
            records.append(rec)
    elif fam == "D":
        for parts in partitions(n, even_length=True):
            w = d_partition_element(rs, parts)
            rec = _record_from_element(rs, w, d_partition_name(parts), "diagram", partition=parts)
            records.append(rec)
    else:
        raise ConfigurationError(f"diagram enumeration covers classical types, not {fam}")
    for rec in records:
        if intpoly.evaluate(rec.char_poly, 1) == 0:
            raise DomainError(f"constructed representative for {rec.name} is not elliptic")
    return records


def named_tree_elements(rs: RootSystem) -> dict[str, weyl.WeylElement]:
    """Named representatives from single-node removals of the extended diagram,
    plus the Coxeter class and -I when present."""
    out: dict[str, weyl.WeylElement] = {}
    out[_dynkin_name(rs)] = weyl.coxeter_element(rs)
    mi = weyl.minus_identity(rs)
    if mi is not None:
        out[format_component_names(["A1"] * rs.rank)] = mi
    if rs.family in ("E", "F", "G"):
        for removed in range(1, rs.rank + 1):
            try:
                diag = removal_diagram(rs, removed)
            except DomainError:
                continue
            if not diag.is_elliptic_shape():
                continue
            name = diag.name
            if name not in out:
                out[name] = diag.element()
    return out


def _dynkin_name(rs: RootSystem) -> str:
    return f"{rs.family}{rs.rank}"


def enumerate_exhaustive_classes(rs: RootSystem, budget: int | None = None) -> list[ClassRecord]:
    """True conjugacy classification of all elliptic elements."""
    from . import enumeration

    budget = budget or DEFAULT_EXHAUSTIVE_BUDGET
    expected = enumeration.group_order(rs)
    if expected > budget:
        raise BudgetExceeded(
            f"|W({rs.type})| = {expected} exceeds the exhaustive budget {budget}"
        )
    table = enumeration.enumerate_group(rs)
    classes = enumeration.elliptic_conjugacy_classes(rs, table)

    named = named_tree_elements(rs)
    names_by_class: dict[int, list[str]] = {}
    for name, elem in named.items():
        if not elem.is_elliptic():
            continue
        cid = enumeration.class_of(rs, table, classes, elem)
        names_by_class.setdefault(cid, []).append(name)

    records = []
    reps = []
    for cid, (rep_idx, size) in enumerate(classes.reps):
        w = enumeration.element_at(rs, table, rep_idx)
        reps.append(w)
        names = names_by_class.get(cid, [])
        name = names[0] if names else None
        rec = _record_from_element(rs, w, name or f"cls{cid}", "exhaustive", class_size=size)
        rec.aliases = tuple(names[1:])
        records.append(rec)

    _assign_linkage_names(rs, table, classes, records, reps)
    # cycle-diagram classes not named above fall back to their characteristic
    # polynomial, disambiguated by class size only on genuine collisions
    unnamed = [rec for rec in records if rec.name.startswith("cls")]
    by_cp: dict[tuple, list[ClassRecord]] = {}
    for rec in unnamed:
        by_cp.setdefault(rec.char_poly, []).append(rec)
    for cp, group in by_cp.items():
        for rec in group:
            rec.name = f"{_dynkin_name(rs)}[{intpoly.format_factored(None, cp)}]"
            if len(group) > 1:
                rec.name += f"[size {rec.class_size}]"
    records.sort(key=lambda r: (r.order, r.char_poly, r.name))
    return records


def _assign_linkage_names(rs, table, classes, records, reps) -> None:
    """Names for cycle diagrams reachable by linkage from a named class.

    The one required case: the class linked to A3^2xA1 but different from it
    carries the Coxeter-cycle name E7(a2).
    """
    if rs.family != "E" or rs.rank != 7:
        return
    from . import enumeration

    target = next((i for i, r in enumerate(records) if r.name == "A3^2xA1"), None)
    if target is None:
        return
    for i, (rec, w) in enumerate(zip(records, reps)):
        if i == target or not rec.name.startswith("cls"):
            continue
        if _is_linked(rs, table, classes, w, records[target], target):
            rec.name = "E7(a2)"
            break


def _is_linked(rs, table, classes, w, target_rec, target_cid) -> bool:
    from . import enumeration

    d = w.order()
    acc = w
    for _ in range(1, d):
        if acc.is_elliptic() and enumeration.class_of(rs, table, classes, acc) == target_cid:
            return True
        acc = acc * w
    return False


def enumerate_sampling_classes(rs: RootSystem, seed: int, count: int) -> list[ClassRecord]:
    """Seeded random elliptic elements bucketed by characteristic polynomial.

    Buckets report the spin of one representative and a sample count; no
    claim is made that every class was reached.
    """
    from . import enumeration

    buckets = enumeration.sample_elliptic_buckets(rs, seed=seed, count=count)
    records = []
    for cp, (count_b, w) in sorted(buckets.items()):
        rec = _record_from_element(rs, w, f"{_dynkin_name(rs)}[{intpoly.format_factored(None, cp)}]",
                                   "sampling")
        rec.sample_count = count_b
        records.append(rec)
    return records


def enumerate_elliptic_classes(rs: RootSystem, strategy: str = "auto", *, seed: int = 0,
                               budget: int | None = None, samples: int = 2000) -> list[ClassRecord]:
    if strategy == "auto":
        if rs.family in "ABCD":
            strategy = "diagram"
        elif rs.family == "E" and rs.rank == 8:
            strategy = "sampling"
        else:
            strategy = "exhaustive"
    if strategy == "diagram":
        return enumerate_diagram_classes(rs)
    if strategy == "exhaustive":
        return enumerate_exhaustive_classes(rs, budget)
    if strategy == "sampling":
        return enumerate_sampling_classes(rs, seed=seed, count=samples)
    raise ConfigurationError(f"unknown strategy {strategy!r}")


# ----------------------------------------------------------------------
# final chart verification


@dataclass
class ChartReport:
    family: str
    rank: int
    strategy: str
    items: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item["pass"] for item in self.items)

    def to_dict(self) -> dict:
        return {
            "type": f"{self.family}{self.rank}",
            "strategy": self.strategy,
            "passed": self.passed,
            "classes": self.items,
            "notes": self.notes,
        }


def _expected_spins(rs: RootSystem, rec: ClassRecord, records: list[ClassRecord]) -> tuple[int, int, str]:
    """(adjoint, universal, rule) expected for one class from the summary chart."""
    fam, n = rs.family, rs.rank
    if fam == "A":
        return 1, (-1) ** n, "A: universal (-1)^(n-1) for A_{n-1}"
    if fam in ("B", "D"):
        parts = rec.partition or _partition_from_char_poly(rec.char_poly)
        e = b_signature_exponent(list(parts))
        return 1, (-1) ** e, f"{fam}: adjoint 1, universal (-1)^e with e={e}"
    if fam == "C":
        linked = rec.linked_minus_identity
        return (1 if linked else -1), -1, "C: universal -1, adjoint by linkage to A1^n"
    if fam == "G" or (fam == "E" and n in (6, 8)):
        return 1, 1, f"{fam}{n}: all elliptic classes spin 1"
    if fam == "F":
        if rec.name == "A3x~A1":
            return -1, -1, "F4: the A3x~A1 class has spin -1"
        return 1, 1, "F4: every other class has spin 1"
    if fam == "E" and n == 7:
        if rec.name in ("A3^2xA1", "A7", "E7(a2)"):
            return 1, 1, "E7: A3^2xA1, A7, E7(a2) have spin 1"
        return 1, -1, "E7: remaining classes have universal spin -1"
    raise ConfigurationError(f"no chart row for {rs.type}")


def _partition_from_char_poly(cp: intpoly.Poly) -> tuple[int, ...]:
    parts = intpoly.split_plus_one_factors(cp)
    if parts is None:
        raise DomainError(f"characteristic polynomial {intpoly.format_poly(cp)} "
                          "is not a product of t^k+1 factors")
    return tuple(parts)


_EXPECTED_CLASS_COUNTS = {("F", 4): 9, ("E", 6): 5, ("E", 7): 12, ("E", 8): 30}


def verify_final_chart(rs: RootSystem, strategy: str = "auto", *, seed: int = 0,
                       budget: int | None = None, samples: int = 2000) -> ChartReport:
    records = enumerate_elliptic_classes(rs, strategy, seed=seed, budget=budget, samples=samples)
    used = records[0].provenance if records else strategy
    report = ChartReport(rs.family, rs.rank, used)
    for rec in records:
        adjoint = rec.spins.get("adjoint", rec.spins.get("universal"))
        universal = rec.spins["universal"]
        if used == "sampling":
            exp_a, exp_u, rule = 1, 1, "E8: all elliptic classes spin 1 (sampled)"
        else:
            exp_a, exp_u, rule = _expected_spins(rs, rec, records)
        ok = (adjoint == exp_a and universal == exp_u)
        report.items.append({
            "class": rec.name,
            "order": rec.order,
            "charPoly": intpoly.format_factored(None, rec.char_poly),
            "adjoint": adjoint,
            "universal": universal,
            "expectedAdjoint": exp_a,
            "expectedUniversal": exp_u,
            "rule": rule,
            "pass": ok,
        })
        if not ok:
            report.notes.append(
                f"MISMATCH {rs.type} {rec.name}: got (adjoint {adjoint}, universal {universal}), "
                f"expected ({exp_a}, {exp_u})"
            )
    key = (rs.family, rs.rank)
    if used == "exhaustive" and key in _EXPECTED_CLASS_COUNTS:
        want = _EXPECTED_CLASS_COUNTS[key]
        if len(records) != want:
            report.items.append({
                "class": "(count)", "pass": False,
                "rule": f"expected {want} elliptic classes, found {len(records)}",
            })
            report.notes.append(f"class count mismatch for {rs.type}")
        else:
            report.notes.append(f"{len(records)} elliptic classes, as expected")
    return report


def records_to_csv(records: list[ClassRecord]) -> str:
    lines = ["phi,gamma,adjoint_spin,universal_spin"]
    for rec in records:
        adjoint = rec.spins.get("adjoint", rec.spins.get("universal"))
        lines.append(f"{rec.family}{rec.rank},{rec.name},{adjoint},{rec.spins['universal']}")
    return "\n".join(lines) + "\n"
