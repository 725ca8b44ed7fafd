"""Exact integer models of reduced crystallographic root systems.

Roots live in the simple-root basis: a root is an integer coordinate vector
``(a_1, ..., a_n)`` meaning ``sum a_i alpha_i``.  All arithmetic is exact; no
floating point appears anywhere in this module.

Node numbering follows Carter's book conventions, which is what the rest of
the package assumes throughout.  Beware that for E7 and E8 this differs from
the Bourbaki numbering used by most other software; see the README for the
conversion table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import json

from .errors import ConfigurationError, DomainError, InvariantViolation

Coords = tuple[int, ...]

# Dynkin diagram edges (1-based node pairs) and squared-length weights d_i
# with (alpha_i, alpha_i) = 2 d_i.  Simply laced families get all d_i = 1.
_EXCEPTIONAL_EDGES = {
    ("E", 6): [(1, 2), (2, 3), (3, 4), (3, 5), (5, 6)],
    ("E", 7): [(1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (6, 7)],
    ("E", 8): [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (5, 7), (7, 8)],
    ("F", 4): [(1, 2), (2, 3), (3, 4)],
    ("G", 2): [(1, 2)],
}

_RANK_BOUNDS = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


@dataclass(frozen=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_BOUNDS:
            raise ConfigurationError(f"unknown family {self.family!r}")
        lo, hi = _RANK_BOUNDS[self.family]
        if self.rank < lo or (hi is not None and self.rank > hi):
            raise ConfigurationError(f"rank {self.rank} out of bounds for type {self.family}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        text = text.strip()
        if len(text) < 2 or not text[0].isalpha():
            raise ConfigurationError(f"cannot parse root system type {text!r}")
        try:
            rank = int(text[1:])
        except ValueError as exc:
            raise ConfigurationError(f"cannot parse rank in {text!r}") from exc
        return cls(text[0].upper(), rank)


@dataclass(frozen=True)
class Root:
    """A root, as integer coordinates in the simple-root basis."""

    coords: Coords
    length_class: str  # "long" or "short"; all roots are "long" in simply laced types

    def __str__(self) -> str:
        return "+".join(f"{c}a{i+1}" for i, c in enumerate(self.coords) if c) or "0"


def _dynkin_data(rst: RootSystemType) -> tuple[list[tuple[int, int]], list[int]]:
    fam, n = rst.family, rst.rank
    chain = [(i, i + 1) for i in range(1, n)]
    if fam == "A":
        return chain, [1] * n
    if fam == "B":
        return chain, [2] * (n - 1) + [1]
    if fam == "C":
        return chain, [1] * (n - 1) + [2]
    if fam == "D":
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)], [1] * n
    if fam == "F":
        return _EXCEPTIONAL_EDGES[("F", 4)], [2, 2, 1, 1]
    if fam == "G":
        return _EXCEPTIONAL_EDGES[("G", 2)], [3, 1]
    return _EXCEPTIONAL_EDGES[(fam, n)], [1] * n


class RootSystem:
    """An irreducible root system with exact integer arithmetic.

    ``cartan[j][i]`` is the pairing of the root alpha_{j+1} with the coroot
    of alpha_{i+1} (indices are 0-based internally, 1-based in all rendered
    output).  The full root set is generated by reflection closure from the
    simple roots.
    """

    def __init__(self, family: str, rank: int):
        self.type = RootSystemType(family.upper(), rank)
        self.family = self.type.family
        self.rank = rank
        edges, d = _dynkin_data(self.type)
        self.lengths = tuple(d)
        n = rank
        cartan = [[0] * n for _ in range(n)]
        for i in range(n):
            cartan[i][i] = 2
        for a, b in edges:
            i, j = a - 1, b - 1
            m = max(d[i], d[j])
            # <alpha_j, alpha_i_check> = 2(alpha_j, alpha_i)/(alpha_i, alpha_i)
            cartan[j][i] = -m // d[i]
            cartan[i][j] = -m // d[j]
        self.cartan: tuple[Coords, ...] = tuple(tuple(row) for row in cartan)
        self._generate_roots()
        self._lattices: list[CocharacterLattice] | None = None

    # ------------------------------------------------------------------
    # construction

    def _generate_roots(self):
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        seen: set[Coords] = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(n):
                    img = self._reflect_simple(beta, i)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        dmax = max(self.lengths)

        def length_class(coords: Coords) -> str:
            return "long" if self._norm2(coords) == 2 * dmax else "short"

        pos = sorted((c for c in seen if _is_positive(c)), key=lambda c: (sum(c), c))
        ordered = pos + [tuple(-x for x in c) for c in pos]
        self.roots: tuple[Root, ...] = tuple(Root(c, length_class(c)) for c in ordered)
        self.positive_roots: tuple[Root, ...] = self.roots[: len(pos)]
        self._index = {r.coords: k for k, r in enumerate(self.roots)}
        self.highest_root = max(self.positive_roots, key=lambda r: sum(r.coords))
        shorts = [r for r in self.positive_roots if r.length_class == "short"]
        self.highest_short_root = max(shorts, key=lambda r: sum(r.coords)) if shorts else self.highest_root
        self.simple_roots = tuple(self.roots[self._index[s]] for s in simple)

    def _reflect_simple(self, coords: Coords, i: int) -> Coords:
        c = self.pairing(coords, i)
        out = list(coords)
        out[i] -= c
        return tuple(out)

    # ------------------------------------------------------------------
    # exact linear algebra on root coordinates

    def pairing(self, coords: Coords, i: int) -> int:
        """<x, alpha_{i+1} coroot> for x given in root coordinates."""
        return sum(coords[j] * self.cartan[j][i] for j in range(self.rank))

    def _norm2(self, coords: Coords) -> int:
        return sum(coords[i] * self.lengths[i] * self.pairing(coords, i) for i in range(self.rank))

    def is_root(self, coords: Coords) -> bool:
        return tuple(coords) in self._index

    def as_root(self, alpha) -> Root:
        """Coerce coordinates or Root to a member Root, validating membership."""
        coords = alpha.coords if isinstance(alpha, Root) else tuple(alpha)
        idx = self._index.get(coords)
        if idx is None:
            raise DomainError(f"{coords} is not a root of {self.type}")
        return self.roots[idx]

    def root_index(self, alpha) -> int:
        return self._index[self.as_root(alpha).coords]

    def negative(self, alpha) -> Root:
        r = self.as_root(alpha)
        return self.roots[self._index[tuple(-x for x in r.coords)]]

    # ------------------------------------------------------------------
    # operations

    def coroot(self, alpha) -> Coords:
        """Coordinates of the coroot of alpha in the simple-coroot basis."""
        r = self.as_root(alpha)
        d_alpha = self._norm2(r.coords)
        out = []
        for i, a in enumerate(r.coords):
            num = a * 2 * self.lengths[i]
            if num % d_alpha:
                raise InvariantViolation("coroot coordinates are not integral")
            out.append(num // d_alpha)
        return tuple(out)

    def root_chain(self, alpha, beta) -> tuple[int, int]:
        """(p, q) with beta - p*alpha ... beta + q*alpha the alpha-chain through beta."""
        a = self.as_root(alpha).coords
        b = self.as_root(beta).coords
        if b == a or b == tuple(-x for x in a):
            raise DomainError("chain through +-alpha itself is undefined")
        p = 0
        cur = tuple(x - y for x, y in zip(b, a))
        while cur in self._index:
            p += 1
            cur = tuple(x - y for x, y in zip(cur, a))
        q = 0
        cur = tuple(x + y for x, y in zip(b, a))
        while cur in self._index:
            q += 1
            cur = tuple(x + y for x, y in zip(cur, a))
        return p, q

    def bond(self, alpha, beta) -> int:
        """Dynkin bond multiplicity <b, a_check><a, b_check> for roots (0..3)."""
        a = self.as_root(alpha).coords
        b = self.as_root(beta).coords
        return self._pair_roots(b, a) * self._pair_roots(a, b)

    def _pair_roots(self, x: Coords, y: Coords) -> int:
        """<x, y_check> for roots x, y."""
        dy = self._norm2(y)
        num = 2 * sum(x[i] * self.lengths[i] * self.pairing(y, i) for i in range(self.rank))
        if num % dy:
            raise InvariantViolation("non-integral root pairing")
        return num // dy

    def center_two_torsion(self) -> list[Coords]:
        """All nonzero GF(2) vectors t with h(t) = prod h_i^{t_i} central.

        h(t) is central exactly when every root evaluates to +1 on it, i.e.
        when sum_i cartan[j][i] t_i is even for every j.  The returned list
        enumerates the order-2 part of the center of the universal group.
        """
        n = self.rank
        rows = [[self.cartan[j][i] % 2 for i in range(n)] for j in range(n)]
        basis = _gf2_nullspace(rows)
        sols: set[Coords] = set()
        for mask in range(1, 1 << len(basis)):
            v = [0] * n
            for k in range(len(basis)):
                if (mask >> k) & 1:
                    v = [a ^ b for a, b in zip(v, basis[k])]
            if any(v):
                sols.add(tuple(v))
        return sorted(sols, reverse=True)

    # ------------------------------------------------------------------
    # cocharacter lattices

    def lattice(self, kind: str) -> "CocharacterLattice":
        if kind == "universal":
            return CocharacterLattice.universal(self.rank)
        if kind == "adjoint":
            cols = _rational_inverse([list(row) for row in self.cartan])
            return CocharacterLattice("adjoint", tuple(tuple(row) for row in cols))
        raise ConfigurationError(f"unknown lattice kind {kind!r}")

    def cocharacter_lattices(self) -> list["CocharacterLattice"]:
        """Every lattice between the coroot and coweight lattices.

        Enumerated via the fundamental group, which is the cokernel of the
        Cartan matrix; its invariant factors come from the Smith normal form.
        """
        if self._lattices is not None:
            return self._lattices
        n = self.rank
        adjoint = self.lattice("adjoint")
        group_order = _lattice_index(adjoint.basis)
        lattices = [CocharacterLattice.universal(n)]
        if group_order > 1:
            # Elements of the fundamental group as rational coweight vectors mod Z^n.
            elems = _group_elements(adjoint.basis, group_order)
            subgroups = _all_subgroups(elems)
            for sub in subgroups:
                if len(sub) == 1:
                    continue
                basis = _lattice_basis_from_generators(n, sub)
                idx = _lattice_index(basis)
                if idx == 1:
                    continue
                kind = "adjoint" if idx == group_order else "intermediate"
                lattices.append(CocharacterLattice(kind, basis))
        lattices.sort(key=lambda L: (_lattice_index(L.basis), L.basis))
        self._lattices = lattices
        return lattices

    def reduces_trivially(self, t, lattice: "CocharacterLattice") -> bool:
        """Whether h(t) is trivial in the torus of the group with lattice L.

        t names the coroot-lattice vector sum t_i alpha_i_check; the element
        h(t) dies in G_L exactly when that vector lies in 2L.
        """
        v = [Fraction(int(x) % 2) for x in t]
        coords = _rational_solve([list(row) for row in lattice.basis], v)
        for c in coords:
            if c.denominator != 1:
                raise InvariantViolation("vector not in the cocharacter lattice")
        return all(c % 2 == 0 for c in coords)

    # ------------------------------------------------------------------

    def to_json(self) -> str:
        doc = {
            "type": str(self.type),
            "cartan": [list(row) for row in self.cartan],
            "lengths": list(self.lengths),
            "roots": [list(r.coords) for r in self.roots],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def __repr__(self) -> str:
        return f"RootSystem({self.type}, {len(self.roots)} roots)"


@dataclass(frozen=True)
class CocharacterLattice:
    """A lattice L with Q_check <= L <= P_check, as rational basis columns.

    ``basis[i][j]`` is the i-th coroot coordinate of the j-th basis vector.
    The universal lattice is the coroot lattice itself (identity basis); the
    adjoint lattice is the full coweight lattice.
    """

    kind: str
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def universal(cls, n: int) -> "CocharacterLattice":
        eye = tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))
        return cls("universal", eye)

    def index_over_coroots(self) -> int:
        return _lattice_index(self.basis)

    def __str__(self) -> str:
        if self.kind == "intermediate":
            return f"intermediate(index {self.index_over_coroots()})"
        return self.kind


def build(type_or_text, rank: int | None = None) -> RootSystem:
    """Construct a root system from ("B", 3), RootSystemType, or "B3"."""
    if isinstance(type_or_text, RootSystemType):
        return RootSystem(type_or_text.family, type_or_text.rank)
    if rank is not None:
        return RootSystem(str(type_or_text), rank)
    rst = RootSystemType.parse(str(type_or_text))
    return RootSystem(rst.family, rst.rank)


@lru_cache(maxsize=None)
def cached(family: str, rank: int) -> RootSystem:
    """Shared immutable instances; construction is pure so caching is safe."""
    return RootSystem(family, rank)


def _is_positive(coords: Coords) -> bool:
    for c in coords:
        if c > 0:
            return True
        if c < 0:
            return False
    return False


def _gf2_nullspace(rows: list[list[int]]) -> list[list[int]]:
    """Basis of the right nullspace of a 0/1 matrix over GF(2)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [row[:] for row in rows]
    pivots = []
    r = 0
    for c in range(n):
        sel = next((i for i in range(r, m) if a[i][c]), None)
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        for i in range(m):
            if i != r and a[i][c]:
                a[i] = [x ^ y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(pivots):
            if a[i][f]:
                v[c] = 1
        basis.append(v)
    return basis


def _rational_inverse(mat: list[list[int]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(1 if j == i else 0) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise InvariantViolation("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [[aug[i][n + j] for j in range(n)] for i in range(n)]


def _rational_solve(mat: list[list[Fraction]], v: list[Fraction]) -> list[Fraction]:
    """Solve B x = v where B is given as a list of rows (square, invertible)."""
    n = len(v)
    aug = [[mat[i][j] for j in range(n)] + [v[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise InvariantViolation("singular lattice basis")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def _lattice_index(basis: tuple[tuple[Fraction, ...], ...]) -> int:
    det = _rational_det([list(row) for row in basis])
    if det == 0:
        raise InvariantViolation("degenerate lattice basis")
    idx = 1 / abs(det)
    if idx.denominator != 1:
        raise InvariantViolation("lattice does not contain the coroot lattice")
    return int(idx)


def _rational_det(mat: list[list[Fraction]]) -> Fraction:
    n = len(mat)
    a = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def _group_elements(adjoint_basis, order: int) -> list[tuple[Fraction, ...]]:
    """Elements of P_check/Q_check as coweight combinations reduced mod Z^n."""
    n = len(adjoint_basis)
    cols = [tuple(adjoint_basis[i][j] for i in range(n)) for j in range(n)]
    elems = {tuple(Fraction(0) for _ in range(n))}
    frontier = list(elems)
    while frontier:
        nxt = []
        for e in frontier:
            for col in cols:
                cand = tuple((a + b) % 1 for a, b in zip(e, col))
                if cand not in elems:
                    elems.add(cand)
                    nxt.append(cand)
        frontier = nxt
    if len(elems) != order:
        raise InvariantViolation("fundamental group enumeration mismatch")
    return sorted(elems)


def _all_subgroups(elems: list[tuple[Fraction, ...]]) -> list[frozenset]:
    """All subgroups of a small abelian group given by its element list."""
    zero = tuple(Fraction(0) for _ in elems[0]) if elems else ()
    subgroups = {frozenset([zero])}
    # Our fundamental groups need at most two generators.
    for g in elems:
        for h in elems:
            sub = {zero}
            frontier = [zero]
            while frontier:
                nxt = []
                for e in frontier:
                    for gen in (g, h):
                        cand = tuple((a + b) % 1 for a, b in zip(e, gen))
                        if cand not in sub:
                            sub.add(cand)
                            nxt.append(cand)
                frontier = nxt
            subgroups.add(frozenset(sub))
    return sorted(subgroups, key=lambda s: (len(s), sorted(s)))


def _lattice_basis_from_generators(n: int, sub: frozenset) -> tuple[tuple[Fraction, ...], ...]:
    """Hermite-style basis of Q_check + Z<sub> from coset representatives."""
    den = 1
    for e in sub:
        for x in e:
            den = den * x.denominator // _gcd(den, x.denominator)
    cols: list[list[int]] = [[den if i == j else 0 for i in range(n)] for j in range(n)]
    for e in sorted(sub):
        cols.append([int(x * den) for x in e])
    h = _hnf_columns(cols, n)
    return tuple(tuple(Fraction(h[j][i], den) for j in range(n)) for i in range(n))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _hnf_columns(cols: list[list[int]], n: int) -> list[list[int]]:
    """Column-style Hermite normal form; returns n independent columns."""
    work = [col[:] for col in cols if any(col)]
    out: list[list[int]] = []
    for row in range(n):
        while True:
            nz = [c for c in work if c[row] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: abs(c[row]))
            a, b = nz[0], nz[1]
            q = b[row] // a[row]
            for i in range(n):
                b[i] -= q * a[i]
        nz = [c for c in work if c[row] != 0]
        if not nz:
            raise InvariantViolation("lattice generators do not span")
        piv = nz[0]
        if piv[row] < 0:
            for i in range(n):
                piv[i] = -piv[i]
        out.append(piv)
        work = [c for c in work if c is not piv]
    return out
