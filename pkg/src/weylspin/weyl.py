"""Weyl group elements as exact integer matrices on the simple-root basis.

A ``WeylElement`` stores the matrix column-wise: column i is the image of the
i-th simple root, in root coordinates.  Words, orders, characteristic
polynomials and ellipticity are all computed exactly.
"""

from __future__ import annotations

import random

from . import intpoly
from .errors import DomainError, InvariantViolation
from .rootsystem import Coords, RootSystem

Matrix = tuple[Coords, ...]  # tuple of rows


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _mat_vec(a: Matrix, v: Coords) -> Coords:
    n = len(a)
    return tuple(sum(a[i][k] * v[k] for k in range(n)) for i in range(n))


class WeylElement:
    """An element of W, immutable and hashable."""

    __slots__ = ("rs", "matrix", "_hash")

    def __init__(self, rs: RootSystem, matrix: Matrix):
        self.rs = rs
        self.matrix = matrix
        self._hash = hash((id(rs), matrix))

    # group structure ---------------------------------------------------

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.rs is not other.rs:
            raise DomainError("cannot multiply elements of different root systems")
        return WeylElement(self.rs, _mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "WeylElement":
        n = self.rs.rank
        # The inverse permutes roots too, so it is integral; solve column by
        # column with exact Gaussian elimination over the rationals.
        from fractions import Fraction

        aug = [[Fraction(self.matrix[i][j]) for j in range(n)]
               + [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                x = aug[i][n + j]
                if x.denominator != 1:
                    raise InvariantViolation("non-integral inverse")
                row.append(int(x))
            rows.append(tuple(row))
        return WeylElement(self.rs, tuple(rows))

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.rs is other.rs and self.matrix == other.matrix

    def __hash__(self) -> int:
        return self._hash

    def is_identity(self) -> bool:
        return self.matrix == _identity(self.rs.rank)

    # actions ------------------------------------------------------------

    def act(self, coords: Coords) -> Coords:
        """Image of a root-coordinate vector."""
        return _mat_vec(self.matrix, tuple(coords))

    def act_on_root(self, alpha):
        r = self.rs.as_root(alpha)
        return self.rs.as_root(self.act(r.coords))

    def image_of_simple(self, i: int) -> Coords:
        """Column i: the image of alpha_{i+1}."""
        return tuple(self.matrix[k][i] for k in range(self.rs.rank))

    def coroot_matrix(self) -> Matrix:
        """Matrix of the action on the coroot lattice, in coroot coordinates."""
        n = self.rs.rank
        d = self.rs.lengths
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                num = self.matrix[i][j] * d[i]
                if num % d[j]:
                    raise InvariantViolation("coroot action is not integral")
                row.append(num // d[j])
            rows.append(tuple(row))
        return tuple(rows)

    # word machinery -----------------------------------------------------

    def right_descent(self, i: int) -> bool:
        """True when length decreases on the right by s_{i+1}, i.e. w(alpha_i) < 0."""
        col = self.image_of_simple(i)
        for c in col:
            if c > 0:
                return False
            if c < 0:
                return True
        raise InvariantViolation("zero column in a Weyl matrix")

    def times_simple(self, i: int) -> "WeylElement":
        """w * s_{i+1}, via a column update instead of a full product."""
        n = self.rs.rank
        cartan = self.rs.cartan
        cols = [list(self.image_of_simple(k)) for k in range(n)]
        base = cols[i][:]
        for k in range(n):
            c = cartan[k][i]
            if c:
                for r in range(n):
                    cols[k][r] -= c * base[r]
        return WeylElement(self.rs, tuple(tuple(cols[k][r] for k in range(n)) for r in range(n)))

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word (0-based letters), deterministic greedy descent.

        Repeatedly strips the smallest right descent; the reversed strip
        order is a reduced word for w read left to right.
        """
        w = self
        letters: list[int] = []
        n = self.rs.rank
        guard = 4 * len(self.rs.roots) + 4
        while not w.is_identity():
            for i in range(n):
                if w.right_descent(i):
                    letters.append(i)
                    w = w.times_simple(i)
                    break
            else:
                raise InvariantViolation("no descent found for a non-identity element")
            guard -= 1
            if guard < 0:
                raise InvariantViolation("descent loop failed to terminate")
        letters.reverse()
        return tuple(letters)

    def length(self) -> int:
        """Coxeter length = number of positive roots sent negative."""
        count = 0
        for r in self.rs.positive_roots:
            img = self.act(r.coords)
            for c in img:
                if c > 0:
                    break
                if c < 0:
                    count += 1
                    break
        return count

    # spectral invariants --------------------------------------------------

    def char_poly(self) -> intpoly.Poly:
        """Characteristic polynomial of the matrix, monic, exact integers.

        Division-free expansion of det(tI - M) along columns with
        memoization on the set of unused rows.
        """
        return _char_poly(self.matrix)

    def is_elliptic(self) -> bool:
        return intpoly.evaluate(self.char_poly(), 1) != 0

    def order(self) -> int:
        ident = _identity(self.rs.rank)
        acc = self.matrix
        for k in range(1, 10000):
            if acc == ident:
                return k
            acc = _mat_mul(acc, self.matrix)
        raise InvariantViolation("order exceeds bound")

    def to_json(self) -> str:
        """Row-major integer matrix as a JSON array."""
        import json

        return json.dumps([list(row) for row in self.matrix], separators=(",", ":"))

    def __repr__(self) -> str:
        return f"WeylElement({self.rs.type}, {self.matrix})"


def _char_poly(matrix: Matrix) -> intpoly.Poly:
    n = len(matrix)
    t_minus: list[list[intpoly.Poly]] = [
        [((-matrix[i][j], 1) if i == j else ((-matrix[i][j],) if matrix[i][j] else ()))
         for j in range(n)]
        for i in range(n)
    ]

    from functools import lru_cache as _lru

    @_lru(maxsize=None)
    def minor(rows: frozenset) -> intpoly.Poly:
        if not rows:
            return intpoly.ONE
        col = n - len(rows)
        acc: intpoly.Poly = ()
        sign = 1
        for r in sorted(rows):
            entry = t_minus[r][col]
            if entry:
                term = intpoly.mul(entry, minor(rows - {r}))
                acc = intpoly.add(acc, term if sign > 0 else intpoly.neg(term))
            sign = -sign
        return acc

    return minor(frozenset(range(n)))


# ----------------------------------------------------------------------
# constructors


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(rs, _identity(rs.rank))


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    n = rs.rank
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    for c in range(n):
        rows[i][c] -= rs.cartan[c][i]
    return WeylElement(rs, tuple(tuple(r) for r in rows))


def reflection(rs: RootSystem, alpha) -> WeylElement:
    """The reflection through a root: x -> x - <x, alpha_check> alpha."""
    r = rs.as_root(alpha)
    n = rs.rank
    rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    for j in range(n):
        basis = tuple(1 if k == j else 0 for k in range(n))
        c = rs._pair_roots(basis, r.coords)
        if c:
            for a in range(n):
                rows[a][j] -= c * r.coords[a]
    return WeylElement(rs, tuple(tuple(row) for row in rows))


def from_word(rs: RootSystem, letters) -> WeylElement:
    w = identity(rs)
    for i in letters:
        w = w.times_simple(i)
    return w


def coxeter_element(rs: RootSystem) -> WeylElement:
    return from_word(rs, range(rs.rank))


def minus_identity(rs: RootSystem) -> WeylElement | None:
    """The element acting as -1, when it lies in W (i.e. the longest element)."""
    w = identity(rs)
    changed = True
    while changed:
        changed = False
        for i in range(rs.rank):
            if not w.right_descent(i):
                w = w.times_simple(i)
                changed = True
                break
    if w.matrix == tuple(tuple(-1 if i == j else 0 for j in range(rs.rank)) for i in range(rs.rank)):
        return w
    return None


def longest_element(rs: RootSystem) -> WeylElement:
    w = identity(rs)
    changed = True
    while changed:
        changed = False
        for i in range(rs.rank):
            if not w.right_descent(i):
                w = w.times_simple(i)
                changed = True
                break
    return w


def random_element(rs: RootSystem, seed: int, word_length: int | None = None) -> WeylElement:
    """Product of a long random word of simple reflections, reproducible.

    The default word length is four times the number of positive roots plus
    a random parity letter; without the extra letter the walk would stay on
    one side of the even/odd length split and miss half the group.
    """
    rng = random.Random(seed)
    if word_length is None:
        word_length = 4 * len(rs.positive_roots) + rng.randrange(2)
    return from_word(rs, (rng.randrange(rs.rank) for _ in range(word_length)))


# ----------------------------------------------------------------------
# spectral helpers


def cyclotomic_parts(w: WeylElement) -> dict[int, int]:
    """Multiplicities of cyclotomic factors of the characteristic polynomial."""
    return intpoly.cyclotomic_factorization(w.char_poly(), w.order())


def elliptic_powers(w: WeylElement) -> set[int]:
    """Residues r mod d with w^r elliptic, decided from eigenvalue orders.

    An eigenvalue that is a primitive m-th root of unity dies at power r
    exactly when m divides r, so w^r is elliptic iff no factor index m of
    the characteristic polynomial divides r.
    """
    if not w.is_elliptic():
        raise DomainError("elliptic powers are only defined for elliptic elements")
    d = w.order()
    ms = cyclotomic_parts(w)
    return {r for r in range(d) if all(r % m for m in ms)}


def is_linked_to_minus_identity(w: WeylElement) -> bool:
    """Whether some power of w equals -I, by direct matrix powers."""
    n = w.rs.rank
    neg = tuple(tuple(-1 if i == j else 0 for j in range(n)) for i in range(n))
    if minus_identity(w.rs) is None:
        raise DomainError(f"-I does not lie in W({w.rs.type})")
    acc = w.matrix
    for _ in range(w.order()):
        if acc == neg:
            return True
        acc = _mat_mul(acc, w.matrix)
    return False
