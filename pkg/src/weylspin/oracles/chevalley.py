"""Chevalley basis structure constants with extraspecial-pair signs.

``N(a, b)`` is the coefficient in ``[e_a, e_b] = N(a, b) e_{a+b}``.  The
magnitudes are chain lengths plus one; the signs are pinned by declaring
every extraspecial pair positive and propagating through the standard
identities (antisymmetry, negation, the zero-sum triple ratio rule, and the
zero-sum quadruple rule).  Any consistent convention would do: everything
downstream either ignores the convention or quantifies over the signs it
finds.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import InvariantViolation
from ..rootsystem import Coords, RootSystem
import random


class StructureConstants:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        self._coords = [r.coords for r in rs.roots]
        self._index = {c: i for i, c in enumerate(self._coords)}
        self._norm = [rs._norm2(c) for c in self._coords]
        self._order = _positivity_order(rs)
        self._n: dict[tuple[int, int], int] = {}
        self._pending: set[tuple[int, int]] = set()
        self._extraspecial = _extraspecial_pairs(rs, self._order)

    # -- public api -------------------------------------------------------

    def n_of(self, alpha, beta) -> int:
        """N(alpha, beta); zero when alpha + beta is not a root."""
        a = self.rs.root_index(alpha)
        b = self.rs.root_index(beta)
        return self._n_idx(a, b)

    def magnitude(self, alpha, beta) -> int:
        """|N| from the chain: one plus the number of downward steps."""
        p, _ = self.rs.root_chain(alpha, beta)
        return p + 1

    def sign_table(self) -> dict[tuple[Coords, Coords], int]:
        out = {}
        for a, ca in enumerate(self._coords):
            for b, cb in enumerate(self._coords):
                if a == b or self._sum_index(a, b) is None:
                    continue
                out[(ca, cb)] = self._n_idx(a, b)
        return out

    def verify(self, samples: int = 2000, seed: int = 0) -> None:
        """Consistency battery; raises InvariantViolation on any failure."""
        rs = self.rs
        nroots = len(self._coords)
        for a in range(nroots):
            for b in range(nroots):
                s = self._sum_index(a, b)
                if s is None or a == b:
                    continue
                nab = self._n_idx(a, b)
                if nab != -self._n_idx(b, a):
                    raise InvariantViolation("antisymmetry failure")
                if nab != -self._n_idx(self._neg(a), self._neg(b)):
                    raise InvariantViolation("negation rule failure")
                p, _ = rs.root_chain(self._coords[b], self._coords[a])
                if abs(nab) != p + 1:
                    raise InvariantViolation(
                        f"magnitude failure: |N| = {abs(nab)} vs chain {p + 1}")
                # zero-sum triple (a, b, -(a+b)):
                c = self._neg(s)
                lhs = Fraction(nab, self._norm[c])
                if lhs != Fraction(self._n_idx(b, c), self._norm[a]):
                    raise InvariantViolation("triple ratio failure")
        rng = random.Random(seed)
        for _ in range(samples):
            a = rng.randrange(nroots)
            b = rng.randrange(nroots)
            c = rng.randrange(nroots)
            self._check_jacobi(a, b, c)

    def _check_jacobi(self, a: int, b: int, c: int) -> None:
        """[[ea,eb],ec] + [[eb,ec],ea] + [[ec,ea],eb] = 0 on basis vectors."""
        acc: dict[tuple, Fraction] = {}

        def add_bracket(x: int, y: int, coeff: int) -> None:
            # coeff * [e_x, e_y] expanded into the root/cartan basis
            if coeff == 0:
                return
            if self._coords[y] == _negate(self._coords[x]):
                cor = self.rs.coroot(self._coords[x])
                for i, ci in enumerate(cor):
                    if ci:
                        _bump(acc, ("h", i), Fraction(coeff * ci))
                return
            s = self._sum_index(x, y)
            if s is not None:
                _bump(acc, ("e", s), Fraction(coeff * self._n_idx(x, y)))

        for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
            if self._coords[y] == _negate(self._coords[x]):
                # [[e_x, e_{-x}], e_z] = [h_x, e_z] = <z, x_check> e_z
                cor = self.rs.coroot(self._coords[x])
                val = sum(self._coords[z][j] * self.rs.cartan[j][i] * cor[i]
                          for j in range(self.rs.rank) for i in range(self.rs.rank))
                _bump(acc, ("e", z), Fraction(val))
            else:
                s = self._sum_index(x, y)
                if s is not None:
                    add_bracket(s, z, self._n_idx(x, y))
        for v in acc.values():
            if v != 0:
                raise InvariantViolation(f"Jacobi failure on triple {a},{b},{c}")

    # -- internals ----------------------------------------------------------

    def _neg(self, a: int) -> int:
        return self._index[_negate(self._coords[a])]

    def _sum_index(self, a: int, b: int) -> int | None:
        s = tuple(x + y for x, y in zip(self._coords[a], self._coords[b]))
        return self._index.get(s)

    def _n_idx(self, a: int, b: int) -> int:
        s = self._sum_index(a, b)
        if s is None or a == self._neg(b):
            return 0
        key = (a, b)
        if key in self._n:
            return self._n[key]
        if key in self._pending:
            raise InvariantViolation("cyclic structure constant recursion")
        self._pending.add(key)
        try:
            val = self._compute(a, b, s)
        finally:
            self._pending.discard(key)
        self._n[key] = val
        return val

    def _compute(self, a: int, b: int, s: int) -> int:
        ca, cb = self._coords[a], self._coords[b]
        pos_a, pos_b = _is_pos(ca), _is_pos(cb)
        if pos_a and pos_b:
            if self._order[a] > self._order[b]:
                return -self._n_idx(b, a)
            return self._compute_special(a, b, s)
        if not pos_a and not pos_b:
            return -self._n_idx(self._neg(a), self._neg(b))
        # mixed signs: rotate through the zero-sum triple toward positives
        if not pos_a:
            return -self._n_idx(b, a)
        # a > 0 > b here
        cs = self._coords[s]
        if _is_pos(cs):
            # triple (a, b, -s): N(a,b) = (s,s)/(a,a) * N(b, -s) = -(s,s)/(a,a) N(-b, s)
            val = Fraction(self._norm[s], self._norm[a]) * self._n_idx(self._neg(b), s)
            return -_as_int(val)
        # sum negative: negate everything first
        return -self._n_idx(self._neg(a), self._neg(b))

    def _compute_special(self, a: int, b: int, s: int) -> int:
        a1, b1 = self._extraspecial[s]
        p, _ = self.rs.root_chain(self._coords[b], self._coords[a])
        if (a1, b1) == (a, b):
            return p + 1
        # zero-sum quadruple (a1, b1, -a, -b):
        # N(a1,b1) N(a,b)/(s,s) = N(b1,-a) N(a1,-b)/(b1-a)^2 + N(-a,a1) N(b1,-b)/(a1-a)^2
        na, nb = self._neg(a), self._neg(b)
        total = Fraction(0)
        d1 = self._sum_index(b1, na)
        if d1 is not None:
            total += Fraction(self._n_idx(b1, na) * self._n_idx(a1, nb), self._norm[d1])
        d2 = self._sum_index(na, a1)
        if d2 is not None:
            total += Fraction(self._n_idx(na, a1) * self._n_idx(b1, nb), self._norm[d2])
        val = total * Fraction(self._norm[s], self._n_idx(a1, b1))
        out = _as_int(val)
        if abs(out) != p + 1:
            raise InvariantViolation(
                f"structure constant magnitude {out} does not match chain {p + 1}")
        return out


def _bump(acc: dict, key, val: Fraction) -> None:
    acc[key] = acc.get(key, Fraction(0)) + val


def _as_int(val: Fraction) -> int:
    if val.denominator != 1:
        raise InvariantViolation(f"non-integral structure constant {val}")
    return int(val)


def _negate(c: Coords) -> Coords:
    return tuple(-x for x in c)


def _is_pos(c: Coords) -> bool:
    for x in c:
        if x > 0:
            return True
        if x < 0:
            return False
    return False


def _positivity_order(rs: RootSystem):
    """Total order rank on roots: by height then coordinates, positives first."""
    def key(c: Coords):
        return (sum(c), c)

    ordered = sorted((r.coords for r in rs.roots), key=key)
    return {rs.root_index(c): k for k, c in enumerate(ordered)}


def _extraspecial_pairs(rs: RootSystem, order) -> dict[int, tuple[int, int]]:
    """For each non-simple positive root s, the minimal special pair summing to it."""
    idx = {r.coords: i for i, r in enumerate(rs.roots)}
    out: dict[int, tuple[int, int]] = {}
    for s_i, s in enumerate(rs.roots):
        if not _is_pos(s.coords) or sum(s.coords) < 2:
            continue
        best = None
        for a_i, a in enumerate(rs.roots):
            if not _is_pos(a.coords):
                continue
            diff = tuple(x - y for x, y in zip(s.coords, a.coords))
            b_i = idx.get(diff)
            if b_i is None or not _is_pos(diff):
                continue
            if order[a_i] >= order[b_i]:
                continue
            if best is None or order[a_i] < order[best[0]]:
                best = (a_i, b_i)
        if best is None:
            raise InvariantViolation("positive root with no special decomposition")
        out[s_i] = best
    return out


def compute_structure_constants(rs: RootSystem, verify_samples: int = 500) -> StructureConstants:
    sc = StructureConstants(rs)
    # force computation of every constant, then run the consistency battery
    for a in range(len(rs.roots)):
        for b in range(len(rs.roots)):
            sc._n_idx(a, b)
    sc.verify(samples=verify_samples)
    return sc
