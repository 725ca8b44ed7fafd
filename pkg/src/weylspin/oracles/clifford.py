"""Spin groups of split quadratic forms inside exact Clifford algebras.

The universal groups of types B and D are spin groups; representing their
one-parameter root subgroups on the Clifford algebra of the split form keeps
everything in dyadic rationals, so orders of representatives are decided
exactly.  The split form diagonalises over the rationals as alternating
+1/-1 squares, which keeps the blade arithmetic elementary.

Dimensions grow as 2^m, so this oracle is deliberately capped: type B up to
rank 4 (a 9-dimensional form) and type D at ranks 4 and 5.  Higher ranks
rely on the closed-form signature results plus the adjoint oracle.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ConfigurationError, DomainError, InvariantViolation
from ..rootsystem import RootSystem
from .. import weyl

CLIFFORD_MAX_RANK = {"B": 4, "D": 5}


class CliffordElement:
    """A sparse element of a Clifford algebra with diagonal form signs.

    Coefficients are exact rationals, or residues modulo a configured odd
    prime when the algebra was built with one.
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "CliffordAlgebra", coeffs: dict):
        self.algebra = algebra
        self.coeffs = {k: v for k, v in coeffs.items() if v}

    def __add__(self, other):
        red = self.algebra.reduce
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = red(out.get(k, 0) + v)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return CliffordElement(self.algebra, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "CliffordElement":
        red = self.algebra.reduce
        c = self.algebra.coefficient(c)
        return CliffordElement(self.algebra, {k: red(v * c) for k, v in self.coeffs.items()})

    def __mul__(self, other):
        alg = self.algebra
        red = alg.reduce
        out: dict = {}
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                mask, sgn = alg.blade_product(ka, kb)
                s = red(out.get(mask, 0) + va * vb * sgn)
                if s:
                    out[mask] = s
                else:
                    out.pop(mask, None)
        return CliffordElement(alg, out)

    def commutator(self, other):
        return self * other - other * self

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"CliffordElement({self.coeffs})"


class CliffordAlgebra:
    """Blade arithmetic; optionally over a prime field to cap entry growth.

    Reducing modulo an odd prime cannot change a spin verdict: the only
    torus values a d-th power takes here are 1 and involutions whose blade
    coefficients lie in {0, +-1, +-1/2}, so a nonzero difference from 1
    stays nonzero modulo every odd prime.
    """

    def __init__(self, signs: tuple[int, ...], prime: int | None = None):
        if prime is not None and (prime < 3 or prime % 2 == 0):
            raise ConfigurationError("coefficient field must have odd characteristic")
        self.signs = signs
        self.m = len(signs)
        self.prime = prime
        self._blade_cache: dict[tuple[int, int], tuple[int, int]] = {}

    def reduce(self, value):
        return value % self.prime if self.prime else value

    def coefficient(self, c):
        if self.prime is None:
            return Fraction(c)
        c = Fraction(c)
        return c.numerator * pow(c.denominator, -1, self.prime) % self.prime

    def blade_product(self, a: int, b: int) -> tuple[int, int]:
        key = (a, b)
        cached = self._blade_cache.get(key)
        if cached is not None:
            return cached
        mask, sign = a, 1
        bb = b
        while bb:
            bit = (bb & -bb).bit_length() - 1
            bb &= bb - 1
            swaps = bin(mask >> (bit + 1)).count("1")
            if swaps & 1:
                sign = -sign
            if mask & (1 << bit):
                mask &= ~(1 << bit)
                sign *= self.signs[bit]
            else:
                mask |= 1 << bit
        self._blade_cache[key] = (mask, sign)
        return mask, sign

    def zero(self) -> CliffordElement:
        return CliffordElement(self, {})

    def one(self) -> CliffordElement:
        return CliffordElement(self, {0: self.coefficient(1)})

    def gamma(self, a: int) -> CliffordElement:
        return CliffordElement(self, {1 << a: self.coefficient(1)})


class SpinRealization:
    """Reflection representatives for B_n or D_n acting on a Clifford algebra."""

    def __init__(self, rs: RootSystem, prime: int | None = None):
        fam, n = rs.family, rs.rank
        if fam not in CLIFFORD_MAX_RANK:
            raise ConfigurationError("Clifford realizations cover types B and D")
        if n > CLIFFORD_MAX_RANK[fam]:
            raise ConfigurationError(
                f"{rs.type} exceeds the Clifford oracle bound {fam}{CLIFFORD_MAX_RANK[fam]}")
        self.rs = rs
        m = 2 * n + 1 if fam == "B" else 2 * n
        # alternating +1/-1 squares diagonalise n hyperbolic planes (+ one
        # anisotropic line in the odd case)
        signs = tuple(1 if a % 2 == 0 else -1 for a in range(m))
        self.algebra = CliffordAlgebra(signs, prime=prime)
        alg = self.algebra
        half = Fraction(1, 2)
        self.u = [ (alg.gamma(2 * i) + alg.gamma(2 * i + 1)).scale(half) for i in range(n)]
        self.v = [ (alg.gamma(2 * i) - alg.gamma(2 * i + 1)).scale(half) for i in range(n)]
        self.z = alg.gamma(2 * n) if fam == "B" else None
        self.gens = [self._reflection_rep(i) for i in range(n)]
        self._verify()

    def _root_vectors(self, i: int) -> tuple[CliffordElement, CliffordElement]:
        """(E, F) for the i-th simple root in the standard coordinates."""
        n = self.rs.rank
        if self.rs.family == "B":
            if i < n - 1:
                return self.u[i] * self.v[i + 1], self.u[i + 1] * self.v[i]
            return self.u[n - 1] * self.z, self.z * self.v[n - 1]
        if i < n - 1:
            return self.u[i] * self.v[i + 1], self.u[i + 1] * self.v[i]
        return self.u[n - 2] * self.u[n - 1], self.v[n - 1] * self.v[n - 2]

    def _weights(self) -> list[tuple[CliffordElement, tuple[int, ...]]]:
        n = self.rs.rank
        out = []
        for i in range(n):
            e = tuple(1 if k == i else 0 for k in range(n))
            out.append((self.u[i], e))
            out.append((self.v[i], tuple(-x for x in e)))
        if self.z is not None:
            out.append((self.z, (0,) * n))
        return out

    def _simple_coords(self, i: int) -> tuple[int, ...]:
        n = self.rs.rank
        if self.rs.family == "B":
            if i < n - 1:
                return tuple(1 if k == i else (-1 if k == i + 1 else 0) for k in range(n))
            return tuple(1 if k == n - 1 else 0 for k in range(n))
        if i < n - 1:
            return tuple(1 if k == i else (-1 if k == i + 1 else 0) for k in range(n))
        return tuple(1 if k >= n - 2 else 0 for k in range(n))

    def _pair_with_coroot(self, wt: tuple[int, ...], i: int) -> int:
        alpha = self._simple_coords(i)
        dot = sum(a * b for a, b in zip(wt, alpha))
        norm = sum(a * a for a in alpha)
        num = 2 * dot
        if num % norm:
            raise InvariantViolation("non-integral coroot pairing")
        return num // norm

    def _reflection_rep(self, i: int) -> CliffordElement:
        E, F = self._root_vectors(i)
        one = self.algebra.one()
        if not (E * E).is_zero() or not (F * F).is_zero():
            raise InvariantViolation("root vectors must square to zero")
        H = E.commutator(F)
        for vec, wt in self._weights():
            want = self._pair_with_coroot(wt, i)
            if not (H.commutator(vec) - vec.scale(want)).is_zero():
                raise InvariantViolation("Cartan normalisation is off")
        return (one + E) * (one - F) * (one + E)

    def _verify(self) -> None:
        one = self.algebra.one()
        n = self.rs.rank
        for i, m in enumerate(self.gens):
            h = m * m
            if (h * h - one).is_zero() is False:
                raise InvariantViolation("generator square is not 2-torsion")
        for i in range(n):
            for j in range(i + 1, n):
                bond = self.rs.cartan[i][j] * self.rs.cartan[j][i]
                a, b = self.gens[i], self.gens[j]
                if bond == 0 and not (a * b - b * a).is_zero():
                    raise InvariantViolation("orthogonal spin generators do not commute")
                if bond == 1 and not (a * b * a - b * a * b).is_zero():
                    raise InvariantViolation("spin braid(3) fails")
                if bond == 2 and not (a * b * a * b - b * a * b * a).is_zero():
                    raise InvariantViolation("spin braid(4) fails")
        # conjugation must realize the reflections on the weight lines
        for i, m in enumerate(self.gens):
            minv = self._inverse(m)
            for vec, wt in self._weights():
                img = m * vec * minv
                pair = self._pair_with_coroot(wt, i)
                alpha = self._simple_coords(i)
                new_wt = tuple(w - pair * a for w, a in zip(wt, alpha))
                if not self._lies_on_weight_line(img, new_wt):
                    raise InvariantViolation("conjugation does not realize the reflection")

    def _lies_on_weight_line(self, elem: CliffordElement, wt: tuple[int, ...]) -> bool:
        candidates = [vec for vec, w in self._weights() if w == wt]
        if wt == (0,) * self.rs.rank and self.z is None:
            return elem.is_zero()
        for c in candidates:
            for s in (1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2)):
                if (elem - c.scale(s)).is_zero():
                    return True
        return False

    def _inverse(self, g: CliffordElement) -> CliffordElement:
        # group elements here have finite order; invert by powering
        acc = g
        prev = self.algebra.one()
        for _ in range(10000):
            if (acc - self.algebra.one()).is_zero():
                return prev
            prev = acc
            acc = acc * g
        raise InvariantViolation("could not invert: order exceeds cap")

    def short_root_rep(self, i: int, lam: int = 1) -> CliffordElement:
        """Representative for the reflection in the short root e_{i+1} (type B).

        These are the non-simple lifts the orthogonal-pair conjugation rule
        speaks about; the algebra here is faithful, so the parameter flip is
        visible, unlike in the adjoint image where the difference is central.
        """
        if self.z is None:
            raise ConfigurationError("short standard-basis roots exist in type B only")
        E = self.u[i] * self.z
        F = self.z * self.v[i]
        one = self.algebra.one()
        if lam == 1:
            return (one + E) * (one - F) * (one + E)
        return (one - E) * (one + F) * (one - E)

    def representative(self, w: weyl.WeylElement) -> CliffordElement:
        g = self.algebra.one()
        for i in w.reduced_word():
            g = g * self.gens[i]
        return g

    def order_of(self, g: CliffordElement, cap: int = 10000) -> int:
        one = self.algebra.one()
        acc = g
        for k in range(1, cap + 1):
            if (acc - one).is_zero():
                return k
            acc = acc * g
        raise InvariantViolation("order exceeds cap")


def spin_realization(rs: RootSystem, prime: int | None = None) -> SpinRealization:
    return SpinRealization(rs, prime=prime)


def clifford_spin_check(rs: RootSystem, w: weyl.WeylElement,
                        realization: SpinRealization | None = None) -> int:
    """Universal spin of elliptic w via the order of a spin-group representative."""
    if not w.is_elliptic():
        raise DomainError("spin checks need elliptic elements")
    realization = realization or SpinRealization(rs)
    d = w.order()
    got = realization.order_of(realization.representative(w), cap=2 * d + 1)
    if got == d:
        return 1
    if got == 2 * d:
        return -1
    raise InvariantViolation(f"spin representative order {got} is neither d nor 2d (d = {d})")
