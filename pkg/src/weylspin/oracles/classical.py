"""Special linear and symplectic realizations of the universal groups.

For type A the universal group is SL, for type C it is Sp, so the order of
an explicit matrix representative built from one-parameter subgroups decides
the universal spin directly.  Everything is integer arithmetic; reflection
representatives come from the usual x(1) x(-1) x(1) products.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigurationError, DomainError, InvariantViolation
from ..rootsystem import RootSystem
from .. import weyl


class MatrixRealization:
    """Images of the simple reflection representatives in a matrix group."""

    def __init__(self, rs: RootSystem, gens: list[np.ndarray], label: str):
        self.rs = rs
        self.gens = gens
        self.label = label
        self.dim = gens[0].shape[0]
        self._verify()

    def _verify(self) -> None:
        eye = np.eye(self.dim, dtype=np.int64)
        for i, j in ((i, j) for i in range(len(self.gens)) for j in range(len(self.gens))):
            if i == j:
                continue
            bond = self.rs.cartan[j][i] * self.rs.cartan[i][j]
            a, b = self.gens[i], self.gens[j]
            if bond == 0:
                if not np.array_equal(a @ b, b @ a):
                    raise InvariantViolation(f"{self.label}: orthogonal generators do not commute")
            elif bond == 1:
                if not np.array_equal(a @ b @ a, b @ a @ b):
                    raise InvariantViolation(f"{self.label}: braid(3) fails")
            elif bond == 2:
                if not np.array_equal(a @ b @ a @ b, b @ a @ b @ a):
                    raise InvariantViolation(f"{self.label}: braid(4) fails")
            elif bond == 3:
                lhs = a @ b @ a @ b @ a @ b
                rhs = b @ a @ b @ a @ b @ a
                if not np.array_equal(lhs, rhs):
                    raise InvariantViolation(f"{self.label}: braid(6) fails")
        for i, g in enumerate(self.gens):
            sq = g @ g
            if np.array_equal(sq, eye):
                continue
            if not np.array_equal(sq @ sq, eye):
                raise InvariantViolation(f"{self.label}: generator square is not 2-torsion")

    def representative(self, w: weyl.WeylElement) -> np.ndarray:
        g = np.eye(self.dim, dtype=np.int64)
        for i in w.reduced_word():
            g = g @ self.gens[i]
        return g

    def order_of(self, mat: np.ndarray, cap: int = 10000) -> int:
        eye = np.eye(self.dim, dtype=np.int64)
        acc = mat.copy()
        for k in range(1, cap + 1):
            if np.array_equal(acc, eye):
                return k
            acc = acc @ mat
        raise InvariantViolation("matrix order exceeds cap")


def _x(dim: int, entries) -> np.ndarray:
    out = np.eye(dim, dtype=np.int64)
    for (r, c), v in entries.items():
        out[r, c] += v
    return out


def _m_from_triple(xp: np.ndarray, xm: np.ndarray) -> np.ndarray:
    return xp @ xm @ xp


def sl_realization(rs: RootSystem) -> MatrixRealization:
    """SL_{n+1} for type A_n: the universal group itself."""
    if rs.family != "A":
        raise ConfigurationError("SL realization is for type A")
    n = rs.rank + 1
    gens = []
    for i in range(rs.rank):
        xp = _x(n, {(i, i + 1): 1})
        xm = _x(n, {(i + 1, i): -1})
        gens.append(_m_from_triple(xp, xm))
    return MatrixRealization(rs, gens, f"SL({n})")


def sp_realization(rs: RootSystem) -> MatrixRealization:
    """Sp_{2n} for type C_n, with basis (v_1..v_n, w_1..w_n).

    Short simple roots act as simultaneous transpositions of the v and w
    blocks, the long root through the last hyperbolic pair.
    """
    if rs.family != "C":
        raise ConfigurationError("Sp realization is for type C")
    n = rs.rank
    dim = 2 * n
    gens = []
    for i in range(n - 1):
        # root e_i - e_{i+1}: E_{i,i+1} - E_{n+i+1, n+i}
        xp = _x(dim, {(i, i + 1): 1, (n + i + 1, n + i): -1})
        xm = _x(dim, {(i + 1, i): -1, (n + i, n + i + 1): 1})
        gens.append(_m_from_triple(xp, xm))
    xp = _x(dim, {(n - 1, 2 * n - 1): 1})
    xm = _x(dim, {(2 * n - 1, n - 1): -1})
    gens.append(_m_from_triple(xp, xm))
    real = MatrixRealization(rs, gens, f"Sp({dim})")
    _verify_symplectic(real, n)
    return real


def _verify_symplectic(real: MatrixRealization, n: int) -> None:
    J = np.zeros((2 * n, 2 * n), dtype=np.int64)
    J[:n, n:] = np.eye(n, dtype=np.int64)
    J[n:, :n] = -np.eye(n, dtype=np.int64)
    for g in real.gens:
        if not np.array_equal(g.T @ J @ g, J):
            raise InvariantViolation("generator does not preserve the symplectic form")


def classical_spin_check(rs: RootSystem, w: weyl.WeylElement,
                         realization: MatrixRealization | None = None) -> int:
    """Universal spin via the order of an explicit SL or Sp representative."""
    if not w.is_elliptic():
        raise DomainError("spin checks need elliptic elements")
    if realization is None:
        if rs.family == "A":
            realization = sl_realization(rs)
        elif rs.family == "C":
            realization = sp_realization(rs)
        else:
            raise ConfigurationError("classical checks cover types A and C; "
                                     "use the Clifford oracle for B and D")
    d = w.order()
    g = realization.representative(w)
    got = realization.order_of(g, cap=2 * d + 1)
    if got == d:
        return 1
    if got == 2 * d:
        return -1
    raise InvariantViolation(f"representative order {got} is neither d nor 2d (d = {d})")
