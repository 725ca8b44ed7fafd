"""The adjoint representation as an exact integer matrix oracle.

Basis: one vector per root, then the simple coroots.  The one-parameter
elements are genuine exponentials of the (nilpotent) adjoint action of root
vectors, so the reflection representatives and torus elements built from
them carry the honest relation structure of the adjoint group.  Elements of
the extended Weyl group act as signed permutations of the root block plus
the reflection action on the Cartan block, which gives a compact composable
form for long products.

Checks performed against this oracle see adjoint images: identities that
only hold in the universal group up to center are reported as verified
"modulo center" (the report says so explicitly).
"""

from __future__ import annotations

from dataclasses import dataclass, field


import numpy as np

from ..errors import DomainError, InvariantViolation
from ..rootsystem import RootSystem
from .. import weyl
from .chevalley import StructureConstants, compute_structure_constants


class AdjointRealization:
    def __init__(self, rs: RootSystem, constants: StructureConstants | None = None):
        self.rs = rs
        self.constants = constants or compute_structure_constants(rs)
        self.nroots = len(rs.roots)
        self.dim = self.nroots + rs.rank
        self._index = {r.coords: i for i, r in enumerate(rs.roots)}
        self._ad_cache: dict[int, np.ndarray] = {}
        self._m_cache: dict[tuple[int, int], "AdjointElement"] = {}
        self._simple_m = [self.m_element(r.coords, 1) for r in rs.simple_roots]

    # -- raw matrices -----------------------------------------------------

    def ad_matrix(self, alpha) -> np.ndarray:
        """Adjoint action of the root vector for alpha, as a dense matrix."""
        a = self.rs.root_index(alpha)
        if a in self._ad_cache:
            return self._ad_cache[a]
        rs = self.rs
        n, nr = rs.rank, self.nroots
        ca = rs.roots[a].coords
        A = np.zeros((self.dim, self.dim), dtype=np.int64)
        for b, rb in enumerate(rs.roots):
            if rb.coords == tuple(-x for x in ca):
                cor = rs.coroot(ca)
                for i, ci in enumerate(cor):
                    A[nr + i, b] = ci
                continue
            s = tuple(x + y for x, y in zip(ca, rb.coords))
            si = self._index.get(s)
            if si is not None:
                A[si, b] = self.constants.n_of(ca, rb.coords)
        for i in range(n):
            # [e_a, h_i] = -<a, alpha_i coroot> e_a
            A[a, nr + i] = -rs.pairing(ca, i)
        self._ad_cache[a] = A
        return A

    def x_matrix(self, alpha, lam: int) -> np.ndarray:
        """exp(lam * ad e_alpha): an integer matrix by nilpotency.

        The divided powers (ad e)^k / k! are integral, so each term is an
        exact integer matrix; float arithmetic is safe at these sizes.
        """
        A = self.ad_matrix(alpha).astype(np.float64)
        acc = np.eye(self.dim)
        power = np.eye(self.dim)
        fact = 1
        for k in range(1, 6):
            power = power @ A
            fact *= k
            if not power.any():
                break
            term = power * (lam ** k) / fact
            rounded = np.rint(term)
            if np.any(np.abs(term - rounded) > 1e-9):
                raise InvariantViolation("adjoint exponential is not integral")
            acc = acc + rounded
        else:
            raise InvariantViolation("adjoint root action is not nilpotent")
        return np.rint(acc).astype(np.int64)

    def m_matrix(self, alpha, lam: int = 1) -> np.ndarray:
        """x_alpha(lam) x_{-alpha}(-1/lam) x_alpha(lam) for lam = +-1."""
        if lam not in (1, -1):
            raise DomainError("reflection representatives need lam = +-1 for exactness")
        neg = tuple(-c for c in self.rs.as_root(alpha).coords)
        a = self.x_matrix(alpha, lam)
        b = self.x_matrix(neg, -lam)  # -1/lam = -lam for lam = +-1
        return _intmul(_intmul(a, b), a)

    def h_matrix(self, alpha, lam: int = -1) -> np.ndarray:
        return _intmul(self.m_matrix(alpha, lam), self.m_matrix(alpha, -1))

    # -- structural elements ----------------------------------------------

    def element_from_matrix(self, mat: np.ndarray) -> "AdjointElement":
        """Decompose a monomial matrix into signed-permutation form."""
        nr, n = self.nroots, self.rs.rank
        perm = np.empty(nr, dtype=np.int64)
        signs = np.empty(nr, dtype=np.int64)
        for b in range(nr):
            col = mat[:, b]
            nz = np.flatnonzero(col)
            if len(nz) != 1 or nz[0] >= nr or abs(col[nz[0]]) != 1:
                raise InvariantViolation("matrix is not monomial on the root block")
            perm[b] = nz[0]
            signs[b] = col[nz[0]]
        if np.any(mat[nr:, :nr]) or np.any(mat[:nr, nr:]):
            raise InvariantViolation("matrix mixes root and Cartan blocks")
        return AdjointElement(self, perm, signs, mat[nr:, nr:].copy())

    def m_element(self, alpha, lam: int = 1) -> "AdjointElement":
        key = (self.rs.root_index(alpha), lam)
        if key not in self._m_cache:
            self._m_cache[key] = self.element_from_matrix(self.m_matrix(alpha, lam))
        return self._m_cache[key]

    def h_element(self, alpha) -> "AdjointElement":
        m = self.m_element(alpha, 1)
        return m.compose(m)

    def identity_element(self) -> "AdjointElement":
        return AdjointElement(self, np.arange(self.nroots), np.ones(self.nroots, dtype=np.int64),
                              np.eye(self.rs.rank, dtype=np.int64))

    def lift_word(self, letters) -> "AdjointElement":
        g = self.identity_element()
        for i in letters:
            g = g.compose(self._simple_m[i])
        return g

    def lift(self, w: weyl.WeylElement) -> "AdjointElement":
        return self.lift_word(w.reduced_word())

    # -- the order oracle ---------------------------------------------------

    def spin_check(self, w: weyl.WeylElement) -> int:
        """+1 when adjoint representatives of elliptic w have order d, else -1."""
        if not w.is_elliptic():
            raise DomainError("adjoint spin check needs an elliptic element")
        d = w.order()
        g = self.lift(w)
        gd = g.power(d)
        if gd.is_identity():
            return 1
        if not gd.compose(gd).is_identity():
            raise InvariantViolation("representative order is neither d nor 2d")
        return -1


@dataclass
class AdjointElement:
    """Signed root permutation plus Cartan block: the shape of N0 in the adjoint."""

    realization: AdjointRealization
    perm: np.ndarray
    signs: np.ndarray
    cartan_block: np.ndarray

    def compose(self, other: "AdjointElement") -> "AdjointElement":
        # self after other, matching matrix multiplication self @ other
        return AdjointElement(
            self.realization,
            self.perm[other.perm],
            self.signs[other.perm] * other.signs,
            self.cartan_block @ other.cartan_block,
        )

    def inverse(self) -> "AdjointElement":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm))
        signs = np.empty_like(self.signs)
        signs[self.perm] = self.signs
        cb = np.rint(np.linalg.inv(self.cartan_block.astype(np.float64))).astype(np.int64)
        return AdjointElement(self.realization, inv, signs, cb)

    def power(self, k: int) -> "AdjointElement":
        acc = self.realization.identity_element()
        base = self
        while k:
            if k & 1:
                acc = acc.compose(base)
            base = base.compose(base)
            k >>= 1
        return acc

    def is_identity(self) -> bool:
        return (np.array_equal(self.perm, np.arange(len(self.perm)))
                and np.all(self.signs == 1)
                and np.array_equal(self.cartan_block, np.eye(len(self.cartan_block), dtype=np.int64)))

    def order(self, cap: int = 10000) -> int:
        acc = self
        for k in range(1, cap + 1):
            if acc.is_identity():
                return k
            acc = acc.compose(self)
        raise InvariantViolation("order exceeds cap")

    def __eq__(self, other) -> bool:
        return (np.array_equal(self.perm, other.perm)
                and np.array_equal(self.signs, other.signs)
                and np.array_equal(self.cartan_block, other.cartan_block))

    def weyl_root_image(self, b: int) -> tuple[int, int]:
        return int(self.perm[b]), int(self.signs[b])


# ----------------------------------------------------------------------
# relation verification


@dataclass
class RelationReport:
    family: str
    rank: int
    checks: dict[str, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    sign_samples: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def count(self, name: str, k: int = 1) -> None:
        self.checks[name] = self.checks.get(name, 0) + k

    def to_dict(self) -> dict:
        return {
            "type": f"{self.family}{self.rank}",
            "passed": self.passed,
            "checks": dict(sorted(self.checks.items())),
            "failures": self.failures,
            "notes": self.notes,
            "extractedSigns": self.sign_samples,
        }


def extract_conjugation_sign(adj: AdjointRealization, alpha, beta) -> tuple[int, bool]:
    """The sign c with m_alpha m_beta m_alpha^{-1} = m_{s_alpha beta}(c).

    Returns (sign, ambiguous): in the adjoint group the two candidate signs
    can coincide (their ratio is a central torus element), in which case the
    sign is reported as +1 with the ambiguity flag set.
    """
    rs = adj.rs
    ma = adj.m_element(alpha, 1)
    mb = adj.m_element(beta, 1)
    conj = ma.compose(mb).compose(ma.inverse())
    gamma = weyl.reflection(rs, alpha).act(rs.as_root(beta).coords)
    plus = adj.m_element(gamma, 1)
    minus = adj.m_element(gamma, -1)
    amb = plus == minus
    if conj == plus:
        return 1, amb
    if conj == minus:
        return -1, amb
    raise InvariantViolation("conjugate of m is not a candidate m (CR1 failure)")


def verify_relations(rs: RootSystem, sample_pairs: int = 500, seed: int = 0,
                     adj: AdjointRealization | None = None) -> RelationReport:
    """Relation battery on sampled root pairs, in the adjoint oracle.

    Covers the conjugation rule for reflection representatives (with sign
    extraction), the conjugation rule for torus generators, commutation of
    lifts for orthogonal pairs with trivial chains, and the exact lifts of
    the rank-two braid relations.  Any failed identity raises the failure
    into the report; callers treat a non-empty failure list as fatal.
    """
    import random

    adj = adj or AdjointRealization(rs)
    rng = random.Random(seed)
    rep = RelationReport(rs.family, rs.rank)
    rep.notes.append(
        "braid-4 and CR1 sign checks compare adjoint images; identities "
        "involving central torus elements are verified modulo center")
    nroots = len(rs.roots)
    for _ in range(sample_pairs):
        a = rng.randrange(nroots)
        b = rng.randrange(nroots)
        ca, cb = rs.roots[a].coords, rs.roots[b].coords
        if ca == cb or ca == tuple(-x for x in cb):
            continue
        # CR1 with sign extraction
        sign_ab, amb_ab = extract_conjugation_sign(adj, ca, cb)
        rep.count("cr1")
        if not amb_ab:
            rep.count("cr1-unambiguous")
            if len(rep.sign_samples) < 40:
                rep.sign_samples.append({"alpha": list(ca), "beta": list(cb),
                                         "sign": sign_ab})
        # CR2: conjugation permutes torus generators
        ma = adj.m_element(ca, 1)
        hb = adj.h_element(cb)
        gamma = weyl.reflection(rs, ca).act(cb)
        lhs = ma.compose(hb).compose(ma.inverse())
        if lhs != adj.h_element(gamma):
            rep.failures.append(f"cr2 failure for {ca}, {cb}")
        rep.count("cr2")
        # orthogonal pairs with trivial chains commute
        if rs._pair_roots(ca, cb) == 0:
            p, q = rs.root_chain(ca, cb)
            if p == 0 and q == 0:
                mb = adj.m_element(cb, 1)
                if ma.compose(mb) != mb.compose(ma):
                    rep.failures.append(f"orthogonal commutation failure for {ca}, {cb}")
                rep.count("orth-commute")
        # chain sign rules on bonded obtuse pairs (diagram-node geometry),
        # where the signs are unambiguous
        bond = rs.bond(ca, cb)
        if bond in (1, 2) and rs._pair_roots(ca, cb) < 0:
            _check_sign_rules(rs, adj, rep, ca, cb, bond)
    _verify_braid(rs, adj, rep)
    return rep


def _check_sign_rules(rs, adj, rep, ca, cb, bond) -> None:
    """Antisymmetry and the chain-sign product used in the braid lifts.

    For an obtuse bonded pair (j, k), the geometry of adjacent diagram
    nodes: single bond needs c(j,k) = -c(k,j) and c(k,j) c(k, s_k j) = -1;
    a double bond with k short needs the same product to be +1.  Checked
    only when every extracted sign is free of central ambiguity.
    """
    if bond == 2 and rs.as_root(cb).length_class != "short":
        ca, cb = cb, ca
    s_kj = weyl.reflection(rs, cb).act(ca)
    c_kj, amb1 = extract_conjugation_sign(adj, cb, ca)
    c_jk, amb2 = extract_conjugation_sign(adj, ca, cb)
    c_k_skj, amb3 = extract_conjugation_sign(adj, cb, s_kj)
    if amb1 or amb2 or amb3:
        return
    if bond == 1:
        if c_jk != -c_kj:
            rep.failures.append(f"sign antisymmetry failure for {ca}, {cb}")
        if c_kj * c_k_skj != -1:
            rep.failures.append(f"single-bond chain sign failure for {ca}, {cb}")
        rep.count("sign-rule-single")
    else:
        if c_kj * c_k_skj != 1:
            rep.failures.append(f"double-bond chain sign failure for {ca}, {cb}")
        rep.count("sign-rule-double")


def _verify_braid(rs: RootSystem, adj: AdjointRealization, rep: RelationReport) -> None:
    """Exact braid lifts on every bonded pair of simple-system conjugates."""
    nroots = len(rs.roots)
    for a in range(nroots):
        for b in range(a + 1, nroots):
            ca, cb = rs.roots[a].coords, rs.roots[b].coords
            if ca == tuple(-x for x in cb):
                continue
            bond = rs.bond(ca, cb)
            if bond == 1:
                prod = adj.m_element(ca, 1).compose(adj.m_element(cb, 1))
                if not prod.power(3).is_identity():
                    rep.failures.append(f"single-bond braid failure for {ca}, {cb}")
                rep.count("braid-3")
            elif bond == 2:
                short, long_ = (ca, cb) if rs.as_root(ca).length_class == "short" else (cb, ca)
                prod = adj.m_element(long_, 1).compose(adj.m_element(short, 1))
                target = adj.h_element(short)
                if prod.power(4) != target:
                    rep.failures.append(f"double-bond braid failure for {ca}, {cb}")
                prod2 = adj.m_element(short, 1).compose(adj.m_element(long_, 1))
                if prod2.power(4) != target:
                    rep.failures.append(f"double-bond braid failure (swapped) for {ca}, {cb}")
                rep.count("braid-4")


def _intmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # float64 matmul is exact for these small entries and far faster than int64
    out = a.astype(np.float64) @ b.astype(np.float64)
    res = np.rint(out).astype(np.int64)
    if np.any(np.abs(out - res) > 1e-6):
        raise InvariantViolation("inexact matrix product")
    return res
