"""Vectorised group enumeration, conjugacy orbits, and random sampling.

Elements are matrices on the simple-root basis, stored as int8 batches.
Each element is keyed by the image of a fixed regular dominant vector: that
image determines the element, its coordinates are bounded by those of the
vector itself, and the whole key packs into a single int64.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .errors import BudgetExceeded, InvariantViolation
from .rootsystem import RootSystem
from . import weyl


def group_order(rs: RootSystem) -> int:
    fam, n = rs.family, rs.rank
    if fam == "A":
        return factorial(n + 1)
    if fam in ("B", "C"):
        return 2**n * factorial(n)
    if fam == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("G", 2): 12, ("F", 4): 1152, ("E", 6): 51840,
            ("E", 7): 2903040, ("E", 8): 696729600}[(fam, n)]


def simple_reflection_matrices(rs: RootSystem) -> np.ndarray:
    n = rs.rank
    gens = np.zeros((n, n, n), dtype=np.float64)
    for i in range(n):
        gens[i] = np.array(weyl.simple_reflection(rs, i).matrix, dtype=np.float64)
    return gens


def _regular_vector(rs: RootSystem) -> np.ndarray:
    """An integer vector in root coordinates pairing positively with every coroot."""
    n = rs.rank
    aug = [[Fraction(rs.cartan[i][j]) for i in range(n)] + [Fraction(1)] for j in range(n)]
    # solve sum_i x_i cartan[i][j] = 1 for all j
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    x = [aug[j][n] for j in range(n)]
    den = 1
    for v in x:
        den = den * v.denominator // np.gcd(den, v.denominator)
    c = np.array([int(v * den) for v in x], dtype=np.int64)
    if np.any(c <= 0):
        raise InvariantViolation("regular vector should be dominant")
    return c


@dataclass
class GroupTable:
    rs: RootSystem
    mats: np.ndarray       # (N, n, n) int8, sorted by key
    keys: np.ndarray       # (N,) int64, sorted ascending
    regular: np.ndarray    # the keying vector
    radices: np.ndarray    # per-coordinate pack radix offsets

    def __len__(self) -> int:
        return len(self.keys)


def _packer(c: np.ndarray):
    bounds = c.astype(np.int64)
    radix = 2 * bounds + 1
    total = 1
    for r in radix:
        total *= int(r)
    if total >= 2**62:
        raise InvariantViolation("key range too large to pack into int64")
    mult = np.ones_like(radix)
    for i in range(len(radix) - 2, -1, -1):
        mult[i] = mult[i + 1] * radix[i + 1]

    def pack(vecs: np.ndarray) -> np.ndarray:
        v = np.rint(vecs).astype(np.int64)
        return ((v + bounds) * mult).sum(axis=1)

    return pack


def enumerate_group(rs: RootSystem, budget: int | None = None) -> GroupTable:
    """Breadth-first enumeration of W by word length."""
    n = rs.rank
    expected = group_order(rs)
    if budget is not None and expected > budget:
        raise BudgetExceeded(f"|W({rs.type})| = {expected} exceeds budget {budget}")
    gens = simple_reflection_matrices(rs)
    c = _regular_vector(rs)
    pack = _packer(c)
    cf = c.astype(np.float64)

    ident = np.eye(n, dtype=np.float64)[None]
    level_mats = [ident.astype(np.int8)]
    level_keys = [pack(ident @ cf)]
    prev_keys = np.empty(0, dtype=np.int64)
    cur_keys = level_keys[0]
    frontier = ident
    while frontier.shape[0]:
        cands = np.concatenate([frontier @ gens[i] for i in range(n)], axis=0)
        keys = pack(cands @ cf)
        uniq, idx = np.unique(keys, return_index=True)
        # BFS by length: a candidate is new unless it sits one level down or here
        mask = ~np.isin(uniq, prev_keys, assume_unique=False)
        mask &= ~np.isin(uniq, cur_keys, assume_unique=False)
        new_keys = uniq[mask]
        new_mats = cands[idx[mask]]
        if new_keys.size:
            level_mats.append(np.rint(new_mats).astype(np.int8))
            level_keys.append(new_keys)
        prev_keys, cur_keys = cur_keys, new_keys
        frontier = new_mats
    mats = np.concatenate(level_mats, axis=0)
    keys = np.concatenate(level_keys, axis=0)
    if len(keys) != expected:
        raise InvariantViolation(f"enumerated {len(keys)} elements, expected {expected}")
    order = np.argsort(keys)
    return GroupTable(rs, mats[order], keys[order], c, 2 * c + 1)


def index_of_matrices(table: GroupTable, mats: np.ndarray) -> np.ndarray:
    """Group indices of a float batch of matrices known to lie in W."""
    pack = _packer(table.regular)
    keys = pack(mats @ table.regular.astype(np.float64))
    pos = np.searchsorted(table.keys, keys)
    if np.any(pos >= len(table.keys)) or np.any(table.keys[pos] != keys):
        raise InvariantViolation("matrix not found in the group table")
    return pos


def elliptic_mask(table: GroupTable) -> np.ndarray:
    n = table.rs.rank
    out = np.zeros(len(table), dtype=bool)
    eye = np.eye(n)
    chunk = 1 << 17
    for start in range(0, len(table), chunk):
        block = table.mats[start:start + chunk].astype(np.float64)
        dets = np.linalg.det(block - eye)
        out[start:start + chunk] = np.abs(dets) > 0.5
    return out


@dataclass
class ConjugacyClasses:
    class_id: np.ndarray            # (N,) int32, -1 off the elliptic set
    reps: list[tuple[int, int]]     # per class: (representative index, class size)


def elliptic_conjugacy_classes(rs: RootSystem, table: GroupTable) -> ConjugacyClasses:
    """Orbit partition of the elliptic set under conjugation by generators."""
    n = rs.rank
    gens = simple_reflection_matrices(rs)
    pack = _packer(table.regular)
    cf = table.regular.astype(np.float64)
    ell = elliptic_mask(table)
    class_id = np.full(len(table), -1, dtype=np.int32)
    reps: list[tuple[int, int]] = []
    todo = np.flatnonzero(ell)
    for start_idx in todo:
        if class_id[start_idx] >= 0:
            continue
        cid = len(reps)
        class_id[start_idx] = cid
        frontier = np.array([start_idx], dtype=np.int64)
        size = 1
        while frontier.size:
            block = table.mats[frontier].astype(np.float64)
            nxt = []
            for i in range(n):
                conj = gens[i] @ block @ gens[i]
                keys = pack(conj @ cf)
                pos = np.searchsorted(table.keys, keys)
                pos = np.unique(pos)
                fresh = pos[class_id[pos] < 0]
                if fresh.size:
                    class_id[fresh] = cid
                    nxt.append(fresh)
            frontier = np.unique(np.concatenate(nxt)) if nxt else np.empty(0, dtype=np.int64)
            size += frontier.size
        reps.append((int(start_idx), size))
    return ConjugacyClasses(class_id, reps)


def element_at(rs: RootSystem, table: GroupTable, idx: int) -> weyl.WeylElement:
    m = table.mats[idx]
    return weyl.WeylElement(rs, tuple(tuple(int(x) for x in row) for row in m))


def class_of(rs: RootSystem, table: GroupTable, classes: ConjugacyClasses,
             w: weyl.WeylElement) -> int:
    m = np.array(w.matrix, dtype=np.float64)[None]
    idx = index_of_matrices(table, m)[0]
    cid = int(classes.class_id[idx])
    if cid < 0:
        raise InvariantViolation("element is not in the classified elliptic set")
    return cid


# ----------------------------------------------------------------------
# random sampling


def random_word_batch(rs: RootSystem, count: int, seed: int,
                      word_length: int | None = None) -> np.ndarray:
    """Products of independent random words of simple reflections.

    Each element gets one extra random letter with probability one half:
    fixed-length words only ever reach one coset of the rotation subgroup
    (the walk on the Cayley graph is bipartite), which would miss every
    odd-length element, including all elliptic classes in odd rank B/C.
    """
    n = rs.rank
    if word_length is None:
        word_length = 4 * len(rs.positive_roots)
    gens = simple_reflection_matrices(rs)
    rng = np.random.default_rng(seed)
    out = np.broadcast_to(np.eye(n), (count, n, n)).copy()
    for _ in range(word_length):
        letters = rng.integers(0, n, size=count)
        out = gens[letters] @ out
    letters = rng.integers(0, n, size=count)
    odd = rng.integers(0, 2, size=count).astype(bool)
    out[odd] = gens[letters[odd]] @ out[odd]
    return out


def sample_elliptic(rs: RootSystem, count: int, seed: int,
                    batch: int = 1 << 14) -> np.ndarray:
    """At least ``count`` random elliptic elements, as an int8 matrix batch."""
    n = rs.rank
    eye = np.eye(n)
    blocks = []
    have = 0
    salt = 0
    while have < count:
        if salt > 40 and not have:
            raise InvariantViolation("random sampling found no elliptic elements")
        mats = random_word_batch(rs, batch, seed + 7919 * salt)
        salt += 1
        dets = np.linalg.det(mats - eye)
        keep = mats[np.abs(dets) > 0.5]
        if keep.shape[0]:
            blocks.append(np.rint(keep).astype(np.int8))
            have += keep.shape[0]
    return np.concatenate(blocks, axis=0)[:count]


def batch_char_polys(mats: np.ndarray) -> np.ndarray:
    """Integer characteristic polynomials of a batch, highest degree first.

    Computed from floating point eigenvalues and rounded; callers verify a
    sample against the exact routine.  Coefficients of Weyl elements are
    small, so the rounding is safe.
    """
    count, n, _ = mats.shape
    out = np.empty((count, n + 1), dtype=np.int64)
    for k in range(count):
        eig = np.linalg.eigvals(mats[k].astype(np.float64))
        out[k] = np.rint(np.real(np.poly(eig))).astype(np.int64)
    return out


def batch_signatures(rs: RootSystem, mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(orders, signature bit vectors) for a batch of elliptic elements."""
    from . import _fast

    cartan = np.array(rs.cartan, dtype=np.int64)
    return _fast.signatures_batch(mats.astype(np.int64), cartan,
                                  2 * len(rs.positive_roots) + 2)


def sample_elliptic_buckets(rs: RootSystem, seed: int, count: int):
    """Char-poly buckets of sampled elliptic elements: cp -> (count, representative)."""
    mats = sample_elliptic(rs, count, seed)
    cps = batch_char_polys(mats)
    buckets: dict[tuple, tuple[int, weyl.WeylElement]] = {}
    for k in range(mats.shape[0]):
        cp = tuple(int(x) for x in cps[k][::-1])  # constant term first
        if cp in buckets:
            cnt, rep = buckets[cp]
            buckets[cp] = (cnt + 1, rep)
        else:
            w = weyl.WeylElement(rs, tuple(tuple(int(x) for x in row) for row in mats[k]))
            buckets[cp] = (1, w)
    return buckets
