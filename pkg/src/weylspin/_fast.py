"""Compiled kernels for batch spin signature computation.

Same algorithm as :mod:`weylspin.tits`, restated over int64 arrays so numba
can compile it; the test suite checks the two implementations agree.  When
numba is unavailable everything still runs, just interpreted.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


@njit(cache=True)
def _is_identity(W):
    n = W.shape[0]
    for r in range(n):
        for c in range(n):
            if W[r, c] != (1 if r == c else 0):
                return False
    return True


@njit(cache=True)
def _matmul(A, B):
    n = A.shape[0]
    C = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for k in range(n):
            a = A[i, k]
            if a != 0:
                for j in range(n):
                    C[i, j] += a * B[k, j]
    return C


@njit(cache=True)
def _order(M, cap):
    acc = M.copy()
    for k in range(1, cap + 1):
        if _is_identity(acc):
            return k
        acc = _matmul(acc, M)
    return -1


@njit(cache=True)
def _col_negative(W, i):
    n = W.shape[0]
    for r in range(n):
        v = W[r, i]
        if v > 0:
            return False
        if v < 0:
            return True
    return False


@njit(cache=True)
def _times_simple(W, i, cartan, base):
    n = W.shape[0]
    for r in range(n):
        base[r] = W[r, i]
    for k in range(n):
        c = cartan[k, i]
        if c != 0:
            for r in range(n):
                W[r, k] -= c * base[r]


@njit(cache=True)
def _reduced_word(W, cartan, word, base):
    n = W.shape[0]
    ell = 0
    while not _is_identity(W):
        for i in range(n):
            if _col_negative(W, i):
                word[ell] = i
                ell += 1
                _times_simple(W, i, cartan, base)
                break
    for a in range(ell // 2):
        tmp = word[a]
        word[a] = word[ell - 1 - a]
        word[ell - 1 - a] = tmp
    return ell


@njit(cache=True)
def _multiply(W1, t1, W2, t2, cartan, word, base, tmpW, tmpt):
    # (W1, t1) *= (W2, t2), safe under aliasing of the two operands
    n = W1.shape[0]
    for r in range(n):
        for c in range(n):
            tmpW[r, c] = W2[r, c]
        tmpt[r] = t2[r]
    ell = _reduced_word(tmpW, cartan, word, base)
    for idx in range(ell):
        i = word[idx]
        acc = 0
        for j in range(n):
            if t1[j] != 0 and (cartan[i, j] & 1) != 0:
                acc ^= 1
        t1[i] ^= acc
        if _col_negative(W1, i):
            t1[i] ^= 1
        _times_simple(W1, i, cartan, base)
    for j in range(n):
        t1[j] ^= tmpt[j]


@njit(cache=True)
def signatures_batch(mats, cartan, cap):
    """Orders and spin signature bits for a batch of elliptic matrices.

    An order of -1 flags a non-terminating order search (never happens for
    genuine Weyl elements under a sane cap); -2 flags a power that failed to
    return to the identity, which would indicate a corrupted input.
    """
    N = mats.shape[0]
    n = mats.shape[1]
    orders = np.empty(N, dtype=np.int64)
    sigs = np.zeros((N, n), dtype=np.int64)
    word = np.empty(1024, dtype=np.int64)
    base = np.empty(n, dtype=np.int64)
    tmpW = np.empty((n, n), dtype=np.int64)
    tmpt = np.empty(n, dtype=np.int64)
    accW = np.empty((n, n), dtype=np.int64)
    acct = np.empty(n, dtype=np.int64)
    baseW = np.empty((n, n), dtype=np.int64)
    baset = np.empty(n, dtype=np.int64)
    for idx in range(N):
        M = mats[idx]
        d = _order(M, cap)
        orders[idx] = d
        if d < 0:
            continue
        for r in range(n):
            for c in range(n):
                accW[r, c] = 1 if r == c else 0
                baseW[r, c] = M[r, c]
            acct[r] = 0
            baset[r] = 0
        k = d
        while k:
            if k & 1:
                _multiply(accW, acct, baseW, baset, cartan, word, base, tmpW, tmpt)
            k >>= 1
            if k:
                _multiply(baseW, baset, baseW, baset, cartan, word, base, tmpW, tmpt)
        if not _is_identity(accW):
            orders[idx] = -2
            continue
        for j in range(n):
            sigs[idx, j] = acct[j]
    return orders, sigs
