"""Dense mod-p row reduction kernels with switchable backend.

Every exact computation in the package reduces to row echelon form over
F_p (the rational lane is separate and pure Python). Two implementations
of the same kernel are kept in lockstep:

  * a numba ``@njit`` version, the default when numba imports cleanly;
  * a vectorised numpy fallback with identical pivoting behaviour.

Selection is by environment variable, read once at import:

    SEMIRES_BACKEND=numba    force the jitted kernel
    SEMIRES_BACKEND=numpy    force the fallback
    SEMIRES_BACKEND=auto     (default) numba when available

``benchmarks/kernel_bench.py`` times one against the other.

All entries are int64 in [0, p); p <= 2**31 keeps every intermediate
product below 2**63.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - environment without numba
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


_MODE = os.environ.get("SEMIRES_BACKEND", "auto").strip().lower()
if _MODE not in ("auto", "numba", "numpy"):
    raise RuntimeError(f"SEMIRES_BACKEND must be auto, numba or numpy, got {_MODE!r}")
if _MODE == "numba" and not HAS_NUMBA:
    raise RuntimeError("SEMIRES_BACKEND=numba but numba is not importable")
USE_NUMBA = HAS_NUMBA if _MODE == "auto" else _MODE == "numba"


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


@njit(cache=True)
def _inv_mod(a, p):
    # extended Euclid; a nonzero mod p
    t, newt = 0, 1
    r, newr = p, a
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


@njit(cache=True)
def _rref_numba(a, p):
    m, n = a.shape
    cap = m if m < n else n
    piv = np.empty(cap, dtype=np.int64)
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if a[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(n):
                t = a[r, j]
                a[r, j] = a[pr, j]
                a[pr, j] = t
        inv = _inv_mod(a[r, c], p)
        for j in range(c, n):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(m):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for j in range(c, n):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        piv[r] = c
        r += 1
        if r == m:
            break
    return piv[:r], r


def _rref_numpy(a, p):
    m, n = a.shape
    piv = []
    r = 0
    for c in range(n):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            a[np.ix_(rows, np.arange(c, n))] = (
                a[np.ix_(rows, np.arange(c, n))] - np.outer(a[rows, c], a[r, c:])
            ) % p
        piv.append(c)
        r += 1
        if r == m:
            break
    return np.array(piv, dtype=np.int64), r


def rref_mod(a: np.ndarray, p: int):
    """Reduce ``a`` in place to reduced row echelon form mod p.

    Leftmost-pivot, leading-one convention. Returns (pivot columns, rank).
    """
    if a.size == 0:
        return np.empty(0, dtype=np.int64), 0
    if USE_NUMBA:
        return _rref_numba(a, p)
    return _rref_numpy(a, p)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact a @ b mod p with overflow-safe block accumulation."""
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    step = max(1, (2**63 - 1 - p) // (p - 1) ** 2) if p > 1 else k
    if k <= step:
        return (a @ b) % p
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, step):
        acc = (acc + a[:, s : s + step] @ b[s : s + step, :]) % p
    return acc
