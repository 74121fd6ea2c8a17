"""Vectorised arithmetic modulo a word-sized prime.

Everything here works on int64 numpy arrays holding residues in ``[0, p)``
and requires ``p < 2**31`` so that products fit.
"""

from __future__ import annotations

import flint
import numpy as np

MAX_PRIME = 2**31


def check_prime_size(p: int) -> None:
    if not 2 < p < MAX_PRIME:
        raise ValueError(f"prime {p} outside the supported range (2, 2^31)")


def pow_mod(a: np.ndarray, e: int, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64) % p
    result = np.ones_like(a)
    while e:
        if e & 1:
            result = result * a % p
        e >>= 1
        if e:
            a = a * a % p
    return result


def inv_mod(a: np.ndarray, p: int) -> np.ndarray:
    return pow_mod(a, p - 2, p)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p without int64 overflow."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    k = a.shape[-1]
    chunk = max(1, (2**62) // (p * p))
    if k <= chunk:
        return (a @ b) % p
    out = None
    for s in range(0, k, chunk):
        part = (a[..., s:s + chunk] @ b[..., s:s + chunk, :]) % p
        out = part if out is None else (out + part) % p
    return out


def batch_det(mats: np.ndarray, p: int) -> np.ndarray:
    """Determinants of a stack of square matrices, shape (B, n, n)."""
    a = np.array(mats, dtype=np.int64) % p
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError("expected a stack of square matrices")
    B, n, _ = a.shape
    det = np.ones(B, dtype=np.int64)
    if n == 0:
        return det
    idx = np.arange(B)
    for c in range(n):
        col = a[:, c:, c]
        nz = col != 0
        has = nz.any(axis=1)
        piv = np.argmax(nz, axis=1) + c
        det = np.where(has, det, 0)
        swap = piv != c
        if swap.any():
            rows_c = a[idx, c, :].copy()
            a[idx, c, :] = a[idx, piv, :]
            a[idx, piv, :] = rows_c
            det = np.where(swap, (p - det) % p, det)
        pv = np.where(has, a[:, c, c], 1)
        det = det * pv % p
        if c + 1 < n:
            inv = inv_mod(pv, p)
            factors = a[:, c + 1:, c] * inv[:, None] % p
            a[:, c + 1:, :] = (a[:, c + 1:, :] - factors[:, :, None] * a[:, c, None, :]) % p
    return det


def to_nmod_mat(a: np.ndarray, p: int) -> flint.nmod_mat:
    a = np.asarray(a, dtype=np.int64) % p
    r, c = a.shape
    return flint.nmod_mat(r, c, a.ravel().tolist(), p)


def from_nmod_mat(m: flint.nmod_mat) -> np.ndarray:
    r, c = m.nrows(), m.ncols()
    if r == 0 or c == 0:
        return np.zeros((r, c), dtype=np.int64)
    return np.fromiter(map(int, m.entries()), dtype=np.int64, count=r * c).reshape(r, c)


def rank_mod(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return to_nmod_mat(a, p).rank()


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """A basis of the right kernel, as the columns of the returned array."""
    a = np.asarray(a)
    r, c = a.shape
    if c == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if r == 0:
        return np.eye(c, dtype=np.int64)
    X, nullity = to_nmod_mat(a, p).nullspace()
    return from_nmod_mat(X)[:, :nullity]


def pivots_mod(a: np.ndarray, p: int) -> list[int]:
    """Pivot column indices of the reduced row echelon form."""
    a = np.asarray(a)
    if a.size == 0:
        return []
    R, rank = to_nmod_mat(a, p).rref()
    R = from_nmod_mat(R)
    piv = []
    for i in range(rank):
        nz = np.nonzero(R[i])[0]
        piv.append(int(nz[0]))
    return piv
