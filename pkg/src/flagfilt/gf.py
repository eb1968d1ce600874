"""Dense exact linear algebra over a prime field GF(p).

Matrices are ``numpy`` integer arrays with entries reduced mod p; all
pivoting is positional (first nonzero row), so results are deterministic.
Sizes stay at desk scale here, so simple dense elimination is the right
tool; no floating point is involved anywhere.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "is_prime",
    "reduce_mod",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "quotient_pivot_columns",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def reduce_mod(a: np.ndarray, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def rref(a: np.ndarray, p: int, pivot_cols_limit: int | None = None):
    """Reduced row echelon form.

    Returns ``(r, pivots)`` where ``pivots`` lists the pivot column of each
    pivot row.  ``pivot_cols_limit`` restricts pivot *selection* to the
    first so many columns (used for solving augmented systems); elimination
    still applies to the whole rows.
    """
    a = reduce_mod(a, p).copy()
    rows, cols = a.shape
    limit = cols if pivot_cols_limit is None else pivot_cols_limit
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r >= rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        touched = np.nonzero(col)[0]
        if touched.size:
            a[touched] = (a[touched] - np.outer(col[touched], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(a: np.ndarray, p: int) -> int:
    a = reduce_mod(a, p)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of the kernel of ``a`` (acting on column vectors)."""
    a = reduce_mod(a, p)
    rows, cols = a.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-int(r[i, f])) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Solve ``a @ x = b`` (b may hold several right-hand columns).

    Free variables are set to zero.  Raises ``ValueError`` when any column
    of ``b`` is outside the column space of ``a``.
    """
    a = reduce_mod(a, p)
    b = reduce_mod(b, p)
    single = b.ndim == 1
    if single:
        b = b[:, None]
    if a.shape[0] != b.shape[0]:
        raise ValueError("shape mismatch")
    aug = np.concatenate([a, b], axis=1)
    r, pivots = rref(aug, p, pivot_cols_limit=a.shape[1])
    # consistency: a row with zero coefficient part must have zero rhs
    nrow = len(pivots)
    if np.any(r[nrow:, a.shape[1]:] % p):
        raise ValueError("system is inconsistent")
    x = np.zeros((a.shape[1], b.shape[1]), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, a.shape[1]:]
    return x[:, 0] if single else x


def quotient_pivot_columns(b: np.ndarray, z: np.ndarray, p: int) -> list[int]:
    """Indices of columns of ``z`` extending the span of ``b``.

    Eliminating ``[b | z]`` left to right, the pivot columns that fall in
    the ``z`` block single out vectors whose classes form a basis of
    span(b + z) / span(b).
    """
    b = reduce_mod(b, p)
    z = reduce_mod(z, p)
    if z.shape[1] == 0:
        return []
    aug = np.concatenate([b, z], axis=1) if b.size else z
    offset = b.shape[1] if b.size else 0
    _, pivots = rref(aug, p)
    return [c - offset for c in pivots if c >= offset]
