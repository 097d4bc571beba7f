"""Exact linear algebra over the prime field GF(p).

Matrices are int64 numpy arrays with entries reduced to ``0..p-1``.
All routines are deterministic: pivots are chosen as the first nonzero
entry, so bases returned by :func:`nullspace` and the quotient data of
:func:`quotient` are canonical for a given input.
"""

from __future__ import annotations

import numpy as np

DTYPE = np.int64


def as_matrix(a, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    m = np.array(a, dtype=DTYPE)
    if shape is not None:
        m = m.reshape(shape)
    return m % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=DTYPE)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` over GF(p) and its pivot columns."""
    m = np.array(a, dtype=DTYPE) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        lead = int(m[r, c])
        if lead != 1:
            m[r] = (m[r] * pow(lead, -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Basis of ``{x : a x = 0}`` as columns, plus the free columns.

    Basis vector ``k`` has a 1 at ``free[k]`` and 0 at every other free
    column, so the coordinates of a kernel vector ``v`` are ``v[free]``.
    """
    n = a.shape[1]
    if a.shape[0] == 0:
        return eye(n), list(range(n))
    r, pivots = rref(a, p)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = zeros(n, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        if pivots:
            basis[pivots, k] = (-r[:, f]) % p
    return basis, free


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``a x = b`` (``b`` may have several columns)."""
    b2 = b.reshape(a.shape[0], b.shape[1] if b.ndim == 2 else 1)
    n = a.shape[1]
    r, pivots = rref(np.hstack([a % p, b2 % p]), p)
    if any(c >= n for c in pivots):
        return None
    x = zeros(n, b2.shape[1])
    for k, c in enumerate(pivots):
        x[c] = r[k, n:]
    return x if b.ndim == 2 else x[:, 0]


def inverse(a: np.ndarray, p: int) -> np.ndarray | None:
    n, m = a.shape
    if n != m:
        return None
    if n == 0:
        return zeros(0, 0)
    r, pivots = rref(np.hstack([a % p, eye(n)]), p)
    if pivots[:n] != list(range(n)):
        return None
    return r[:n, n:].copy()


def quotient(relations: np.ndarray, n: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Quotient of ``F^n`` by the column span of ``relations``.

    Returns ``(q, s)``: ``q`` maps ``F^n`` onto the quotient coordinates and
    ``s`` is the section picking the non-pivot standard basis vectors, so
    ``q @ s`` is the identity and ``q`` kills every relation.
    """
    if relations.size == 0:
        return eye(n), eye(n)
    r, pivots = rref(relations.T, p)
    pivot_set = set(pivots)
    keep = [c for c in range(n) if c not in pivot_set]
    ident = eye(n)
    q = ident[keep, :].copy()
    if pivots:
        q = (q - r[:, keep].T @ ident[pivots, :]) % p
    return q, ident[:, keep].copy()


def is_injective(a: np.ndarray, p: int) -> bool:
    return rank(a, p) == a.shape[1]


def is_surjective(a: np.ndarray, p: int) -> bool:
    return rank(a, p) == a.shape[0]
