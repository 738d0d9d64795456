"""Brute-force references for the tests.

Nothing here uses the package's linear algebra: spans and kernels are
enumerated, ranks over prime fields come from plain Gaussian elimination,
and coboundaries are evaluated tuple by tuple from the defining formula.
"""

from __future__ import annotations

import itertools

import numpy as np


def span_set(M, m: int) -> set[tuple[int, ...]]:
    M = np.asarray(M, dtype=np.int64) % m
    rows, cols = M.shape
    out = set()
    for coeffs in itertools.product(range(m), repeat=rows):
        v = np.zeros(cols, dtype=np.int64)
        for c, row in zip(coeffs, M):
            v = (v + c * row) % m
        out.add(tuple(int(x) for x in v))
    return out


def kernel_set(M, m: int) -> set[tuple[int, ...]]:
    M = np.asarray(M, dtype=np.int64) % m
    rows = M.shape[0]
    out = set()
    for x in itertools.product(range(m), repeat=rows):
        if not (np.asarray(x, dtype=np.int64) @ M % m).any():
            out.add(tuple(x))
    return out


def gf_rank(A, p: int) -> int:
    """Rank of an integer matrix over the prime field F_p."""
    rows = [[int(x) % p for x in row] for row in np.asarray(A)]
    if not rows:
        return 0
    cols = len(rows[0])
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def coboundary_brute(mul, act, m: int, n: int, table) -> np.ndarray:
    """Inhomogeneous coboundary of a degree-n cochain, one tuple at a time.

    ``table[k]`` is the value on the k-th n-tuple in lexicographic order and
    g acts on row vectors by v -> v @ act[g].
    """
    N = len(mul)
    table = np.asarray(table, dtype=np.int64).reshape(N ** n, -1)
    index = {t: k for k, t in enumerate(itertools.product(range(N), repeat=n))}
    out = []
    for g in itertools.product(range(N), repeat=n + 1):
        val = table[index[g[1:]]] @ act[g[0]]
        for i in range(1, n + 1):
            merged = g[: i - 1] + (int(mul[g[i - 1]][g[i]]),) + g[i + 1:]
            val = val + (-1) ** i * table[index[merged]]
        val = val + (-1) ** (n + 1) * table[index[g[:n]]]
        out.append(val % m)
    return np.asarray(out, dtype=np.int64)


def coboundary_matrix_brute(mul, act, m: int, n: int) -> np.ndarray:
    """Dense matrix of the coboundary on the standard basis of degree-n cochains."""
    N, r = len(mul), act.shape[1]
    dim = N ** n * r
    rows = []
    for k in range(dim):
        e = np.zeros(dim, dtype=np.int64)
        e[k] = 1
        rows.append(coboundary_brute(mul, act, m, n, e).ravel())
    return np.asarray(rows, dtype=np.int64)


def cohomology_dimension(mul, act, p: int, n: int) -> int:
    """dim over F_p of H^n for a module over the prime field F_p."""
    N, r = len(mul), act.shape[1]
    dim_c = N ** n * r
    rank_next = gf_rank(coboundary_matrix_brute(mul, act, p, n), p)
    rank_prev = gf_rank(coboundary_matrix_brute(mul, act, p, n - 1), p) if n else 0
    return dim_c - rank_next - rank_prev


def fixed_points_count(act, m: int) -> int:
    """|M^G| by enumeration of the whole module."""
    r = act.shape[1]
    count = 0
    for v in itertools.product(range(m), repeat=r):
        v = np.asarray(v, dtype=np.int64)
        if all(not ((v @ A - v) % m).any() for A in act):
            count += 1
    return count
