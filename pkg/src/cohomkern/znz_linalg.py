"""Exact linear algebra over Z/m for composite m.

Matrices are int64 numpy arrays with entries in [0, m); vectors are rows and
a matrix M acts by x -> x @ M. Row spans are the basic objects, so the
workhorse is the Howell normal form: an echelon form whose pivots divide m,
whose entries above each pivot are reduced modulo it, and which carries enough
extra rows that every span element with k leading zeros is a combination of
the rows with k leading zeros. That last property is what makes kernels and
membership tests correct when m is not prime.

Moduli stay small (d^2 with d <= 50), so products of two residues fit easily
in 64 bits and every intermediate is reduced right away.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NoSolution, NotContained, NotFree


def as_matrix(M, m: int, cols: int | None = None) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size or cols is None else A.reshape(0, cols)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {A.shape}")
    return A % m


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) for non-negative a, b."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def unit_normalizer(a: int, m: int) -> int:
    """A unit u mod m with u*a = gcd(a, m) (mod m)."""
    a %= m
    if a == 0:
        return 1
    g = math.gcd(a, m)
    mg = m // g
    u = pow(a // g, -1, mg) if mg > 1 else 1
    for k in range(g):
        v = u + k * mg
        if math.gcd(v, m) == 1:
            return v % m
    raise AssertionError("no unit lift found")  # cannot happen


def matmul_mod(A: np.ndarray, B: np.ndarray, m: int) -> np.ndarray:
    """A @ B mod m, through float64 BLAS whenever every partial sum stays exact."""
    A = np.asarray(A, dtype=np.int64) % m
    B = np.asarray(B, dtype=np.int64) % m
    bound = A.shape[1] * (m - 1) ** 2
    if bound < 2 ** 52:
        return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64) % m
    if bound < 2 ** 63:
        return A @ B % m
    return (A.astype(object) @ B.astype(object) % m).astype(np.int64)


def _combine_rows(W: np.ndarray, r: int, i: int, c: int, m: int) -> None:
    """Unimodular 2x2 row step leaving gcd(W[r,c], W[i,c]) in W[r,c]."""
    a, b = int(W[r, c]), int(W[i, c])
    g, x, y = egcd(a, b)
    u, v = -b // g, a // g
    top = (x * W[r] + y * W[i]) % m
    bot = (u * W[r] + v * W[i]) % m
    W[r], W[i] = top, bot


def _howell_reduce(A: np.ndarray, m: int) -> tuple[np.ndarray, list[int]]:
    """Howell form of the rows of A; returns (nonzero rows, pivot columns)."""
    n, cols = A.shape
    W = np.zeros((n + 8, cols), dtype=np.int64)
    W[:n] = A % m
    used = n
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r >= used:
            break
        col = W[r:used, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        gs = np.gcd(col[nz], m)
        k = r + int(nz[np.argmin(gs)])
        if k != r:
            W[[r, k]] = W[[k, r]]
        while True:
            p = math.gcd(int(W[r, c]), m)
            rest = W[r + 1:used, c]
            bad = np.flatnonzero(rest % p)
            if bad.size == 0:
                break
            _combine_rows(W, r, r + 1 + int(bad[0]), c, m)
        W[r] = W[r] * unit_normalizer(int(W[r, c]), m) % m
        p = int(W[r, c])
        below = W[r + 1:used, c]
        hit = np.flatnonzero(below)
        if hit.size:
            q = below[hit] // p
            W[r + 1 + hit] = (W[r + 1 + hit] - q[:, None] * W[r]) % m
        ann = W[r] * (m // p) % m
        if ann.any():
            if used == W.shape[0]:
                W = np.concatenate([W, np.zeros_like(W)], axis=0)
            W[used] = ann
            used += 1
        pivots.append(c)
        r += 1
    H = W[:r]
    for k, c in enumerate(pivots):
        p = H[k, c]
        above = H[:k, c] // p
        hit = np.flatnonzero(above)
        if hit.size:
            H[hit] = (H[hit] - above[hit, None] * H[k]) % m
    return H.copy(), pivots


@dataclass
class HowellForm:
    """Howell form of a row span together with the row operations used.

    ``transform`` satisfies ``transform @ source == matrix (mod m)`` when it
    was requested; ``pivots`` lists the pivot column of each row.
    """

    matrix: np.ndarray
    pivots: list[int]
    modulus: int
    transform: np.ndarray | None = None

    @property
    def pivot_values(self) -> list[int]:
        return [int(self.matrix[k, c]) for k, c in enumerate(self.pivots)]

    @property
    def size(self) -> int:
        """Number of elements of the row span."""
        out = 1
        for p in self.pivot_values:
            out *= self.modulus // p
        return out

    def reduce(self, B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Reduce each row of B against the form.

        Returns (coefficients on the Howell rows, remainders). A row lies in
        the span exactly when its remainder is zero.
        """
        m = self.modulus
        R = as_matrix(B, m, self.matrix.shape[1]).copy()
        Q = np.zeros((R.shape[0], self.matrix.shape[0]), dtype=np.int64)
        for k, c in enumerate(self.pivots):
            p = self.matrix[k, c]
            q = R[:, c] // p
            if q.any():
                Q[:, k] = q
                R = (R - q[:, None] * self.matrix[k]) % m
        return Q, R

    def contains(self, B) -> np.ndarray:
        _, R = self.reduce(B)
        return ~R.any(axis=1)

    def solve(self, B) -> np.ndarray:
        """Canonical x with x @ source = b for every row b of B."""
        if self.transform is None:
            raise ValueError("solve needs a Howell form computed with transform=True")
        Q, R = self.reduce(B)
        if R.any():
            bad = int(np.flatnonzero(R.any(axis=1))[0])
            raise NoSolution(f"row {bad} of the right-hand side is not in the row span")
        return Q @ self.transform % self.modulus


def howell(M, m: int, transform: bool = False) -> HowellForm:
    A = as_matrix(M, m)
    n, cols = A.shape
    if not transform:
        H, piv = _howell_reduce(A, m)
        return HowellForm(H, piv, m)
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    H, piv = _howell_reduce(aug, m)
    left = [k for k, c in enumerate(piv) if c < cols]
    return HowellForm(H[left, :cols].copy(), [piv[k] for k in left], m, H[left, cols:].copy())


def kernel(M, m: int) -> np.ndarray:
    """Howell basis of the left kernel {x : x @ M = 0 mod m}."""
    A = as_matrix(M, m)
    n, cols = A.shape
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    H, piv = _howell_reduce(aug, m)
    rows = [k for k, c in enumerate(piv) if c >= cols]
    return H[rows, cols:].copy()


def solve(M, b, m: int) -> np.ndarray:
    """Some x with x @ M = b; raises NoSolution when b is outside the row span."""
    hf = howell(M, m, transform=True)
    b = np.asarray(b, dtype=np.int64)
    if b.ndim == 1:
        return hf.solve(b.reshape(1, -1))[0]
    return hf.solve(b)


def same_span(A, B, m: int) -> bool:
    HA, HB = howell(A, m).matrix, howell(B, m).matrix
    return HA.shape == HB.shape and bool(np.all(HA == HB))


def smith(R, m: int) -> tuple[list[int], np.ndarray, np.ndarray]:
    """Diagonalize the rows of R over Z/m by row and column operations.

    Returns (diag, V, Vinv) where diag[k] = gcd(D_kk, m) for the diagonal D of
    U @ R @ V, with each entry dividing the next. Rows of R span the same
    submodule as the rows of D @ Vinv.
    """
    A = as_matrix(R, m).copy()
    rows, cols = A.shape
    V = np.eye(cols, dtype=np.int64)
    Vi = np.eye(cols, dtype=np.int64)
    diag: list[int] = []
    for t in range(min(rows, cols)):
        sub = A[t:, t:]
        nz = np.argwhere(sub)
        if nz.size == 0:
            break
        gs = np.gcd(sub[nz[:, 0], nz[:, 1]], m)
        i, j = (nz[np.argmin(gs)] + t).tolist()
        if i != t:
            A[[t, i]] = A[[i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
            Vi[[t, j]] = Vi[[j, t]]
        while True:
            A[t] = A[t] * unit_normalizer(int(A[t, t]), m) % m
            p = int(A[t, t])
            bad = np.flatnonzero(A[t + 1:, t] % p)
            if bad.size:
                _combine_rows(A, t, t + 1 + int(bad[0]), t, m)
                continue
            bad = np.flatnonzero(A[t, t + 1:] % p)
            if bad.size:
                j = t + 1 + int(bad[0])
                a, b = int(A[t, t]), int(A[t, j])
                g, x, y = egcd(a, b)
                u, v = -b // g, a // g
                ct, cj = A[:, t].copy(), A[:, j].copy()
                A[:, t], A[:, j] = (x * ct + y * cj) % m, (u * ct + v * cj) % m
                vt, vj = V[:, t].copy(), V[:, j].copy()
                V[:, t], V[:, j] = (x * vt + y * vj) % m, (u * vt + v * vj) % m
                wt, wj = Vi[t].copy(), Vi[j].copy()
                Vi[t], Vi[j] = (v * wt - u * wj) % m, (-y * wt + x * wj) % m
                continue
            q = A[t + 1:, t] // p
            A[t + 1:] = (A[t + 1:] - q[:, None] * A[t]) % m
            q = A[t, t + 1:] // p
            A[:, t + 1:] = (A[:, t + 1:] - A[:, [t]] * q[None, :]) % m
            V[:, t + 1:] = (V[:, t + 1:] - V[:, [t]] * q[None, :]) % m
            Vi[t] = (Vi[t] + q @ Vi[t + 1:]) % m
            # keep the divisibility chain: every later entry must be a multiple of p
            rest = A[t + 1:, t + 1:] % p
            bad = np.argwhere(rest)
            if bad.size:
                A[t] = (A[t] + A[t + 1 + int(bad[0, 0])]) % m
                continue
            break
        diag.append(math.gcd(int(A[t, t]), m))
    return diag, V, Vi


def span_structure(R, m: int) -> list[int]:
    """Orders of the cyclic factors of the row span of R, each dividing the next."""
    diag, _, _ = smith(R, m)
    return sorted(m // g for g in diag if g != m)


def free_basis(R, m: int) -> np.ndarray:
    """A basis of the row span of R, which must be a free Z/m-module."""
    A = as_matrix(R, m)
    diag, V, Vi = smith(A, m)
    rank = sum(1 for g in diag if g == 1)
    if any(g not in (1, m) for g in diag):
        raise NotFree(f"row span has non-free factors {span_structure(A, m)}")
    basis = Vi[:rank].copy()
    if not same_span(basis, A, m):
        raise AssertionError("free basis extraction lost the span")
    return basis


@dataclass
class SubquotientPresentation:
    """numerator span / denominator span as a direct sum of cyclic groups.

    ``generators`` are elements of the numerator whose classes generate the
    quotient freely subject to ``invariant_factors``: the k-th generator has
    order invariant_factors[k].
    """

    modulus: int
    numerator: np.ndarray
    denominator: np.ndarray
    invariant_factors: list[int]
    generators: np.ndarray
    _num_form: HowellForm
    _V: np.ndarray
    _keep: np.ndarray

    @property
    def ambient_rank(self) -> int:
        return self.numerator.shape[1]

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def coordinates(self, B) -> np.ndarray:
        """Class coordinates (mod each invariant factor) of numerator elements."""
        X = self._num_form.solve(B)
        Y = X @ self._V % self.modulus
        f = np.asarray(self.invariant_factors, dtype=np.int64)
        return Y[:, self._keep] % f if f.size else np.zeros((len(X), 0), dtype=np.int64)

    def is_zero(self, B) -> np.ndarray:
        return ~self.coordinates(B).any(axis=1)


def subquotient(numerator, denominator, m: int) -> SubquotientPresentation:
    num = howell(as_matrix(numerator, m), m, transform=True)
    width = num.matrix.shape[1]
    den = howell(as_matrix(denominator, m, width), m)
    N, D = num.matrix, den.matrix
    if D.shape[0] and not np.all(num.contains(D)):
        raise NotContained("denominator span is not contained in the numerator span")
    k = N.shape[0]
    # numerator coefficient vectors that land in the denominator
    rel = kernel(np.concatenate([N, D], axis=0), m)[:, :k]
    diag, V, Vi = smith(rel, m) if k else ([], np.eye(0, dtype=np.int64), np.eye(0, dtype=np.int64))
    orders = [g for g in diag] + [m] * (k - len(diag))
    keep = np.array([i for i, g in enumerate(orders) if g != 1], dtype=np.int64)
    factors = [orders[i] for i in keep]
    gens = Vi[keep] @ N % m if k else np.zeros((0, width), dtype=np.int64)
    # the solve transform must reference N itself, not the caller's rows
    num_self = howell(N, m, transform=True)
    return SubquotientPresentation(m, N, D, factors, gens, num_self, V, keep)


def read_matrix(path: str | Path) -> tuple[np.ndarray, int]:
    """Read the debug format: "rows cols modulus" then row-major entries."""
    tokens = Path(path).read_text().split()
    rows, cols, m = (int(x) for x in tokens[:3])
    body = [int(x) for x in tokens[3:]]
    if len(body) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, found {len(body)}")
    return np.array(body, dtype=np.int64).reshape(rows, cols) % m, m


def write_matrix(path: str | Path, M: np.ndarray, m: int) -> None:
    A = as_matrix(M, m)
    lines = [f"{A.shape[0]} {A.shape[1]} {m}"]
    lines += [" ".join(str(int(x)) for x in row) for row in A]
    Path(path).write_text("\n".join(lines) + "\n")
