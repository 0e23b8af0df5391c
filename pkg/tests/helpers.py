"""Shared fixtures-by-hand for the test suite: Pauli matrices, seeded random
operators, and a couple of independent oracles used to cross-check the
library's own routines."""

from __future__ import annotations

import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

P_PLUS_4 = np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex)


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2.0


def random_unitary_givens(rng: np.random.Generator, n: int) -> np.ndarray:
    """Product of complex Givens rotations and a diagonal phase: unitary by
    construction, no matrix exponentials involved."""
    u = np.diag(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=n)))
    for i in range(n - 1):
        for j in range(i + 1, n):
            theta = rng.uniform(0.0, 2.0 * np.pi)
            phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
            g = np.eye(n, dtype=complex)
            g[i, i] = np.cos(theta)
            g[j, j] = np.cos(theta)
            g[i, j] = np.sin(theta) * phase
            g[j, i] = -np.sin(theta) * np.conj(phase)
            u = u @ g
    return u


def random_projection(rng: np.random.Generator, n: int, rank: int) -> np.ndarray:
    """Rank-k orthogonal projection from the first k columns of a random unitary."""
    u = random_unitary_givens(rng, n)
    cols = u[:, :rank]
    return cols @ cols.conj().T


def random_offblock(rng: np.random.Generator) -> np.ndarray:
    """4x4 matrix supported on the two off-diagonal 2x2 corners of the
    standard two-block split, Hermitian by construction."""
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    s = np.zeros((4, 4), dtype=complex)
    s[:2, 2:] = b
    s[2:, :2] = b.conj().T
    return s


def gram_rank_by_elimination(ops: list[np.ndarray], tol: float = 1e-9) -> int:
    """Rank of span{ops} via pivoted Gaussian elimination on the Gram matrix.

    Independent of any orthonormalization code: builds G[i,j] = <ops_i, ops_j>
    and counts pivots above tol, with full pivoting on the residual block.
    """
    k = len(ops)
    g = np.array(
        [[np.vdot(a, b) for b in ops] for a in ops], dtype=complex
    ).reshape(k, k)
    rank = 0
    active = list(range(k))
    while active:
        sub = g[np.ix_(active, active)]
        idx = np.unravel_index(np.argmax(np.abs(sub)), sub.shape)
        pivot = sub[idx]
        if abs(pivot) <= tol:
            break
        r, c = active[idx[0]], active[idx[1]]
        for i in active:
            if i == r:
                continue
            g[i, :] = g[i, :] - (g[i, c] / pivot) * g[r, :]
        active.remove(r)
        rank += 1
    return rank


def subspace_projector_from_ops(ops: list[np.ndarray]) -> np.ndarray:
    """HS projector onto span{ops} via numpy SVD, independent of the library."""
    flat = np.array([op.reshape(-1) for op in ops])
    u, s, vh = np.linalg.svd(flat, full_matrices=False)
    keep = s > 1e-10 * max(1.0, s[0] if s.size else 0.0)
    basis = vh[keep]  # rows are an orthonormal basis of the span
    return basis.T @ basis.conj()
