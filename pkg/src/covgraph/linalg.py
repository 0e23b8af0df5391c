"""Dense complex linear algebra over the Hilbert-Schmidt geometry.

Everything here works on plain ``numpy`` arrays with complex entries;
column vectors are either 1-D arrays or n-by-1 matrices.  The eigensolver
is a cyclic Jacobi iteration with complex rotations: at the dimensions
this package targets (a few dozen at most) it is exact to rounding and
keeps the whole pipeline self-contained and easy to audit.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "adjoint",
    "max_abs",
    "num_close",
    "hs_inner",
    "hs_norm",
    "is_projection",
    "is_hermitian",
    "gram_schmidt_operators",
    "eig_hermitian",
    "spectral_projections_unitary",
    "schmidt",
    "fingerprint",
]

JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds shared across the package.

    ``eq_tol`` governs equality/residual checks, ``eig_tol`` the Jacobi
    convergence target, ``degeneracy_tol`` the clustering of eigenphases.
    """

    eq_tol: float = 1e-10
    eig_tol: float = 1e-12
    degeneracy_tol: float = 1e-8

    def __post_init__(self):
        if min(self.eq_tol, self.eig_tol, self.degeneracy_tol) < 0:
            raise ValueError("tolerances must be non-negative")
        if self.eq_tol < self.eig_tol:
            raise ValueError("eq_tol must be >= eig_tol")


DEFAULT_TOL = Tolerance()


def _as_complex(a) -> np.ndarray:
    return np.asarray(a, dtype=complex)


def adjoint(a: np.ndarray) -> np.ndarray:
    """Hermitian adjoint (conjugate transpose)."""
    return _as_complex(a).conj().T


def max_abs(a: np.ndarray) -> float:
    """Entrywise max-norm; 0 for empty arrays."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def num_close(x, y, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Absolute-plus-relative scalar comparison: |x-y| <= eq_tol*(1+max(|x|,|y|))."""
    return abs(x - y) <= tol.eq_tol * (1.0 + max(abs(x), abs(y)))


def _require_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(A^dagger B), conjugate-linear in A."""
    a, b = _as_complex(a), _as_complex(b)
    _require_same_shape(a, b)
    return complex(np.vdot(a, b))


def hs_norm(a: np.ndarray) -> float:
    """Frobenius norm, i.e. sqrt of the HS inner product of a with itself."""
    a = _as_complex(a)
    return float(math.sqrt(max(np.vdot(a, a).real, 0.0)))


def is_hermitian(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = _as_complex(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and max_abs(a - adjoint(a)) <= tol.eq_tol


def is_projection(p: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff p is Hermitian and idempotent within eq_tol (max-norm)."""
    p = _as_complex(p)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        return False
    return max_abs(p - adjoint(p)) <= tol.eq_tol and max_abs(p @ p - p) <= tol.eq_tol


def fingerprint(a: np.ndarray, digits: int = 12) -> str:
    """Short deterministic hex digest of a matrix, for provenance metadata."""
    a = _as_complex(a)
    data = np.round(a, digits) + 0.0  # normalize -0.0
    h = hashlib.sha1()
    h.update(str(a.shape).encode())
    h.update(data.tobytes())
    return h.hexdigest()[:16]


def gram_schmidt_operators(
    ops: list[np.ndarray] | tuple[np.ndarray, ...],
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[list[np.ndarray], int, np.ndarray]:
    """Orthonormalize a family of same-shape operators in the HS inner product.

    Modified Gram-Schmidt with one re-orthogonalization pass.  A vector whose
    residual after projection is <= eq_tol * max(1, ||input||) is dropped as
    linearly dependent.  Returns (basis, rank, coefficients) where
    coefficients[i, j] = <basis_j, ops_i> expands each input in the basis.
    """
    ops = [_as_complex(op) for op in ops]
    for op in ops[1:]:
        _require_same_shape(ops[0], op)
    basis: list[np.ndarray] = []
    for op in ops:
        v = op.copy()
        for _ in range(2):  # second pass restores orthogonality lost to rounding
            for b in basis:
                v = v - hs_inner(b, v) * b
        r = hs_norm(v)
        if r > tol.eq_tol * max(1.0, hs_norm(op)):
            basis.append(v / r)
    coeffs = np.array(
        [[hs_inner(b, op) for b in basis] for op in ops], dtype=complex
    ).reshape(len(ops), len(basis))
    return basis, len(basis), coeffs


def _jacobi_rotate(m: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero m[p,q] (and m[q,p]) by a unitary 2x2 rotation, accumulated into v."""
    b = m[p, q]
    absb = abs(b)
    if absb == 0.0:
        return
    phase = b / absb
    theta = (m[q, q].real - m[p, p].real) / (2.0 * absb)
    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(1.0 + theta * theta))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    g = np.array([[c, s * phase], [-s * np.conj(phase), c]], dtype=complex)
    cols = [p, q]
    m[:, cols] = m[:, cols] @ g
    m[cols, :] = g.conj().T @ m[cols, :]
    v[:, cols] = v[:, cols] @ g
    m[p, q] = 0.0
    m[q, p] = 0.0
    m[p, p] = m[p, p].real
    m[q, q] = m[q, q].real


def _off_norm(m: np.ndarray) -> float:
    off = m - np.diag(np.diag(m))
    return float(np.linalg.norm(off))


def eig_hermitian(
    a: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Returns (eigenvalues ascending, unitary eigenvector matrix V) with
    a @ V ~ V @ diag(eigenvalues).  Raises ValueError on non-Hermitian
    input and ArithmeticError if the off-diagonal norm fails to reach
    eig_tol * ||a|| within the sweep cap.
    """
    a = _as_complex(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if max_abs(a - adjoint(a)) > tol.eq_tol:
        raise ValueError("matrix is not Hermitian within eq_tol")
    n = a.shape[0]
    m = (a + adjoint(a)) / 2.0
    v = np.eye(n, dtype=complex)
    scale = float(np.linalg.norm(m))
    if n > 1 and scale > 0.0:
        for _ in range(JACOBI_MAX_SWEEPS):
            if _off_norm(m) <= tol.eig_tol * scale:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    _jacobi_rotate(m, v, p, q)
        else:
            if _off_norm(m) > tol.eig_tol * scale:
                raise ArithmeticError(
                    f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps"
                )
    eigvals = np.diag(m).real.copy()
    order = np.argsort(eigvals, kind="stable")
    return eigvals[order], v[:, order]


def _cluster_sorted(values: np.ndarray, gap: float) -> list[list[int]]:
    """Group indices of an ascending value list whose neighbors differ <= gap."""
    groups: list[list[int]] = []
    for i in range(len(values)):
        if groups and values[i] - values[groups[-1][-1]] <= gap:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def spectral_projections_unitary(
    u: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> list[tuple[float, np.ndarray]]:
    """Spectral resolution of a unitary: list of (eigenphase in [0, 2pi), projection).

    The commuting Hermitian pair C = (U+U^dagger)/2, S = (U-U^dagger)/(2i) is
    diagonalized jointly: C first, then Jacobi of S restricted to each
    degenerate eigenspace of C.  Eigenphases whose circular distance is at
    most degeneracy_tol are merged into a single projection.
    """
    u = _as_complex(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    n = u.shape[0]
    if max_abs(adjoint(u) @ u - np.eye(n)) > tol.eq_tol:
        raise ValueError("matrix is not unitary within eq_tol")
    c = (u + adjoint(u)) / 2.0
    s = (u - adjoint(u)) / 2.0j
    cvals, v = eig_hermitian(c, tol)
    for group in _cluster_sorted(cvals, tol.degeneracy_tol):
        if len(group) > 1:
            w = v[:, group]
            sub = adjoint(w) @ s @ w
            sub = (sub + adjoint(sub)) / 2.0
            _, y = eig_hermitian(sub, tol)
            v[:, group] = w @ y
    phases = np.empty(n)
    for i in range(n):
        vec = v[:, i]
        phases[i] = math.atan2(
            np.vdot(vec, s @ vec).real, np.vdot(vec, c @ vec).real
        ) % (2.0 * math.pi)

    order = np.argsort(phases, kind="stable")
    clusters = _cluster_sorted(phases[order], tol.degeneracy_tol)
    # the circle wraps: a cluster near 2pi may continue at 0
    if len(clusters) > 1:
        wrap_gap = phases[order[clusters[0][0]]] + 2.0 * math.pi - phases[order[clusters[-1][-1]]]
        if wrap_gap <= tol.degeneracy_tol:
            clusters[0] = clusters.pop() + clusters[0]

    result = []
    for cluster in clusters:
        idx = [order[i] for i in cluster]
        z = sum(np.exp(1j * phases[i]) for i in idx)
        phase = float(np.angle(z) % (2.0 * math.pi))
        proj = v[:, idx] @ adjoint(v[:, idx])
        result.append((phase, (proj + adjoint(proj)) / 2.0))
    result.sort(key=lambda item: item[0])
    return result


def schmidt(
    v: np.ndarray, d_a: int, d_b: int, tol: Tolerance = DEFAULT_TOL
) -> tuple[np.ndarray, float]:
    """Schmidt coefficients and entanglement entropy of a bipartite unit vector.

    ``v`` lives in the d_a*d_b-dimensional product space with lexicographic
    index d_b*i + j for |i>|j>.  The coefficients are the singular values of
    the d_a-by-d_b reshaping, obtained from the eigenvalues of the d_a-by-d_a
    Gram matrix; the entropy is in bits.
    """
    vec = _as_complex(v).reshape(-1)
    if vec.size != d_a * d_b:
        raise ValueError(f"vector length {vec.size} != {d_a}*{d_b}")
    norm = float(np.linalg.norm(vec))
    if not num_close(norm, 1.0, tol):
        raise ValueError(f"vector norm {norm} is not 1 within eq_tol")
    m = vec.reshape(d_a, d_b)
    gram = m @ adjoint(m)
    eigvals, _ = eig_hermitian(gram, tol)
    weights = np.clip(eigvals[::-1], 0.0, None)[: min(d_a, d_b)]
    coeffs = np.sqrt(weights)
    entropy = float(-sum(w * math.log2(w) for w in weights if w > 0.0))
    return coeffs, entropy
