"""Operator spans generated by conjugating a seed operator around the circle.

Conjugation expands the seed into frequency components: U_phi M U_phi^dagger
= sum_m exp(i*m*phi) A_m with A_m collecting the blocks P_j M P_k at
frequency difference m = s_j - s_k.  The span of the orbit equals the span
of the nonzero components (a Vandermonde argument over distinct
frequencies), which makes the "analytic" construction exact; the sampled
construction is kept as an independent numerical cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .circle import CircleRep
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    adjoint,
    eig_hermitian,
    fingerprint,
    gram_schmidt_operators,
    hs_inner,
    hs_norm,
    max_abs,
)

__all__ = [
    "FrequencyComponent",
    "OperatorGraph",
    "OperatorSystemCheck",
    "frequency_components",
    "orbit_graph",
    "sampled_orbit_graph",
    "is_operator_system",
    "span_projector",
    "adjoint_closure_scalar",
    "two_block_maximal_graph",
]


@dataclass(frozen=True)
class FrequencyComponent:
    """Coefficient operator of exp(i*m*phi) in the conjugated seed."""

    freq: int
    operator: np.ndarray


@dataclass(frozen=True)
class OperatorGraph:
    """HS-orthonormal basis of an operator span, with provenance metadata."""

    dim: int
    basis: tuple[np.ndarray, ...]
    source: dict = field(default_factory=dict)

    @property
    def span_dim(self) -> int:
        return len(self.basis)

    def project(self, a: np.ndarray) -> np.ndarray:
        """HS-orthogonal projection of a matrix onto the span of the basis."""
        a = np.asarray(a, dtype=complex)
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for b in self.basis:
            out += hs_inner(b, a) * b
        return out


class OperatorSystemCheck(NamedTuple):
    contains_identity: bool
    adjoint_closed: bool
    identity_residual: float
    adjoint_residual: float


def frequency_components(
    rep: CircleRep, seed: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> list[FrequencyComponent]:
    """Nonzero components A_m = sum_{s_j - s_k = m} P_j seed P_k, sorted by m."""
    seed = np.asarray(seed, dtype=complex)
    if seed.shape != (rep.dim, rep.dim):
        raise ValueError(f"expected a {rep.dim}x{rep.dim} matrix, got {seed.shape}")
    acc: dict[int, np.ndarray] = {}
    for sj, pj in zip(rep.freqs, rep.projections):
        left = pj @ seed
        for sk, pk in zip(rep.freqs, rep.projections):
            m = sj - sk
            block = left @ pk
            if m in acc:
                acc[m] += block
            else:
                acc[m] = block
    return [
        FrequencyComponent(m, acc[m])
        for m in sorted(acc)
        if max_abs(acc[m]) > tol.eq_tol
    ]


def _positivity_check(seed: np.ndarray, tol: Tolerance) -> None:
    if max_abs(seed - adjoint(seed)) > tol.eq_tol:
        raise ValueError(
            "seed is not positive semidefinite (not Hermitian); "
            "pass allow_nonpositive=True to explore anyway"
        )
    eigvals, _ = eig_hermitian(seed, tol)
    if eigvals[0] < -tol.eq_tol:
        raise ValueError(
            f"seed is not positive semidefinite (min eigenvalue {eigvals[0]:.3g}); "
            "pass allow_nonpositive=True to explore anyway"
        )


def orbit_graph(
    rep: CircleRep,
    seed: np.ndarray,
    tol: Tolerance = DEFAULT_TOL,
    allow_nonpositive: bool = False,
) -> OperatorGraph:
    """Span of the conjugation orbit of the seed, via its frequency components."""
    seed = np.asarray(seed, dtype=complex)
    if not allow_nonpositive:
        _positivity_check(seed, tol)
    comps = frequency_components(rep, seed, tol)
    basis, _, _ = gram_schmidt_operators([c.operator for c in comps], tol)
    return OperatorGraph(
        dim=rep.dim,
        basis=tuple(basis),
        source={
            "method": "frequency-components",
            "freqs": rep.freqs,
            "seed": fingerprint(seed),
        },
    )


def sampled_orbit_graph(
    rep: CircleRep,
    seed: np.ndarray,
    n_samples: int,
    tol: Tolerance = DEFAULT_TOL,
) -> OperatorGraph:
    """Span of N uniformly sampled conjugates of the seed.

    Matches orbit_graph once n_samples exceeds every nonzero frequency
    difference; kept as a quadrature-based cross-check of the analytic route.
    """
    seed = np.asarray(seed, dtype=complex)
    if seed.shape != (rep.dim, rep.dim):
        raise ValueError(f"expected a {rep.dim}x{rep.dim} matrix, got {seed.shape}")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    orbit = []
    for k in range(n_samples):
        u = rep._unitary(2.0 * math.pi * k / n_samples)
        orbit.append(u @ seed @ adjoint(u))
    basis, _, _ = gram_schmidt_operators(orbit, tol)
    return OperatorGraph(
        dim=rep.dim,
        basis=tuple(basis),
        source={
            "method": "sampled-orbit",
            "freqs": rep.freqs,
            "n_samples": n_samples,
            "seed": fingerprint(seed),
        },
    )


def span_projector(graph: OperatorGraph) -> np.ndarray:
    """Matrix of the HS-orthogonal projection onto the span, in flattened coordinates."""
    n2 = graph.dim * graph.dim
    proj = np.zeros((n2, n2), dtype=complex)
    for b in graph.basis:
        v = b.reshape(-1)
        proj += np.outer(v, v.conj())
    return proj


def is_operator_system(
    graph: OperatorGraph, tol: Tolerance = DEFAULT_TOL
) -> OperatorSystemCheck:
    """Check the two operator-system axioms: identity membership, adjoint closure."""
    eye = np.eye(graph.dim, dtype=complex)
    id_res = max_abs(eye - graph.project(eye))
    adj_res = 0.0
    for b in graph.basis:
        ba = adjoint(b)
        adj_res = max(adj_res, max_abs(ba - graph.project(ba)))
    return OperatorSystemCheck(
        contains_identity=id_res <= tol.eq_tol,
        adjoint_closed=adj_res <= tol.eq_tol,
        identity_residual=id_res,
        adjoint_residual=adj_res,
    )


def adjoint_closure_scalar(
    rep: CircleRep, seed: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> complex | None:
    """Scalar h with (lower off-block) = h * (upper off-block)^dagger, if one exists.

    For a two-block representation the orbit span of cI + S (S purely
    off-block) is adjoint-closed exactly when its frequency components F at
    m=+2 and G at m=-2 satisfy G = h F^dagger; h is recovered by least
    squares and returned only when the fit residual is <= eq_tol * ||G||.
    Note the returned scalar certifies adjoint closure of the span only when
    F and G are both nonzero or both zero.
    """
    if sorted(rep.freqs) != [-1, 1]:
        raise ValueError("adjoint_closure_scalar requires a two-block representation")
    comps = {c.freq: c.operator for c in frequency_components(rep, seed, tol)}
    zero = np.zeros((rep.dim, rep.dim), dtype=complex)
    f = comps.get(2, zero)
    g = comps.get(-2, zero)
    f_star = adjoint(f)
    denom = hs_inner(f_star, f_star).real
    if denom <= tol.eq_tol**2:
        return 0.0 if hs_norm(g) <= tol.eq_tol else None
    h = hs_inner(f_star, g) / denom
    residual = hs_norm(g - h * f_star)
    if residual <= tol.eq_tol * hs_norm(g):
        return h
    return None


def two_block_maximal_graph(
    p_plus: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> OperatorGraph:
    """Largest span invariant under a two-block action: both blocks of the
    diagonal plus the full off-block corner, h*P+ + q*P- + (off-block part)."""
    p_plus = np.asarray(p_plus, dtype=complex)
    n = p_plus.shape[0]
    p_minus = np.eye(n) - p_plus
    generators = [p_plus, p_minus]
    for i in range(n):
        e_i = np.zeros((n, 1), dtype=complex)
        e_i[i, 0] = 1.0
        for j in range(n):
            e_j = np.zeros((1, n), dtype=complex)
            e_j[0, j] = 1.0
            unit = e_i @ e_j
            generators.append(p_plus @ unit @ p_minus)
            generators.append(p_minus @ unit @ p_plus)
    basis, _, _ = gram_schmidt_operators(generators, tol)
    return OperatorGraph(
        dim=n,
        basis=tuple(basis),
        source={"method": "two-block-maximal", "seed": fingerprint(p_plus)},
    )
