"""Certification of projections as quantum codes for operator graphs.

A projection P of rank >= 2 is an anticlique for a span V when every
element compresses to a multiple of P:  P A P = c_A P.  Over an
HS-orthonormal basis the check is linear, so certifying the basis
certifies the whole span.  The best constant for a basis element is the
least-squares one, c_A = Tr(P A P) / Tr(P).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circle import CircleRep
from .graphs import OperatorGraph
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    fingerprint,
    is_projection,
    max_abs,
    spectral_projections_unitary,
)

__all__ = [
    "AnticliqueVerdict",
    "SpectralVerdict",
    "MergedSpectrum",
    "verify_anticlique",
    "anticliques_from_spectrum",
    "merged_spectrum_angles",
]


@dataclass(frozen=True)
class AnticliqueVerdict:
    """Outcome of one compression check: constants, worst residual, pass flag."""

    passed: bool
    constants: tuple[complex, ...]
    max_residual: float
    code_dimension: int
    witness: tuple[int, str] | None  # (worst basis index, residual fingerprint)


@dataclass(frozen=True)
class SpectralVerdict:
    phi: float
    eigenphase: float
    verdict: AnticliqueVerdict


@dataclass(frozen=True)
class MergedSpectrum:
    """Angle 2*pi*p/q at which representation eigenphases collide."""

    numerator: int
    denominator: int
    phi: float
    partition: tuple[tuple[int, ...], ...]  # groups of frequency indices


def verify_anticlique(
    p: np.ndarray, graph: OperatorGraph, tol: Tolerance = DEFAULT_TOL
) -> AnticliqueVerdict:
    """Check P A P = c_A P over the graph basis.

    Passes iff the worst residual is <= eq_tol and the code dimension
    (rank of P) is at least 2.  Rank-1 projections are admitted but can
    never pass; rank 0 and non-projections are rejected outright.
    """
    p = np.asarray(p, dtype=complex)
    if p.shape != (graph.dim, graph.dim):
        raise ValueError(f"expected a {graph.dim}x{graph.dim} projection, got {p.shape}")
    if not is_projection(p, tol):
        raise ValueError("candidate is not an orthogonal projection within eq_tol")
    rank = int(round(np.trace(p).real))
    if rank == 0:
        raise ValueError("candidate projection has rank 0")
    constants = []
    max_residual = 0.0
    worst = None
    for idx, a in enumerate(graph.basis):
        pap = p @ a @ p
        c = np.trace(pap) / rank
        constants.append(complex(c))
        residual_matrix = pap - c * p
        residual = max_abs(residual_matrix)
        if residual >= max_residual:
            max_residual = residual
            worst = (idx, fingerprint(residual_matrix))
    passed = max_residual <= tol.eq_tol and rank >= 2
    return AnticliqueVerdict(
        passed=passed,
        constants=tuple(constants),
        max_residual=max_residual,
        code_dimension=rank,
        witness=None if passed else worst,
    )


def anticliques_from_spectrum(
    rep: CircleRep,
    graph: OperatorGraph,
    phis: list[float],
    tol: Tolerance = DEFAULT_TOL,
) -> list[SpectralVerdict]:
    """Certify every rank >= 2 spectral projection of U_phi, for each phi.

    Returns all verdicts, passing and failing, tagged by the angle and the
    eigenphase the projection belongs to.
    """
    if graph.dim != rep.dim:
        raise ValueError("graph and representation dimensions differ")
    results = []
    for phi in phis:
        u = rep.unitary(phi, tol)
        for eigenphase, proj in spectral_projections_unitary(u, tol):
            if int(round(np.trace(proj).real)) < 2:
                continue
            verdict = verify_anticlique(proj, graph, tol)
            results.append(SpectralVerdict(phi=phi, eigenphase=eigenphase, verdict=verdict))
    return results


def merged_spectrum_angles(rep: CircleRep) -> list[MergedSpectrum]:
    """All angles 2*pi*p/q (q up to the max frequency difference) where at
    least two representation frequencies share an eigenphase.

    exp(i*s_j*phi) = exp(i*s_k*phi) at phi = 2*pi*p/q (p, q coprime) exactly
    when q divides s_j - s_k, so the induced grouping is s mod q, computed
    in integer arithmetic.  phi = 0 merges everything trivially and is not
    reported.
    """
    freqs = rep.freqs
    diffs = {abs(a - b) for a in freqs for b in freqs if a != b}
    if not diffs:
        return []
    out = []
    for q in range(2, max(diffs) + 1):
        classes: dict[int, list[int]] = {}
        for idx, s in enumerate(freqs):
            classes.setdefault(s % q, []).append(idx)
        if all(len(group) < 2 for group in classes.values()):
            continue
        partition = tuple(
            sorted((tuple(group) for group in classes.values()), key=lambda g: g[0])
        )
        for p in range(1, q):
            if math.gcd(p, q) != 1:
                continue  # reduces to a smaller denominator already emitted
            out.append(
                MergedSpectrum(
                    numerator=p,
                    denominator=q,
                    phi=2.0 * math.pi * p / q,
                    partition=partition,
                )
            )
    out.sort(key=lambda ms: ms.phi)
    return out
