"""Circle-group representations built from orthogonal projection families.

A representation is a list of distinct integer frequencies s_j with one
orthogonal projection P_j per frequency; the unitary at angle phi is
U_phi = sum_j exp(i*s_j*phi) P_j.  The pinching map sum_j P_j A P_j is the
conditional expectation onto the commutant of the family, and the uniform
N-point average of conjugated copies reproduces it exactly as soon as N
exceeds every nonzero frequency difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL, Tolerance, adjoint, is_projection, max_abs

__all__ = ["CircleRep", "RepViolation", "two_block_rep"]


@dataclass(frozen=True)
class RepViolation:
    """One failed representation invariant, with its worst residual."""

    invariant: str  # "hermiticity" | "idempotence" | "orthogonality" | "completeness"
    detail: str
    residual: float


@dataclass(frozen=True)
class CircleRep:
    freqs: tuple[int, ...]
    projections: tuple[np.ndarray, ...]

    def __post_init__(self):
        freqs = tuple(int(s) for s in self.freqs)
        projs = tuple(np.asarray(p, dtype=complex) for p in self.projections)
        if len(freqs) != len(projs) or not freqs:
            raise ValueError("freqs and projections must be non-empty and equal-length")
        if len(set(freqs)) != len(freqs):
            raise ValueError(
                "repeated frequency: merge projections sharing a frequency into one"
            )
        dim = projs[0].shape[0]
        for p in projs:
            if p.ndim != 2 or p.shape != (dim, dim):
                raise ValueError("projections must be square matrices of equal size")
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "projections", projs)

    @property
    def dim(self) -> int:
        return self.projections[0].shape[0]

    @property
    def max_freq(self) -> int:
        return max(abs(s) for s in self.freqs)

    def validate(self, tol: Tolerance = DEFAULT_TOL) -> list[RepViolation]:
        """Check projection/orthogonality/completeness invariants; empty list iff valid."""
        violations = []
        for j, p in enumerate(self.projections):
            r = max_abs(p - adjoint(p))
            if r > tol.eq_tol:
                violations.append(RepViolation("hermiticity", f"projection {j}", r))
            r = max_abs(p @ p - p)
            if r > tol.eq_tol:
                violations.append(RepViolation("idempotence", f"projection {j}", r))
        for j in range(len(self.projections)):
            for k in range(j + 1, len(self.projections)):
                r = max_abs(self.projections[j] @ self.projections[k])
                if r > tol.eq_tol:
                    violations.append(
                        RepViolation("orthogonality", f"projections {j},{k}", r)
                    )
        r = max_abs(sum(self.projections) - np.eye(self.dim))
        if r > tol.eq_tol:
            violations.append(RepViolation("completeness", "sum of projections", r))
        return violations

    def is_valid(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return not self.validate(tol)

    def _unitary(self, phi: float) -> np.ndarray:
        u = np.zeros((self.dim, self.dim), dtype=complex)
        for s, p in zip(self.freqs, self.projections):
            u += np.exp(1j * s * phi) * p
        return u

    def unitary(self, phi: float, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
        """The representation unitary at angle phi; requires a valid representation."""
        bad = self.validate(tol)
        if bad:
            worst = max(bad, key=lambda v: v.residual)
            raise ValueError(
                f"invalid representation: {worst.invariant} violated "
                f"({worst.detail}, residual {worst.residual:.3g})"
            )
        return self._unitary(phi)

    def pinch(self, a: np.ndarray) -> np.ndarray:
        """Conditional expectation sum_j P_j A P_j onto the fixed-point algebra."""
        a = np.asarray(a, dtype=complex)
        if a.shape != (self.dim, self.dim):
            raise ValueError(f"expected a {self.dim}x{self.dim} matrix, got {a.shape}")
        out = np.zeros_like(a)
        for p in self.projections:
            out += p @ a @ p
        return out

    def haar_average(self, a: np.ndarray, n_samples: int) -> np.ndarray:
        """Uniform quadrature (1/N) sum_k U_{2pi k/N} A U_{2pi k/N}^dagger.

        Exactly equals pinch(a) whenever N exceeds every nonzero frequency
        difference |s_j - s_k| (in particular whenever N > 2*max|s_j|).
        """
        a = np.asarray(a, dtype=complex)
        if a.shape != (self.dim, self.dim):
            raise ValueError(f"expected a {self.dim}x{self.dim} matrix, got {a.shape}")
        if n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        acc = np.zeros_like(a)
        for k in range(n_samples):
            u = self._unitary(2.0 * math.pi * k / n_samples)
            acc += u @ a @ adjoint(u)
        return acc / n_samples


def two_block_rep(p_plus: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> CircleRep:
    """Representation with frequencies (+1, -1) on a projection and its complement."""
    p_plus = np.asarray(p_plus, dtype=complex)
    if not is_projection(p_plus, tol):
        raise ValueError("p_plus is not an orthogonal projection within eq_tol")
    p_minus = np.eye(p_plus.shape[0]) - p_plus
    return CircleRep(freqs=(1, -1), projections=(p_plus, p_minus))
