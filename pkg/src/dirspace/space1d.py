"""The one-variable Dirichlet-type space D(mu).

The norm is ||g||^2 = ||g||_{H^2}^2 + D_mu(g) where D_mu(g) is the integral
of the local Dirichlet integrals D_zeta(g) against mu.  For polynomials every
quantity reduces to finitely many moments.
"""

from __future__ import annotations

import numpy as np

from .measure import Atom, MeasureSpec, MomentTable, moment_table
from .poly import Poly1, difference_quotient, hardy_norm_sq


class InconsistentGram(ValueError):
    """The supplied matrix is not the Gram matrix of a Dirichlet-type space."""


def gram1_from_moments(mom: MomentTable, N: int) -> np.ndarray:
    """G[i, j] = <z^i, z^j> for 0 <= i, j <= N; needs moments up to N - 1."""
    if N > 0 and (mom.max_i < N - 1 or mom.max_j < N - 1):
        raise ValueError(f"moment table too small for order {N}")
    mu = mom.entries
    G = np.eye(N + 1, dtype=complex)
    for i in range(N + 1):
        for j in range(i, N + 1):
            G[i, j] += sum(mu[j - k - 1, i - k - 1] for k in range(i))
            if j > i:
                G[j, i] = np.conj(G[i, j])
    return G


def gram1(spec: MeasureSpec, N: int) -> np.ndarray:
    """Gram matrix of the monomials 1, z, ..., z^N in D(spec)."""
    if N < 0:
        raise ValueError("order must be nonnegative")
    return gram1_from_moments(moment_table(spec, max(N - 1, 0)), N)


def local_dirichlet(g: Poly1, zeta: complex) -> float:
    """D_zeta(g) = ||(g - g(zeta)) / (z - zeta)||^2 in H^2."""
    return hardy_norm_sq(difference_quotient(g, zeta))


def dirichlet1_form(spec: MeasureSpec, g: Poly1, h: Poly1, mom: MomentTable | None = None) -> complex:
    """Sesquilinear Dirichlet form, linear in g and conjugate-linear in h.

    Uses D_zeta(g) = sum_k |q_k(zeta)|^2 with q_k(zeta) = sum_{l>k} a_l zeta^(l-1-k).
    """
    a, b = g.coeffs, h.coeffs
    d = max(len(a), len(b)) - 1
    if d < 1:
        return 0j
    if mom is None:
        mom = moment_table(spec, d - 1)
    mu = mom.entries
    total = 0j
    for k in range(d):
        for l in range(k + 1, len(a)):
            for lp in range(k + 1, len(b)):
                total += a[l] * np.conj(b[lp]) * mu[lp - 1 - k, l - 1 - k]
    return complex(total)


def dirichlet1(spec: MeasureSpec, g: Poly1, mom: MomentTable | None = None) -> float:
    return float(dirichlet1_form(spec, g, g, mom).real)


def norm1_sq(spec: MeasureSpec, g: Poly1) -> float:
    return hardy_norm_sq(g) + dirichlet1(spec, g)


def dirichlet1_atomic(spec: MeasureSpec, g: Poly1) -> float:
    """Sum of mass * D_a(g) over atoms; only valid for purely atomic measures."""
    if not all(isinstance(c, Atom) for c in spec.components):
        raise ValueError("measure is not purely atomic")
    return float(sum(c.mass * local_dirichlet(g, c.point) for c in spec.components))


def recover_moments1(G: np.ndarray, tol: float = 1e-10) -> MomentTable:
    """Invert the Gram formula: mu{j-1, i-1} = G[i, j] - G[i-1, j-1]."""
    G = np.asarray(G, dtype=complex)
    N = G.shape[0] - 1
    if G.shape != (N + 1, N + 1):
        raise InconsistentGram("Gram matrix must be square")
    if N == 0:
        return MomentTable(np.zeros((0, 0), dtype=complex))
    first = G[0].copy()
    first[0] -= 1
    if np.max(np.abs(first)) > 1e-9 or np.max(np.abs(G[:, 0] - G[0].conj())) > 1e-9:
        raise InconsistentGram("first row must be (1, 0, ..., 0)")
    # X[a, b] = G[b+1, a+1] - G[b, a]
    X = (G[1:, 1:] - G[:-1, :-1]).T
    defect = float(np.max(np.abs(X - X.conj().T)))
    if defect > tol:
        raise InconsistentGram(f"recovered moments are not Hermitian (defect {defect:.3e})")
    return MomentTable((X + X.conj().T) / 2)
