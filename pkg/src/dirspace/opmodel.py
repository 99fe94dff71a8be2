"""Finite sections of the multiplication pair (M_z1, M_z2) on D(mu1, mu2).

For a multi-index alpha the defect form is

    <beta_alpha f, g> = sum_{0 <= b <= alpha} (-1)^|b| C(alpha, b) <z^b f, z^b g>

and is assembled from a Gram matrix on the rectangle enlarged by alpha, so
every entry is exact (no compression of the operator).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .measure import MeasureSpec, MomentTable, moment_table, split_interior_boundary
from .poly import Poly2, slice_decompose
from .space1d import InconsistentGram, gram1_from_moments, recover_moments1
from .space2d import (DegreeOutOfRange, Gram2, assemble_gram2, gram2, gram2_invariant_defects,
                      inner2, norm2_sq)

DEFAULT_PSD_TOL = 1e-9


class IllConditioned(ValueError):
    """The Gram matrix is too ill-conditioned for a reliable kernel solve."""


@dataclass(frozen=True)
class DefectForm:
    alpha: tuple[int, int]
    D1: int
    D2: int
    matrix: np.ndarray

    def index(self, m: int, n: int) -> int:
        return m * (self.D2 + 1) + n

    def form(self, f: Poly2, g: Poly2) -> complex:
        a = f.to_array(self.D1, self.D2).ravel()
        b = g.to_array(self.D1, self.D2).ravel()
        return complex(a @ self.matrix @ b.conj())


def _binom2(alpha, beta) -> int:
    return math.comb(alpha[0], beta[0]) * math.comb(alpha[1], beta[1])


def defect_from_gram(G: Gram2, alpha: tuple[int, int], D1: int, D2: int) -> DefectForm:
    a1, a2 = alpha
    if D1 + a1 > G.M or D2 + a2 > G.N:
        raise DegreeOutOfRange("Gram rectangle too small for this defect form")
    A = G.matrix.reshape(G.M + 1, G.N + 1, G.M + 1, G.N + 1)
    F = np.zeros((D1 + 1, D2 + 1, D1 + 1, D2 + 1), dtype=complex)
    for b1 in range(a1 + 1):
        for b2 in range(a2 + 1):
            c = (-1) ** (b1 + b2) * _binom2(alpha, (b1, b2))
            F += c * A[b1:b1 + D1 + 1, b2:b2 + D2 + 1, b1:b1 + D1 + 1, b2:b2 + D2 + 1]
    size = (D1 + 1) * (D2 + 1)
    return DefectForm(tuple(alpha), D1, D2, F.reshape(size, size))


def defect_form(spec1: MeasureSpec, spec2: MeasureSpec, alpha: tuple[int, int],
                D1: int, D2: int) -> DefectForm:
    alpha = (int(alpha[0]), int(alpha[1]))
    if alpha == (0, 0) or min(alpha) < 0:
        raise ValueError("alpha must be a nonzero multi-index")
    if D1 < 0 or D2 < 0:
        raise ValueError("test orders must be nonnegative")
    G = gram2(spec1, spec2, D1 + alpha[0], D2 + alpha[1])
    return defect_from_gram(G, alpha, D1, D2)


class NsdCheck(NamedTuple):
    # smallest eigenvalue of -F: nonnegative (up to tolerance) iff F <= 0
    min_eigenvalue: float
    passed: bool


def check_nsd(F: DefectForm | np.ndarray, tol: float = DEFAULT_PSD_TOL) -> NsdCheck:
    """Negative semidefiniteness of a Hermitian form, tolerance scaled by max(1, ||F||_F)."""
    A = F.matrix if isinstance(F, DefectForm) else np.asarray(F, dtype=complex)
    if A.size == 0:
        return NsdCheck(0.0, True)
    if np.max(np.abs(A - A.conj().T)) > 1e-12 * max(1.0, np.linalg.norm(A)):
        raise ValueError("form is not Hermitian")
    A = (A + A.conj().T) / 2
    top = float(np.linalg.eigvalsh(A)[-1])
    scale = max(1.0, float(np.linalg.norm(A)))
    return NsdCheck(-top, top <= tol * scale)


def beta_recursion_residual(spec1: MeasureSpec, spec2: MeasureSpec, alpha: tuple[int, int],
                            j: int, D1: int, D2: int) -> float:
    """max |F_{alpha+e_j}[u,v] - (F_alpha[u,v] - F_alpha[u+e_j, v+e_j])|."""
    e = (1, 0) if j == 1 else (0, 1)
    up = (alpha[0] + e[0], alpha[1] + e[1])
    G = gram2(spec1, spec2, D1 + up[0], D2 + up[1])
    lhs = defect_from_gram(G, up, D1, D2).matrix.reshape(D1 + 1, D2 + 1, D1 + 1, D2 + 1)
    base = defect_from_gram(G, alpha, D1 + e[0], D2 + e[1]).matrix
    B = base.reshape(D1 + e[0] + 1, D2 + e[1] + 1, D1 + e[0] + 1, D2 + e[1] + 1)
    rhs = (B[:D1 + 1, :D2 + 1, :D1 + 1, :D2 + 1]
           - B[e[0]:e[0] + D1 + 1, e[1]:e[1] + D2 + 1, e[0]:e[0] + D1 + 1, e[1]:e[1] + D2 + 1])
    return float(np.max(np.abs(lhs - rhs)))


@lru_cache(maxsize=256)
def _side_moments(spec: MeasureSpec, n: int, order: int) -> MomentTable:
    # interior part only for n >= 2; the boundary carries no (1 - |z|^2) weight
    if n >= 2:
        spec = split_interior_boundary(spec)[0]
    return moment_table(spec, order)


def moment_side_matrix(spec1: MeasureSpec, spec2: MeasureSpec, n: int, axis: int,
                       D1: int, D2: int) -> np.ndarray:
    """The (n, 0) or (0, n) defect form computed from weighted moments alone.

    <beta f, g> = - theta-average of int (1 - |z|^2)^(n-1) f conj(g) d mu_axis, with the
    interior restriction of mu_axis for n >= 2 and the whole measure for n = 1.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    D = D1 if axis == 1 else D2
    mom = _side_moments(spec1 if axis == 1 else spec2, n, D + n - 1)
    W = np.array([[mom.weighted(i, j, n - 1) for j in range(D + 1)] for i in range(D + 1)])
    # F[(m,k),(p,l)] = -delta(k,l) * W[p, m] for axis 1 (slices indexed by the other variable)
    if axis == 1:
        F = -np.einsum("kl,pm->mkpl", np.eye(D2 + 1), W)
    else:
        F = -np.einsum("kl,pm->kmlp", np.eye(D1 + 1), W)
    size = (D1 + 1) * (D2 + 1)
    return F.reshape(size, size)


def moment_side_form(spec1: MeasureSpec, spec2: MeasureSpec, n: int, f: Poly2, g: Poly2,
                     axis: int = 1) -> complex:
    """<beta_(n,0) f, g> (axis 1) or <beta_(0,n) f, g> (axis 2) from weighted moments."""
    if n < 1:
        raise ValueError("n must be at least 1")
    other = 2 if axis == 1 else 1
    fs, gs = slice_decompose(f, other), slice_decompose(g, other)
    deg = max([p.degree for p in fs + gs] + [0])
    mom = _side_moments(spec1 if axis == 1 else spec2, n, deg + n - 1)
    total = 0j
    for p, q in zip(fs, gs):
        for j, a in enumerate(p.coeffs):
            for i, b in enumerate(q.coeffs):
                total += a * np.conj(b) * mom.weighted(i, j, n - 1)
    return complex(-total)


def _gram_for(spec1, spec2, polys, G):
    d1 = max(p.degrees[0] for p in polys)
    d2 = max(p.degrees[1] for p in polys)
    if G is None:
        return gram2(spec1, spec2, max(d1, 0), max(d2, 0))
    if d1 > G.M or d2 > G.N:
        raise DegreeOutOfRange("polynomial exceeds Gram rectangle")
    return G


def kl_identity_residual(spec1: MeasureSpec, spec2: MeasureSpec, k: int, l: int, f: Poly2,
                         G: Gram2 | None = None) -> float:
    """| ||z1^k z2^l f||^2 - ||z1^k f||^2 - ||z2^l f||^2 + ||f||^2 |."""
    polys = [f.shift(k, l), f.shift(k, 0), f.shift(0, l), f]
    if f.is_zero():
        return 0.0
    G = _gram_for(spec1, spec2, polys, G)
    a, b, c, d = (norm2_sq(G, p) for p in polys)
    return abs(a - b - c + d)


def wandering_residual(spec1: MeasureSpec, spec2: MeasureSpec, D1: int, D2: int,
                       G: Gram2 | None = None) -> float:
    """Largest |<z1^a, z1^b z2^c>| (c >= 1) or |<z2^a, z1^b z2^c>| (b >= 1) on the grid."""
    if G is None:
        G = gram2(spec1, spec2, D1, D2)
    A = G.matrix.reshape(G.M + 1, G.N + 1, G.M + 1, G.N + 1)
    first = np.abs(A[:D1 + 1, 0, :D1 + 1, 1:D2 + 1])
    second = np.abs(A[0, :D2 + 1, 1:D1 + 1, :D2 + 1])
    return float(max(first.max(initial=0.0), second.max(initial=0.0)))


def kernel_coefficients(G: Gram2, w: tuple[complex, complex], cond_max: float = 1e12) -> np.ndarray:
    """Coefficients c of the truncated kernel kappa_T(., w) = sum_u c_u z^u."""
    A = G.matrix.T
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > cond_max:
        raise IllConditioned(f"Gram condition number {cond:.3e} exceeds {cond_max:.1e}")
    m = np.arange(G.M + 1)
    n = np.arange(G.N + 1)
    rhs = np.outer(np.conj(w[0]) ** m, np.conj(w[1]) ** n).ravel()
    return np.linalg.solve(A, rhs)


def kernel_eval(spec1: MeasureSpec, spec2: MeasureSpec, z: tuple[complex, complex],
                w: tuple[complex, complex], trunc: tuple[int, int]) -> complex:
    G = gram2(spec1, spec2, *trunc)
    c = kernel_coefficients(G, w)
    m = np.arange(G.M + 1)
    n = np.arange(G.N + 1)
    zv = np.outer(complex(z[0]) ** m, complex(z[1]) ** n).ravel()
    return complex(zv @ c)


def reproducing_residual(G: Gram2, p: Poly2, w: tuple[complex, complex]) -> float:
    """|<p, kappa_T(., w)> - p(w)|."""
    c = kernel_coefficients(G, w)
    val = G.coeff_vector(p) @ G.matrix @ c.conj()
    return float(abs(val - p(w[0], w[1])))


class Roundtrip(NamedTuple):
    moments1: MomentTable
    moments2: MomentTable
    rebuilt: Gram2
    max_residual: float


def model_roundtrip(G: Gram2, tol: float = 1e-9) -> Roundtrip:
    """Recover both moment tables from a bidisc Gram matrix and rebuild it."""
    defects = gram2_invariant_defects(G)
    for key in ("zero_pattern", "diagonal_identity", "unit_constant", "hermitian"):
        if defects[key] > tol:
            raise InconsistentGram(f"{key} violated by {defects[key]:.3e}")
    t1 = recover_moments1(G.axis_gram(1))
    t2 = recover_moments1(G.axis_gram(2))
    rebuilt = assemble_gram2(gram1_from_moments(t1, G.M), gram1_from_moments(t2, G.N))
    return Roundtrip(t1, t2, rebuilt, float(np.max(np.abs(rebuilt.matrix - G.matrix))))


def defect_from_norms(n00: float, n10: float, n01: float, n11: float) -> float:
    """||e||^2 - ||T1 e||^2 - ||T2 e||^2 + ||T1 T2 e||^2 from the four squared norms."""
    return n00 - n10 - n01 + n11


def expansivity_margin(G: Gram2, p: Poly2, axis: int) -> float:
    """||z_axis p||^2 - ||p||^2 (nonnegative for an expansive pair)."""
    shifted = p.shift(1, 0) if axis == 1 else p.shift(0, 1)
    return norm2_sq(G, shifted) - norm2_sq(G, p)


__all__ = [
    "DefectForm", "IllConditioned", "InconsistentGram", "NsdCheck", "Roundtrip",
    "beta_recursion_residual", "check_nsd", "defect_form", "defect_from_gram",
    "defect_from_norms", "expansivity_margin", "inner2", "kernel_coefficients", "kernel_eval",
    "kl_identity_residual", "model_roundtrip", "moment_side_form", "moment_side_matrix",
    "reproducing_residual", "wandering_residual",
]
