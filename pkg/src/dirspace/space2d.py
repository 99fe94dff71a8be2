"""The bidisc space D(mu1, mu2).

Monomials z1^m z2^n over a rectangle 0 <= m <= M, 0 <= n <= N are indexed
lexicographically, flat index m * (N + 1) + n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .measure import MeasureSpec, moment_table, split_interior_boundary
from .poly import Poly2, hardy_norm_sq, slice_decompose
from .space1d import dirichlet1, gram1


class DegreeOutOfRange(ValueError):
    """A polynomial does not fit in the Gram rectangle."""


@dataclass(frozen=True)
class Gram2:
    """G[(m, n), (p, q)] = <z1^m z2^n, z1^p z2^q>, linear in the first slot."""

    matrix: np.ndarray
    M: int
    N: int

    def index(self, m: int, n: int) -> int:
        return m * (self.N + 1) + n

    def entry(self, m: int, n: int, p: int, q: int) -> complex:
        return complex(self.matrix[self.index(m, n), self.index(p, q)])

    def coeff_vector(self, f: Poly2) -> np.ndarray:
        d1, d2 = f.degrees
        if d1 > self.M or d2 > self.N:
            raise DegreeOutOfRange(f"bidegree {f.degrees} exceeds Gram rectangle ({self.M}, {self.N})")
        return f.to_array(self.M, self.N).ravel()

    def axis_gram(self, axis: int) -> np.ndarray:
        """Gram of the pure powers of one variable: G[(m,0),(p,0)] or G[(0,n),(0,q)]."""
        if axis == 1:
            idx = [self.index(m, 0) for m in range(self.M + 1)]
        else:
            idx = [self.index(0, n) for n in range(self.N + 1)]
        return self.matrix[np.ix_(idx, idx)]

    def to_dict(self) -> dict:
        return {
            "orders": [self.M, self.N],
            "index_order": "lexicographic (m, n), flat = m*(N+1)+n",
            "convention": "entry[u][v] = <z^u, z^v>, linear in the first argument",
            "kernel_convention": "kernel coefficients C = inverse(transpose(entry)); "
                                 "kappa(z, w) = sum C[u][v] z^u conj(w)^v",
            "entries": [[[float(x.real), float(x.imag)] for x in row] for row in self.matrix],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Gram2":
        M, N = data["orders"]
        arr = np.array([[complex(re, im) for re, im in row] for row in data["entries"]])
        if arr.shape != ((M + 1) * (N + 1),) * 2:
            raise ValueError("Gram entries do not match the declared orders")
        return cls(arr, int(M), int(N))


def assemble_gram2(G1: np.ndarray, G2: np.ndarray) -> Gram2:
    """Four-case assembly from the two one-variable Gram matrices."""
    M, N = G1.shape[0] - 1, G2.shape[0] - 1
    eq1 = np.eye(M + 1, dtype=bool)
    eq2 = np.eye(N + 1, dtype=bool)
    # axes (m, n, p, q)
    A = np.zeros((M + 1, N + 1, M + 1, N + 1), dtype=complex)
    # m != p, n == q
    A += (~eq1)[:, None, :, None] * eq2[None, :, None, :] * G1[:, None, :, None]
    # m == p, n != q
    A += eq1[:, None, :, None] * (~eq2)[None, :, None, :] * G2[None, :, None, :]
    # m == p, n == q
    diag = np.diag(G1).real[:, None] + np.diag(G2).real[None, :] - 1
    A += eq1[:, None, :, None] * eq2[None, :, None, :] * diag[:, :, None, None]
    size = (M + 1) * (N + 1)
    return Gram2(A.reshape(size, size), M, N)


def gram2(spec1: MeasureSpec, spec2: MeasureSpec, M: int, N: int) -> Gram2:
    if M < 0 or N < 0:
        raise ValueError("orders must be nonnegative")
    return assemble_gram2(gram1(spec1, M), gram1(spec2, N))


def inner2(G: Gram2, p: Poly2, q: Poly2) -> complex:
    a = G.coeff_vector(p)
    b = G.coeff_vector(q)
    return complex(a @ G.matrix @ b.conj())


def norm2_sq(G: Gram2, p: Poly2) -> float:
    return float(inner2(G, p, p).real)


class DirichletParts(NamedTuple):
    total: float
    interior: float
    boundary: float


def _slice_sum(spec1: MeasureSpec, spec2: MeasureSpec, f: Poly2) -> float:
    d1, d2 = f.degrees
    m1 = moment_table(spec1, max(d1 - 1, 0))
    m2 = moment_table(spec2, max(d2 - 1, 0))
    return (sum(dirichlet1(spec1, p, m1) for p in slice_decompose(f, 2))
            + sum(dirichlet1(spec2, q, m2) for q in slice_decompose(f, 1)))


def dirichlet2(spec1: MeasureSpec, spec2: MeasureSpec, f: Poly2) -> DirichletParts:
    """Dirichlet integral of a polynomial, split into interior and boundary parts."""
    i1, b1 = split_interior_boundary(spec1)
    i2, b2 = split_interior_boundary(spec2)
    inner = _slice_sum(i1, i2, f)
    outer = _slice_sum(b1, b2, f)
    return DirichletParts(inner + outer, inner, outer)


def slice_mass_integral(spec: MeasureSpec, p: Poly2, axis: int) -> float:
    """Theta-average over the circle of int |p|^2 d spec in the ``axis`` variable.

    With p = sum_n p_n(z1) z2^n (axis 1) this is sum_n sum_{i,j} conj(a_i) a_j mu{i, j}.
    """
    slices = slice_decompose(p, 2 if axis == 1 else 1)
    if not slices:
        return 0.0
    deg = max(s.degree for s in slices)
    mu = moment_table(spec, max(deg, 0)).entries
    total = 0j
    for s in slices:
        a = np.zeros(deg + 1, dtype=complex)
        a[:len(s.coeffs)] = s.coeffs
        total += a.conj() @ mu @ a
    return float(total.real)


def mult_identity_residual(spec1: MeasureSpec, spec2: MeasureSpec, p: Poly2, axis: int,
                           G: Gram2 | None = None) -> float:
    """||z_axis p||^2 - ||p||^2 - theta-average of int |p|^2 d mu_axis."""
    shifted = p.shift(1, 0) if axis == 1 else p.shift(0, 1)
    if G is None:
        d1, d2 = shifted.degrees
        G = gram2(spec1, spec2, max(d1, 0), max(d2, 0))
    spec = spec1 if axis == 1 else spec2
    return norm2_sq(G, shifted) - norm2_sq(G, p) - slice_mass_integral(spec, p, axis)


def interior_mult_residual(spec1: MeasureSpec, spec2: MeasureSpec, f: Poly2, axis: int) -> float:
    """I(z_axis f) - I(f) minus the interior slice integral of |f|^2."""
    i1, _ = split_interior_boundary(spec1)
    i2, _ = split_interior_boundary(spec2)
    shifted = f.shift(1, 0) if axis == 1 else f.shift(0, 1)
    lhs = dirichlet2(spec1, spec2, shifted).interior - dirichlet2(spec1, spec2, f).interior
    return lhs - slice_mass_integral(i1 if axis == 1 else i2, f, axis)


def gram2_invariant_defects(G: Gram2) -> dict:
    """Deviation from the zero pattern, the diagonal identity and Hermitian symmetry."""
    M, N = G.M, G.N
    A = G.matrix.reshape(M + 1, N + 1, M + 1, N + 1)
    ne1 = ~np.eye(M + 1, dtype=bool)
    ne2 = ~np.eye(N + 1, dtype=bool)
    zero = np.abs(A) * ne1[:, None, :, None] * ne2[None, :, None, :]
    d = np.einsum("mnmn->mn", A)
    diag_id = d - d[:, :1] - d[:1, :] + d[0, 0]
    return {
        "zero_pattern": float(zero.max(initial=0.0)),
        "diagonal_identity": float(np.abs(diag_id).max()),
        "unit_constant": float(abs(d[0, 0] - 1)),
        "hermitian": float(np.abs(G.matrix - G.matrix.conj().T).max()),
    }
