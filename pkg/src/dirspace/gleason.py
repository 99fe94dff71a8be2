"""Division and Gleason solvers for polynomials on the bidisc.

Only the axis points (lam, 0) and (0, lam) are handled.  The output follows a
fixed construction: peel off the slice through the axis, divide it out by the
other coordinate, then divide the remaining one-variable part by (z - lam).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .measure import MeasureSpec
from .poly import Poly1, Poly2, assemble_slices, difference_quotient, slice_decompose
from .space2d import gram2, norm2_sq


class SliceNotZero(ValueError):
    """f does not vanish on the slice {z_axis = lam}, so it is not divisible."""


def _var(axis: int) -> Poly2:
    return Poly2.monomial(1, 0) if axis == 1 else Poly2.monomial(0, 1)


def coeff_residual(p: Poly2, q: Poly2) -> float:
    return (p - q).max_abs_coeff()


def divide_on_slice(f: Poly2, lam: complex, axis: int, atol: float = 1e-12) -> Poly2:
    """g with f = (z_axis - lam) g, given that f vanishes where z_axis = lam."""
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    slices = slice_decompose(f, 2 if axis == 1 else 1)
    quotients = []
    for p in slices:
        val = complex(p(lam)) if p.coeffs else 0j
        if abs(val) > atol:
            raise SliceNotZero(f"slice value {val:.3e} at lambda={lam} is not zero")
        quotients.append(difference_quotient(p, lam))
    return assemble_slices(quotients, 2 if axis == 1 else 1)


class GleasonSolution(NamedTuple):
    f1: Poly2
    f2: Poly2
    residual: float


def gleason_solve(f: Poly2, lam: complex, axis: int = 1) -> GleasonSolution:
    """Solve f - f(lam, 0) = (z1 - lam) f2 + z2 f1  (axis 1).

    For axis 2 the point is (0, lam) and f - f(0, lam) = (z2 - lam) f2 + z1 f1.
    f2 depends only on z_axis.
    """
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    other = 2 if axis == 1 else 1
    # f restricted to the axis {z_other = 0}
    base = slice_decompose(f, other)
    base0 = base[0] if base else Poly1()
    h = f - base0.to_poly2(axis)
    # h vanishes on z_other = 0, so divides by z_other exactly
    f1 = Poly2({((m - 1, n) if other == 1 else (m, n - 1)): a for (m, n), a in h.terms.items()})
    f2 = difference_quotient(base0, lam).to_poly2(axis)
    point = complex(base0(lam)) if base0.coeffs else 0j
    lhs = f - Poly2.constant(point)
    rhs = (_var(axis) - Poly2.constant(lam)) * f2 + _var(other) * f1
    return GleasonSolution(f1, f2, coeff_residual(lhs, rhs))


def division_residual(f: Poly2, g: Poly2, lam: complex, axis: int) -> float:
    return coeff_residual(f, (_var(axis) - Poly2.constant(lam)) * g)


def gleason_norms(spec1: MeasureSpec, spec2: MeasureSpec, f: Poly2, lam: complex,
                  axis: int = 1) -> dict:
    """Norms of the Gleason solution and the lower bound (1-|lam|)^2 ||f2||^2 <= ||(z-lam) f2||^2."""
    sol = gleason_solve(f, lam, axis)
    prod = (_var(axis) - Poly2.constant(lam)) * sol.f2
    polys = [sol.f1, sol.f2, prod]
    d1 = max([p.degrees[0] for p in polys] + [0])
    d2 = max([p.degrees[1] for p in polys] + [0])
    G = gram2(spec1, spec2, d1, d2)
    n1, n2, npr = (norm2_sq(G, p) if not p.is_zero() else 0.0 for p in polys)
    bound = (1 - abs(lam)) ** 2 * n2
    return {
        "norm_f1_sq": n1,
        "norm_f2_sq": n2,
        "norm_product_sq": npr,
        "lower_bound": bound,
        "bound_holds": bool(bound <= npr + 1e-12 * max(1.0, npr)),
        "residual": sol.residual,
    }


def random_poly2(rng: np.random.Generator, d1: int, d2: int) -> Poly2:
    a = rng.normal(size=(d1 + 1, d2 + 1)) + 1j * rng.normal(size=(d1 + 1, d2 + 1))
    return Poly2.from_array(a)
