"""The superharmonic potential U_mu and the area form of the Dirichlet integral.

    U_mu(w) = int_D log|(1 - conj(z) w) / (w - z)|^2 dmu(z) / (1 - |z|^2)
            + int_T (1 - |w|^2) / |z - w|^2 dmu(z)

    D_mu(g) = int_D |g'(w)|^2 U_mu(w) dA(w)     (dA normalized area)

The area integral is evaluated by quadrature and serves as an independent
check of the moment formulas in :mod:`dirspace.space1d`.  Each measure
component gets its own node set:

* interior atom a: polar coordinates centred at a, with s = s_max * tau^2 so the
  log singularity becomes tau^3 log(tau);
* boundary atom z0: polar coordinates centred at z0, where the Poisson weight
  times the Jacobian is the bounded function -2 cos(psi) - s;
* circle arc: the boundary-atom rule integrated along the arc;
* circle_uniform / area_disc: polar coordinates at the origin (U is radial),
  split at the disc radius where U has a kink.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import spence

from .measure import AreaDisc, Atom, CircleArc, CircleUniform, MeasureSpec, on_boundary
from .poly import Poly1, Poly2, slice_decompose

SINGULAR_TOL = 1e-12


class SingularPoint(ValueError):
    """The potential was requested at an interior atom."""


@dataclass(frozen=True)
class QuadratureGrid:
    radial: int = 128
    angular: int = 256

    def __post_init__(self):
        if self.radial < 16 or self.angular < 16:
            raise ValueError("quadrature node counts must be at least 16")

    def doubled(self) -> "QuadratureGrid":
        return QuadratureGrid(2 * self.radial, 2 * self.angular)

    def disc_nodes(self, split: float | None = None):
        """Nodes and weights with sum(w * h(z)) ~ int_D h dA."""
        return _origin_polar(self.radial, self.angular, split)


DEFAULT_GRID = QuadratureGrid()


@lru_cache(maxsize=None)
def _gauss(n: int, a: float = 0.0, b: float = 1.0):
    x, w = leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


# -- the potential -----------------------------------------------------------

def _area_disc_potential(radius: float, mass: float, t: np.ndarray) -> np.ndarray:
    # angular mean of the log kernel over |z| = rho is -2 log max(|w|, rho)
    t = np.asarray(t, dtype=float)
    s = np.minimum(t, radius)
    with np.errstate(divide="ignore", invalid="ignore"):
        inner = np.where(t > 0, np.log(t) * np.log1p(-s * s), 0.0)
    outer = -0.5 * (spence(radius ** 2) - spence(s * s))
    return mass * 2.0 / radius ** 2 * (inner + outer)


def _arc_potential(c: CircleArc, w: np.ndarray) -> np.ndarray:
    # antiderivative of the Poisson kernel in t: t + 2 Arg(1 - w e^{-it})
    t1, t2 = c.start_angle, c.end_angle
    span = (t2 - t1) + 2 * (np.angle(1 - w * np.exp(-1j * t2)) - np.angle(1 - w * np.exp(-1j * t1)))
    return c.mass / (t2 - t1) * span


def u_mu(spec: MeasureSpec, w) -> float | np.ndarray:
    """U_mu at w (|w| < 1); vectorized over arrays of points."""
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w) >= 1):
        raise ValueError("the potential is only defined for |w| < 1")
    out = np.zeros(w.shape)
    for c in spec.components:
        if c.mass == 0:
            continue
        if isinstance(c, Atom):
            a = complex(c.point)
            if on_boundary(c):
                z0 = a / abs(a)
                out += c.mass * (1 - np.abs(w) ** 2) / np.abs(z0 - w) ** 2
            else:
                if np.any(np.abs(w - a) <= SINGULAR_TOL):
                    raise SingularPoint(f"potential is infinite at the atom {a}")
                out += c.mass / (1 - abs(a) ** 2) * np.log(np.abs((1 - a.conjugate() * w) / (w - a)) ** 2)
        elif isinstance(c, CircleUniform):
            out += c.mass
        elif isinstance(c, CircleArc):
            out += _arc_potential(c, w)
        else:
            out += _area_disc_potential(c.radius, c.mass, np.abs(w))
    return float(out) if out.ndim == 0 else out


# -- node sets ---------------------------------------------------------------

def _origin_polar(nr: int, na: int, split: float | None = None):
    if split is not None and 0 < split < 1:
        r1, w1 = _gauss(nr, 0.0, split)
        r2, w2 = _gauss(nr, split, 1.0)
        r, wr = np.concatenate([r1, r2]), np.concatenate([w1, w2])
    else:
        r, wr = _gauss(nr)
    phi = 2 * np.pi * (np.arange(na) + 0.5) / na
    pts = (r[:, None] * np.exp(1j * phi[None, :])).ravel()
    # dA = rho drho dphi / pi
    wts = np.repeat(wr * r * (2.0 / na), na)
    return pts, wts


def _interior_atom_nodes(a: complex, mass: float, nr: int, na: int):
    psi = 2 * np.pi * np.arange(na) / na
    e = np.exp(1j * psi)
    b = (a.conjugate() * e).real
    smax = -b + np.sqrt(b * b + 1 - abs(a) ** 2)
    tau, wt = _gauss(nr)
    s = smax[:, None] * tau[None, :] ** 2
    pts = a + s * e[:, None]
    # s ds = smax^2 * 2 tau^3 dtau
    jac = smax[:, None] ** 2 * 2 * tau[None, :] ** 3 * wt[None, :] * (2.0 / na)
    kernel = np.log(np.abs(1 - a.conjugate() * pts) ** 2) - 2 * np.log(s)
    wts = mass / (1 - abs(a) ** 2) * kernel * jac
    return pts.ravel(), wts.ravel()


def _boundary_atom_nodes(z0: complex, mass: float, nr: int, na: int):
    z0 = z0 / abs(z0)
    psi, wp = _gauss(na, np.pi / 2, 3 * np.pi / 2)
    smax = -2 * np.cos(psi)
    tau, wt = _gauss(nr)
    s = smax[:, None] * tau[None, :]
    pts = z0 + s * (z0 * np.exp(1j * psi))[:, None]
    wts = mass * (smax[:, None] - s) * smax[:, None] * wt[None, :] * wp[:, None] / np.pi
    return pts.ravel(), wts.ravel()


def _arc_nodes(c: CircleArc, nr: int, na: int):
    t, wt = _gauss(max(16, nr // 2), c.start_angle, c.end_angle)
    inner_r, inner_a = 16, max(32, na // 8)
    pts, wts = [], []
    for tk, wk in zip(t, wt):
        p, w = _boundary_atom_nodes(np.exp(1j * tk), c.mass * wk / (c.end_angle - c.start_angle),
                                    inner_r, inner_a)
        pts.append(p)
        wts.append(w)
    return np.concatenate(pts), np.concatenate(wts)


@lru_cache(maxsize=64)
def potential_nodes(spec: MeasureSpec, grid: QuadratureGrid = DEFAULT_GRID):
    """Points and weights with sum(w * h(z)) ~ int_D h U_spec dA for smooth h."""
    pts, wts = [np.zeros(0, complex)], [np.zeros(0)]
    for c in spec.components:
        if c.mass == 0:
            continue
        if isinstance(c, Atom):
            if on_boundary(c):
                p, w = _boundary_atom_nodes(complex(c.point), c.mass, grid.radial, grid.angular)
            else:
                p, w = _interior_atom_nodes(complex(c.point), c.mass, grid.radial, grid.angular)
        elif isinstance(c, CircleArc):
            p, w = _arc_nodes(c, grid.radial, grid.angular)
        elif isinstance(c, CircleUniform):
            p, w = _origin_polar(grid.radial, grid.angular)
            w = c.mass * w
        else:
            p, w = _origin_polar(grid.radial, grid.angular, c.radius)
            w = w * _area_disc_potential(c.radius, c.mass, np.abs(p))
        pts.append(p)
        wts.append(w)
    return np.concatenate(pts), np.concatenate(wts)


def potential_gram(spec: MeasureSpec, degree: int, grid: QuadratureGrid = DEFAULT_GRID) -> np.ndarray:
    """W[k, l] = int_D conj(w^k) w^l U_spec(w) dA(w) for 0 <= k, l <= degree."""
    pts, wts = potential_nodes(spec, grid)
    V = np.power.outer(pts, np.arange(degree + 1))
    W = (V.conj().T * wts) @ V
    return (W + W.conj().T) / 2


def dirichlet_via_potential(spec: MeasureSpec, g: Poly1, grid: QuadratureGrid = DEFAULT_GRID) -> float:
    """int_D |g'|^2 U_spec dA by quadrature."""
    b = np.array(g.derivative().coeffs)
    if b.size == 0:
        return 0.0
    W = potential_gram(spec, b.size - 1, grid)
    return float(max((b.conj() @ W @ b).real, 0.0))


def dirichlet_via_potential_with_error(spec: MeasureSpec, g: Poly1,
                                       grid: QuadratureGrid = DEFAULT_GRID) -> tuple[float, float]:
    """Value at ``grid`` and an error estimate.

    The estimate is the change when both node counts are doubled, plus a
    roundoff floor of 1e-13 * (1 + value).
    """
    v = dirichlet_via_potential(spec, g, grid)
    return v, abs(dirichlet_via_potential(spec, g, grid.doubled()) - v) + 1e-13 * (1 + abs(v))


def slice_dirichlet_quadrature(spec: MeasureSpec, f: Poly2, axis: int,
                               grid: QuadratureGrid = DEFAULT_GRID) -> float:
    """Theta-average of int_D |d_axis f|^2 U dA over the other variable on the circle."""
    slices = slice_decompose(f, 2 if axis == 1 else 1)
    if not slices:
        return 0.0
    deg = max(p.degree for p in slices)
    if deg < 1:
        return 0.0
    # rows: derivative coefficients of each slice
    B = np.zeros((len(slices), deg), dtype=complex)
    for k, p in enumerate(slices):
        d = p.derivative().coeffs
        B[k, :len(d)] = d
    W = potential_gram(spec, deg - 1, grid)
    # trapezoid in theta; exact for trig polynomials of this degree
    nt = max(grid.angular, 2 * len(slices) + 2)
    theta = 2 * np.pi * np.arange(nt) / nt
    E = np.exp(1j * np.outer(theta, np.arange(len(slices))))
    C = E @ B
    vals = np.einsum("tk,kl,tl->t", C.conj(), W, C).real
    return float(max(vals.mean(), 0.0))


def dirichlet2_quadrature(spec1: MeasureSpec, spec2: MeasureSpec, f: Poly2,
                          grid: QuadratureGrid = DEFAULT_GRID) -> float:
    """The bidisc Dirichlet integral in its area form, slices taken at r = 1."""
    return (slice_dirichlet_quadrature(spec1, f, 1, grid)
            + slice_dirichlet_quadrature(spec2, f, 2, grid))


def circle_mean(spec: MeasureSpec, center: complex, radius: float, n: int = 512) -> float:
    """Mean of U_mu over a circle, for superharmonicity checks."""
    theta = 2 * np.pi * np.arange(n) / n
    return float(np.mean(u_mu(spec, center + radius * np.exp(1j * theta))))
