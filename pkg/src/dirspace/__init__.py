"""Numerical Dirichlet-type spaces D(mu) on the disc and D(mu1, mu2) on the bidisc."""

from .measure import (AreaDisc, Atom, CircleArc, CircleUniform, MeasureError, MeasureSpec,
                      MomentTable, moment, moment_table, split_interior_boundary, weighted_moment)
from .poly import Poly1, Poly2, difference_quotient, dilate, hardy_norm_sq, slice_decompose
from .potential import QuadratureGrid, SingularPoint, dirichlet_via_potential, u_mu
from .space1d import InconsistentGram, dirichlet1, gram1, local_dirichlet, recover_moments1
from .space2d import DegreeOutOfRange, Gram2, dirichlet2, gram2, inner2, norm2_sq

__version__ = "0.1.0"
