"""Verification checks over measure pairs, each producing a JSON-ready report."""

from __future__ import annotations

import hashlib
import math

import numpy as np

from .gleason import divide_on_slice, division_residual, gleason_solve, random_poly2, SliceNotZero
from .measure import (CircleUniform, MeasureSpec, moment_table, random_pairs,
                      split_interior_boundary, weighted_moment)
from .opmodel import (beta_recursion_residual, check_nsd, defect_form, kl_identity_residual,
                      model_roundtrip, moment_side_matrix, wandering_residual)
from .poly import Poly1, Poly2
from .potential import DEFAULT_GRID, dirichlet_via_potential
from .space1d import dirichlet1
from .space2d import gram2, mult_identity_residual, norm2_sq

SCHEMA_VERSION = 1
DEFAULT_SEED = 42

DEFAULT_TOL = {
    "defect": 1e-10,
    "hyperexpansive": 1e-9,
    "two-isometry": 1e-10,
    "wandering": 1e-12,
    "kl-identity": 1e-10,
    "recursion": 1e-10,
    "mult-identity": 1e-10,
    "roundtrip": 1e-10,
    "integral": 1e-4,
    "gleason": 1e-13,
}
DEFAULT_PSD_TOL = DEFAULT_TOL["hyperexpansive"]


def digest(spec: MeasureSpec) -> str:
    return hashlib.sha256(spec.to_json().encode()).hexdigest()[:16]


def _report(check, pairs, params, residuals, passed, eigen=None) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "check": check,
        "inputs": [[digest(a), digest(b)] for a, b in pairs],
        "parameters": params,
        "residuals": residuals,
        "pass": bool(passed),
    }
    if eigen is not None:
        out["min_eigenvalues"] = eigen
    return out


def _stats(values) -> dict:
    v = [float(x) for x in values]
    return {"max": max(v, default=0.0), "count": len(v)}


def check_defect(pairs, degree=5, alpha_max=4, tol=None, **_) -> dict:
    tol = DEFAULT_TOL["defect"] if tol is None else tol
    worst = []
    alphas = [(a, b) for a in range(1, alpha_max) for b in range(1, alpha_max) if a + b <= alpha_max]
    for s1, s2 in pairs:
        worst.append(max(float(np.abs(defect_form(s1, s2, a, degree, degree).matrix).max())
                         for a in alphas))
    return _report("defect", pairs, {"degree": degree, "alpha_max": alpha_max, "tol": tol,
                                     "alphas": [list(a) for a in alphas]},
                   {"max_abs_entry": _stats(worst)}, max(worst, default=0) <= tol)


def check_hyperexpansive(pairs, degree=5, alpha_max=4, tol=None, **_) -> dict:
    tol = DEFAULT_PSD_TOL if tol is None else tol
    # n = 1 involves the whole measure, n >= 2 only its interior part; keep them apart
    eig = {n: [] for n in range(1, alpha_max + 1)}
    mismatch, ok = [], True
    for s1, s2 in pairs:
        for n in range(1, alpha_max + 1):
            for axis in (1, 2):
                alpha = (n, 0) if axis == 1 else (0, n)
                F = defect_form(s1, s2, alpha, degree, degree)
                res = check_nsd(F, tol)
                ok &= res.passed
                eig[n].append(res.min_eigenvalue)
                ms = moment_side_matrix(s1, s2, n, axis, degree, degree)
                mismatch.append(float(np.abs(F.matrix - ms).max()))
    ok &= max(mismatch, default=0) <= DEFAULT_TOL["recursion"]
    return _report("hyperexpansive", pairs, {"degree": degree, "alpha_max": alpha_max, "tol": tol},
                   {"moment_side_mismatch": _stats(mismatch)}, ok,
                   eigen={"min": min((v for vals in eig.values() for v in vals), default=0.0),
                          "by_n": {str(n): min(v, default=0.0) for n, v in eig.items()}})


def check_two_isometry(pairs, degree=5, tol=None, **_) -> dict:
    """Boundary parts give a toral 2-isometry; interior mass shifts <F_(2,0) 1, 1>."""
    tol = DEFAULT_TOL["two-isometry"] if tol is None else tol
    bnd, shift = [], []
    for s1, s2 in pairs:
        b1 = split_interior_boundary(s1)[1]
        b2 = split_interior_boundary(s2)[1]
        bnd.append(max(float(np.abs(defect_form(b1, b2, a, degree, degree).matrix).max())
                       for a in ((2, 0), (0, 2), (1, 1))))
        expected = -weighted_moment(split_interior_boundary(s1)[0], 0, 0, 1).real
        got = defect_form(s1, s2, (2, 0), 0, 0).matrix[0, 0].real
        shift.append(abs(got - expected))
    ok = max(bnd, default=0) <= tol and max(shift, default=0) <= 1e-12
    return _report("two-isometry", pairs, {"degree": degree, "tol": tol},
                   {"boundary_part_defect": _stats(bnd), "interior_shift_error": _stats(shift)}, ok)


def check_wandering(pairs, degree=5, tol=None, **_) -> dict:
    tol = DEFAULT_TOL["wandering"] if tol is None else tol
    vals = [wandering_residual(s1, s2, degree, degree) for s1, s2 in pairs]
    return _report("wandering", pairs, {"degree": degree, "tol": tol},
                   {"max_inner_product": _stats(vals)}, max(vals, default=0) <= tol)


def check_kl_identity(pairs, degree=5, alpha_max=4, tol=None, seed=DEFAULT_SEED, **_) -> dict:
    tol = DEFAULT_TOL["kl-identity"] if tol is None else tol
    rng = np.random.default_rng(seed)
    vals = []
    for s1, s2 in pairs:
        f = random_poly2(rng, degree, degree)
        G = gram2(s1, s2, degree + alpha_max, degree + alpha_max)
        vals.extend(kl_identity_residual(s1, s2, k, l, f, G)
                    for k in range(alpha_max + 1) for l in range(alpha_max + 1))
    return _report("kl-identity", pairs, {"degree": degree, "kl_max": alpha_max, "tol": tol,
                                          "seed": seed},
                   {"residual": _stats(vals)}, max(vals, default=0) <= tol)


def check_recursion(pairs, degree=5, alpha_max=4, tol=None, **_) -> dict:
    tol = DEFAULT_TOL["recursion"] if tol is None else tol
    vals = []
    for s1, s2 in pairs:
        for a1 in range(alpha_max):
            for a2 in range(alpha_max - a1):
                for j in (1, 2):
                    vals.append(beta_recursion_residual(s1, s2, (a1, a2), j, degree, degree))
    return _report("recursion", pairs, {"degree": degree, "alpha_max": alpha_max, "tol": tol},
                   {"residual": _stats(vals)}, max(vals, default=0) <= tol)


def check_mult_identity(pairs, degree=5, tol=None, seed=DEFAULT_SEED, **_) -> dict:
    tol = DEFAULT_TOL["mult-identity"] if tol is None else tol
    rng = np.random.default_rng(seed)
    vals = []
    for s1, s2 in pairs:
        p = random_poly2(rng, degree, degree)
        G = gram2(s1, s2, degree + 1, degree + 1)
        for axis in (1, 2):
            r = mult_identity_residual(s1, s2, p, axis, G)
            vals.append(abs(r) / (1 + norm2_sq(G, p)))
    return _report("mult-identity", pairs, {"degree": degree, "tol": tol, "seed": seed},
                   {"relative_residual": _stats(vals)}, max(vals, default=0) <= tol)


def check_roundtrip(pairs, degree=5, tol=None, **_) -> dict:
    tol = DEFAULT_TOL["roundtrip"] if tol is None else tol
    rebuild, moments, separation = [], [], []
    for s1, s2 in pairs:
        G = gram2(s1, s2, degree + 1, degree + 1)
        rt = model_roundtrip(G)
        rebuild.append(rt.max_residual)
        moments.append(max(float(np.abs(rt.moments1.entries - moment_table(s1, degree).entries).max()),
                           float(np.abs(rt.moments2.entries - moment_table(s2, degree).entries).max())))
        # a perturbation of size 0.1 in every diagonal moment of mu1 must be visible
        other = gram2(s1 + MeasureSpec((CircleUniform(0.1),)), s2, degree + 1, degree + 1)
        separation.append(float(np.abs(other.matrix - G.matrix).max()))
    ok = (max(rebuild, default=0) <= tol and max(moments, default=0) <= tol
          and min(separation, default=1) >= 1e-2)
    return _report("roundtrip", pairs, {"degree": degree, "tol": tol},
                   {"rebuild": _stats(rebuild), "moment_error": _stats(moments),
                    "min_separation": min(separation, default=0.0)}, ok)


def check_integral(pairs, degree=5, tol=None, seed=DEFAULT_SEED, grid=DEFAULT_GRID, **_) -> dict:
    """Area form of the Dirichlet integral against the moment formula."""
    tol = DEFAULT_TOL["integral"] if tol is None else tol
    rng = np.random.default_rng(seed)
    vals = []
    for s1, s2 in pairs:
        for spec in (s1, s2):
            g = Poly1(rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1))
            exact = dirichlet1(spec, g)
            vals.append(abs(dirichlet_via_potential(spec, g, grid) - exact) / (1 + exact))
    return _report("integral", pairs, {"degree": degree, "tol": tol, "seed": seed,
                                       "grid": [grid.radial, grid.angular]},
                   {"relative_error": _stats(vals)}, max(vals, default=0) <= tol)


def check_gleason(pairs, degree=8, tol=None, seed=DEFAULT_SEED, count=100, **_) -> dict:
    tol = DEFAULT_TOL["gleason"] if tol is None else tol
    rng = np.random.default_rng(seed)
    vals, raised = [], 0
    for k in range(count):
        f = Poly2.from_array(rng.uniform(-1, 1, (degree + 1, degree + 1))
                             + 1j * rng.uniform(-1, 1, (degree + 1, degree + 1)))
        lam = 0.9 * math.sqrt(rng.uniform()) * complex(np.exp(2j * math.pi * rng.uniform()))
        axis = 1 + k % 2
        vals.append(gleason_solve(f, lam, axis).residual)
        var = Poly2.monomial(1, 0) if axis == 1 else Poly2.monomial(0, 1)
        prod = (var - Poly2.constant(lam)) * f
        vals.append(division_residual(prod, divide_on_slice(prod, lam, axis), lam, axis))
        try:
            divide_on_slice(f + Poly2.constant(1.0), lam, axis)
        except SliceNotZero:
            raised += 1
    ok = max(vals, default=0) <= tol and raised == count
    return _report("gleason", pairs, {"degree": degree, "tol": tol, "seed": seed, "count": count},
                   {"reconstruction": _stats(vals), "slice_not_zero_raised": raised}, ok)


CHECKS = {
    "defect": check_defect,
    "hyperexpansive": check_hyperexpansive,
    "two-isometry": check_two_isometry,
    "wandering": check_wandering,
    "kl-identity": check_kl_identity,
    "recursion": check_recursion,
    "mult-identity": check_mult_identity,
    "roundtrip": check_roundtrip,
    "integral": check_integral,
    "gleason": check_gleason,
}


def corpus(seed: int = DEFAULT_SEED, count: int = 5):
    return random_pairs(seed, count)


def run_all(pairs, seed=DEFAULT_SEED, **params) -> dict:
    reports = [CHECKS[name](pairs, seed=seed, **params) for name in CHECKS]
    return {
        "schema_version": SCHEMA_VERSION,
        "check": "all",
        "parameters": {"seed": seed, **{k: v for k, v in params.items() if k != "grid"}},
        "reports": reports,
        "pass": all(r["pass"] for r in reports),
    }
