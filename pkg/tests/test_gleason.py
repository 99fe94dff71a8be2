import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirspace.gleason import (SliceNotZero, coeff_residual, divide_on_slice, division_residual,
                              gleason_norms, gleason_solve)
from dirspace.measure import random_measure
from dirspace.poly import Poly2

from conftest import CIRCLE, named_corpus

Z1, Z2 = Poly2.monomial(1, 0), Poly2.monomial(0, 1)


def c(x):
    return Poly2.constant(x)


def test_division_examples():
    assert coeff_residual(divide_on_slice((Z1 - c(0.5)) * Z2, 0.5, 1), Z2) == 0
    g = divide_on_slice(Z1 * Z1 * Z2 - c(0.25) * Z2, 0.5, 1)
    assert coeff_residual(g, (Z1 + c(0.5)) * Z2) <= 1e-15
    with pytest.raises(SliceNotZero):
        divide_on_slice(Z1, 0.5, 1)


def test_division_axis_two():
    f = (Z2 - c(0.3j)) * (Z1 * Z1 + c(2.0))
    g = divide_on_slice(f, 0.3j, 2)
    assert coeff_residual(g, Z1 * Z1 + c(2.0)) <= 1e-15
    with pytest.raises(ValueError):
        divide_on_slice(f, 0.3j, 3)


def test_division_of_zero():
    assert divide_on_slice(Poly2(), 0.4, 1).is_zero()


def test_gleason_examples():
    sol = gleason_solve(Z1 * Z1 * Z2 + Z1, 0.5, 1)
    assert coeff_residual(sol.f1, Z1 * Z1) == 0
    assert coeff_residual(sol.f2, c(1.0)) == 0
    assert sol.residual == 0
    sol = gleason_solve(c(3.0), 0.2, 1)
    assert sol.f1.is_zero() and sol.f2.is_zero()
    sol = gleason_solve(Z2, 0, 1)
    assert coeff_residual(sol.f1, c(1.0)) == 0 and sol.f2.is_zero()


def test_gleason_axis_two_structure(rng):
    f = Poly2.from_array(rng.normal(size=(4, 5)) + 1j * rng.normal(size=(4, 5)))
    sol = gleason_solve(f, -0.4 + 0.2j, 2)
    assert sol.residual <= 1e-13
    assert all(m == 0 for (m, _) in sol.f2.terms)  # f2 depends on z2 only


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), axis=st.sampled_from([1, 2]),
       d1=st.integers(0, 8), d2=st.integers(0, 8))
def test_reconstruction(seed, axis, d1, d2):
    rng = np.random.default_rng(seed)
    f = Poly2.from_array(rng.uniform(-1, 1, (d1 + 1, d2 + 1)) + 1j * rng.uniform(-1, 1, (d1 + 1, d2 + 1)))
    lam = 0.9 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
    sol = gleason_solve(f, lam, axis)
    assert sol.residual <= 1e-13
    var = Z1 if axis == 1 else Z2
    prod = (var - c(lam)) * f
    assert division_residual(prod, divide_on_slice(prod, lam, axis), lam, axis) <= 1e-13
    assert coeff_residual(divide_on_slice(prod, lam, axis), f) <= 1e-12


def test_norm_control(rng):
    for name in ("mixture", "area_half", "boundary_atom"):
        f = Poly2.from_array(rng.normal(size=(5, 5)))
        out = gleason_norms(named_corpus()[name], CIRCLE, f, 0.7 - 0.1j, 1)
        assert out["bound_holds"]
        assert np.isfinite(out["norm_f1_sq"]) and np.isfinite(out["norm_f2_sq"])
        assert out["residual"] <= 1e-13


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), axis=st.sampled_from([1, 2]))
def test_norm_bound_random(seed, axis):
    rng = np.random.default_rng(seed)
    f = Poly2.from_array(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    lam = 0.95 * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
    assert gleason_norms(random_measure(rng), random_measure(rng), f, lam, axis)["bound_holds"]
