import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirspace.measure import Atom, CircleUniform, MeasureSpec, random_measure, split_interior_boundary
from dirspace.opmodel import (IllConditioned, beta_recursion_residual, check_nsd, defect_form,
                              defect_from_norms, kernel_coefficients, kernel_eval,
                              kl_identity_residual, model_roundtrip, moment_side_form,
                              moment_side_matrix, reproducing_residual, wandering_residual)
from dirspace.poly import Poly2
from dirspace.space1d import InconsistentGram
from dirspace.space2d import Gram2, gram2, norm2_sq

from conftest import ATOM0, CIRCLE, ZERO, named_corpus

ONE = Poly2.constant(1.0)


def test_defect_examples():
    F = defect_form(ATOM0, ZERO, (2, 0), 0, 0)
    assert F.form(ONE, ONE) == pytest.approx(-1, abs=1e-15)
    # circle/circle is a toral isometry-like pair: beta_(1,1) vanishes
    assert np.abs(defect_form(CIRCLE, CIRCLE, (1, 1), 4, 4).matrix).max() <= 1e-14


def test_defect_matches_norm_arithmetic():
    G = gram2(ATOM0, ZERO, 2, 0)
    z1, z1sq = Poly2.monomial(1, 0), Poly2.monomial(2, 0)
    expected = norm2_sq(G, ONE) - 2 * norm2_sq(G, z1) + norm2_sq(G, z1sq)
    assert defect_form(ATOM0, ZERO, (2, 0), 0, 0).form(ONE, ONE) == pytest.approx(expected)


def test_defect_rejects_bad_alpha():
    with pytest.raises(ValueError):
        defect_form(CIRCLE, CIRCLE, (0, 0), 2, 2)
    with pytest.raises(ValueError):
        defect_form(CIRCLE, CIRCLE, (1, -1), 2, 2)


def test_moment_side_examples():
    assert moment_side_form(ATOM0, ZERO, 2, ONE, ONE) == pytest.approx(-1)
    atom06 = MeasureSpec((Atom(0.6, 1.0),))
    assert moment_side_form(atom06, ZERO, 3, ONE, ONE) == pytest.approx(-0.4096, abs=1e-14)
    assert defect_form(atom06, ZERO, (3, 0), 0, 0).form(ONE, ONE) == pytest.approx(-0.4096, abs=1e-13)


def test_check_nsd():
    assert check_nsd(-np.eye(3)).passed
    assert check_nsd(-np.eye(3)).min_eigenvalue == pytest.approx(1)
    res = check_nsd(np.diag([-1.0, 1e-3]))
    assert not res.passed and res.min_eigenvalue == pytest.approx(-1e-3)
    assert check_nsd(np.diag([-1.0, 1e-12])).passed
    with pytest.raises(ValueError):
        check_nsd(np.array([[0, 1], [0, 0]]))


@pytest.mark.parametrize("alpha", [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (1, 3)])
def test_zero_defect(alpha, random_corpus):
    for s1, s2 in random_corpus:
        assert np.abs(defect_form(s1, s2, alpha, 5, 5).matrix).max() <= 1e-10


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("axis", [1, 2])
def test_hyperexpansive_and_moment_side(n, axis, random_corpus):
    alpha = (n, 0) if axis == 1 else (0, n)
    for s1, s2 in random_corpus:
        F = defect_form(s1, s2, alpha, 4, 4)
        assert check_nsd(F, 1e-8).passed
        np.testing.assert_allclose(F.matrix, moment_side_matrix(s1, s2, n, axis, 4, 4), atol=1e-10)


def test_moment_side_form_matches_matrix(rng):
    s1, s2 = named_corpus()["mixture"], named_corpus()["area_half"]
    f = Poly2.from_array(rng.normal(size=(3, 3)))
    g = Poly2.from_array(rng.normal(size=(3, 3)) * 1j)
    for axis in (1, 2):
        F = defect_form(s1, s2, (2, 0) if axis == 1 else (0, 2), 2, 2)
        assert moment_side_form(s1, s2, 2, f, g, axis) == pytest.approx(F.form(f, g), abs=1e-12)


def test_two_isometry_for_boundary_measures():
    s1 = MeasureSpec((CircleUniform(0.7), Atom(1j, 0.4)))
    s2 = named_corpus()["arc"]
    for alpha in [(2, 0), (0, 2), (1, 1)]:
        assert np.abs(defect_form(s1, s2, alpha, 5, 5).matrix).max() <= 1e-10
    a, m = 0.3 + 0.4j, 0.8
    shifted = s1 + MeasureSpec((Atom(a, m),))
    val = defect_form(shifted, s2, (2, 0), 0, 0).form(ONE, ONE)
    assert abs(val - (-m * (1 - abs(a) ** 2))) <= 1e-12


def test_recursion(random_corpus):
    for s1, s2 in random_corpus[:5]:
        for alpha in [(1, 0), (0, 1), (1, 1), (2, 0), (0, 3)]:
            for j in (1, 2):
                assert beta_recursion_residual(s1, s2, alpha, j, 4, 4) <= 1e-10


def test_kl_identity(random_corpus, rng):
    for s1, s2 in random_corpus[:5]:
        f = Poly2.from_array(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        for k in range(4):
            for l in range(4):
                assert kl_identity_residual(s1, s2, k, l, f) <= 1e-10


def test_wandering(random_corpus):
    for s1, s2 in random_corpus:
        assert wandering_residual(s1, s2, 5, 5) <= 1e-12


def test_kernel_at_origin_is_one(rng):
    for name in ("mixture", "circle", "atom05"):
        s = named_corpus()[name]
        z = tuple(complex(x) for x in rng.uniform(-0.7, 0.7, 2))
        assert kernel_eval(s, CIRCLE, z, (0j, 0j), (6, 6)) == pytest.approx(1, abs=1e-12)


def test_kernel_diagonal_series():
    val = kernel_eval(CIRCLE, CIRCLE, (0.5, 0), (0.5, 0), (10, 10))
    series = sum(0.25 ** m / (1 + m) for m in range(11))
    assert val.real == pytest.approx(series, abs=1e-12)
    assert abs(val.real - 1.150728) <= 1e-5
    assert abs(val.imag) <= 1e-14
    assert 4 * math.log(4 / 3) - val.real < 1e-7


def test_reproducing_property(rng):
    G = gram2(named_corpus()["mixture"], named_corpus()["arc"], 6, 6)
    assert reproducing_residual(G, Poly2.monomial(1, 0), (0.3, 0.2)) <= 1e-10
    for _ in range(5):
        w = tuple(complex(*rng.uniform(-0.49, 0.49, 2)) for _ in range(2))
        m, n = rng.integers(0, 7, 2)
        assert reproducing_residual(G, Poly2.monomial(int(m), int(n)), w) <= 1e-8


def test_kernel_is_hermitian(rng):
    s1, s2 = named_corpus()["complex_atom"], CIRCLE
    z = (0.2 + 0.1j, -0.3j)
    w = (0.5, 0.1 + 0.1j)
    assert kernel_eval(s1, s2, z, w, (5, 5)) == pytest.approx(np.conj(kernel_eval(s1, s2, w, z, (5, 5))))


def test_kernel_ill_conditioned():
    G = gram2(CIRCLE, CIRCLE, 1, 1)
    with pytest.raises(IllConditioned):
        kernel_coefficients(Gram2(np.zeros_like(G.matrix), 1, 1), (0, 0))


@pytest.mark.parametrize("pair", [("mixture", "arc"), ("circle", "atom0"), ("area_full", "boundary_atom")])
def test_roundtrip(pair):
    c = named_corpus()
    G = gram2(c[pair[0]], c[pair[1]], 6, 6)
    rt = model_roundtrip(G)
    assert rt.max_residual <= 1e-10
    np.testing.assert_allclose(rt.rebuilt.matrix, G.matrix, atol=1e-10)


def test_roundtrip_separates_moments():
    a = MeasureSpec((Atom(0.5, 1.0),))
    b = MeasureSpec((Atom(0.5, 1.4),))  # mu{1,1} differs by 0.1
    Ga = model_roundtrip(gram2(a, CIRCLE, 5, 5)).rebuilt
    Gb = model_roundtrip(gram2(b, CIRCLE, 5, 5)).rebuilt
    assert np.abs(Ga.matrix - Gb.matrix).max() >= 0.05


def test_roundtrip_rejects_inconsistent():
    G = gram2(CIRCLE, CIRCLE, 2, 2)
    m = G.matrix.copy()
    m[G.index(1, 1), G.index(2, 2)] = m[G.index(2, 2), G.index(1, 1)] = 0.2
    with pytest.raises(InconsistentGram):
        model_roundtrip(Gram2(m, 2, 2))


@settings(max_examples=30, deadline=None)
@given(b1=st.floats(0, 100), b2=st.floats(0, 100))
def test_defect_from_norms_anchor(b1, b2):
    B1, B2 = Fraction(b1), Fraction(b2)
    exact = defect_from_norms(Fraction(1), 1 + B1 + Fraction(1, 2), 1 + B2 + Fraction(1, 2),
                              1 + B1 + B2 + Fraction(3, 4))
    assert exact == Fraction(-1, 4)
    approx = defect_from_norms(1, 1 + b1 + 0.5, 1 + b2 + 0.5, 1 + b1 + b2 + 0.75)
    assert approx == pytest.approx(-0.25, abs=1e-13)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_interior_defect_is_strictly_negative(seed):
    rng = np.random.default_rng(seed)
    s1 = random_measure(rng, kinds=("atom", "area_disc"))
    interior, _ = split_interior_boundary(s1)
    F = defect_form(s1, ZERO, (2, 0), 3, 0)
    top = np.linalg.eigvalsh(F.matrix).max()
    assert top <= 1e-12
    if interior.total_mass > 1e-6:
        assert F.form(ONE, ONE).real < 0
