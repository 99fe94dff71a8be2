import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirspace.measure import Atom, MeasureSpec, moment_table, random_measure
from dirspace.poly import Poly1, hardy_norm_sq
from dirspace.space1d import (InconsistentGram, dirichlet1, dirichlet1_atomic, dirichlet1_form,
                              gram1, gram1_from_moments, local_dirichlet, norm1_sq,
                              recover_moments1)

from conftest import ATOM05, BOUNDARY1, CIRCLE, ZERO, named_corpus
from oracles import dirichlet1_direct


def test_gram1_circle_diagonal():
    G = gram1(CIRCLE, 6)
    np.testing.assert_allclose(G, np.diag(np.arange(1, 8)), atol=1e-15)
    assert G[2, 2] == 3


def test_gram1_atom_off_diagonal():
    G = gram1(ATOM05, 4)
    assert G[1, 2] == pytest.approx(0.5, abs=1e-15)
    assert G[2, 1] == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("name", sorted(named_corpus()))
def test_gram1_first_row_and_hermitian(name):
    G = gram1(named_corpus()[name], 7)
    np.testing.assert_allclose(G[0], np.eye(8)[0], atol=0)
    np.testing.assert_allclose(G, G.conj().T, atol=1e-15)
    assert np.linalg.eigvalsh(G).min() > 0


def test_local_dirichlet_examples():
    assert local_dirichlet(Poly1([0, 0, 1]), 0) == 1
    # (z^2 - 1)/(z - 1) = z + 1
    assert local_dirichlet(Poly1([0, 0, 1]), 1) == 2
    assert local_dirichlet(Poly1([5]), 0.3) == 0


def test_dirichlet1_examples():
    assert dirichlet1(BOUNDARY1, Poly1([0, 0, 1])) == pytest.approx(2, abs=1e-14)
    assert dirichlet1(CIRCLE, Poly1([0, 0, 0, 1])) == pytest.approx(3, abs=1e-14)
    assert dirichlet1(ZERO, Poly1([1, 2, 3])) == 0


@pytest.mark.parametrize("name", sorted(named_corpus()))
def test_dirichlet1_matches_direct_integration(name, rng):
    spec = named_corpus()[name]
    for deg in (1, 3, 6):
        g = Poly1(rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1))
        assert dirichlet1(spec, g) == pytest.approx(dirichlet1_direct(spec, g), rel=1e-9, abs=1e-12)


def test_atomic_formula(rng):
    spec = MeasureSpec((Atom(0.2 + 0.1j, 0.4), Atom(-0.7j, 1.3), Atom(1j, 0.5)))
    g = Poly1(rng.normal(size=6) + 1j * rng.normal(size=6))
    assert dirichlet1(spec, g) == pytest.approx(dirichlet1_atomic(spec, g), rel=1e-12)
    with pytest.raises(ValueError):
        dirichlet1_atomic(CIRCLE, g)


@pytest.mark.parametrize("name", sorted(named_corpus()))
def test_form_agrees_with_gram(name, rng):
    spec = named_corpus()[name]
    N = 10
    G = gram1(spec, N)
    a = rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1)
    b = rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1)
    # hardy part is the identity, so <g, h> = a^T G conj(b)
    hardy = a @ np.conj(b)
    inner = a @ G @ np.conj(b)
    form = dirichlet1_form(spec, Poly1(a), Poly1(b))
    assert abs(inner - hardy - form) <= 1e-12 * (1 + abs(inner))
    assert norm1_sq(spec, Poly1(a)) == pytest.approx((a @ G @ np.conj(a)).real, rel=1e-12)


@pytest.mark.parametrize("name", sorted(named_corpus()))
def test_recover_roundtrip(name):
    spec = named_corpus()[name]
    G = gram1(spec, 8)
    mom = recover_moments1(G)
    np.testing.assert_allclose(mom.entries, moment_table(spec, 7).entries, atol=1e-12)
    np.testing.assert_allclose(gram1_from_moments(mom, 8), G, atol=1e-12)


def test_recover_rejects_inconsistent():
    G = gram1(CIRCLE, 4)
    bad = G.copy()
    bad[0, 1] = bad[1, 0] = 0.3
    with pytest.raises(InconsistentGram):
        recover_moments1(bad)
    bad = G.copy()
    bad[3, 1] += 0.2j  # breaks Hermitian symmetry of the recovered table
    with pytest.raises(InconsistentGram):
        recover_moments1(bad)


def test_recover_order_zero():
    assert recover_moments1(np.eye(1)).entries.shape == (0, 0)


def test_gram1_rejects_negative_order():
    with pytest.raises(ValueError):
        gram1(CIRCLE, -1)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), r=st.floats(0.05, 0.999))
def test_dilation_shrinks_norm(seed, r):
    rng = np.random.default_rng(seed)
    spec = random_measure(rng)
    g = Poly1(rng.normal(size=6) + 1j * rng.normal(size=6))
    gr = Poly1([a * r ** k for k, a in enumerate(g.coeffs)])
    assert dirichlet1(spec, gr) <= dirichlet1(spec, g) + 1e-12
    assert hardy_norm_sq(gr) <= hardy_norm_sq(g) + 1e-12
    assert norm1_sq(spec, gr) <= norm1_sq(spec, g) + 1e-12


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_dirichlet_is_additive_in_the_measure(seed):
    rng = np.random.default_rng(seed)
    s1, s2 = random_measure(rng), random_measure(rng)
    g = Poly1(rng.normal(size=5) + 1j * rng.normal(size=5))
    total = dirichlet1(s1 + s2, g)
    assert total == pytest.approx(dirichlet1(s1, g) + dirichlet1(s2, g), rel=1e-12, abs=1e-14)
    assert total >= 0
