import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from roofext import (
    NotHermitian,
    NotIsometry,
    NotPSD,
    OutsideBall,
    PureDecomposition,
    TraceNotOne,
    bell_state,
    bloch_to_qubit,
    decomposition_from_isometry,
    maximally_mixed,
    product_pure,
    pure_projector,
    psd_sqrt,
    qubit_to_bloch,
    random_density,
    random_pure,
    random_unitary,
    spectral_decomposition,
    state_rank,
    validate_density,
    werner_state,
)


def test_validate_density_rejects_nonhermitian():
    bad = np.array([[0.5, 0.1], [0.3, 0.5]], dtype=complex)
    with pytest.raises(NotHermitian):
        validate_density(bad)


def test_validate_density_rejects_bad_trace():
    with pytest.raises(TraceNotOne):
        validate_density(np.eye(2, dtype=complex))


def test_validate_density_rejects_negative():
    bad = np.diag([1.2, -0.2]).astype(complex)
    with pytest.raises(NotPSD):
        validate_density(bad)


def test_spectral_decomposition_descending_and_reconstructs(rng):
    rho = random_density(4, seed=rng)
    vals, vecs = spectral_decomposition(rho)
    assert np.all(np.diff(vals) <= 1e-14)
    rebuilt = (vecs * vals) @ vecs.conj().T
    np.testing.assert_allclose(rebuilt, rho, atol=1e-12)


def test_psd_sqrt(rng):
    rho = random_density(3, seed=rng)
    R = psd_sqrt(rho)
    np.testing.assert_allclose(R @ R, rho, atol=1e-12)
    np.testing.assert_allclose(R, R.conj().T, atol=1e-13)


def test_state_rank(rng):
    assert state_rank(maximally_mixed(4)) == 4
    assert state_rank(pure_projector(bell_state("phi+"))) == 1
    assert state_rank(random_density(4, rank=2, seed=rng)) == 2


def test_pure_decomposition_validation(rng):
    psi = random_pure(2, seed=rng)
    with pytest.raises(Exception):
        PureDecomposition((0.7,), (psi,))  # weights must sum to one
    with pytest.raises(Exception):
        PureDecomposition((1.0,), (2.0 * psi,))  # members must be normalized
    dec = PureDecomposition((0.25, 0.75), (random_pure(2, seed=rng), psi))
    assert abs(sum(dec.weights) - 1.0) < 1e-12
    assert dec.average_state().shape == (2, 2)


def test_decomposition_from_isometry(rng):
    rho = random_density(3, rank=2, seed=rng)
    G = rng.normal(size=(5, 2)) + 1j * rng.normal(size=(5, 2))
    V, _ = np.linalg.qr(G)
    dec = decomposition_from_isometry(rho, V)
    assert dec.reconstruction_error(rho) < 1e-12
    with pytest.raises(NotIsometry):
        decomposition_from_isometry(rho, 1.1 * V)


@given(
    x=arrays(
        np.float64,
        (3,),
        elements=st.floats(min_value=-0.57, max_value=0.57),
    )
)
def test_bloch_round_trip(x):
    rho = bloch_to_qubit(x)
    validate_density(rho)
    np.testing.assert_allclose(qubit_to_bloch(rho), x, atol=1e-12)


def test_bloch_outside_ball():
    with pytest.raises(OutsideBall):
        bloch_to_qubit([0.8, 0.8, 0.8])


def test_bell_and_product_states():
    for kind in ("phi+", "phi-", "psi+", "psi-"):
        psi = bell_state(kind)
        assert abs(np.linalg.norm(psi) - 1.0) < 1e-14
    prod = product_pure([1.0, 0.0], [0.6, 0.8])
    assert abs(np.linalg.norm(prod) - 1.0) < 1e-14


def test_werner_family():
    np.testing.assert_allclose(werner_state(0.0), maximally_mixed(4), atol=1e-15)
    w = werner_state(1.0)
    np.testing.assert_allclose(w, pure_projector(bell_state("psi-")), atol=1e-14)


def test_random_generators_are_seeded():
    a = random_density(3, seed=7)
    b = random_density(3, seed=7)
    np.testing.assert_array_equal(a, b)
    U = random_unitary(4, seed=11)
    np.testing.assert_allclose(U @ U.conj().T, np.eye(4), atol=1e-12)
