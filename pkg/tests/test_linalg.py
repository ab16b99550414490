import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entdecay.errors import DimensionError, ValidationError
from entdecay.linalg import PAULI, hermitian_eigen, kron, matmul, matrix_sqrt_psd

I2, X, Y, Z = PAULI


def test_pauli_relations_exact():
    for s in (X, Y, Z):
        assert np.array_equal(s @ s, I2)
        assert np.array_equal(s, s.conj().T)
        assert np.trace(s) == 0
    assert np.array_equal(X @ Y, 1j * Z)
    assert np.array_equal(Y @ Z, 1j * X)
    assert np.array_equal(Z @ X, 1j * Y)


def test_pauli_constants_are_read_only():
    with pytest.raises(ValueError):
        X[0, 0] = 5


def test_matmul_examples(rng):
    assert np.array_equal(matmul(X, X), I2)
    assert np.array_equal(matmul(X, Y), 1j * Z)
    a, b, c = (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)) for _ in range(3))
    assert np.abs(matmul(matmul(a, b), c) - matmul(a, matmul(b, c))).max() < 1e-12


@pytest.mark.parametrize("shape", [(3, 3), (2, 3), (4,), (8, 8)])
def test_matmul_rejects_bad_shapes(shape):
    with pytest.raises(DimensionError):
        matmul(np.zeros(shape), np.zeros(shape))


def test_matmul_dimension_mismatch():
    with pytest.raises(DimensionError):
        matmul(np.eye(2), np.eye(4))


def test_non_finite_rejected():
    with pytest.raises(ValidationError):
        matmul(np.full((2, 2), np.nan), np.eye(2))


def test_kron_examples():
    assert np.array_equal(kron(I2, I2), np.eye(4))
    expected = np.zeros((4, 4), dtype=complex)
    expected[:2, :2] = X
    expected[2:, 2:] = X
    assert np.array_equal(kron(I2, X), expected)
    assert np.array_equal(kron(X, Z), np.kron(X, Z))


def test_kron_rejects_4x4():
    with pytest.raises(DimensionError):
        kron(np.eye(4), np.eye(2))


def test_kron_mixed_product(rng):
    for _ in range(50):
        a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
        assert np.abs(kron(a, b) @ kron(c, d) - kron(a @ c, b @ d)).max() < 1e-12


def test_eigen_sigma_z():
    values, vectors = hermitian_eigen(Z)
    assert np.allclose(values, [1, -1], atol=0)
    assert np.abs(np.abs(vectors) - np.eye(2)).max() < 1e-15


def test_eigen_singlet_projector():
    plus = np.zeros((4, 4))
    plus[np.ix_([0, 3], [0, 3])] = 0.5
    values, _ = hermitian_eigen(plus)
    assert np.abs(values - [1, 0, 0, 0]).max() < 1e-12


def test_eigen_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        hermitian_eigen(np.array([[0, 1], [0, 0]]))


def test_eigen_already_diagonal_is_untouched():
    values, vectors = hermitian_eigen(np.diag([1.0, 3.0, 2.0, -1.0]))
    assert values.tolist() == [3.0, 2.0, 1.0, -1.0]
    assert np.array_equal(np.abs(vectors), np.eye(4)[:, [1, 2, 0, 3]])


def _random_hermitian(rng, scale=1.0):
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    return scale * (g + g.conj().T) / 2


@pytest.mark.parametrize("scale", [1e-6, 1.0, 1e3])
def test_eigen_against_numpy(rng, scale):
    for _ in range(100):
        h = _random_hermitian(rng, scale)
        values, v = hermitian_eigen(h)
        ref = np.sort(np.linalg.eigvalsh(h))[::-1]
        assert np.abs(values - ref).max() <= 1e-12 * max(1.0, scale)
        assert np.all(np.diff(values) <= 0)
        assert np.abs(v.conj().T @ v - np.eye(4)).max() < 1e-9
        assert np.abs(h - v @ np.diag(values) @ v.conj().T).max() < 1e-9 * max(1.0, scale)
        assert abs(values.sum() - np.trace(h).real) < 1e-10 * max(1.0, scale)


def test_eigen_degenerate_spectrum(rng):
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    h = q @ np.diag([0.5, 0.5, 0.0, 0.0]) @ q.conj().T
    values, v = hermitian_eigen(h)
    assert np.abs(values - [0.5, 0.5, 0, 0]).max() < 1e-12
    assert np.abs(h - v @ np.diag(values) @ v.conj().T).max() < 1e-12


complex_entries = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(st.lists(complex_entries, min_size=16, max_size=16))
def test_eigen_property_trace_and_reconstruction(entries):
    g = np.array(entries).reshape(4, 4)
    h = (g + g.conj().T) / 2
    values, v = hermitian_eigen(h)
    scale = max(1.0, np.abs(h).max())
    assert abs(values.sum() - np.trace(h).real) <= 1e-10 * scale
    assert np.abs(h - v @ np.diag(values) @ v.conj().T).max() <= 1e-9 * scale


def test_sqrt_examples():
    assert np.abs(matrix_sqrt_psd(np.eye(4)) - np.eye(4)).max() < 1e-14
    plus = np.zeros((4, 4))
    plus[np.ix_([0, 3], [0, 3])] = 0.5
    assert np.abs(matrix_sqrt_psd(plus) - plus).max() < 1e-14
    assert np.abs(matrix_sqrt_psd(np.diag([4.0, 1, 0, 0])) - np.diag([2.0, 1, 0, 0])).max() < 1e-14


def test_sqrt_of_2x2():
    s = matrix_sqrt_psd(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.abs(s @ s - [[2, 1], [1, 2]]).max() < 1e-12


def test_sqrt_clamps_tiny_negative():
    s = matrix_sqrt_psd(np.diag([1.0, 0.5, 0.0, -5e-11]))
    assert np.abs(s - np.diag([1.0, np.sqrt(0.5), 0, 0])).max() < 1e-15


def test_sqrt_rejects_negative():
    with pytest.raises(ValidationError):
        matrix_sqrt_psd(np.diag([1.0, 0.5, 0.0, -1e-6]))


@settings(max_examples=200, deadline=None)
@given(
    st.lists(complex_entries, min_size=16, max_size=16),
    st.integers(min_value=1, max_value=4),
)
def test_sqrt_property_reconstructs(entries, rank):
    g = np.array(entries).reshape(4, 4)[:, :rank]
    m = g @ g.conj().T
    m = m / max(1.0, np.abs(m).max())
    s = matrix_sqrt_psd(m)
    assert np.abs(s - s.conj().T).max() < 1e-12
    assert np.linalg.eigvalsh(s).min() > -1e-12
    assert np.abs(s @ s - m).max() < 1e-8
