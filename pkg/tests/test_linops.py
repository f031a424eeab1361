import numpy as np
import pytest

from qcap.linops import (
    LabelError,
    PureStateVector,
    QuantumState,
    SubsystemShape,
    ValidationError,
    basis_state,
    hermitian_eigenvalues,
    partial_trace,
    partial_transpose,
    permute_state,
    permute_subsystems,
    purify,
    tensor_product,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
)


def bell_state():
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / np.sqrt(2)
    return QuantumState(np.outer(v, v.conj()), SubsystemShape((2, 2), ("A", "B")))


def test_subsystem_shape_dim_and_index():
    sh = SubsystemShape((2, 3, 4), ("A", "B", "C"))
    assert sh.dim == 24
    assert sh.index("B") == 1
    assert sh.indices(("C", "A")) == [2, 0]
    with pytest.raises(LabelError):
        sh.index("Z")


def test_subsystem_shape_rejects_duplicate_labels():
    with pytest.raises(ValidationError):
        SubsystemShape((2, 2), ("A", "A"))


def test_quantum_state_validation():
    sh = SubsystemShape((2,), ("A",))
    with pytest.raises(ValidationError):
        QuantumState(np.array([[0.5, 0.5j], [0.5j, 0.5]]), sh)  # not Hermitian
    with pytest.raises(ValidationError):
        QuantumState(np.eye(2), sh)  # trace 2
    with pytest.raises(ValidationError):
        QuantumState(np.diag([1.5, -0.5]).astype(complex), sh)  # not PSD


def test_pure_state_vector_norm():
    sh = SubsystemShape((2,), ("A",))
    with pytest.raises(ValidationError):
        PureStateVector(np.array([1.0, 1.0]), sh)
    psi = PureStateVector(np.array([1.0, 1.0]) / np.sqrt(2), sh)
    rho = psi.density_matrix()
    np.testing.assert_allclose(rho.matrix, np.full((2, 2), 0.5), atol=1e-15)


def test_tensor_product_matches_kron():
    a = np.arange(4).reshape(2, 2).astype(complex)
    b = np.arange(9).reshape(3, 3).astype(complex)
    np.testing.assert_array_equal(tensor_product(a, b), np.kron(a, b))


def test_permute_subsystems_swaps_kron_factors():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    swapped = permute_subsystems(np.kron(a, b), (2, 3), (1, 0))
    np.testing.assert_allclose(swapped, np.kron(b, a), atol=1e-14)


def test_permute_state_roundtrip():
    s = bell_state()
    back = permute_state(permute_state(s, ("B", "A")), ("A", "B"))
    np.testing.assert_allclose(back.matrix, s.matrix, atol=1e-14)
    assert back.shape.labels == ("A", "B")


def test_partial_trace_of_bell_state_is_maximally_mixed():
    s = bell_state()
    ra = partial_trace(s, ("A",))
    np.testing.assert_allclose(ra.matrix, np.eye(2) / 2, atol=1e-14)
    assert ra.shape.labels == ("A",)


def test_partial_trace_preserves_kept_order():
    rng = np.random.default_rng(3)
    g = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    m = g @ g.conj().T
    m /= m.trace()
    s = QuantumState(m, SubsystemShape((2, 2, 2), ("A", "B", "C")))
    kept = partial_trace(s, ("C", "A"))
    assert kept.shape.labels == ("A", "C")
    assert kept.shape.dims == (2, 2)


def test_partial_transpose_of_bell_state_has_negative_eigenvalue():
    pt = partial_transpose(bell_state(), ("B",))
    w = hermitian_eigenvalues(pt)
    np.testing.assert_allclose(w[0], -0.5, atol=1e-12)


def test_hermitian_eigenvalues_rejects_nonhermitian():
    with pytest.raises(ValidationError):
        hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_purify_roundtrip():
    rng = np.random.default_rng(5)
    g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    m = g @ g.conj().T
    m /= m.trace()
    s = QuantumState(m, SubsystemShape((3,), ("A",)))
    psi = purify(s)
    assert psi.shape.labels == ("A", "ref")
    back = partial_trace(psi.density_matrix(), ("A",))
    np.testing.assert_allclose(back.matrix, s.matrix, atol=1e-12)


def test_purify_reference_dim_equals_rank():
    s = QuantumState(np.diag([0.5, 0.5, 0.0]).astype(complex),
                     SubsystemShape((3,), ("A",)))
    psi = purify(s)
    assert psi.shape.dims == (3, 2)


def test_basis_state_and_paulis():
    np.testing.assert_array_equal(basis_state(3, 1), np.array([0, 1, 0], dtype=complex))
    for p in (PAULI_X, PAULI_Y, PAULI_Z):
        np.testing.assert_allclose(p @ p, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(PAULI_X @ PAULI_Y, 1j * PAULI_Z, atol=1e-15)
