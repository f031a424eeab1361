"""Dense complex linear algebra over labeled multipartite systems.

Every matrix in the package is a plain complex128 ``numpy.ndarray``.  States
carry a :class:`SubsystemShape` naming their tensor factors, and every
reordering of factors goes through :func:`permute_subsystems` so that index
conventions live in exactly one place.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

# Shared numerical tolerances.
HERM_TOL = 1e-10        # Hermiticity drift allowed on states
TRACE_TOL = 1e-10       # |tr - 1| allowed on states
PSD_TOL = 1e-10         # most negative eigenvalue allowed on states
EIG_SYM_TOL = 1e-8      # Hermiticity drift symmetrized away before eigh
RANK_TOL = 1e-12        # eigenvalues below this do not count toward rank


class LabelError(ValueError):
    """An operation referenced a subsystem label that does not exist."""


class ValidationError(ValueError):
    """A matrix or state violates a structural invariant."""


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ValidationError("matrix contains non-finite entries")
    return a


@dataclass(frozen=True)
class SubsystemShape:
    """Ordered, labeled tensor factorization of a Hilbert space."""

    dims: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.dims) != len(self.labels):
            raise ValidationError("dims and labels must have equal length")
        if any(d < 1 for d in self.dims):
            raise ValidationError("subsystem dimensions must be positive")
        if len(set(self.labels)) != len(self.labels):
            raise ValidationError("subsystem labels must be distinct")

    @property
    def dim(self) -> int:
        return prod(self.dims)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LabelError(f"unknown subsystem label {label!r}; have {self.labels}") from None

    def indices(self, labels) -> list[int]:
        return [self.index(lab) for lab in labels]


def single_system(dim: int, label: str = "A") -> SubsystemShape:
    return SubsystemShape((dim,), (label,))


@dataclass(frozen=True)
class QuantumState:
    """Density matrix over an ordered list of labeled subsystems."""

    matrix: np.ndarray
    shape: SubsystemShape

    def __post_init__(self):
        m = _as_matrix(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError(f"density matrix must be square, got {m.shape}")
        if m.shape[0] != self.shape.dim:
            raise ValidationError(
                f"matrix dimension {m.shape[0]} does not match subsystem dims {self.shape.dims}")
        drift = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
        if drift > HERM_TOL:
            raise ValidationError(f"state is not Hermitian (drift {drift:.3e})")
        tr = m.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"state trace {tr} is not 1")
        wmin = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])
        if wmin < -PSD_TOL:
            raise ValidationError(f"state is not positive semidefinite (min eig {wmin:.3e})")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.shape.dim


@dataclass(frozen=True)
class PureStateVector:
    """Normalized state vector over labeled subsystems."""

    amplitudes: np.ndarray
    shape: SubsystemShape

    def __post_init__(self):
        v = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if not (np.all(np.isfinite(v.real)) and np.all(np.isfinite(v.imag))):
            raise ValidationError("amplitudes contain non-finite entries")
        if v.size != self.shape.dim:
            raise ValidationError(
                f"vector length {v.size} does not match subsystem dims {self.shape.dims}")
        nrm = float(np.linalg.norm(v))
        if abs(nrm - 1.0) > 1e-10:
            raise ValidationError(f"vector norm {nrm} is not 1")
        object.__setattr__(self, "amplitudes", v)

    def density_matrix(self) -> QuantumState:
        v = self.amplitudes
        return QuantumState(np.outer(v, v.conj()), self.shape)


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; first argument indexes the slower (leftmost) factor."""
    return np.kron(_as_matrix(a), _as_matrix(b))


def permute_subsystems(matrix: np.ndarray, dims, perm) -> np.ndarray:
    """Reorder the tensor factors of an operator.

    ``perm[i]`` gives the old position of the factor that ends up at new
    position ``i``.  This is the only reshuffling routine in the package.
    """
    dims = tuple(dims)
    perm = tuple(perm)
    if sorted(perm) != list(range(len(dims))):
        raise ValidationError(f"{perm} is not a permutation of {len(dims)} factors")
    n = len(dims)
    t = np.asarray(matrix, dtype=complex).reshape(dims + dims)
    t = t.transpose(perm + tuple(n + p for p in perm))
    d = prod(dims)
    return np.ascontiguousarray(t.reshape(d, d))


def permute_state(s: QuantumState, new_labels) -> QuantumState:
    """Return ``s`` with its subsystems reordered to ``new_labels``."""
    perm = s.shape.indices(new_labels)
    if len(perm) != len(s.shape.labels):
        raise LabelError(f"{tuple(new_labels)} must list every label of {s.shape.labels}")
    dims = tuple(s.shape.dims[p] for p in perm)
    return QuantumState(permute_subsystems(s.matrix, s.shape.dims, perm),
                        SubsystemShape(dims, tuple(new_labels)))


def partial_trace_matrix(matrix: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out every factor not listed in ``keep`` (indices, original order kept)."""
    dims = tuple(dims)
    keep = sorted(keep)
    n = len(dims)
    t = np.asarray(matrix, dtype=complex).reshape(dims + dims)
    # contract traced row/column index pairs one at a time, highest index first
    traced = [i for i in range(n) if i not in keep]
    for i in sorted(traced, reverse=True):
        t = np.trace(t, axis1=i, axis2=i + (t.ndim // 2))
    d = prod(dims[i] for i in keep)
    return t.reshape(d, d)


def partial_trace(s: QuantumState, keep) -> QuantumState:
    """Reduced state on the kept subsystems, in their original order."""
    keep = set(keep)
    if not keep:
        raise LabelError("must keep at least one subsystem")
    idx = sorted(s.shape.indices(keep))
    m = partial_trace_matrix(s.matrix, s.shape.dims, idx)
    shape = SubsystemShape(tuple(s.shape.dims[i] for i in idx),
                           tuple(s.shape.labels[i] for i in idx))
    return QuantumState(m, shape)


def partial_transpose(s: QuantumState, transpose_on) -> np.ndarray:
    """Transpose the indices of the chosen subsystems only.

    The result is Hermitian but in general not positive semidefinite.
    """
    idx = set(s.shape.indices(transpose_on))
    dims = s.shape.dims
    n = len(dims)
    t = s.matrix.reshape(dims + dims)
    axes = []
    for i in range(n):
        axes.append(n + i if i in idx else i)
    for i in range(n):
        axes.append(i if i in idx else n + i)
    d = s.shape.dim
    return np.ascontiguousarray(t.transpose(axes).reshape(d, d))


def hermitian_eigenvalues(m: np.ndarray) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    Drift up to EIG_SYM_TOL is symmetrized away ((m + m†)/2); larger drift is
    an error rather than silently producing a wrong spectrum.
    """
    m = _as_matrix(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    drift = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if drift > EIG_SYM_TOL:
        raise ValidationError(f"matrix is not Hermitian (drift {drift:.3e})")
    return np.linalg.eigvalsh((m + m.conj().T) / 2)


def _reference_label(shape: SubsystemShape) -> str:
    label = "ref"
    while label in shape.labels:
        label += "'"
    return label


def purify(s: QuantumState, ref_label: str | None = None) -> PureStateVector:
    """Purification of ``s`` on (original system) x (reference of dim rank(s)).

    Eigenvalues below RANK_TOL are dropped; the reference basis is ordered by
    descending eigenvalue, ties broken by eigendecomposition order.
    """
    w, v = np.linalg.eigh((s.matrix + s.matrix.conj().T) / 2)
    order = [i for i in sorted(range(len(w)), key=lambda i: (-w[i], i)) if w[i] > RANK_TOL]
    rank = len(order)
    d = s.dim
    vec = np.zeros(d * rank, dtype=complex)
    for r, i in enumerate(order):
        vec += np.sqrt(w[i]) * np.kron(v[:, i], _basis(rank, r))
    vec /= np.linalg.norm(vec)
    if ref_label is None:
        ref_label = _reference_label(s.shape)
    shape = SubsystemShape(s.shape.dims + (rank,), s.shape.labels + (ref_label,))
    return PureStateVector(vec, shape)


def _basis(dim: int, i: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[i] = 1.0
    return e


def basis_state(dim: int, i: int) -> np.ndarray:
    """Computational basis column vector |i> of the given dimension."""
    if not 0 <= i < dim:
        raise ValidationError(f"basis index {i} out of range for dim {dim}")
    return _basis(dim, i)


# Pauli matrices, used by the four-dimensional Horodecki channel constructor.
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
