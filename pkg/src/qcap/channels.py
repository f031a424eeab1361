"""Kraus-form channels, Stinespring dilations, Choi matrices and the PPT test.

A channel maps a din-dimensional input A to a dout-dimensional output B with
an environment E of dimension equal to the number of Kraus operators (no
dilation minimization; output entropies do not depend on it).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .linops import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    QuantumState,
    SubsystemShape,
    ValidationError,
    basis_state,
    hermitian_eigenvalues,
    partial_transpose,
    permute_subsystems,
    single_system,
)

COMPLETENESS_TOL = 1e-10
PPT_TOL = 1e-10  # shared with the state PSD threshold


@dataclass(frozen=True)
class KrausChannel:
    """Completely positive trace-preserving map given by Kraus operators."""

    kraus: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.kraus)
        if not ops:
            raise ValidationError("a channel needs at least one Kraus operator")
        dout, din = ops[0].shape
        for i, k in enumerate(ops):
            if k.ndim != 2 or k.shape != (dout, din):
                raise ValidationError(
                    f"Kraus operator {i} has shape {k.shape}, expected {(dout, din)}")
        acc = sum(k.conj().T @ k for k in ops)
        drift = np.max(np.abs(acc - np.eye(din)))
        if drift > COMPLETENESS_TOL:
            raise ValidationError(
                f"Kraus completeness violated: max |sum K†K - I| = {drift:.3e}")
        object.__setattr__(self, "kraus", ops)

    @property
    def din(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def dout(self) -> int:
        return self.kraus[0].shape[0]

    @property
    def denv(self) -> int:
        return len(self.kraus)

    def kraus_stack(self) -> np.ndarray:
        return np.stack(self.kraus)


@dataclass(frozen=True)
class StinespringIsometry:
    """Isometry V: A -> B x E with V|psi> = sum_k (K_k|psi>) x |k>_E."""

    matrix: np.ndarray
    dout: int
    denv: int

    def __post_init__(self):
        v = np.asarray(self.matrix, dtype=complex)
        din = v.shape[1]
        if v.shape[0] != self.dout * self.denv:
            raise ValidationError("isometry rows must equal dout*denv")
        drift = np.max(np.abs(v.conj().T @ v - np.eye(din)))
        if drift > COMPLETENESS_TOL:
            raise ValidationError(f"V†V deviates from identity by {drift:.3e}")
        object.__setattr__(self, "matrix", v)


def stinespring(c: KrausChannel) -> StinespringIsometry:
    """Stack the Kraus operators into the environment index (B first, E second)."""
    v = np.zeros((c.dout * c.denv, c.din), dtype=complex)
    view = v.reshape(c.dout, c.denv, c.din)
    for k, op in enumerate(c.kraus):
        view[:, k, :] = op
    return StinespringIsometry(v, c.dout, c.denv)


def apply_channel_matrix(c: KrausChannel, rho: np.ndarray) -> np.ndarray:
    """Output density matrix sum_k K rho K† (no state validation; hot path)."""
    K = c.kraus_stack()
    return np.einsum("kai,ij,kbj->ab", K, rho, K.conj(), optimize=True)


def environment_matrix(c: KrausChannel, rho: np.ndarray) -> np.ndarray:
    """Environment density matrix E[k,l] = Tr(K_k rho K_l†)."""
    K = c.kraus_stack()
    return np.einsum("kai,ij,laj->kl", K, rho, K.conj(), optimize=True)


def output_state(c: KrausChannel, s: QuantumState, label: str = "B") -> QuantumState:
    if s.dim != c.din:
        raise ValidationError(f"state dim {s.dim} does not match channel input {c.din}")
    return QuantumState(apply_channel_matrix(c, s.matrix), single_system(c.dout, label))


def environment_state(c: KrausChannel, s: QuantumState, label: str = "E") -> QuantumState:
    if s.dim != c.din:
        raise ValidationError(f"state dim {s.dim} does not match channel input {c.din}")
    return QuantumState(environment_matrix(c, s.matrix), single_system(c.denv, label))


def extend_and_apply(c: KrausChannel, s: QuantumState, act_on: str,
                     out_labels: tuple[str, str] = ("B", "E")) -> QuantumState:
    """Send one subsystem through the channel, keeping spectators intact.

    The acted subsystem is replaced by the pair (output, environment), which
    are appended after the spectators in the returned state.
    """
    i = s.shape.index(act_on)
    if s.shape.dims[i] != c.din:
        raise ValidationError(
            f"subsystem {act_on!r} has dim {s.shape.dims[i]}, channel input is {c.din}")
    spect = [j for j in range(len(s.shape.dims)) if j != i]
    for lab in out_labels:
        if lab in (s.shape.labels[j] for j in spect):
            raise ValidationError(f"output label {lab!r} clashes with a spectator label")

    # move the acted subsystem to the last position
    m = permute_subsystems(s.matrix, s.shape.dims, tuple(spect) + (i,))
    d_sp = 1
    for j in spect:
        d_sp *= s.shape.dims[j]
    v = stinespring(c).matrix
    w = np.kron(np.eye(d_sp), v)
    out = w @ m @ w.conj().T
    dims = tuple(s.shape.dims[j] for j in spect) + (c.dout, c.denv)
    labels = tuple(s.shape.labels[j] for j in spect) + tuple(out_labels)
    return QuantumState(out, SubsystemShape(dims, labels))


def tensor(c1: KrausChannel, c2: KrausChannel) -> KrausChannel:
    """Parallel use c1 x c2; Kraus products ordered lexicographically (i, then j)."""
    ops = tuple(np.kron(k, l) for k in c1.kraus for l in c2.kraus)
    return KrausChannel(ops)


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel((np.eye(d, dtype=complex),))


def choi_matrix(c: KrausChannel) -> QuantumState:
    """(c x id) applied to the maximally entangled state on din x din.

    Returned on subsystems ("out", "in") with dims (dout, din); trace 1.
    """
    K = c.kraus_stack()
    d = c.din
    choi = np.einsum("kbi,kcj->bicj", K, K.conj(), optimize=True).reshape(
        c.dout * d, c.dout * d) / d
    return QuantumState(choi, SubsystemShape((c.dout, d), ("out", "in")))


def is_ppt(s: QuantumState, cut) -> tuple[bool, float]:
    """Positive-partial-transpose test across the given subsystem cut.

    Returns (verdict, smallest eigenvalue of the partial transpose).
    """
    pt = partial_transpose(s, cut)
    wmin = float(hermitian_eigenvalues(pt)[0])
    return wmin >= -PPT_TOL, wmin


def erasure_channel(d: int, p: float) -> KrausChannel:
    """Erasure channel: with probability p the input is replaced by a flag.

    Output dim d+1 with the erasure flag |e> as the LAST basis vector; the
    environment's no-erasure flag is index 0.  At p = 1/2 the channel is
    symmetric (complement unitarily equivalent to itself).
    """
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"erasure probability {p} outside [0, 1]")
    embed = np.zeros((d + 1, d), dtype=complex)
    embed[:d, :] = np.eye(d)
    flag = basis_state(d + 1, d)
    ops = [sqrt(1.0 - p) * embed]
    for i in range(d):
        ops.append(sqrt(p) * np.outer(flag, basis_state(d, i).conj()))
    return KrausChannel(tuple(ops))


def horodecki_channel_4() -> KrausChannel:
    """Four-dimensional entanglement-binding channel with positive private value.

    Input is a pair of qubits; six Kraus operators built from Pauli matrices
    and the diagonal pair M0, M1, with mixing weight q = sqrt(2)/(1+sqrt(2)).
    Its Choi matrix is PPT, so the channel has zero quantum capacity.
    """
    q = sqrt(2.0) / (1.0 + sqrt(2.0))
    m0 = np.diag([0.5 * sqrt(2.0 + sqrt(2.0)), 0.5 * sqrt(2.0 - sqrt(2.0))]).astype(complex)
    # the minus sign on the second entry is essential: without it the Choi
    # matrix acquires a negative partial transpose and the channel is no
    # longer entanglement-binding
    m1 = np.diag([0.5 * sqrt(2.0 - sqrt(2.0)), -0.5 * sqrt(2.0 + sqrt(2.0))]).astype(complex)
    i2 = np.eye(2, dtype=complex)
    p0 = np.diag([1.0, 0.0]).astype(complex)
    p1 = np.diag([0.0, 1.0]).astype(complex)
    ops = (
        sqrt(q / 2.0) * np.kron(i2, p0),
        sqrt(q / 2.0) * np.kron(PAULI_Z, p1),
        sqrt(q / 4.0) * np.kron(PAULI_Z, PAULI_Y),
        sqrt(q / 4.0) * np.kron(i2, PAULI_X),
        sqrt(1.0 - q) * np.kron(PAULI_X, m0),
        sqrt(1.0 - q) * np.kron(PAULI_Y, m1),
    )
    return KrausChannel(ops)


def _embed_rows(k: np.ndarray, dout: int) -> np.ndarray:
    """Zero-pad a Kraus operator into a larger output space (extra rows)."""
    out = np.zeros((dout, k.shape[1]), dtype=complex)
    out[: k.shape[0], :] = k
    return out


def flagged_mixture(c1: KrausChannel, c2: KrausChannel, p: float) -> KrausChannel:
    """Apply c1 with probability p, else c2, revealing the choice to the receiver.

    Both branch outputs are embedded in a common space of dim max(dout1, dout2);
    the flag qubit is the LAST tensor factor of the output.
    """
    if c1.din != c2.din:
        raise ValidationError(f"input dims differ: {c1.din} vs {c2.din}")
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"mixture probability {p} outside [0, 1]")
    dmax = max(c1.dout, c2.dout)
    f0 = basis_state(2, 0).reshape(2, 1)
    f1 = basis_state(2, 1).reshape(2, 1)
    ops = [sqrt(p) * np.kron(_embed_rows(k, dmax), f0) for k in c1.kraus]
    ops += [sqrt(1.0 - p) * np.kron(_embed_rows(k, dmax), f1) for k in c2.kraus]
    return KrausChannel(tuple(ops))


def switch_channel(c1: KrausChannel, c2: KrausChannel) -> KrausChannel:
    """Measure a control qubit (first input factor) and apply c1 or c2.

    The measurement outcome is revealed to the receiver as a flag qubit,
    appended as the LAST tensor factor of the output; branch outputs are
    embedded in the common space of dim max(dout1, dout2).
    """
    if c1.din != c2.din:
        raise ValidationError(f"input dims differ: {c1.din} vs {c2.din}")
    dmax = max(c1.dout, c2.dout)
    din = c1.din
    f0 = basis_state(2, 0).reshape(2, 1)
    f1 = basis_state(2, 1).reshape(2, 1)
    sel0 = np.kron(basis_state(2, 0).conj().reshape(1, 2), np.eye(din))
    sel1 = np.kron(basis_state(2, 1).conj().reshape(1, 2), np.eye(din))
    ops = [np.kron(_embed_rows(k, dmax), f0) @ sel0 for k in c1.kraus]
    ops += [np.kron(_embed_rows(k, dmax), f1) @ sel1 for k in c2.kraus]
    return KrausChannel(tuple(ops))
