"""Entropic quantities: von Neumann entropy, coherent information, Holevo and
private information, conditional mutual information and the assisted-rate
lower bound.

All logarithms are base 2; every quantity is in bits (qubits per channel use).
This module only evaluates objectives; maximization lives in ``optimizer``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log2

import numpy as np

from .channels import KrausChannel, apply_channel_matrix, environment_matrix, extend_and_apply
from .linops import QuantumState, ValidationError, hermitian_eigenvalues, partial_trace

EIG_FLOOR = 1e-12   # eigenvalues at or below this contribute 0 to -sum l log l
NEG_EIG_TOL = 1e-10  # below -this a spectrum is a PSD violation, not noise


def entropy_of_spectrum(eigenvalues: np.ndarray) -> float:
    """Shannon entropy (base 2) of a spectrum, with the 0*log 0 floor.

    Values in (-NEG_EIG_TOL, EIG_FLOOR] are clamped to 0; anything more
    negative is treated as a genuine positivity violation.
    """
    w = np.asarray(eigenvalues, dtype=float)
    wmin = float(w.min()) if w.size else 0.0
    if wmin < -NEG_EIG_TOL:
        raise ValidationError(f"spectrum has negative eigenvalue {wmin:.3e}")
    w = w[w > EIG_FLOOR]
    return float(-np.sum(w * np.log2(w)))


def entropy_of_matrix(m: np.ndarray) -> float:
    return entropy_of_spectrum(hermitian_eigenvalues(m))


def von_neumann_entropy(s: QuantumState) -> float:
    """H(s) = -sum_i lambda_i log2 lambda_i over the eigenvalues of s."""
    return entropy_of_matrix(s.matrix)


def coherent_information_matrix(c: KrausChannel, rho: np.ndarray) -> float:
    """H(B) - H(E) for a raw density matrix (no validation; hot path)."""
    hb = entropy_of_matrix(apply_channel_matrix(c, rho))
    he = entropy_of_matrix(environment_matrix(c, rho))
    return hb - he


def coherent_information(c: KrausChannel, s: QuantumState) -> float:
    """I_c = H(output) - H(environment) at the given input state."""
    if s.dim != c.din:
        raise ValidationError(f"state dim {s.dim} does not match channel input {c.din}")
    return coherent_information_matrix(c, s.matrix)


@dataclass(frozen=True)
class Ensemble:
    """Probability-weighted list of states on a common system (classical index X)."""

    probabilities: tuple[float, ...]
    states: tuple[QuantumState, ...]

    def __post_init__(self):
        p = tuple(float(x) for x in self.probabilities)
        if len(p) != len(self.states):
            raise ValidationError("probabilities and states must have equal length")
        if not p:
            raise ValidationError("ensemble must be nonempty")
        if any(x < 0 for x in p):
            raise ValidationError("probabilities must be non-negative")
        if abs(sum(p) - 1.0) > 1e-10:
            raise ValidationError(f"probabilities sum to {sum(p)}, expected 1")
        shape0 = self.states[0].shape
        for s in self.states:
            if s.shape != shape0:
                raise ValidationError("all ensemble states must share one subsystem shape")
        object.__setattr__(self, "probabilities", p)

    @property
    def size(self) -> int:
        return len(self.probabilities)

    def average_matrix(self) -> np.ndarray:
        return sum(p * s.matrix for p, s in zip(self.probabilities, self.states))

    def average_state(self) -> QuantumState:
        return QuantumState(self.average_matrix(), self.states[0].shape)


def holevo_information(e: Ensemble, channel_map) -> float:
    """Mutual information I(X;B) of a cq state via the Holevo block formula.

    ``channel_map`` sends each ensemble member to its conditional output
    state; the value is H(sum_x p_x sigma_x) - sum_x p_x H(sigma_x).
    """
    outs = [channel_map(s) for s in e.states]
    avg = sum(p * o.matrix for p, o in zip(e.probabilities, outs))
    h_avg = entropy_of_matrix(avg)
    h_cond = sum(p * von_neumann_entropy(o) for p, o in zip(e.probabilities, outs))
    return h_avg - h_cond


def private_information_value(c: KrausChannel, e: Ensemble) -> float:
    """I(X;B) - I(X;E) for one ensemble: a lower bound on the private information."""
    if e.states[0].dim != c.din:
        raise ValidationError(
            f"ensemble states have dim {e.states[0].dim}, channel input is {c.din}")
    from .channels import environment_state, output_state

    ixb = holevo_information(e, lambda s: output_state(c, s))
    ixe = holevo_information(e, lambda s: environment_state(c, s))
    return ixb - ixe


def conditional_mutual_information(s: QuantumState, x, b, c) -> float:
    """I(X;B|C) = H(XC) + H(BC) - H(XBC) - H(C) on labeled subsystems.

    ``c`` may be empty, in which case this is the plain mutual information.
    Non-negative up to numerical noise, by strong subadditivity.
    """
    x, b, c = set(x), set(b), set(c)
    if (x & b) or (x & c) or (b & c):
        raise ValidationError("label sets X, B, C must be disjoint")
    for labs in (x, b, c):
        s.shape.indices(labs)  # raises LabelError on unknown labels

    def ent(labels: set) -> float:
        if not labels:
            return 0.0
        return von_neumann_entropy(partial_trace(s, labels))

    return ent(x | c) + ent(b | c) - ent(x | b | c) - ent(c)


def assisted_rate_lower_bound(c: KrausChannel, s: QuantumState) -> float:
    """Half of I(X;B|C) - I(X;E|C) after sending the A part of s through c.

    The state must carry labels "X", "A" and "C" with A matching the channel
    input; this evaluates the assisted-capacity objective at one state.
    """
    for lab in ("X", "A", "C"):
        s.shape.index(lab)
    out = extend_and_apply(c, s, "A", out_labels=("B", "E"))
    ixb = conditional_mutual_information(out, {"X"}, {"B"}, {"C"})
    ixe = conditional_mutual_information(out, {"X"}, {"E"}, {"C"})
    return 0.5 * (ixb - ixe)


def shannon_entropy(probabilities) -> float:
    """H(p) in bits, with the same 0*log 0 convention as the quantum entropy."""
    return entropy_of_spectrum(np.asarray(list(probabilities), dtype=float))


def max_entropy(dim: int) -> float:
    return log2(dim)
