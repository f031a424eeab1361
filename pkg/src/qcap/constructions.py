"""Headline constructions: the superactivation state and halving identity,
the nonconvexity channel family M_p with its threshold, and the switch
channel separating the hashing rate from the capacity of a channel pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log2, sqrt

import numpy as np

from .channels import (
    KrausChannel,
    erasure_channel,
    flagged_mixture,
    horodecki_channel_4,
    switch_channel,
    tensor,
)
from .information import (
    Ensemble,
    coherent_information,
    private_information_value,
)
from .linops import (
    RANK_TOL,
    PureStateVector,
    QuantumState,
    SubsystemShape,
    ValidationError,
    basis_state,
    partial_trace,
    permute_state,
    single_system,
    tensor_product,
)


def paper_ensemble_h4() -> Ensemble:
    """Two equiprobable rank-2 states |x><x| (x) I/2 on the 4-dim input A."""
    shape = single_system(4, "A")
    states = []
    for x in range(2):
        px = np.outer(basis_state(2, x), basis_state(2, x).conj())
        states.append(QuantumState(np.kron(px, np.eye(2) / 2), shape))
    return Ensemble((0.5, 0.5), tuple(states))


def _state_ranks(e: Ensemble) -> list[int]:
    ranks = []
    for s in e.states:
        w = np.linalg.eigvalsh(s.matrix)
        ranks.append(int(np.sum(w > RANK_TOL)))
    return ranks


def superactivation_input(e: Ensemble) -> tuple[PureStateVector, QuantumState]:
    """Purified ensemble state |rho>^XAC and its AC reduction.

    Each ensemble member is purified into its own orthogonal block of the
    assisting system C (dim = sum of ranks).  Blocks follow ensemble order;
    within a block, columns follow descending eigenvalue, ties broken by
    eigendecomposition index.
    """
    ranks = _state_ranks(e)
    dc = sum(ranks)
    da = e.states[0].dim
    nx = e.size
    vec = np.zeros(nx * da * dc, dtype=complex)
    offset = 0
    for x, (p, s, r) in enumerate(zip(e.probabilities, e.states, ranks)):
        w, v = np.linalg.eigh((s.matrix + s.matrix.conj().T) / 2)
        order = [i for i in sorted(range(len(w)), key=lambda i: (-w[i], i)) if w[i] > RANK_TOL]
        purif = np.zeros(da * dc, dtype=complex)
        for col, i in enumerate(order):
            purif += np.sqrt(w[i]) * np.kron(v[:, i], basis_state(dc, offset + col))
        vec += sqrt(p) * np.kron(basis_state(nx, x), purif)
        offset += r
    shape = SubsystemShape((nx, da, dc), ("X", "A", "C"))
    pure = PureStateVector(vec / np.linalg.norm(vec), shape)
    rho_ac = partial_trace(pure.density_matrix(), {"A", "C"})
    return pure, rho_ac


def rho_ac_symmetric() -> QuantumState:
    """The A<->C symmetric input for the nonconvexity construction.

    (1/2)(|00><00| + |11><11|) on A1C1 tensored with the maximally entangled
    pair on A2C2, returned on subsystems ("A", "C") with dims (4, 4).
    """
    phi = (np.kron(basis_state(2, 0), basis_state(2, 0))
           + np.kron(basis_state(2, 1), basis_state(2, 1))) / sqrt(2.0)
    phi_dm = np.outer(phi, phi.conj())
    m = np.zeros((16, 16), dtype=complex)
    for x in range(2):
        px = np.outer(basis_state(2, x), basis_state(2, x).conj())
        m += 0.5 * tensor_product(tensor_product(px, px), phi_dm)
    # built on (A1, C1, A2, C2); regroup to (A1 A2)(C1 C2)
    s = QuantumState(m, SubsystemShape((2, 2, 2, 2), ("A1", "C1", "A2", "C2")))
    s = permute_state(s, ("A1", "A2", "C1", "C2"))
    return QuantumState(s.matrix, SubsystemShape((4, 4), ("A", "C")))


@dataclass(frozen=True)
class HalvingReport:
    """Both sides of the identity I_c(N x A_e, rho^AC) = (I(X;B) - I(X;E)) / 2.

    ``lhs`` is the joint coherent information; ``rhs`` is the private
    information value of the ensemble (so the identity reads lhs = rhs/2 and
    ``abs_diff`` = |lhs - rhs/2|).
    """

    lhs: float
    rhs: float
    abs_diff: float
    erasure_input_dim: int


def verify_halving_identity(c: KrausChannel, e: Ensemble) -> HalvingReport:
    """Evaluate both sides of the halving identity for one channel + ensemble."""
    if e.states[0].dim != c.din:
        raise ValidationError(
            f"ensemble states have dim {e.states[0].dim}, channel input is {c.din}")
    dc = sum(_state_ranks(e))
    _, rho_ac = superactivation_input(e)
    joint = tensor(c, erasure_channel(dc, 0.5))
    lhs = coherent_information(joint, rho_ac)
    rhs = private_information_value(c, e)
    return HalvingReport(lhs=lhs, rhs=rhs, abs_diff=abs(lhs - rhs / 2.0),
                         erasure_input_dim=dc)


@dataclass(frozen=True)
class NonconvexitySample:
    p: float
    direct: float          # I_c(M_p x M_p, rho^AC) computed outright
    decomposition: float   # the same value via the 4-term branch expansion


@dataclass(frozen=True)
class NonconvexityReport:
    i1: float              # I_c(N_H x A_e, rho^AC)
    c_bound: float         # log2 of the Horodecki environment dimension
    p_star: float          # i1 / (c_bound + i1)
    i_hh: float            # I_c(N_H x N_H, rho^AC), never positive
    samples: tuple[NonconvexitySample, ...]


def nonconvexity_analysis(p_samples) -> NonconvexityReport:
    """Positivity window of the flagged mixture M_p = p N_H + (1-p) A_e.

    For each sampled p, I_c(M_p x M_p) at the symmetric input is computed
    directly and via the branch decomposition
    p^2 I_c(HH) + p(1-p) I_c(HA) + p(1-p) I_c(AH) + (1-p)^2 I_c(AA);
    the flags make the two routes agree exactly up to rounding.
    """
    ps = [float(p) for p in p_samples]
    if any(not 0.0 <= p <= 1.0 for p in ps):
        raise ValidationError("all p samples must lie in [0, 1]")
    nh = horodecki_channel_4()
    ae = erasure_channel(4, 0.5)
    rho = rho_ac_symmetric()
    i_ha = coherent_information(tensor(nh, ae), rho)
    i_ah = coherent_information(tensor(ae, nh), rho)
    i_hh = coherent_information(tensor(nh, nh), rho)
    i_aa = coherent_information(tensor(ae, ae), rho)
    c_bound = log2(nh.denv)
    p_star = i_ha / (c_bound + i_ha)
    samples = []
    for p in ps:
        mp = flagged_mixture(nh, ae, p)
        direct = coherent_information(tensor(mp, mp), rho)
        decomp = (p * p * i_hh + p * (1 - p) * (i_ha + i_ah)
                  + (1 - p) * (1 - p) * i_aa)
        samples.append(NonconvexitySample(p=p, direct=direct, decomposition=decomp))
    return NonconvexityReport(i1=i_ha, c_bound=c_bound, p_star=p_star,
                              i_hh=i_hh, samples=tuple(samples))


@dataclass(frozen=True)
class GapReport:
    q1_single_bound: float   # optimizer's best I_c over the switch channel input
    q1_pair_value: float     # I_c(M x M) at the analytically routed input
    single_certified: bool
    din: int
    dout: int
    denv: int


def gap_switch_channel() -> KrausChannel:
    """The control-qubit switch between the Horodecki and erasure branches."""
    return switch_channel(horodecki_channel_4(), erasure_channel(4, 0.5))


def gap_pair_input() -> QuantumState:
    """|0><0| x |1><1| control flags routing A into N_H and C into A_e.

    Ordered as (flag1, A, flag2, C) so it feeds M x M directly.
    """
    rho = rho_ac_symmetric()
    p0 = np.outer(basis_state(2, 0), basis_state(2, 0).conj())
    p1 = np.outer(basis_state(2, 1), basis_state(2, 1).conj())
    m = tensor_product(tensor_product(p0, p1), rho.matrix)
    s = QuantumState(m, SubsystemShape((2, 2, 4, 4), ("F1", "F2", "A", "C")))
    return permute_state(s, ("F1", "A", "F2", "C"))


def gap_analysis(optimizer_config=None, zero_tol: float = 1e-6) -> GapReport:
    """Certify Q1(M) ~ 0 numerically while exhibiting I_c(M x M) > 0."""
    from .optimizer import OptimizerConfig, certify_zero_q1

    m = gap_switch_channel()
    cfg = optimizer_config if optimizer_config is not None else OptimizerConfig()
    certified, best = certify_zero_q1(m, cfg, zero_tol)
    pair = coherent_information(tensor(m, m), gap_pair_input())
    return GapReport(q1_single_bound=best, q1_pair_value=pair,
                     single_certified=certified,
                     din=m.din, dout=m.dout, denv=m.denv)
