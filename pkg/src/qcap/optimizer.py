"""Maximization of coherent information over input density matrices.

The input is parameterized as rho = G G† / tr(G G†) with G an unconstrained
complex matrix, so every iterate is automatically a valid state.  Ascent uses
central finite-difference gradients (robust at degenerate spectra) with a
backtracking line search.  Restart 0 starts at the maximally mixed state; the
remaining restarts start at random G drawn from a splitmix64-seeded stream,
so results are reproducible from the seed alone.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel
from .information import entropy_of_spectrum
from .linops import QuantumState, ValidationError, single_system

DIN_GUARD = 64  # largest input dimension accepted for dense eigensolves

_MASK = (1 << 64) - 1


def splitmix64_stream(seed: int, count: int) -> list[int]:
    """First ``count`` outputs of the splitmix64 generator started at ``seed``.

    state += 0x9E3779B97F4A7C15; z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
    output z ^ (z >> 31).  All arithmetic mod 2^64.
    """
    state = seed & _MASK
    out = []
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & _MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        out.append(z ^ (z >> 31))
    return out


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    max_iters: int = 2000
    gradient_step: float = 1e-2
    fd_epsilon: float = 1e-6
    convergence_tol: float = 1e-9
    seed: int = 2009

    def __post_init__(self):
        if self.restarts < 1:
            raise ValidationError("restarts must be >= 1")
        if min(self.max_iters, self.gradient_step, self.fd_epsilon,
               self.convergence_tol) <= 0:
            raise ValidationError("optimizer config values must be positive")


@dataclass(frozen=True)
class OptimizationResult:
    best_value: float
    best_state: QuantumState
    iterations_used: int
    converged: bool


def _ic_batch(kstack: np.ndarray, rhos: np.ndarray) -> np.ndarray:
    """Coherent information of a stack of density matrices (n, d, d)."""
    outs = np.einsum("kai,nij,kbj->nab", kstack, rhos, kstack.conj(), optimize=True)
    envs = np.einsum("kai,nij,laj->nkl", kstack, rhos, kstack.conj(), optimize=True)
    wb = np.linalg.eigvalsh((outs + outs.conj().transpose(0, 2, 1)) / 2)
    we = np.linalg.eigvalsh((envs + envs.conj().transpose(0, 2, 1)) / 2)
    return np.array([entropy_of_spectrum(w) for w in wb]) - \
        np.array([entropy_of_spectrum(w) for w in we])


def _rho_from_g(g: np.ndarray) -> np.ndarray:
    m = g @ g.conj().T
    return m / m.trace().real


def _objective(kstack: np.ndarray, g: np.ndarray) -> float:
    return float(_ic_batch(kstack, _rho_from_g(g)[None, :, :])[0])


def _fd_gradient(kstack: np.ndarray, g: np.ndarray, eps: float) -> np.ndarray:
    """Central finite-difference gradient in the real parameterization of G."""
    d = g.shape[0]
    n = d * d
    # one batch of 4*n perturbed copies: +/- eps on each real and imag part
    gs = np.broadcast_to(g, (4 * n, d, d)).copy()
    flat = gs.reshape(4 * n, n)
    idx = np.arange(n)
    flat[idx, idx] += eps
    flat[n + idx, idx] -= eps
    flat[2 * n + idx, idx] += 1j * eps
    flat[3 * n + idx, idx] -= 1j * eps
    rhos = gs @ gs.conj().transpose(0, 2, 1)
    rhos /= np.einsum("nii->n", rhos).real[:, None, None]
    vals = _ic_batch(kstack, rhos)
    dre = (vals[:n] - vals[n:2 * n]) / (2 * eps)
    dim = (vals[2 * n:3 * n] - vals[3 * n:]) / (2 * eps)
    return (dre + 1j * dim).reshape(d, d)


def _run_restart(kstack: np.ndarray, g0: np.ndarray, cfg: OptimizerConfig):
    g = g0.copy()
    f = _objective(kstack, g)
    step = cfg.gradient_step
    iters = 0
    converged = False
    for iters in range(1, cfg.max_iters + 1):
        grad = _fd_gradient(kstack, g, cfg.fd_epsilon)
        gnorm = float(np.linalg.norm(grad))
        if gnorm < 1e-12:
            converged = True
            break
        direction = grad / gnorm
        s = step
        accepted = False
        while s > 1e-13:
            f_new = _objective(kstack, g + s * direction)
            if f_new > f:
                accepted = True
                break
            s /= 2.0
        if not accepted:
            converged = True
            break
        improvement = f_new - f
        g = g + s * direction
        f = f_new
        step = min(s * 2.0, 1.0)
        if improvement < cfg.convergence_tol:
            converged = True
            break
    return f, g, iters, converged


def maximize_coherent_information(c: KrausChannel,
                                  cfg: OptimizerConfig | None = None) -> OptimizationResult:
    """Best coherent information found over all restarts (a Q1 lower bound).

    Deterministic for a fixed config: restart starting points depend only on
    the seed, and ties across restarts are broken by restart index.
    """
    if cfg is None:
        cfg = OptimizerConfig()
    d = c.din
    if d > DIN_GUARD:
        raise ValidationError(f"input dimension {d} exceeds the dense-solver guard {DIN_GUARD}")
    kstack = c.kraus_stack()
    starts = [np.eye(d, dtype=complex) / np.sqrt(d)]
    for s in splitmix64_stream(cfg.seed, cfg.restarts - 1):
        rng = np.random.default_rng(s)
        starts.append((rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
                      / np.sqrt(2.0))

    workers = os.environ.get("QCAP_THREADS")
    max_workers = max(1, int(workers)) if workers else min(4, len(starts))
    if max_workers == 1 or len(starts) == 1:
        results = [_run_restart(kstack, g0, cfg) for g0 in starts]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(lambda g0: _run_restart(kstack, g0, cfg), starts))

    best_i = max(range(len(results)), key=lambda i: (results[i][0], -i))
    f, g, iters, converged = results[best_i]
    total_iters = sum(r[2] for r in results)
    rho = _rho_from_g(g)
    state = QuantumState((rho + rho.conj().T) / 2, single_system(d, "A"))
    return OptimizationResult(best_value=f, best_state=state,
                              iterations_used=total_iters, converged=converged)


def certify_zero_q1(c: KrausChannel, cfg: OptimizerConfig | None = None,
                    tol: float = 1e-6) -> tuple[bool, float]:
    """Numerical evidence that Q1(c) = 0: best found value is at most tol.

    This is a certification over a non-convex landscape, not a proof; the
    zero-capacity claims it supports rest on structural arguments (symmetry
    or the PPT criterion), which this routine does not establish.
    """
    res = maximize_coherent_information(c, cfg)
    return res.best_value <= tol, res.best_value
