"""Invariant suites runnable outside pytest (backs the ``qcap selftest`` command).

Each suite returns a list of (check name, passed, detail) triples so failures
are nameable from the command line.  The asymptotic results that cannot be
reproduced at desk scale are replaced by these structural invariants.
"""

from __future__ import annotations

import numpy as np

from .channels import (
    KrausChannel,
    choi_matrix,
    environment_state,
    erasure_channel,
    flagged_mixture,
    horodecki_channel_4,
    identity_channel,
    is_ppt,
    output_state,
    switch_channel,
)
from .constructions import paper_ensemble_h4, verify_halving_identity
from .information import Ensemble, conditional_mutual_information, von_neumann_entropy
from .linops import (
    QuantumState,
    SubsystemShape,
    partial_trace,
    purify,
    single_system,
    tensor_product,
)
from .optimizer import splitmix64_stream

Check = tuple[str, bool, str]


def _random_density(rng, d: int) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    return m / m.trace().real


def _random_pure(rng, d: int) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def _repo_channels(horodecki_factory) -> list[tuple[str, KrausChannel]]:
    nh = horodecki_factory()
    ae = erasure_channel(4, 0.5)
    return [
        ("identity(2)", identity_channel(2)),
        ("erasure(2,0.25)", erasure_channel(2, 0.25)),
        ("erasure(4,0.5)", ae),
        ("horodecki4", nh),
        ("flagged_mixture(h4,erasure,0.3)", flagged_mixture(nh, ae, 0.3)),
        ("switch(h4,erasure)", switch_channel(nh, ae)),
    ]


def suite_entropy_axioms(seed: int = 11) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = []
    for trial in range(5):
        d1, d2 = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        a = _random_density(rng, d1)
        b = _random_density(rng, d2)
        sa = QuantumState(a, single_system(d1))
        sb = QuantumState(b, single_system(d2, "B"))
        ha, hb = von_neumann_entropy(sa), von_neumann_entropy(sb)
        checks.append((f"entropy range trial {trial}",
                       -1e-12 <= ha <= np.log2(d1) + 1e-9, f"H={ha}"))
        hab = von_neumann_entropy(QuantumState(
            tensor_product(a, b), SubsystemShape((d1, d2), ("A", "B"))))
        checks.append((f"entropy additivity trial {trial}",
                       abs(hab - ha - hb) <= 1e-9, f"|H(ab)-H(a)-H(b)|={abs(hab - ha - hb)}"))
        # unitary invariance via a random unitary from QR
        g = rng.standard_normal((d1, d1)) + 1j * rng.standard_normal((d1, d1))
        u, _ = np.linalg.qr(g)
        hu = von_neumann_entropy(QuantumState(u @ a @ u.conj().T, single_system(d1)))
        checks.append((f"entropy unitary invariance trial {trial}",
                       abs(hu - ha) <= 1e-9, f"diff={abs(hu - ha)}"))
    return checks


def suite_purity_law(horodecki_factory=horodecki_channel_4, seed: int = 12) -> list[Check]:
    """H(output) = H(environment) for every pure input, on every repo channel."""
    rng = np.random.default_rng(seed)
    checks = []
    for name, c in _repo_channels(horodecki_factory):
        worst = 0.0
        for _ in range(5):
            v = _random_pure(rng, c.din)
            s = QuantumState(np.outer(v, v.conj()), single_system(c.din))
            hb = von_neumann_entropy(output_state(c, s))
            he = von_neumann_entropy(environment_state(c, s))
            worst = max(worst, abs(hb - he))
        checks.append((f"purity law {name}", worst <= 1e-9, f"max |H(B)-H(E)|={worst:.2e}"))
    return checks


def suite_kraus_completeness(horodecki_factory=horodecki_channel_4) -> list[Check]:
    checks = []
    for name, c in _repo_channels(horodecki_factory):
        acc = sum(k.conj().T @ k for k in c.kraus)
        dev = float(np.max(np.abs(acc - np.eye(c.din))))
        checks.append((f"completeness {name}", dev <= 1e-10, f"max dev={dev:.2e}"))
    return checks


def suite_purification_roundtrip(seed: int = 13) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = []
    for rank in range(1, 5):
        d = 4
        g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
        m = g @ g.conj().T
        m /= m.trace().real
        s = QuantumState(m, single_system(d))
        p = purify(s)
        back = partial_trace(p.density_matrix(), {"A"})
        dev = float(np.max(np.abs(back.matrix - s.matrix)))
        ref_dim = p.shape.dims[-1]
        checks.append((f"purification round trip rank {rank}",
                       dev <= 1e-9 and ref_dim == rank,
                       f"dev={dev:.2e} ref_dim={ref_dim}"))
    return checks


def suite_strong_subadditivity(seed: int = 14, trials: int = 100) -> list[Check]:
    rng = np.random.default_rng(seed)
    worst = np.inf
    shape = SubsystemShape((2, 2, 2), ("X", "B", "C"))
    for _ in range(trials):
        v = _random_pure(rng, 8)
        s = QuantumState(np.outer(v, v.conj()), shape)
        worst = min(worst, conditional_mutual_information(s, {"X"}, {"B"}, {"C"}))
    return [("strong subadditivity on random 3-qubit pure states",
             worst >= -1e-9, f"min I(X;B|C)={worst:.2e} over {trials} trials")]


def suite_erasure_complement_spectrum(seed: int = 15) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = []
    for p in (0.2, 0.5, 0.7):
        d = 3
        c = erasure_channel(d, p)
        cc = erasure_channel(d, 1.0 - p)
        worst = 0.0
        for _ in range(5):
            s = QuantumState(_random_density(rng, d), single_system(d))
            we = np.linalg.eigvalsh(environment_state(c, s).matrix)
            wb = np.linalg.eigvalsh(output_state(cc, s).matrix)
            worst = max(worst, float(np.max(np.abs(np.sort(we) - np.sort(wb)))))
        checks.append((f"erasure complement spectrum p={p}",
                       worst <= 1e-9, f"max spectral diff={worst:.2e}"))
    return checks


def _random_channel(rng, din: int, dout: int, n_kraus: int) -> KrausChannel:
    """Random channel from a Haar-ish isometry (QR of a Gaussian block matrix)."""
    g = rng.standard_normal((dout * n_kraus, din)) + 1j * rng.standard_normal((dout * n_kraus, din))
    v, _ = np.linalg.qr(g)
    view = v.reshape(dout, n_kraus, din)
    return KrausChannel(tuple(view[:, k, :] for k in range(n_kraus)))


def _random_ensemble(rng, d: int) -> Ensemble:
    p = rng.uniform(0.2, 0.8)
    states = []
    for _ in range(2):
        g = rng.standard_normal((d, 2)) + 1j * rng.standard_normal((d, 2))
        m = g @ g.conj().T
        states.append(QuantumState(m / m.trace().real, single_system(d)))
    return Ensemble((p, 1.0 - p), tuple(states))


def suite_halving_identity(horodecki_factory=horodecki_channel_4, seed: int = 2009) -> list[Check]:
    checks = []
    rep = verify_halving_identity(horodecki_factory(), paper_ensemble_h4())
    checks.append(("halving identity, 4-dim instance",
                   rep.abs_diff <= 1e-9 and rep.lhs > 0.01,
                   f"lhs={rep.lhs!r} rhs={rep.rhs!r} |lhs-rhs/2|={rep.abs_diff:.2e}"))
    for i, s in enumerate(splitmix64_stream(seed, 5)):
        rng = np.random.default_rng(s)
        c = _random_channel(rng, 2, 2, 3)
        e = _random_ensemble(rng, 2)
        r = verify_halving_identity(c, e)
        checks.append((f"halving identity, random instance {i}",
                       r.abs_diff <= 1e-9,
                       f"lhs={r.lhs:.9f} rhs/2={r.rhs / 2:.9f} diff={r.abs_diff:.2e}"))
    return checks


def suite_ppt(horodecki_factory=horodecki_channel_4) -> list[Check]:
    ok, wmin = is_ppt(choi_matrix(horodecki_factory()), {"in"})
    npt_ok, npt_w = is_ppt(choi_matrix(identity_channel(2)), {"in"})
    return [
        ("horodecki4 Choi matrix is PPT", ok, f"min PT eigenvalue {wmin:.3e}"),
        ("identity qubit Choi matrix is NPT with eigenvalue -1/2",
         (not npt_ok) and abs(npt_w + 0.5) <= 1e-10, f"min PT eigenvalue {npt_w:.6f}"),
    ]


ALL_SUITES = (
    ("entropy-axioms", suite_entropy_axioms),
    ("purity-law", suite_purity_law),
    ("kraus-completeness", suite_kraus_completeness),
    ("purification-roundtrip", suite_purification_roundtrip),
    ("strong-subadditivity", suite_strong_subadditivity),
    ("erasure-complement-spectrum", suite_erasure_complement_spectrum),
    ("halving-identity", suite_halving_identity),
    ("ppt-criterion", suite_ppt),
)


def run_selftest(horodecki_factory=horodecki_channel_4):
    """Run every suite; returns {suite name: [(check, passed, detail), ...]}."""
    results = {}
    for name, fn in ALL_SUITES:
        try:
            if fn in (suite_purity_law, suite_kraus_completeness, suite_halving_identity, suite_ppt):
                results[name] = fn(horodecki_factory=horodecki_factory)
            else:
                results[name] = fn()
        except Exception as exc:  # a crashed suite is a failed suite, not a crash
            results[name] = [(f"{name} raised", False, f"{type(exc).__name__}: {exc}")]
    return results
