import numpy as np
import pytest

from qcap.channels import (
    erasure_channel,
    extend_and_apply,
    horodecki_channel_4,
    identity_channel,
    output_state,
)
from qcap.constructions import paper_ensemble_h4, superactivation_input
from qcap.information import (
    Ensemble,
    assisted_rate_lower_bound,
    coherent_information,
    conditional_mutual_information,
    entropy_of_spectrum,
    holevo_information,
    max_entropy,
    private_information_value,
    shannon_entropy,
    von_neumann_entropy,
)
from qcap.linops import LabelError, QuantumState, SubsystemShape, purify

PRIVATE_INFO_H4 = 0.021339915649840613


def random_state(d, seed, labels=None):
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    m /= m.trace()
    sh = SubsystemShape((d,), labels or ("A",))
    return QuantumState(m, sh)


def test_entropy_of_pure_and_mixed_states():
    sh = SubsystemShape((2,), ("A",))
    pure = QuantumState(np.diag([1.0, 0.0]).astype(complex), sh)
    mixed = QuantumState(np.eye(2, dtype=complex) / 2, sh)
    assert von_neumann_entropy(pure) == pytest.approx(0.0, abs=1e-12)
    assert von_neumann_entropy(mixed) == pytest.approx(1.0, abs=1e-12)


def test_entropy_ignores_tiny_negative_eigenvalues():
    assert entropy_of_spectrum(np.array([1.0 + 5e-11, -5e-11])) == pytest.approx(0.0, abs=1e-9)


def test_shannon_and_max_entropy():
    assert shannon_entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-12)
    assert max_entropy(6) == pytest.approx(np.log2(6), abs=1e-12)


def test_coherent_information_of_identity_is_input_entropy():
    s = random_state(3, seed=21)
    ic = coherent_information(identity_channel(3), s)
    assert ic == pytest.approx(von_neumann_entropy(s), abs=1e-10)


def test_purity_law_output_and_environment_entropies_agree():
    c = horodecki_channel_4()
    rng = np.random.default_rng(22)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    v /= np.linalg.norm(v)
    s = QuantumState(np.outer(v, v.conj()), SubsystemShape((4,), ("A",)))
    assert coherent_information(c, s) == pytest.approx(0.0, abs=1e-10)


def test_coherent_information_agrees_with_purified_picture():
    # the joint (ref, B, E) state is pure, so H(E) = H(ref, B) and
    # I_c = H(B) - H(ref, B)
    from qcap.linops import partial_trace

    c = erasure_channel(3, 0.5)
    rho = random_state(3, seed=23)
    joint = extend_and_apply(c, purify(rho).density_matrix(), "A")
    h_b = von_neumann_entropy(partial_trace(joint, ("B",)))
    h_rb = von_neumann_entropy(partial_trace(joint, ("ref", "B")))
    assert h_b - h_rb == pytest.approx(coherent_information(c, rho), abs=1e-9)
    assert coherent_information(c, rho) == pytest.approx(0.0, abs=1e-9)


def test_holevo_information_of_classical_ensemble():
    sh = SubsystemShape((2,), ("A",))
    e = Ensemble(
        probabilities=(0.5, 0.5),
        states=(QuantumState(np.diag([1.0, 0.0]).astype(complex), sh),
                QuantumState(np.diag([0.0, 1.0]).astype(complex), sh)),
    )
    chi = holevo_information(e, lambda rho: rho)
    assert chi == pytest.approx(1.0, abs=1e-12)


def test_private_information_of_the_flagship_instance():
    val = private_information_value(horodecki_channel_4(), paper_ensemble_h4())
    assert val == pytest.approx(PRIVATE_INFO_H4, abs=1e-12)
    # the value equals 1 - h2(q) for q = 2 - sqrt(2)
    q = 2.0 - np.sqrt(2.0)
    h2 = -q * np.log2(q) - (1 - q) * np.log2(1 - q)
    assert val == pytest.approx(1.0 - h2, abs=1e-12)


def test_conditional_mutual_information_reduces_to_mutual_information():
    rng = np.random.default_rng(24)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = g @ g.conj().T
    m /= m.trace()
    s = QuantumState(m, SubsystemShape((2, 2), ("X", "B")))
    mi = conditional_mutual_information(s, ("X",), ("B",), ())
    assert mi >= -1e-10


def test_assisted_rate_requires_expected_labels():
    c = horodecki_channel_4()
    s = random_state(4, seed=25, labels=("A",))
    with pytest.raises(LabelError):
        assisted_rate_lower_bound(c, s)


def test_assisted_rate_matches_half_private_value():
    psi, _ = superactivation_input(paper_ensemble_h4())
    rate = assisted_rate_lower_bound(horodecki_channel_4(), psi.density_matrix())
    assert rate == pytest.approx(PRIVATE_INFO_H4 / 2, abs=1e-9)


def test_output_state_labels():
    out = output_state(identity_channel(2), random_state(2, seed=26))
    assert out.shape.labels == ("B",)
