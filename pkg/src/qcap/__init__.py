"""qcap: numerical toolkit for quantum channel capacities.

Represents finite-dimensional channels in Kraus form and computes coherent
information, private information values and conditional-mutual-information
rates, reproducing at desk scale the superactivation of two zero-capacity
channels, the nonconvexity of quantum capacity, and the gap between the
hashing rate and the capacity.
"""

from .channels import (
    KrausChannel,
    choi_matrix,
    environment_state,
    erasure_channel,
    extend_and_apply,
    flagged_mixture,
    horodecki_channel_4,
    identity_channel,
    is_ppt,
    output_state,
    stinespring,
    switch_channel,
    tensor,
)
from .constructions import (
    gap_analysis,
    nonconvexity_analysis,
    paper_ensemble_h4,
    rho_ac_symmetric,
    superactivation_input,
    verify_halving_identity,
)
from .information import (
    Ensemble,
    assisted_rate_lower_bound,
    coherent_information,
    conditional_mutual_information,
    holevo_information,
    private_information_value,
    von_neumann_entropy,
)
from .linops import (
    PureStateVector,
    QuantumState,
    SubsystemShape,
    hermitian_eigenvalues,
    partial_trace,
    partial_transpose,
    purify,
    tensor_product,
)
from .optimizer import OptimizerConfig, certify_zero_q1, maximize_coherent_information

__version__ = "0.1.0"

__all__ = [
    "Ensemble",
    "KrausChannel",
    "OptimizerConfig",
    "PureStateVector",
    "QuantumState",
    "SubsystemShape",
    "assisted_rate_lower_bound",
    "certify_zero_q1",
    "choi_matrix",
    "coherent_information",
    "conditional_mutual_information",
    "environment_state",
    "erasure_channel",
    "extend_and_apply",
    "flagged_mixture",
    "gap_analysis",
    "hermitian_eigenvalues",
    "holevo_information",
    "horodecki_channel_4",
    "identity_channel",
    "is_ppt",
    "maximize_coherent_information",
    "nonconvexity_analysis",
    "output_state",
    "paper_ensemble_h4",
    "partial_trace",
    "partial_transpose",
    "private_information_value",
    "purify",
    "rho_ac_symmetric",
    "stinespring",
    "superactivation_input",
    "switch_channel",
    "tensor",
    "tensor_product",
    "verify_halving_identity",
    "von_neumann_entropy",
]
