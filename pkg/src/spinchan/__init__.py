"""Isotropic quantum spin channels at desk scale.

Kraus constructions for the rotationally invariant spin-1/2 and spin-1
channels and the transpose-depolarizing family, their minimum output
entropies and Holevo capacities, Schmidt-vector entropy curves for two
channel uses, and an executable verification suite for the closed-form
identities and additivity claims these channels satisfy.
"""

from .bipartite import (
    SchmidtForm,
    analytic_qubit_spectrum,
    assemble_schmidt_state,
    concavity_check,
    entropy_curve,
    product_output,
    schmidt_decompose,
)
from .channels import (
    KrausChannel,
    apply,
    apply_to_operator,
    bloch_to_state,
    build_isotropic,
    build_transpose_depolarizing,
    channel_from_dict,
    channel_to_dict,
    check_covariance,
    choi_matrix,
    load_channel,
    save_channel,
    spin_generators,
    state_to_bloch,
    tensor,
)
from .entropy import (
    Ensemble,
    EntropyReport,
    holevo_covariant,
    holevo_ensemble_value,
    min_output_entropy,
    von_neumann_entropy,
)
from .kernels import BACKEND
from .linalg import Spectrum, expi_hermitian, hermitian_eigen, kron, svd
from .verify import CheckResult, run_all

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CheckResult",
    "Ensemble",
    "EntropyReport",
    "KrausChannel",
    "SchmidtForm",
    "Spectrum",
    "analytic_qubit_spectrum",
    "apply",
    "apply_to_operator",
    "assemble_schmidt_state",
    "bloch_to_state",
    "build_isotropic",
    "build_transpose_depolarizing",
    "channel_from_dict",
    "channel_to_dict",
    "check_covariance",
    "choi_matrix",
    "concavity_check",
    "entropy_curve",
    "expi_hermitian",
    "hermitian_eigen",
    "holevo_covariant",
    "holevo_ensemble_value",
    "kron",
    "load_channel",
    "min_output_entropy",
    "product_output",
    "run_all",
    "save_channel",
    "schmidt_decompose",
    "spin_generators",
    "state_to_bloch",
    "svd",
    "tensor",
    "von_neumann_entropy",
    "__version__",
]
