"""Numpy implementations of the hot kernels.

Import-time fallback for :mod:`spinchan._core_cy`; same call signatures,
LAPACK instead of the compiled cyclic-Jacobi sweep.
"""

import numpy as np

from .errors import InvalidState, NoConvergence
from .tolerances import ENTROPY_CLIP_FLOOR

BACKEND = "python"


def eigvalsh(a):
    """Ascending eigenvalues of a Hermitian matrix."""
    try:
        return np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from None


def eigh(a):
    """Ascending eigenvalues and unitary eigenvector matrix (columns)."""
    try:
        vals, vecs = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from None
    return vals, vecs


def output_state(kraus, psi):
    """Channel output sum_i (K_i psi)(K_i psi)^dag for a pure input."""
    v = kraus @ psi
    return np.einsum("mi,mj->ij", v, v.conj())


def output_eigvals(kraus, psi):
    """Ascending spectrum of the channel output for a pure input."""
    return eigvalsh(output_state(kraus, psi))


def entropy_from_eigvals(vals):
    """- sum lam ln(lam), clipping eigensolver noise in [clip floor, 0)."""
    if vals[0] < ENTROPY_CLIP_FLOOR:
        raise InvalidState(f"eigenvalue {vals[0]:.3e} below clip floor")
    pos = vals[vals > 0.0]
    return float(-(pos * np.log(pos)).sum())


def output_entropy(kraus, psi):
    """Output von Neumann entropy (nats) of a pure input; the optimizer objective."""
    return entropy_from_eigvals(output_eigvals(kraus, psi))
