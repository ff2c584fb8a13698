"""Dense complex linear algebra for channel computations (dimensions <= 64).

Hermitian eigendecomposition, SVD, Kronecker products and unitary
exponentials, plus the matrix predicates the rest of the library validates
with. Eigenvalues are always returned ascending; ties keep solver order.
"""

from typing import NamedTuple, Optional

import numpy as np

from . import kernels
from .errors import NoConvergence, NotHermitian, SizeCap
from .tolerances import HERMITIAN_TOL, MAX_DIM, PSD_EIG_FLOOR, UNITARY_TOL


class Spectrum(NamedTuple):
    """Eigenvalues (ascending) and, optionally, the eigenvector matrix."""

    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None


def as_complex_matrix(a, name="matrix"):
    """Coerce to a finite 2-d complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-d, got shape {m.shape}")
    if not np.isfinite(m.view(np.float64)).all():
        raise ValueError(f"{name} contains NaN/Inf entries")
    return m


def hermitian_residual(a):
    """Max-abs deviation of a from its own adjoint."""
    return float(np.abs(a - a.conj().T).max())


def is_hermitian(a, tol=HERMITIAN_TOL):
    a = as_complex_matrix(a)
    return a.shape[0] == a.shape[1] and hermitian_residual(a) <= tol


def is_unitary(a, tol=UNITARY_TOL):
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    return float(np.abs(a.conj().T @ a - np.eye(a.shape[0])).max()) <= tol


def is_psd(a, tol=-PSD_EIG_FLOOR):
    """PSD within an eigenvalue floor; implies the Hermitian check."""
    if not is_hermitian(a, tol):
        return False
    return float(kernels.eigvalsh(a)[0]) >= -tol


def hermitian_eigen(a, want_vectors=False):
    """Eigendecomposition of a Hermitian matrix.

    Returns a :class:`Spectrum` with ascending eigenvalues; when
    ``want_vectors`` the columns of ``eigenvectors`` are orthonormal and
    ``a = Q diag(vals) Q^dag`` up to the solver tolerance.

    Raises NotHermitian if the symmetry residual exceeds the tolerance,
    SizeCap above 64, NoConvergence if the solver hits its iteration cap.
    """
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise NotHermitian(f"matrix is not square: {a.shape}")
    if a.shape[0] > MAX_DIM:
        raise SizeCap(f"dimension {a.shape[0]} exceeds cap {MAX_DIM}")
    res = hermitian_residual(a)
    if res > HERMITIAN_TOL:
        raise NotHermitian(f"symmetry residual {res:.3e} exceeds {HERMITIAN_TOL}")
    if want_vectors:
        vals, vecs = kernels.eigh(a)
        return Spectrum(vals, vecs)
    return Spectrum(kernels.eigvalsh(a), None)


def svd(a):
    """Singular value decomposition ``a = U diag(s) V^dag``.

    Singular values are nonnegative descending. Note the return convention:
    the third factor is V itself, not its adjoint.
    """
    a = as_complex_matrix(a)
    if max(a.shape) > MAX_DIM:
        raise SizeCap(f"dimensions {a.shape} exceed cap {MAX_DIM}")
    try:
        u, s, vh = np.linalg.svd(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from None
    return u, s, vh.conj().T


def kron(a, b):
    """Kronecker product; the left factor owns the slow (block) index."""
    a = as_complex_matrix(a, "a")
    b = as_complex_matrix(b, "b")
    if a.shape[0] * b.shape[0] > MAX_DIM or a.shape[1] * b.shape[1] > MAX_DIM:
        raise SizeCap("Kronecker result exceeds the 64 x 64 cap")
    return np.kron(a, b)


def expi_hermitian(h, theta):
    """Unitary exp(i theta h) for Hermitian h, via its eigensystem."""
    vals, vecs = hermitian_eigen(h, want_vectors=True)
    phases = np.exp(1j * theta * vals)
    return (vecs * phases) @ vecs.conj().T
