"""Channel constructions in Kraus form and their validity checks.

Builders cover the rotationally invariant spin-1/2 and spin-1 channels and
the transpose-depolarizing family; operations cover application to states
and operators, tensor products, the Choi matrix, covariance residuals and
the Bloch parametrization of qubit states.
"""

import json

import numpy as np

from . import serialize
from .errors import (
    DimensionMismatch,
    DimensionOutOfRange,
    InvalidBasis,
    InvalidState,
    NormExceeded,
    SizeCap,
)
from .linalg import as_complex_matrix, expi_hermitian, hermitian_residual, kron
from . import kernels
from .tolerances import (
    DEFAULT_SEED,
    HERMITIAN_TOL,
    KRAUS_COMPLETENESS_TOL,
    MAX_CHOI_DIM,
    MAX_DIM,
    MAX_TD_DIM,
    PSD_EIG_FLOOR,
    TRACE_TOL,
    UNIT_NORM_TOL,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# spin-1 operators in the magnetic (weight) basis, ordered m = +1, 0, -1
_SPIN1_MAGNETIC = (
    np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.complex128) / np.sqrt(2.0),
    np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=np.complex128) / np.sqrt(2.0),
    np.diag([1.0, 0.0, -1.0]).astype(np.complex128),
)

# spin-1 operators acting on the components of a real 3-vector
_SPIN1_CARTESIAN = (
    np.array([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]], dtype=np.complex128),
    np.array([[0, 0, 1j], [0, 0, 0], [-1j, 0, 0]], dtype=np.complex128),
    np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=np.complex128),
)

# unitary mapping the magnetic representation onto the cartesian one
BASIS_CHANGE_V = np.array(
    [
        [-1 / np.sqrt(2.0), 0, 1 / np.sqrt(2.0)],
        [-1j / np.sqrt(2.0), 0, -1j / np.sqrt(2.0)],
        [0, 1, 0],
    ],
    dtype=np.complex128,
)


def spin_generators(s, basis="magnetic"):
    """The three spin matrices for spin s in {"half", "one"}.

    ``basis="cartesian"`` is only defined for spin one, where the matrices
    generate rotations of real 3-vectors; spin one defaults can also be
    requested in the magnetic (weight) basis.
    """
    if s == "half":
        if basis != "magnetic":
            raise InvalidBasis(f"spin half has no {basis!r} representation")
        return tuple(p / 2.0 for p in PAULIS)
    if s == "one":
        if basis == "magnetic":
            return _SPIN1_MAGNETIC
        if basis == "cartesian":
            return _SPIN1_CARTESIAN
        raise InvalidBasis(f"unknown basis {basis!r}")
    raise InvalidBasis(f"unknown spin {s!r}; expected 'half' or 'one'")


class KrausChannel:
    """A channel as a finite list of d x d Kraus operators.

    Immutable after construction. ``generators``, when present, are the
    rotation generators the channel commutes with (used by the covariance
    check).
    """

    def __init__(self, kraus, label="", generators=None, validate=True):
        kraus = np.ascontiguousarray(kraus, dtype=np.complex128)
        if kraus.ndim != 3 or kraus.shape[1] != kraus.shape[2]:
            raise ValueError(f"kraus must be a stack of square matrices, got {kraus.shape}")
        if kraus.shape[1] > MAX_DIM:
            raise SizeCap(f"dimension {kraus.shape[1]} exceeds cap {MAX_DIM}")
        self.kraus = kraus
        self.dim = int(kraus.shape[1])
        self.label = label
        self.generators = None if generators is None else tuple(
            np.asarray(g, dtype=np.complex128) for g in generators
        )
        if validate:
            res = self.completeness_residuals()
            if max(res) > KRAUS_COMPLETENESS_TOL:
                raise ValueError(
                    f"Kraus set is not trace-preserving/bistochastic: "
                    f"residuals {res[0]:.3e}, {res[1]:.3e}"
                )
        self.kraus.setflags(write=False)

    def completeness_residuals(self):
        """(trace-preserving, unital) residuals: sum K^dag K and sum K K^dag vs I."""
        eye = np.eye(self.dim)
        tp = np.einsum("kij,kil->jl", self.kraus.conj(), self.kraus)
        un = np.einsum("kij,klj->il", self.kraus, self.kraus.conj())
        return (float(np.abs(tp - eye).max()), float(np.abs(un - eye).max()))

    def __repr__(self):
        return f"KrausChannel(label={self.label!r}, dim={self.dim}, n_kraus={len(self.kraus)})"


def build_isotropic(s, basis=None):
    """The isotropic spin channel: rho -> sum_k S_k rho S_k / (s(s+1)).

    Spin one defaults to the cartesian representation, in which the channel
    acts as the d=3 transpose-depolarizing map entrywise; the magnetic
    variant is unitarily equivalent to it.
    """
    if s == "half":
        basis = basis or "magnetic"
        gens = spin_generators("half", basis)
        norm = np.sqrt(0.5 * 1.5)
        label = "phi-half"
    elif s == "one":
        basis = basis or "cartesian"
        gens = spin_generators("one", basis)
        norm = np.sqrt(2.0)
        label = "phi-one" if basis == "cartesian" else "phi-one-magnetic"
    else:
        raise InvalidBasis(f"unknown spin {s!r}")
    kraus = np.stack([g / norm for g in gens])
    return KrausChannel(kraus, label=label, generators=gens)


def antisymmetric_unit(i, j, d):
    """B_(ij) = |j><i| - |i><j| on dimension d."""
    m = np.zeros((d, d), dtype=np.complex128)
    m[j, i] = 1.0
    m[i, j] -= 1.0
    return m


def build_transpose_depolarizing(d):
    """The channel mu -> (I tr(mu) - mu^T) / (d - 1) in Kraus form.

    Kraus set {B_(ij)/sqrt(d-1) : i < j}; the i > j half of the
    antisymmetric pairs is redundant (B_(ji) = -B_(ij)) and its weight is
    absorbed, which is what makes the i < j set trace-preserving.
    """
    if not 2 <= d <= MAX_TD_DIM:
        raise DimensionOutOfRange(f"d={d} outside [2, {MAX_TD_DIM}]")
    w = 1.0 / np.sqrt(d - 1.0)
    kraus = np.stack([w * antisymmetric_unit(i, j, d)
                      for i in range(d) for j in range(i + 1, d)])
    # at d=3 the channel coincides with the cartesian spin-1 channel and
    # commutes with the rotations that group generates
    gens = spin_generators("one", "cartesian") if d == 3 else None
    return KrausChannel(kraus, label=f"transpose-depolarizing-d{d}", generators=gens)


def transpose_depolarizing_action(mu):
    """Direct evaluation (I tr(mu) - mu^T)/(d-1); the defining formula."""
    mu = as_complex_matrix(mu, "mu")
    d = mu.shape[0]
    return (np.eye(d) * np.trace(mu) - mu.T) / (d - 1.0)


# --- states ---------------------------------------------------------------

def validate_density_matrix(rho, name="rho"):
    """Raise InvalidState unless rho is Hermitian, PSD and unit trace."""
    rho = as_complex_matrix(rho, name)
    if rho.shape[0] != rho.shape[1]:
        raise InvalidState(f"{name} is not square: {rho.shape}")
    res = hermitian_residual(rho)
    if res > HERMITIAN_TOL:
        raise InvalidState(f"{name} not Hermitian (residual {res:.3e})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidState(f"{name} trace {tr!r} differs from 1")
    lo = float(kernels.eigvalsh(rho)[0])
    if lo < PSD_EIG_FLOOR:
        raise InvalidState(f"{name} has eigenvalue {lo:.3e} below the PSD floor")
    return rho


def validate_pure_state(psi, name="psi"):
    """Raise InvalidState unless psi is a finite unit vector."""
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.ndim != 1:
        raise InvalidState(f"{name} must be a vector, got shape {psi.shape}")
    if not np.isfinite(psi.view(np.float64)).all():
        raise InvalidState(f"{name} contains NaN/Inf")
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1.0) > UNIT_NORM_TOL:
        raise InvalidState(f"{name} norm {nrm!r} differs from 1")
    return psi


def pure_density(psi):
    psi = validate_pure_state(psi)
    return np.outer(psi, psi.conj())


def random_pure_state(d, rng):
    """Haar-distributed unit vector (normalized complex Gaussian)."""
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_unitary(d, rng):
    """Haar-ish unitary from QR orthonormalization of a Gaussian matrix."""
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(m)
    phases = np.diagonal(r).copy()
    phases = phases / np.abs(phases)
    return q * phases


# --- channel action -------------------------------------------------------

def apply(ch, rho):
    """Channel output sum_k K rho K^dag; validates input and output states."""
    rho = validate_density_matrix(rho)
    if rho.shape[0] != ch.dim:
        raise DimensionMismatch(f"state dim {rho.shape[0]} != channel dim {ch.dim}")
    out = apply_to_operator(ch, rho)
    out = 0.5 * (out + out.conj().T)  # scrub roundoff asymmetry
    tr = np.trace(out).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidState(f"channel output trace {tr!r} differs from 1")
    return out


def apply_to_operator(ch, m):
    """Linear extension of the channel to arbitrary matrices; no validation."""
    m = as_complex_matrix(m, "operator")
    if m.shape != (ch.dim, ch.dim):
        raise DimensionMismatch(f"operator shape {m.shape} != ({ch.dim}, {ch.dim})")
    return np.einsum("kij,jl,kml->im", ch.kraus, m, ch.kraus.conj())


def tensor(ch1, ch2):
    """Product channel with Kraus set {K_i (x) L_j}."""
    d = ch1.dim * ch2.dim
    if d > MAX_DIM:
        raise SizeCap(f"product dimension {d} exceeds cap {MAX_DIM}")
    kraus = np.stack([kron(k, l) for k in ch1.kraus for l in ch2.kraus])
    label = f"{ch1.label}(x){ch2.label}" if ch1.label or ch2.label else ""
    return KrausChannel(kraus, label=label)


def choi_matrix(ch):
    """J = sum_ij |i><j| (x) Phi(|i><j|); Hermitian with trace d, PSD iff CP."""
    d = ch.dim
    if d > MAX_CHOI_DIM:
        raise SizeCap(f"Choi matrix restricted to dim <= {MAX_CHOI_DIM}")
    j = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for k in range(d):
            e = np.zeros((d, d), dtype=np.complex128)
            e[i, k] = 1.0
            j += np.kron(e, apply_to_operator(ch, e))
    return j


def check_covariance(ch, samples=100, seed=DEFAULT_SEED, generators=None):
    """Max residual of Phi(U rho U^dag) - U Phi(rho) U^dag over random rotations.

    U = exp(i theta n.S) with n uniform on the sphere and theta uniform on
    [0, 2pi); rho ranges over Haar-random pure states. Generators default to
    the ones attached to the channel at build time.
    """
    gens = generators if generators is not None else ch.generators
    if gens is None:
        raise ValueError("channel carries no rotation generators; pass generators=")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        theta = rng.uniform(0.0, 2.0 * np.pi)
        u = expi_hermitian(n[0] * gens[0] + n[1] * gens[1] + n[2] * gens[2], theta)
        rho = pure_density(random_pure_state(ch.dim, rng))
        lhs = apply_to_operator(ch, u @ rho @ u.conj().T)
        rhs = u @ apply_to_operator(ch, rho) @ u.conj().T
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


# --- Bloch parametrization (qubits) ---------------------------------------

def bloch_to_state(b):
    """rho = (I + b.sigma)/2 for a Bloch vector with |b| <= 1."""
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (3,):
        raise DimensionMismatch(f"Bloch vector must have 3 components, got {b.shape}")
    if np.linalg.norm(b) > 1.0 + 1e-12:
        raise NormExceeded(f"|b| = {np.linalg.norm(b)!r} exceeds 1")
    return 0.5 * (np.eye(2) + b[0] * SIGMA_X + b[1] * SIGMA_Y + b[2] * SIGMA_Z)


def state_to_bloch(rho):
    """Components tr(rho sigma_k) of a qubit state."""
    rho = as_complex_matrix(rho)
    if rho.shape != (2, 2):
        raise DimensionMismatch(f"Bloch coordinates need a 2 x 2 state, got {rho.shape}")
    return np.array([np.trace(rho @ s).real for s in PAULIS])


# --- channel-spec files ----------------------------------------------------

def channel_to_dict(ch):
    """Channel-spec dict: {"label", "dim", "kraus": [row-major [re, im] pairs]}."""
    return {
        "label": ch.label,
        "dim": ch.dim,
        "kraus": [serialize.matrix_to_pairs(k) for k in ch.kraus],
    }


def channel_from_dict(data, validate=True):
    d = int(data["dim"])
    kraus = np.stack([serialize.pairs_to_matrix(p, d, d) for p in data["kraus"]])
    return KrausChannel(kraus, label=str(data.get("label", "")), validate=validate)


def save_channel(ch, path):
    with open(path, "w") as fh:
        fh.write(serialize.json_text(channel_to_dict(ch)))


def load_channel(path, validate=True):
    with open(path) as fh:
        return channel_from_dict(json.load(fh), validate=validate)
