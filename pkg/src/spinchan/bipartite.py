"""Bipartite machinery for two uses of a channel.

Schmidt decomposition of pure inputs, the product-channel output assembled
from the Schmidt data, the closed-form 4-eigenvalue spectrum for the qubit
channel, entropy curves over the probability simplex, and the concavity
check that pins the curve's minimum to the simplex vertices.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import kernels
from .channels import build_isotropic, validate_pure_state
from .errors import NotBipartiteSquare, OutOfRange
from .linalg import is_unitary, kron, svd
from .tolerances import PROB_SUM_TOL, UNITARY_TOL


@dataclass(frozen=True)
class SchmidtForm:
    """Schmidt data of a bipartite pure state.

    ``lambdas`` is the probability vector of squared Schmidt coefficients
    (descending); the columns of ``basis1``/``basis2`` are the local bases.
    """

    lambdas: np.ndarray
    basis1: np.ndarray
    basis2: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=np.float64)
        object.__setattr__(self, "lambdas", lam)
        if (lam < -1e-15).any() or abs(lam.sum() - 1.0) > PROB_SUM_TOL:
            raise ValueError("Schmidt vector must be a probability vector")
        if (np.diff(lam) > 1e-12).any():
            raise ValueError("Schmidt vector must be stored descending")
        for name in ("basis1", "basis2"):
            if not is_unitary(getattr(self, name), UNITARY_TOL):
                raise ValueError(f"{name} is not unitary")


def schmidt_decompose(psi):
    """Schmidt decomposition of a pure state on d (x) d.

    The amplitude vector must reshape to a square matrix; the squared
    singular values of that matrix are the Schmidt coefficients.
    """
    psi = validate_pure_state(psi)
    d = math.isqrt(psi.size)
    if d * d != psi.size:
        raise NotBipartiteSquare(f"length {psi.size} is not a perfect square")
    m = psi.reshape(d, d)
    u, s, v = svd(m)
    return SchmidtForm(lambdas=s ** 2, basis1=u, basis2=v.conj())


def assemble_schmidt_state(form):
    """Inverse of :func:`schmidt_decompose`: sum_a sqrt(lam_a) |a;1>|a;2>."""
    d = form.lambdas.size
    psi = np.zeros(d * d, dtype=np.complex128)
    for a in range(d):
        psi += np.sqrt(form.lambdas[a]) * np.kron(form.basis1[:, a], form.basis2[:, a])
    return psi / np.linalg.norm(psi)


def pair_output(ch, lambdas, basis1=None, basis2=None):
    """Output of Phi (x) Phi on the pure input with the given Schmidt data.

    sum_ab sqrt(lam_a lam_b) Phi(|a;1><b;1|) (x) Phi(|a;2><b;2|). Unlike
    :class:`SchmidtForm`, the weights need not be sorted, so curves can sweep
    lambda_1 across [0, 1].
    """
    lam = np.asarray(lambdas, dtype=np.float64)
    d = lam.size
    b1 = np.eye(d, dtype=np.complex128) if basis1 is None else basis1
    b2 = np.eye(d, dtype=np.complex128) if basis2 is None else basis2
    out = np.zeros((d * d, d * d), dtype=np.complex128)
    outs1 = np.empty((d, d, d, d), dtype=np.complex128)
    outs2 = np.empty((d, d, d, d), dtype=np.complex128)
    for a in range(d):
        for b in range(d):
            e1 = np.outer(b1[:, a], b1[:, b].conj())
            e2 = np.outer(b2[:, a], b2[:, b].conj())
            outs1[a, b] = np.einsum("kij,jl,kml->im", ch.kraus, e1, ch.kraus.conj())
            outs2[a, b] = np.einsum("kij,jl,kml->im", ch.kraus, e2, ch.kraus.conj())
    for a in range(d):
        for b in range(d):
            w = np.sqrt(lam[a] * lam[b])
            if w != 0.0:
                out += w * kron(outs1[a, b], outs2[a, b])
    return 0.5 * (out + out.conj().T)


def product_output(ch, form):
    """Channel-pair output for a :class:`SchmidtForm` input."""
    return pair_output(ch, form.lambdas, form.basis1, form.basis2)


def qubit_pair_output_closed_form(lambdas):
    """Closed-form 4 x 4 output of the qubit channel pair, canonical bases.

    Independent of the Kraus-tensor path: diagonal weights
    (4 - 2 lam_a - 2 lam_b)/9 plus the rank-one block
    sqrt(lam_a lam_b)/9 on the doubled indices.
    """
    lam = np.asarray(lambdas, dtype=np.float64)
    m = np.zeros((4, 4), dtype=np.complex128)
    for a in range(2):
        for b in range(2):
            m[2 * a + b, 2 * a + b] += 4.0 - 2.0 * lam[a] - 2.0 * lam[b]
            m[3 * a, 3 * b] += np.sqrt(lam[a] * lam[b])
    return m / 9.0


def analytic_qubit_spectrum(lambda1):
    """The 4 output eigenvalues (2/9, 2/9, 5/18 +- sqrt(9 - 32 l (1-l))/18)."""
    if not 0.0 <= lambda1 <= 1.0:
        raise OutOfRange(f"lambda1 = {lambda1!r} outside [0, 1]")
    g = np.sqrt(9.0 - 32.0 * lambda1 * (1.0 - lambda1))
    return np.array([2.0 / 9.0, 2.0 / 9.0, 5.0 / 18.0 + g / 18.0, 5.0 / 18.0 - g / 18.0])


def eigenvalue_pair(lambda1):
    """The two lambda-dependent eigenvalues (f1 >= f2)."""
    r = analytic_qubit_spectrum(lambda1)
    return float(r[2]), float(r[3])


def eigenvalue_pair_second_derivative(lambda1):
    """d^2 f1 / d lambda1^2 = (16/9) (9 - 32 l (1-l))^(-3/2); f2'' is its negative."""
    return (16.0 / 9.0) * (9.0 - 32.0 * lambda1 * (1.0 - lambda1)) ** -1.5


@dataclass(frozen=True)
class CurvePoint:
    lambda1: float
    eigenvalues: Tuple[float, float, float, float]
    entropy_nats: float


def _entropy(vals):
    vals = np.asarray(vals, dtype=np.float64)
    pos = vals[vals > 0.0]
    return float(-(pos * np.log(pos)).sum())


def curve_entropy(lambda1):
    """Entropy (nats) of the qubit pair output at lambda1, canonical bases."""
    return _entropy(analytic_qubit_spectrum(lambda1))


def entropy_curve(grid=101, basis1=None, basis2=None, channel=None):
    """Entropy of the channel-pair output over a lambda1 grid in [0, 1].

    With canonical bases (default) the qubit spectrum is evaluated in closed
    form; with explicit bases (or a non-default channel) the output is
    diagonalized numerically.
    """
    if grid < 3:
        raise ValueError("grid must have at least 3 points")
    points = []
    analytic = basis1 is None and basis2 is None and channel is None
    if not analytic and channel is None:
        channel = build_isotropic("half")
    for i in range(grid):
        l1 = i / (grid - 1)
        if analytic:
            vals = analytic_qubit_spectrum(l1)
        else:
            sigma = pair_output(channel, np.array([l1, 1.0 - l1]), basis1, basis2)
            vals = kernels.eigvalsh(sigma)
        points.append(CurvePoint(
            lambda1=l1,
            eigenvalues=tuple(float(v) for v in vals),
            entropy_nats=_entropy(vals),
        ))
    return points


@dataclass(frozen=True)
class ConcavityReport:
    min_second_derivative: float
    max_second_derivative: float
    all_negative: bool
    eigenvalue_sum_residual: float      # |f1 + f2 - 10/18| over the grid
    eigenvalue_product_residual: float  # |f1 f2 - (16 + 32 l (1-l))/324|


def concavity_check(grid=101, fd_step=1e-4):
    """Finite-difference concavity of the entropy curve on interior points.

    Uses the analytic spectrum; also verifies the closed forms
    f1 + f2 = 10/18 and f1 f2 = (16 + 32 l (1-l))/324 across the grid.
    """
    if grid < 11:
        raise ValueError("grid must have at least 11 points")
    d2 = []
    sum_res = 0.0
    prod_res = 0.0
    for i in range(grid):
        l1 = i / (grid - 1)
        f1, f2 = eigenvalue_pair(min(max(l1, 0.0), 1.0))
        sum_res = max(sum_res, abs(f1 + f2 - 10.0 / 18.0))
        prod_res = max(prod_res, abs(f1 * f2 - (16.0 + 32.0 * l1 * (1.0 - l1)) / 324.0))
        if fd_step <= l1 <= 1.0 - fd_step:
            d2.append((curve_entropy(l1 + fd_step) - 2.0 * curve_entropy(l1)
                       + curve_entropy(l1 - fd_step)) / fd_step ** 2)
    d2 = np.asarray(d2)
    return ConcavityReport(
        min_second_derivative=float(d2.min()),
        max_second_derivative=float(d2.max()),
        all_negative=bool((d2 < 0.0).all()),
        eigenvalue_sum_residual=float(sum_res),
        eigenvalue_product_residual=float(prod_res),
    )


def curve_csv(points, units="nats"):
    """CSV export: lambda1,r1,r2,r3,r4,entropy_<units>; 17 significant digits."""
    from .serialize import csv_rows

    scale = 1.0 if units == "nats" else 1.0 / np.log(2.0)
    header = ("lambda1", "r1", "r2", "r3", "r4", f"entropy_{units}")
    rows = [(p.lambda1, *p.eigenvalues, p.entropy_nats * scale) for p in points]
    return csv_rows(header, rows)
