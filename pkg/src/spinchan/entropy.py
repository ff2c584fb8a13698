"""Output entropies and capacities.

Von Neumann entropy, minimum output entropy via seeded multistart simplex
descent over pure states, the covariant capacity shortcut and ensemble
lower bounds on the Holevo capacity.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels, serialize
from .channels import (
    apply,
    check_covariance,
    random_pure_state,
    validate_density_matrix,
    validate_pure_state,
)
from .errors import (
    CovarianceNotVerified,
    DimensionMismatch,
    InvalidState,
    OptimizerStall,
)
from .tolerances import (
    COVARIANCE_GATE_TOL,
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
    DEFAULT_SIMPLEX_TOL,
    MAX_OPT_DIM,
    PROB_SUM_TOL,
)

LN2 = float(np.log(2.0))


def von_neumann_entropy(rho):
    """S(rho) = -tr(rho ln rho) in nats; zero exactly on pure states."""
    rho = validate_density_matrix(rho)
    vals = kernels.eigvalsh(rho)
    return kernels.entropy_from_eigvals(vals)


@dataclass(frozen=True)
class EntropyReport:
    """Result of a minimum-output-entropy search."""

    min_entropy: float          # nats
    argmin: np.ndarray          # pure input achieving it
    restarts: int
    converged_restarts: int
    best_restart_index: int
    objective_evals: int
    seed: int

    def to_dict(self):
        return {
            "min_entropy_nats": self.min_entropy,
            "argmin": serialize.vector_to_pairs(self.argmin),
            "restarts": self.restarts,
            "converged": self.converged_restarts,
            "seed": self.seed,
        }


def _coords_to_state(x, d):
    v = x[:d] + 1j * x[d:]
    nrm = np.linalg.norm(v)
    if nrm < 1e-12:
        return None
    return v / nrm


def _nelder_mead(fun, x0, tol, max_iterations):
    """Simplex descent; converged when the objective span of the simplex <= tol.

    Standard reflection/expansion/contraction/shrink coefficients. Returns
    (best_x, best_f, evals, converged).
    """
    n = x0.size
    step = 0.1
    sim = np.tile(x0, (n + 1, 1))
    for i in range(n):
        sim[i + 1, i] += step
    fval = np.array([fun(v) for v in sim])
    evals = n + 1
    converged = False
    for _ in range(max_iterations):
        order = np.argsort(fval, kind="stable")
        sim = sim[order]
        fval = fval[order]
        if fval[-1] - fval[0] <= tol:
            converged = True
            break
        centroid = sim[:-1].mean(axis=0)
        xr = centroid + (centroid - sim[-1])
        fr = fun(xr)
        evals += 1
        if fr < fval[0]:
            xe = centroid + 2.0 * (centroid - sim[-1])
            fe = fun(xe)
            evals += 1
            if fe < fr:
                sim[-1], fval[-1] = xe, fe
            else:
                sim[-1], fval[-1] = xr, fr
        elif fr < fval[-2]:
            sim[-1], fval[-1] = xr, fr
        else:
            if fr < fval[-1]:
                xc = centroid + 0.5 * (xr - centroid)
            else:
                xc = centroid + 0.5 * (sim[-1] - centroid)
            fc = fun(xc)
            evals += 1
            if fc < min(fr, fval[-1]):
                sim[-1], fval[-1] = xc, fc
            else:
                # shrink toward the best vertex
                for i in range(1, n + 1):
                    sim[i] = sim[0] + 0.5 * (sim[i] - sim[0])
                    fval[i] = fun(sim[i])
                evals += n
    order = np.argsort(fval, kind="stable")
    return sim[order[0]], float(fval[order[0]]), evals, converged


def min_output_entropy(ch, restarts=DEFAULT_RESTARTS, tol=DEFAULT_SIMPLEX_TOL,
                       seed=DEFAULT_SEED, initial_states=None, max_iterations=None):
    """Minimum output entropy over pure inputs, by multistart simplex descent.

    Pure states are parametrized by 2d real coordinates and normalized on
    evaluation, so the search is unconstrained; restart r draws its start
    from the RNG stream (seed, r), with optional explicit ``initial_states``
    used first. Deterministic for a fixed seed; the winner is the lowest
    value with the lowest restart index as tie-break.
    """
    d = ch.dim
    if d > MAX_OPT_DIM:
        raise DimensionMismatch(f"optimizer capped at dim {MAX_OPT_DIM}, got {d}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    kraus = ch.kraus
    n = 2 * d
    if max_iterations is None:
        max_iterations = 400 * n

    def objective(x):
        psi = _coords_to_state(x, d)
        if psi is None:
            return float(np.log(d))
        return kernels.output_entropy(kraus, psi)

    seeds = list(initial_states or [])
    best_val = np.inf
    best_x = None
    best_idx = -1
    evals = 0
    converged_count = 0
    for r in range(restarts):
        if r < len(seeds):
            psi0 = validate_pure_state(np.asarray(seeds[r], dtype=np.complex128))
        else:
            rng = np.random.default_rng([seed, r])
            psi0 = random_pure_state(d, rng)
        x0 = np.concatenate([psi0.real, psi0.imag])
        x, val, ev, conv = _nelder_mead(objective, x0, tol, max_iterations)
        evals += ev
        converged_count += int(conv)
        if conv and val < best_val:
            best_val = val
            best_x = x
            best_idx = r
    if converged_count == 0:
        raise OptimizerStall(f"none of {restarts} restarts converged")
    argmin = _coords_to_state(best_x, d)
    return EntropyReport(
        min_entropy=best_val,
        argmin=argmin,
        restarts=restarts,
        converged_restarts=converged_count,
        best_restart_index=best_idx,
        objective_evals=evals,
        seed=seed,
    )


def holevo_covariant(ch, moe, covariance_samples=100, seed=DEFAULT_SEED):
    """Capacity ln(d) - h for channels passing the covariance gate.

    The shortcut only applies to covariant channels; the gate re-checks the
    covariance residual and refuses otherwise.
    """
    try:
        residual = check_covariance(ch, samples=covariance_samples, seed=seed)
    except ValueError as exc:
        raise CovarianceNotVerified(str(exc)) from None
    if residual >= COVARIANCE_GATE_TOL:
        raise CovarianceNotVerified(
            f"covariance residual {residual:.3e} >= {COVARIANCE_GATE_TOL}"
        )
    return float(np.log(ch.dim)) - moe.min_entropy


@dataclass(frozen=True)
class Ensemble:
    """States with probabilities; input alphabet for a Holevo lower bound."""

    probs: np.ndarray
    states: tuple

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "states", tuple(
            validate_density_matrix(s, name=f"states[{i}]")
            for i, s in enumerate(self.states)
        ))
        if probs.ndim != 1 or len(self.states) != probs.size:
            raise ValueError("probs and states must have matching lengths")
        if (probs < 0).any() or abs(probs.sum() - 1.0) > PROB_SUM_TOL:
            raise InvalidState("probabilities must be nonnegative and sum to 1")
        dims = {s.shape[0] for s in self.states}
        if len(dims) != 1:
            raise DimensionMismatch(f"ensemble states have mixed dimensions {dims}")


def holevo_ensemble_value(ch, ens):
    """S(Phi(avg)) - sum p S(Phi(rho)); a lower bound on the capacity."""
    if ens.states[0].shape[0] != ch.dim:
        raise DimensionMismatch(
            f"ensemble dim {ens.states[0].shape[0]} != channel dim {ch.dim}"
        )
    avg = sum(p * s for p, s in zip(ens.probs, ens.states))
    value = von_neumann_entropy(apply(ch, avg))
    for p, s in zip(ens.probs, ens.states):
        value -= p * von_neumann_entropy(apply(ch, s))
    return float(value)
