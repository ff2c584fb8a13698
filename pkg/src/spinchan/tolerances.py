"""Central table of numerical tolerances and size caps.

Every module takes its defaults from here so that a tolerance is never
hard-coded twice.
"""

# Matrix predicates / validation
HERMITIAN_TOL = 1e-10        # max-abs symmetry residual admitted as Hermitian
UNITARY_TOL = 1e-10          # max-abs residual of U^dag U - I
PSD_EIG_FLOOR = -1e-10       # most negative eigenvalue admitted as PSD
TRACE_TOL = 1e-10            # |tr(rho) - 1| admitted for density matrices
UNIT_NORM_TOL = 1e-12        # | ||psi|| - 1 | admitted for pure states
PROB_SUM_TOL = 1e-12         # probability vectors must sum to 1 within this

# Eigensolver (cyclic Jacobi in the compiled lane)
JACOBI_MAX_SWEEPS = 100
JACOBI_OFFDIAG_TOL = 1e-14   # off-diagonal Frobenius norm, relative to ||A||_F

# Entropy
ENTROPY_CLIP_FLOOR = -1e-12  # eigenvalues in [floor, 0) are clipped to 0

# Channel checks
KRAUS_COMPLETENESS_TOL = 1e-10   # sum K^dag K = I and sum K K^dag = I
CHOI_PSD_TOL = 1e-10
COVARIANCE_GATE_TOL = 1e-8       # residual below which the capacity shortcut applies

# Optimizer defaults
DEFAULT_RESTARTS = 64
DEFAULT_SIMPLEX_TOL = 1e-10      # convergence: objective span of the simplex
DEFAULT_SEED = 42

# Size caps
MAX_DIM = 64                 # dense linear algebra cap
MAX_OPT_DIM = 16             # optimizer cap (covers 4 (x) 4 product channels)
MAX_CHOI_DIM = 8
MAX_TD_DIM = 8               # transpose-depolarizing builder cap
