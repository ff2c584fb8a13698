"""Exception types raised by the library."""


class SpinChanError(Exception):
    """Base class for all library errors."""


class NotHermitian(SpinChanError):
    """Matrix fails the Hermitian symmetry check."""


class NoConvergence(SpinChanError):
    """Iterative eigensolver / SVD hit its iteration cap."""


class SizeCap(SpinChanError):
    """Requested operation exceeds the supported matrix size."""


class InvalidBasis(SpinChanError):
    """Unsupported (spin, basis) combination."""


class DimensionOutOfRange(SpinChanError):
    """Channel dimension outside the supported range."""


class DimensionMismatch(SpinChanError):
    """Operands have incompatible dimensions."""


class NormExceeded(SpinChanError):
    """Bloch vector longer than 1."""


class InvalidState(SpinChanError):
    """Matrix is not a valid density matrix (or vector not a unit state)."""


class OptimizerStall(SpinChanError):
    """No optimizer restart converged."""


class CovarianceNotVerified(SpinChanError):
    """Covariance gate failed; the capacity shortcut does not apply."""


class NotBipartiteSquare(SpinChanError):
    """Amplitude vector does not reshape to a square d x d matrix."""


class OutOfRange(SpinChanError):
    """Scalar argument outside its admissible interval."""
