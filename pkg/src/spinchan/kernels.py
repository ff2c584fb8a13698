"""Kernel backend selection.

The compiled extension (:mod:`spinchan._core_cy`) is preferred when it built;
otherwise the numpy lane (:mod:`spinchan._core_py`) is used. Setting the
environment variable ``SPINCHAN_FORCE_PYTHON=1`` before import forces the
numpy lane, which is what ``benchmarks/bench_kernels.py`` uses to compare the
two.

Exposed functions (identical contracts in both lanes):

- ``eigvalsh(a)`` / ``eigh(a)``: ascending Hermitian eigensystem
- ``output_state(kraus, psi)``: channel output for a pure input
- ``output_eigvals(kraus, psi)``: its ascending spectrum
- ``output_entropy(kraus, psi)``: its von Neumann entropy in nats
- ``entropy_from_eigvals(vals)``
"""

import os

from . import _core_py

if os.environ.get("SPINCHAN_FORCE_PYTHON") == "1":
    _impl = _core_py
else:
    try:
        from . import _core_cy as _impl
    except ImportError:
        _impl = _core_py

BACKEND = _impl.BACKEND

eigvalsh = _impl.eigvalsh
eigh = _impl.eigh
output_state = _impl.output_state
output_eigvals = _impl.output_eigvals
output_entropy = _impl.output_entropy
entropy_from_eigvals = _impl.entropy_from_eigvals


def backend_module(name):
    """Return a kernel module by name ("compiled" or "python"); for tests/benchmarks."""
    if name == "python":
        return _core_py
    if name == "compiled":
        from . import _core_cy
        return _core_cy
    raise ValueError(f"unknown backend {name!r}")
