# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: cyclic Jacobi eigensolver and the entropy objective.

Same signatures as :mod:`spinchan._core_py`. The eigensolver runs cyclic
Jacobi sweeps on the Hermitian input (100-sweep cap, off-diagonal Frobenius
tolerance relative to ||A||_F), which is unconditionally stable at the
dimensions this library supports.
"""

import numpy as np

cimport cython
from libc.math cimport sqrt, log

from .errors import InvalidState, NoConvergence
from .tolerances import ENTROPY_CLIP_FLOOR, JACOBI_MAX_SWEEPS, JACOBI_OFFDIAG_TOL

BACKEND = "compiled"

cdef double _CLIP_FLOOR = ENTROPY_CLIP_FLOOR
cdef int _MAX_SWEEPS = JACOBI_MAX_SWEEPS
cdef double _OFFDIAG_TOL = JACOBI_OFFDIAG_TOL


cdef inline double _cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef int _jacobi(double complex[:, ::1] a, double complex[:, ::1] q,
                 bint want_q, Py_ssize_t n) nogil:
    """In-place diagonalization; returns 0 on convergence, 1 on sweep cap."""
    cdef Py_ssize_t p, r, k, sweep
    cdef double fro2 = 0.0, off2, absapq, app, aqq, tau, t, c, s
    cdef double complex apq, w, wc, colp, colq

    for p in range(n):
        for r in range(n):
            fro2 += _cabs2(a[p, r])
    cdef double stop2 = _OFFDIAG_TOL * _OFFDIAG_TOL * (fro2 if fro2 > 1.0 else 1.0)

    for sweep in range(_MAX_SWEEPS):
        off2 = 0.0
        for p in range(n - 1):
            for r in range(p + 1, n):
                off2 += 2.0 * _cabs2(a[p, r])
        if off2 <= stop2:
            return 0
        for p in range(n - 1):
            for r in range(p + 1, n):
                apq = a[p, r]
                absapq = sqrt(_cabs2(apq))
                if absapq == 0.0:
                    continue
                w = apq / absapq
                wc = w.conjugate()
                app = a[p, p].real
                aqq = a[r, r].real
                tau = (aqq - app) / (2.0 * absapq)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # columns p, r
                for k in range(n):
                    colp = a[k, p]
                    colq = a[k, r]
                    a[k, p] = c * colp - s * wc * colq
                    a[k, r] = s * w * colp + c * colq
                # rows p, r
                for k in range(n):
                    colp = a[p, k]
                    colq = a[r, k]
                    a[p, k] = c * colp - s * w * colq
                    a[r, k] = s * wc * colp + c * colq
                a[p, p] = a[p, p].real
                a[r, r] = a[r, r].real
                a[p, r] = 0.0
                a[r, p] = 0.0
                if want_q:
                    for k in range(n):
                        colp = q[k, p]
                        colq = q[k, r]
                        q[k, p] = c * colp - s * wc * colq
                        q[k, r] = s * w * colp + c * colq
    # check whether the final sweep already met the tolerance
    off2 = 0.0
    for p in range(n - 1):
        for r in range(p + 1, n):
            off2 += 2.0 * _cabs2(a[p, r])
    return 0 if off2 <= stop2 else 1


def eigvalsh(a):
    """Ascending eigenvalues of a Hermitian matrix."""
    cdef cnp_arr = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = cnp_arr.shape[0]
    cdef double complex[:, ::1] av = cnp_arr
    if _jacobi(av, av, False, n) != 0:
        raise NoConvergence("Jacobi sweep cap reached")
    vals = np.diagonal(cnp_arr).real.copy()
    vals.sort(kind="stable")
    return vals


def eigh(a):
    """Ascending eigenvalues and unitary eigenvector matrix (columns)."""
    cdef cnp_arr = np.array(a, dtype=np.complex128, order="C")
    q = np.eye(cnp_arr.shape[0], dtype=np.complex128)
    cdef Py_ssize_t n = cnp_arr.shape[0]
    cdef double complex[:, ::1] av = cnp_arr
    cdef double complex[:, ::1] qv = q
    if _jacobi(av, qv, True, n) != 0:
        raise NoConvergence("Jacobi sweep cap reached")
    vals = np.diagonal(cnp_arr).real.copy()
    order = np.argsort(vals, kind="stable")
    return vals[order], q[:, order]


cdef void _output_state(const double complex[:, :, ::1] kraus,
                        const double complex[::1] psi,
                        double complex[:, ::1] out, double complex[::1] scratch) nogil:
    cdef Py_ssize_t m = kraus.shape[0]
    cdef Py_ssize_t d = kraus.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double complex acc
    for i in range(d):
        for j in range(d):
            out[i, j] = 0.0
    for k in range(m):
        for i in range(d):
            acc = 0.0
            for j in range(d):
                acc += kraus[k, i, j] * psi[j]
            scratch[i] = acc
        for i in range(d):
            for j in range(d):
                out[i, j] += scratch[i] * scratch[j].conjugate()


def output_state(kraus, psi):
    """Channel output sum_i (K_i psi)(K_i psi)^dag for a pure input."""
    cdef kr = np.ascontiguousarray(kraus, dtype=np.complex128)
    cdef ps = np.ascontiguousarray(psi, dtype=np.complex128)
    cdef Py_ssize_t d = kr.shape[1]
    out = np.empty((d, d), dtype=np.complex128)
    scratch = np.empty(d, dtype=np.complex128)
    cdef const double complex[:, :, ::1] kv = kr
    cdef const double complex[::1] pv = ps
    cdef double complex[:, ::1] ov = out
    cdef double complex[::1] sv = scratch
    _output_state(kv, pv, ov, sv)
    return out


def output_eigvals(kraus, psi):
    """Ascending spectrum of the channel output for a pure input."""
    return eigvalsh(output_state(kraus, psi))


def entropy_from_eigvals(vals):
    """- sum lam ln(lam), clipping eigensolver noise in [clip floor, 0)."""
    cdef const double[::1] v = np.ascontiguousarray(vals, dtype=np.float64)
    cdef Py_ssize_t i
    cdef double s = 0.0, lam
    if v[0] < _CLIP_FLOOR:
        raise InvalidState(f"eigenvalue {v[0]:.3e} below clip floor")
    for i in range(v.shape[0]):
        lam = v[i]
        if lam > 0.0:
            s -= lam * log(lam)
    return s


def output_entropy(kraus, psi):
    """Output von Neumann entropy (nats) of a pure input; the optimizer objective."""
    cdef kr = np.ascontiguousarray(kraus, dtype=np.complex128)
    cdef ps = np.ascontiguousarray(psi, dtype=np.complex128)
    cdef Py_ssize_t d = kr.shape[1]
    out = np.empty((d, d), dtype=np.complex128)
    scratch = np.empty(d, dtype=np.complex128)
    cdef const double complex[:, :, ::1] kv = kr
    cdef const double complex[::1] pv = ps
    cdef double complex[:, ::1] ov = out
    cdef double complex[::1] sv = scratch
    _output_state(kv, pv, ov, sv)
    if _jacobi(ov, ov, False, d) != 0:
        raise NoConvergence("Jacobi sweep cap reached")
    cdef double s = 0.0, lam
    cdef Py_ssize_t i
    for i in range(d):
        lam = ov[i, i].real
        if lam < _CLIP_FLOOR:
            raise InvalidState(f"eigenvalue {lam:.3e} below clip floor")
        if lam > 0.0:
            s -= lam * log(lam)
    return s
