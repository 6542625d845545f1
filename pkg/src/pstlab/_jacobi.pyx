# cython: language_level=3
"""Cyclic Jacobi eigendecomposition kernel (compiled hot loop).

Operates in place on a symmetric matrix ``a`` and an orthogonal accumulator
``v`` (initialized to the identity by the caller).  Rotations follow the
deterministic row-cyclic order (p, q) with p < q and update both triangles,
which keeps the stored matrix exactly symmetric; on the highly degenerate
spectra in this problem domain that variant converges in markedly fewer
sweeps than the classic upper-triangle-only update.  The pure numpy
fallback in ``_jacobi_py`` applies the identical operations element for
element, so both backends agree bit for bit.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

BACKEND = "compiled"


def offdiagonal_norm(double[:, ::1] a):
    """Frobenius norm of the off-diagonal part of a symmetric matrix."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q
    cdef double acc = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            acc += a[p, q] * a[p, q]
    return sqrt(2.0 * acc)


def cyclic_jacobi(double[:, ::1] a, double[:, ::1] v, double off_target,
                  int max_sweeps):
    """Diagonalize ``a`` in place; returns (sweeps_used, converged)."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, i, sweep
    cdef double apq, theta, t, c, s, x, y, off

    for sweep in range(max_sweeps):
        off = offdiagonal_norm(a)
        if off <= off_target:
            return sweep, True
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                if t == 0.0:
                    # |a_pq| below representable rotation size; negligible.
                    continue
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c

                # rows p and q, then columns p and q (two-sided rotation)
                for i in range(n):
                    x = a[p, i]
                    y = a[q, i]
                    a[p, i] = c * x - s * y
                    a[q, i] = s * x + c * y
                for i in range(n):
                    x = a[i, p]
                    y = a[i, q]
                    a[i, p] = c * x - s * y
                    a[i, q] = s * x + c * y
                a[p, q] = 0.0
                a[q, p] = 0.0

                for i in range(n):
                    x = v[i, p]
                    y = v[i, q]
                    v[i, p] = c * x - s * y
                    v[i, q] = s * x + c * y

    off = offdiagonal_norm(a)
    return max_sweeps, off <= off_target
