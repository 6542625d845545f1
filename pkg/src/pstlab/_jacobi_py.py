"""Pure numpy fallback for the cyclic Jacobi kernel.

Performs the same two-sided rotations in the same row-cyclic order as the
compiled extension; row/column updates are vectorized but apply the
identical IEEE operations element for element, so the two backends agree to
the last bit on the same input.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "pure"


def offdiagonal_norm(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part of a symmetric matrix."""
    n = a.shape[0]
    acc = 0.0
    for p in range(n - 1):
        row = a[p, p + 1 :]
        acc += float(row @ row)
    return math.sqrt(2.0 * acc)


def cyclic_jacobi(a: np.ndarray, v: np.ndarray, off_target: float,
                  max_sweeps: int) -> tuple[int, bool]:
    """Diagonalize ``a`` in place; returns (sweeps_used, converged)."""
    n = a.shape[0]
    for sweep in range(max_sweeps):
        if offdiagonal_norm(a) <= off_target:
            return sweep, True
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                if t == 0.0:
                    # |a_pq| below representable rotation size; negligible.
                    continue
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                # rows p and q, then columns p and q (two-sided rotation)
                x = a[p, :].copy()
                y = a[q, :].copy()
                a[p, :] = c * x - s * y
                a[q, :] = s * x + c * y
                x = a[:, p].copy()
                y = a[:, q].copy()
                a[:, p] = c * x - s * y
                a[:, q] = s * x + c * y
                a[p, q] = 0.0
                a[q, p] = 0.0

                x = v[:, p].copy()
                y = v[:, q].copy()
                v[:, p] = c * x - s * y
                v[:, q] = s * x + c * y

    return max_sweeps, offdiagonal_norm(a) <= off_target
