"""Eigendecomposition kernel selection: compiled extension with pure fallback."""

from __future__ import annotations

try:
    from pstlab._jacobi import BACKEND, cyclic_jacobi, offdiagonal_norm
except ImportError:  # extension not built; use the numpy implementation
    from pstlab._jacobi_py import BACKEND, cyclic_jacobi, offdiagonal_norm

__all__ = ["BACKEND", "cyclic_jacobi", "offdiagonal_norm"]
