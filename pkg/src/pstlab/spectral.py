"""Symmetric eigendecomposition, walk propagators, fidelity, analytic spectra.

The eigensolver is a deterministic cyclic Jacobi sweep (compiled kernel with
a pure fallback, see ``pstlab.kernel``); complex quantities are assembled
from the real spectrum, so all phases follow the e^{-i t A} convention.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass

import numpy as np

from pstlab.errors import InputError, NumericError
from pstlab.graphs import Graph
from pstlab.kernel import cyclic_jacobi

SWEEP_CAP = 100
OFF_TARGET_FACTOR = 1e-13
ORTHONORMALITY_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-9
UNITARITY_TOL = 1e-9
# Default fidelity tolerance for every state-transfer equality check; the
# sqrt-irrational weights in play rule out exact arithmetic.
PST_TOL = 1e-8


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


@dataclass(frozen=True)
class Propagator:
    matrix: np.ndarray
    time: float


_cache_lock = threading.Lock()
_spectrum_cache: dict[str, Spectrum] = {}


def clear_spectrum_cache() -> None:
    with _cache_lock:
        _spectrum_cache.clear()


def decompose_symmetric(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Jacobi-diagonalize a symmetric matrix; returns (eigenvalues, V)."""
    work = np.array(a, dtype=np.float64, order="C")
    n = work.shape[0]
    v = np.eye(n)
    off_target = OFF_TARGET_FACTOR * float(np.linalg.norm(work))
    _, converged = cyclic_jacobi(work, v, off_target, SWEEP_CAP)
    if not converged:
        raise NumericError(
            f"Jacobi sweep budget ({SWEEP_CAP}) exhausted on a {n}x{n} matrix")
    w = np.diag(work).copy()
    order = np.argsort(w, kind="stable")
    return w[order], np.ascontiguousarray(v[:, order])


def eigendecompose(g: Graph, use_cache: bool = True) -> Spectrum:
    """Spectrum of a graph's adjacency matrix (memoized per graph content)."""
    key = g.fingerprint
    if use_cache:
        with _cache_lock:
            hit = _spectrum_cache.get(key)
        if hit is not None:
            return hit
    w, v = decompose_symmetric(g.adjacency)
    w.setflags(write=False)  # instances are shared through the memo
    v.setflags(write=False)
    spec = Spectrum(w, v)
    _validate_spectrum(spec, g.adjacency)
    if use_cache:
        with _cache_lock:
            _spectrum_cache[key] = spec
    return spec


def _validate_spectrum(spec: Spectrum, a: np.ndarray) -> None:
    v = spec.eigenvectors
    gram = np.abs(v.T @ v - np.eye(spec.n)).max()
    if gram >= ORTHONORMALITY_TOL:
        raise NumericError(f"eigenvector orthonormality residual {gram:.3e}")
    recon = np.abs(a - (v * spec.eigenvalues) @ v.T).max()
    bound = RECONSTRUCTION_TOL * (1.0 + np.abs(a).max())
    if recon >= bound:
        raise NumericError(f"spectral reconstruction residual {recon:.3e}")


def propagator(spec: Spectrum, t: float) -> Propagator:
    """Walk propagator U(t) = sum_j e^{-i t lam_j} v_j v_j^T."""
    if not math.isfinite(t):
        raise InputError("time must be finite")
    phases = np.exp(-1j * spec.eigenvalues * t)
    u = (spec.eigenvectors * phases) @ spec.eigenvectors.T
    dev = np.abs(u.conj().T @ u - np.eye(spec.n)).max()
    if dev >= UNITARITY_TOL:
        raise NumericError(f"propagator unitarity residual {dev:.3e}")
    return Propagator(u, float(t))


def amplitude(spec: Spectrum, a: int, b: int, t: float) -> complex:
    """Transfer amplitude <b| e^{-i t A} |a>."""
    weights = spec.eigenvectors[a] * spec.eigenvectors[b]
    return complex(np.exp(-1j * spec.eigenvalues * t) @ weights)


def amplitude_series(spec: Spectrum, a: int, b: int, ts: np.ndarray) -> np.ndarray:
    weights = spec.eigenvectors[a] * spec.eigenvectors[b]
    return np.exp(-1j * np.outer(ts, spec.eigenvalues)) @ weights


def fidelity(g: Graph, a: int, b: int, t: float) -> float:
    """|<b| e^{-i t A(G)} |a>|, symmetric in (a, b) and even in t."""
    a = g.check_vertex(a)
    b = g.check_vertex(b)
    if not math.isfinite(t):
        raise InputError("time must be finite")
    return abs(amplitude(eigendecompose(g), a, b, t))


# ---------------------------------------------------------------------------
# Analytic spectra of the two small weighted-path families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathSpectrum4:
    """Closed-form eigensystem of the loop-weighted 4-path family.

    With half-sums k± = (a±b)/2 and gaps d± = sqrt(k±^2 + 1), the symmetric
    eigenvalues are k+ ± d+ (eigenvectors [1, x, x, 1]) and the antisymmetric
    ones k- ± d- (eigenvectors [1, y, -y, -1]).
    """

    a: float
    b: float
    k_plus: float
    k_minus: float
    delta_plus: float
    delta_minus: float
    alpha_plus: float
    alpha_minus: float
    beta_plus: float
    beta_minus: float
    m_plus: float
    m_minus: float
    n_plus: float
    n_minus: float
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def p4_spectrum(a: float, b: float) -> PathSpectrum4:
    if not (a > 0 and b > 0):
        raise InputError("weights a, b must be positive")
    k_plus = (a + b) / 2.0
    k_minus = (a - b) / 2.0
    d_plus = math.sqrt(k_plus * k_plus + 1.0)
    d_minus = math.sqrt(k_minus * k_minus + 1.0)
    alpha = (k_plus + d_plus, k_plus - d_plus)
    beta = (k_minus + d_minus, k_minus - d_minus)
    m_norm = tuple(math.sqrt(2.0 * (1.0 + x * x)) for x in alpha)
    n_norm = tuple(math.sqrt(2.0 * (1.0 + y * y)) for y in beta)
    pairs = []
    for x, mn in zip(alpha, m_norm):
        pairs.append((x, np.array([1.0, x, x, 1.0]) / mn))
    for y, nn in zip(beta, n_norm):
        pairs.append((y, np.array([1.0, y, -y, -1.0]) / nn))
    pairs.sort(key=lambda item: item[0])
    eigenvalues = np.array([lam for lam, _ in pairs])
    eigenvectors = np.column_stack([vec for _, vec in pairs])
    return PathSpectrum4(
        a=a, b=b, k_plus=k_plus, k_minus=k_minus,
        delta_plus=d_plus, delta_minus=d_minus,
        alpha_plus=alpha[0], alpha_minus=alpha[1],
        beta_plus=beta[0], beta_minus=beta[1],
        m_plus=m_norm[0], m_minus=m_norm[1],
        n_plus=n_norm[0], n_minus=n_norm[1],
        eigenvalues=eigenvalues, eigenvectors=eigenvectors)


@dataclass(frozen=True)
class PathSpectrum5:
    """Closed-form eigensystem of the mirror-symmetric weighted 5-path.

    Eigenvalues are 0, ±a, ±delta with delta = sqrt(a^2 + 2 b^2); for the
    a = sqrt(2) member this reduces to delta = a*sqrt(1 + b^2).
    """

    a: float
    b: float
    delta: float
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def p5_spectrum(a: float, b: float) -> PathSpectrum5:
    if not (a > 0 and b > 0):
        raise InputError("weights a, b must be positive")
    delta = math.sqrt(a * a + 2.0 * b * b)
    v_zero = np.array([1.0, 0.0, -a / b, 0.0, 1.0])
    v_zero /= math.sqrt(2.0 + (a / b) ** 2)
    v_a_plus = 0.5 * np.array([-1.0, -1.0, 0.0, 1.0, 1.0])
    v_a_minus = 0.5 * np.array([1.0, -1.0, 0.0, 1.0, -1.0])
    ratio = delta / a
    mid = 2.0 * b / a
    norm = math.sqrt(2.0 + 2.0 * ratio * ratio + mid * mid)
    v_d_plus = np.array([1.0, ratio, mid, ratio, 1.0]) / norm
    v_d_minus = np.array([1.0, -ratio, mid, -ratio, 1.0]) / norm
    eigenvalues = np.array([-delta, -a, 0.0, a, delta])
    eigenvectors = np.column_stack([v_d_minus, v_a_minus, v_zero, v_a_plus, v_d_plus])
    return PathSpectrum5(a=a, b=b, delta=delta,
                         eigenvalues=eigenvalues, eigenvectors=eigenvectors)


class P4Condition(enum.Enum):
    """Outcome of the trigonometric antipodal-transfer test for the 4-path."""

    CONDITION_A = "a"   # cos(t d+) cos(t d-) = +1 and sin(t b / 2) = ±1
    CONDITION_B = "b"   # cos(t d+) cos(t d-) = -1 and cos(t b / 2) = ±1
    NEITHER = "neither"


def pst_condition_p4(a: float, b: float, t: float,
                     tol: float = PST_TOL) -> P4Condition:
    """Evaluate the two sufficient transfer conditions at time t.

    These are sufficient conditions only; NEITHER does not assert the absence
    of perfect state transfer.
    """
    spec = p4_spectrum(a, b)
    prod = math.cos(t * spec.delta_plus) * math.cos(t * spec.delta_minus)
    if abs(prod - 1.0) <= tol and abs(abs(math.sin(t * b / 2.0)) - 1.0) <= tol:
        return P4Condition.CONDITION_A
    if abs(prod + 1.0) <= tol and abs(abs(math.cos(t * b / 2.0)) - 1.0) <= tol:
        return P4Condition.CONDITION_B
    return P4Condition.NEITHER


def deleted_cospectral(g: Graph, a: int, b: int, tol: float = PST_TOL) -> bool:
    """Compare spectra of the two vertex-deleted subgraphs entrywise.

    A necessary condition for state transfer between a and b; this is the
    eigenvalue-comparison surrogate of the subgraph condition.
    """
    a = g.check_vertex(a)
    b = g.check_vertex(b)
    if a == b:
        raise InputError("vertices must be distinct")

    def deleted_eigenvalues(v):
        sub = np.delete(np.delete(g.adjacency, v, axis=0), v, axis=1)
        w, _ = decompose_symmetric(sub)
        return w

    return bool(np.abs(deleted_eigenvalues(a) - deleted_eigenvalues(b)).max() <= tol)
