"""GF(2) machinery for cube-like Cayley graphs and their transfer criterion.

Generators are d-bit integers; the associated binary code is the row space
of the d x |S| matrix whose columns are the generators.  Codeword weights
drive the transfer prediction: a nonzero generator XOR gives transfer from 0
at time pi/2; for zero XOR, transfer at pi/4 happens exactly when the weight
gcd is 2 and the code is self-orthogonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from pstlab.errors import GuardError, InputError
from pstlab.graphs import Graph, cubelike
from pstlab.spectral import PST_TOL, eigendecompose

MAX_DIMENSION = 20  # codeword enumeration stays <= 2^20, streamed
MAX_GRAPH_DIMENSION = 12  # 2^12 = dense vertex limit


@dataclass(frozen=True)
class CubelikeSpec:
    """Dimension d plus a set of distinct nonzero generators of Z_2^d."""

    dimension: int
    generators: tuple[int, ...]

    def __post_init__(self):
        d = self.dimension
        if not 1 <= d <= MAX_DIMENSION:
            raise InputError(f"dimension must be in [1, {MAX_DIMENSION}]")
        gens = self.generators
        if len(gens) != len(set(gens)):
            raise InputError("generators must be distinct")
        if not gens:
            raise InputError("generator set may not be empty")
        for g in gens:
            if not 0 < g < 2 ** d:
                raise InputError(f"generator {g} outside (0, 2^{d})")

    @classmethod
    def from_bit_strings(cls, text: str) -> "CubelikeSpec":
        """Parse comma-separated bit strings, e.g. "100,010,001,011"."""
        tokens = [tok.strip() for tok in text.split(",") if tok.strip()]
        if not tokens:
            raise InputError("generator list may not be empty")
        widths = {len(tok) for tok in tokens}
        if len(widths) != 1:
            raise InputError("all generator bit strings need equal length")
        d = widths.pop()
        try:
            gens = tuple(int(tok, 2) for tok in tokens)
        except ValueError:
            raise InputError("generators must be binary strings") from None
        return cls(d, gens)

    def format_vector(self, x: int) -> str:
        return format(x, f"0{self.dimension}b")


def graph_of(spec: CubelikeSpec) -> Graph:
    if spec.dimension > MAX_GRAPH_DIMENSION:
        raise GuardError(
            f"2^{spec.dimension} vertices exceed the dense limit")
    return cubelike(spec.dimension, spec.generators)


def omega(spec: CubelikeSpec) -> int:
    """XOR of all generators."""
    acc = 0
    for g in spec.generators:
        acc ^= g
    return acc


def _gf2_rank(vectors) -> int:
    basis: list[int] = []
    for v in vectors:
        x = v
        for b in basis:
            x = min(x, x ^ b)
        if x:
            basis.append(x)
            basis.sort(reverse=True)
    return len(basis)


def generates_full_space(spec: CubelikeSpec) -> bool:
    return _gf2_rank(spec.generators) == spec.dimension


@dataclass(frozen=True)
class BinaryCode:
    """Row space of the generator matrix, rows packed as |S|-bit integers."""

    length: int            # |S|, the number of code coordinates
    rows: tuple[int, ...]  # one row per ambient dimension
    basis: tuple[int, ...] # independent rows after elimination

    @property
    def rank(self) -> int:
        return len(self.basis)

    def codewords(self):
        """Stream all 2^rank codewords (including zero)."""
        r = len(self.basis)
        for mask in range(2 ** r):
            word = 0
            m = mask
            i = 0
            while m:
                if m & 1:
                    word ^= self.basis[i]
                m >>= 1
                i += 1
            yield word

    def codeword_list(self) -> list[int]:
        return list(self.codewords())


def code_of(spec: CubelikeSpec) -> BinaryCode:
    """Build the code whose coordinates are indexed by the generators."""
    d = spec.dimension
    rows = []
    for i in range(d):
        row = 0
        for j, g in enumerate(spec.generators):
            if (g >> i) & 1:
                row |= 1 << j
        rows.append(row)
    basis: list[int] = []
    for row in rows:
        x = row
        for b in basis:
            x = min(x, x ^ b)
        if x:
            basis.append(x)
            basis.sort(reverse=True)
    return BinaryCode(len(spec.generators), tuple(rows), tuple(basis))


def weight_gcd(code: BinaryCode) -> int:
    """gcd of Hamming weights of the nonzero codewords; 0 for the trivial code."""
    acc = 0
    for word in code.codewords():
        if word:
            acc = math.gcd(acc, bin(word).count("1"))
            if acc == 1:
                return 1
    return acc


def is_self_orthogonal(code: BinaryCode) -> bool:
    """Every pair of codewords (self included) has even inner product.

    Orthogonality is bilinear over GF(2), so checking basis pairs suffices.
    """
    basis = code.basis
    for i, bi in enumerate(basis):
        for bj in basis[i:]:
            if bin(bi & bj).count("1") & 1:
                return False
    return True


@dataclass(frozen=True)
class TransferPrediction:
    source: int
    target: int | None  # None: zero-XOR case, target located numerically
    time: float


def predict_pst(spec: CubelikeSpec) -> TransferPrediction | None:
    """Predicted transfer for a connected cube-like graph, if any.

    Nonzero generator XOR w: transfer 0 -> w at pi/2.  Zero XOR: transfer at
    pi/4 iff the weight gcd is 2 and the code is self-orthogonal; the target
    vertex is then reported by certification, not asserted here.
    """
    if not generates_full_space(spec):
        raise InputError("generators must span the whole space (connected graph)")
    w = omega(spec)
    if w != 0:
        return TransferPrediction(0, w, math.pi / 2.0)
    code = code_of(spec)
    if weight_gcd(code) == 2 and is_self_orthogonal(code):
        return TransferPrediction(0, None, math.pi / 4.0)
    return None


@dataclass(frozen=True)
class CertifiedTransfer:
    prediction: TransferPrediction | None
    target: int | None
    fidelity: float
    certified: bool


def best_transfer_at(g: Graph, source: int, t: float) -> tuple[int, float]:
    """Best transfer partner of ``source`` at time t: (vertex, fidelity)."""
    spec = eigendecompose(g)
    amps = spec.eigenvectors @ (np.exp(-1j * spec.eigenvalues * t)
                                * spec.eigenvectors[source])
    mags = np.abs(amps)
    mags[source] = -1.0
    v = int(mags.argmax())
    return v, float(mags[v])


def certify(spec: CubelikeSpec, tol: float = PST_TOL) -> CertifiedTransfer:
    """Numerically cross-check the prediction on the actual graph."""
    pred = predict_pst(spec)
    if pred is None:
        return CertifiedTransfer(None, None, 0.0, False)
    g = graph_of(spec)
    if pred.target is not None:
        spec_g = eigendecompose(g)
        amp = spec_g.eigenvectors[pred.target] @ (
            np.exp(-1j * spec_g.eigenvalues * pred.time)
            * spec_g.eigenvectors[pred.source])
        fid = abs(complex(amp))
        return CertifiedTransfer(pred, pred.target, fid, fid >= 1.0 - tol)
    target, fid = best_transfer_at(g, pred.source, pred.time)
    return CertifiedTransfer(pred, target, fid, fid >= 1.0 - tol)
