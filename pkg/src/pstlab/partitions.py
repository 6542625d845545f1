"""Equitable partitions: verification, coarsest refinement, quotient graphs.

Equitability is the weighted generalization: the weight sum from a vertex
into each cell must depend only on the vertex's own cell.  This preserves
the partition-matrix relation A·Q = Q·B that every quotient identity rests
on, and it is what makes quotients of quotients well defined.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from pstlab.errors import InputError, PreconditionError
from pstlab.graphs import Graph

EQUITABLE_TOL = 1e-9
# Weight sums are quantized before grouping so that equal-by-construction
# irrational weights land in the same refinement class.
SIGNATURE_DECIMALS = 12


@dataclass(frozen=True)
class Partition:
    """Assignment of each vertex to one of m nonempty cells."""

    cell_of: tuple[int, ...]
    m: int

    def __post_init__(self):
        seen = set(self.cell_of)
        if seen != set(range(self.m)):
            raise InputError(
                f"cell indices must be exactly 0..{self.m - 1} with no empty cell")

    @property
    def n(self) -> int:
        return len(self.cell_of)

    @classmethod
    def from_cell_of(cls, cell_of) -> "Partition":
        cell_of = tuple(int(c) for c in cell_of)
        if not cell_of:
            raise InputError("partition needs at least one vertex")
        return cls(cell_of, max(cell_of) + 1)

    @classmethod
    def from_cells(cls, cells, n: int | None = None) -> "Partition":
        cells = [sorted(int(v) for v in cell) for cell in cells]
        size = sum(len(c) for c in cells)
        if n is None:
            n = size
        if size != n:
            raise InputError("cells must cover every vertex exactly once")
        cell_of = [-1] * n
        for j, cell in enumerate(cells):
            if not cell:
                raise InputError("cells may not be empty")
            for v in cell:
                if not 0 <= v < n or cell_of[v] != -1:
                    raise InputError("cells must cover every vertex exactly once")
                cell_of[v] = j
        return cls(tuple(cell_of), len(cells))

    @classmethod
    def single_cell(cls, n: int) -> "Partition":
        if n < 1:
            raise InputError("partition needs at least one vertex")
        return cls((0,) * n, 1)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        if n < 1:
            raise InputError("partition needs at least one vertex")
        return cls(tuple(range(n)), n)

    def cells(self) -> list[list[int]]:
        out = [[] for _ in range(self.m)]
        for v, c in enumerate(self.cell_of):
            out[c].append(v)
        return out

    def sizes(self) -> list[int]:
        return [len(c) for c in self.cells()]

    def canonical(self) -> "Partition":
        """Renumber cells in ascending order of their smallest vertex."""
        first = {}
        for v, c in enumerate(self.cell_of):
            first.setdefault(c, v)
        order = sorted(first, key=first.get)
        relabel = {old: new for new, old in enumerate(order)}
        return Partition(tuple(relabel[c] for c in self.cell_of), self.m)

    def indicator(self) -> np.ndarray:
        mat = np.zeros((self.n, self.m))
        mat[np.arange(self.n), self.cell_of] = 1.0
        return mat

    def is_singleton(self, v: int) -> bool:
        return self.cell_of.count(self.cell_of[v]) == 1


@dataclass(frozen=True)
class EquitableCheck:
    ok: bool
    witness: tuple[int, int] | None  # (cell representative vertex, target cell)

    def __bool__(self):
        return self.ok


def _cell_weight_sums(g: Graph, p: Partition) -> np.ndarray:
    return g.adjacency @ p.indicator()


def check_equitable(g: Graph, p: Partition, tol: float = EQUITABLE_TOL) -> EquitableCheck:
    """Check the weighted equitability condition cell by cell."""
    if p.n != g.n:
        raise InputError("partition does not cover the vertex set")
    sums = _cell_weight_sums(g, p)
    for cell in p.cells():
        rep = cell[0]
        dev = np.abs(sums[cell] - sums[rep]).max(axis=0)
        bad = np.nonzero(dev > tol)[0]
        if bad.size:
            return EquitableCheck(False, (rep, int(bad[0])))
    return EquitableCheck(True, None)


def is_equitable(g: Graph, p: Partition, tol: float = EQUITABLE_TOL) -> bool:
    return check_equitable(g, p, tol).ok


def refine(g: Graph, initial: Partition) -> Partition:
    """Coarsest equitable refinement of ``initial``.

    Vertices are regrouped by (current cell, quantized weight sums into every
    cell) until stable.  Cell numbering of the result is canonical: ascending
    by smallest contained vertex.
    """
    if initial.n != g.n:
        raise InputError("partition does not cover the vertex set")
    p = initial.canonical()
    while True:
        sums = np.round(_cell_weight_sums(g, p), SIGNATURE_DECIMALS)
        # -0.0 would hash apart from 0.0 inside tuple keys
        sums[sums == 0.0] = 0.0
        keys = {}
        new_cell = []
        for v in range(g.n):
            key = (p.cell_of[v], sums[v].tobytes())
            keys.setdefault(key, len(keys))
            new_cell.append(keys[key])
        refined = Partition(tuple(new_cell), len(keys)).canonical()
        if refined.m == p.m:
            return refined
        p = refined


def seeded_partition(g: Graph, a: int, b: int) -> Partition:
    """Coarsest equitable partition in which a and b start (and stay) singleton."""
    a = g.check_vertex(a)
    b = g.check_vertex(b)
    if a == b:
        raise InputError("seed vertices must be distinct")
    cell_of = [2] * g.n
    cell_of[a] = 0
    cell_of[b] = 1
    m = 3 if g.n > 2 else 2
    return refine(g, Partition(tuple(cell_of), m))


def partition_matrix(p: Partition) -> np.ndarray:
    """Column-normalized indicator matrix Q with Q^T Q = I."""
    q = p.indicator()
    return q / np.sqrt(q.sum(axis=0))


@dataclass(frozen=True)
class QuotientResult:
    quotient: Graph
    cell_map: Partition
    d: np.ndarray  # d[j, k] = weight sum from any vertex of cell j into cell k


def quotient(g: Graph, p: Partition, tol: float = EQUITABLE_TOL) -> QuotientResult:
    """Quotient graph Q^T A Q of an equitable partition.

    Off-diagonal entries equal sqrt(d_jk * d_kj); diagonal entries are the
    in-cell weight sums d_jj (loops of the quotient).
    """
    chk = check_equitable(g, p, tol)
    if not chk.ok:
        raise PreconditionError(
            f"partition is not equitable (vertex {chk.witness[0]}, cell {chk.witness[1]})",
            witness=chk.witness)
    q = partition_matrix(p)
    b = q.T @ g.adjacency @ q
    b = np.triu(b) + np.triu(b, 1).T  # exact symmetry for the Graph invariant
    sums = _cell_weight_sums(g, p)
    reps = [cell[0] for cell in p.cells()]
    d = sums[reps]
    name = f"quotient({g.name})" if g.name is not None else None
    return QuotientResult(Graph(b, name=name), p, d)


@dataclass(frozen=True)
class PartitionIdentityReport:
    """Max residuals of the four normalized-partition-matrix identities."""

    orthonormality: float      # ||Q^T Q - I||_max
    block_projector: float     # ||Q Q^T - blockdiag(J_k / |V_k|)||_max
    commutator: float          # ||Q Q^T A - A Q Q^T||_max
    quotient_formula: float    # ||A(G/pi) - Q^T A Q||_max

    @property
    def max_residual(self) -> float:
        return max(self.orthonormality, self.block_projector,
                   self.commutator, self.quotient_formula)


def verify_partition_identities(g: Graph, p: Partition,
                                tol: float = EQUITABLE_TOL) -> PartitionIdentityReport:
    """Numerically check the four identities satisfied by Q on an equitable partition."""
    qr = quotient(g, p, tol)
    q = partition_matrix(p)
    a = g.adjacency
    r1 = float(np.abs(q.T @ q - np.eye(p.m)).max())
    proj = np.zeros((g.n, g.n))
    for cell in p.cells():
        idx = np.array(cell)
        proj[np.ix_(idx, idx)] = 1.0 / len(cell)
    s = q @ q.T
    r2 = float(np.abs(s - proj).max())
    r3 = float(np.abs(s @ a - a @ s).max())
    r4 = float(np.abs(qr.quotient.adjacency - q.T @ a @ q).max())
    return PartitionIdentityReport(r1, r2, r3, r4)


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop counts from source on the support of nonzero weights; -1 if unreachable."""
    source = g.check_vertex(source)
    support = g.support()
    dist = np.full(g.n, -1, dtype=int)
    dist[source] = 0
    frontier = [source]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for u in frontier:
            for v in np.nonzero(support[u])[0]:
                if dist[v] < 0:
                    dist[v] = level
                    nxt.append(int(v))
        frontier = nxt
    return dist


def distance_minimal(g: Graph, a: int, b: int) -> bool:
    """True iff x -> (dist(a,x), dist(b,x)) is injective on the vertex set."""
    a = g.check_vertex(a)
    b = g.check_vertex(b)
    if a == b:
        raise InputError("endpoints must be distinct")
    da = bfs_distances(g, a)
    if (da < 0).any():
        raise InputError("graph must be connected")
    db = bfs_distances(g, b)
    pairs = set(zip(da.tolist(), db.tolist()))
    return len(pairs) == g.n
