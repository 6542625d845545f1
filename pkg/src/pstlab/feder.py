"""Many-boson secondary graphs and quotients of Cartesian powers.

The k-boson secondary graph of an unweighted loop-free graph lives on
occupation vectors (per-vertex boson counts summing to k) with hop weights
sqrt(n_u (n_v + 1)).  It coincides with the quotient of the k-fold Cartesian
power by the coordinate-permutation orbit partition, which is what the
verification routines here check numerically.

All propagators follow the e^{-itA} sign convention; the many-boson
evolution is sometimes written with e^{+itA}, which differs by complex
conjugation only and leaves every fidelity unchanged (real A).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from pstlab.errors import GuardError, InputError, PreconditionError
from pstlab.graphs import (
    Graph,
    cartesian_power,
    cartesian_product,
    flatten_index,
)
from pstlab.partitions import Partition, partition_matrix, quotient
from pstlab.spectral import PST_TOL
from pstlab.walk import verify_pst

PRODUCT_SPACE_LIMIT = 4096
# k! permutation matrices are only ever materialized for the explicit
# symmetrizer cross-check; orbit averaging covers everything else.
EXPLICIT_SYMMETRIZER_MAX_K = 5
IDENTITY_TOL = 1e-10
ISO_TOL = 1e-12


def occupation_vectors(n: int, k: int) -> list[tuple[int, ...]]:
    """All length-n tuples of nonnegative ints summing to k, lexicographic."""
    if n < 1 or k < 0:
        raise InputError("need n >= 1 sites and k >= 0 bosons")
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for first in range(remaining + 1):
            rec(prefix + (first,), remaining - first, slots - 1)

    rec((), k, n)
    return out


@dataclass(frozen=True)
class FederGraph:
    """Secondary graph plus the occupation vector of each of its vertices."""

    graph: Graph
    occupations: tuple[tuple[int, ...], ...]
    index: dict[tuple[int, ...], int]


def feder_graph(g: Graph, k: int) -> FederGraph:
    """k-boson secondary graph of an unweighted, loop-free graph."""
    if k < 1:
        raise InputError("boson count k must be >= 1")
    a = g.adjacency
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    if np.diag(a).any() or not np.all((off == 0.0) | (off == 1.0)):
        raise InputError("primary graph must be unweighted and loop-free")
    occs = occupation_vectors(g.n, k)
    size = len(occs)
    if size > PRODUCT_SPACE_LIMIT:
        raise GuardError(f"{size} occupation vectors exceed {PRODUCT_SPACE_LIMIT}")
    index = {occ: i for i, occ in enumerate(occs)}
    adj = np.zeros((size, size))
    edges = [(u, v) for u in range(g.n) for v in range(g.n)
             if u != v and a[u, v] != 0.0]
    for i, occ in enumerate(occs):
        for u, v in edges:
            if occ[u] < 1:
                continue
            hopped = list(occ)
            hopped[u] -= 1
            hopped[v] += 1
            j = index[tuple(hopped)]
            w = math.sqrt(occ[u] * (occ[v] + 1))
            if adj[i, j] != 0.0 and adj[i, j] != w:
                raise AssertionError("hop weight disagrees between directions")
            adj[i, j] = w
            adj[j, i] = w
    name = f"bosons({g.name},{k})" if g.name is not None else None
    return FederGraph(Graph(adj, name=name), tuple(occs), index)


@dataclass(frozen=True)
class OrbitPartition:
    """Coordinate-permutation orbits of a k-fold Cartesian power."""

    partition: Partition
    keys: tuple[tuple[int, ...], ...]  # sorted tuple labeling each cell


def orbit_partition(g: Graph, k: int) -> OrbitPartition:
    """Partition of V(G)^k whose cells are sorted-tuple classes."""
    if k < 1:
        raise InputError("power k must be >= 1")
    size = g.n ** k
    if size > PRODUCT_SPACE_LIMIT:
        raise GuardError(f"{g.n}^{k} vertices exceed {PRODUCT_SPACE_LIMIT}")
    cell_ids: dict[tuple[int, ...], int] = {}
    cell_of = []
    keys: list[tuple[int, ...]] = []
    for tup in itertools.product(range(g.n), repeat=k):
        key = tuple(sorted(tup))
        if key not in cell_ids:
            cell_ids[key] = len(keys)
            keys.append(key)
        cell_of.append(cell_ids[key])
    part = Partition(tuple(cell_of), len(keys))
    # product() emits the first occurrence of every orbit in flattened vertex
    # order, so this numbering is already canonical.
    return OrbitPartition(part, tuple(keys))


def occupation_of_key(key: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Count vector of a sorted coordinate tuple."""
    counts = [0] * n
    for x in key:
        counts[x] += 1
    return tuple(counts)


@dataclass(frozen=True)
class SymmetrizerCheck:
    projector_residual: float   # ||S - Q Q^T||_max
    commutator_residual: float  # ||S A - A S||_max
    explicit: bool              # S summed over all k! permutations


def symmetrizer_check(g: Graph, k: int) -> SymmetrizerCheck:
    """Compare the permutation-average projector against Q Q^T.

    For k <= 5 the symmetrizer is accumulated permutation by permutation;
    beyond that it is materialized by orbit averaging (equal by the orbit
    counting identity) and only the commutator residual is informative.
    """
    op = orbit_partition(g, k)  # guards g.n ** k
    q = partition_matrix(op.partition)
    qqt = q @ q.T
    size = g.n ** k
    explicit = k <= EXPLICIT_SYMMETRIZER_MAX_K
    if explicit:
        s = np.zeros((size, size))
        tuples = list(itertools.product(range(g.n), repeat=k))
        weight = 1.0 / math.factorial(k)
        for sigma in itertools.permutations(range(k)):
            for ix, tup in enumerate(tuples):
                image = tuple(tup[sigma[i]] for i in range(k))
                s[ix, flatten_index([g.n] * k, image)] += weight
    else:
        s = qqt
    a = cartesian_power(g, k).adjacency
    proj_res = float(np.abs(s - qqt).max())
    comm_res = float(np.abs(s @ a - a @ s).max())
    return SymmetrizerCheck(proj_res, comm_res, explicit)


@dataclass(frozen=True)
class IsoCheck:
    ok: bool
    deviation: float


def verify_boson_quotient_iso(g: Graph, k: int, tol: float = ISO_TOL) -> IsoCheck:
    """Match the orbit quotient of G^k with the k-boson secondary graph.

    Cells are aligned by mapping each orbit key to its occupation vector;
    the reported deviation is the entrywise max difference.
    """
    op = orbit_partition(g, k)
    qr = quotient(cartesian_power(g, k), op.partition)
    fg = feder_graph(g, k)
    perm = np.array([fg.index[occupation_of_key(key, g.n)] for key in op.keys])
    if len(set(perm.tolist())) != len(perm):
        raise AssertionError("orbit keys and occupation vectors failed to match up")
    aligned = np.zeros_like(fg.graph.adjacency)
    aligned[np.ix_(perm, perm)] = qr.quotient.adjacency
    deviation = float(np.abs(aligned - fg.graph.adjacency).max())
    return IsoCheck(deviation < tol, deviation)


@dataclass(frozen=True)
class ResidualCheck:
    ok: bool
    residual: float


def compose_quotients(g: Graph, m1: int, p1: Partition, m2: int, p2: Partition,
                      tol: float = IDENTITY_TOL) -> ResidualCheck:
    """Check that quotients compose: quotienting a power of a quotient equals
    one quotient of the full power, with partition matrix kron(Q1, ..., Q1) Q2.
    """
    if m1 < 1 or m2 < 1:
        raise InputError("powers m1, m2 must be >= 1")
    if g.n ** (m1 * m2) > PRODUCT_SPACE_LIMIT:
        raise GuardError(f"{g.n}^{m1 * m2} vertices exceed {PRODUCT_SPACE_LIMIT}")
    inner = quotient(cartesian_power(g, m1), p1)
    outer = quotient(cartesian_power(inner.quotient, m2), p2)
    q1 = partition_matrix(p1)
    q2 = partition_matrix(p2)
    q_big = q1
    for _ in range(m2 - 1):
        q_big = np.kron(q_big, q1)
    q_big = q_big @ q2
    full = cartesian_power(g, m1 * m2).adjacency
    rhs = q_big.T @ full @ q_big
    residual = float(np.abs(outer.quotient.adjacency - rhs).max())
    return ResidualCheck(residual < tol, residual)


def product_of_quotients(pairs, tol: float = IDENTITY_TOL) -> ResidualCheck:
    """Check that the product of quotients is the quotient of the product.

    ``pairs`` is a sequence of (graph, equitable partition); the combined
    partition matrix is the Kronecker product of the factors' matrices.
    """
    pairs = list(pairs)
    if not pairs:
        raise InputError("need at least one (graph, partition) pair")
    total = 1
    for g, _ in pairs:
        total *= g.n
    if total > PRODUCT_SPACE_LIMIT:
        raise GuardError(f"{total} product vertices exceed {PRODUCT_SPACE_LIMIT}")
    lhs_graph = None
    big_graph = None
    q_big = None
    for g, p in pairs:
        qg = quotient(g, p).quotient  # enforces equitability per factor
        lhs_graph = qg if lhs_graph is None else cartesian_product(lhs_graph, qg)
        big_graph = g if big_graph is None else cartesian_product(big_graph, g)
        q = partition_matrix(p)
        q_big = q if q_big is None else np.kron(q_big, q)
    rhs = q_big.T @ big_graph.adjacency @ q_big
    residual = float(np.abs(lhs_graph.adjacency - rhs).max())
    return ResidualCheck(residual < tol, residual)


def product_pst(pairs, t: float, tol: float = PST_TOL) -> bool:
    """Transfer on a Cartesian product from per-factor transfer/periodicity.

    Each (graph, a, b) factor must itself pass its transfer check at the
    common time t (periodicity when a == b); at least one factor must move.
    """
    pairs = list(pairs)
    if not pairs:
        raise InputError("need at least one (graph, a, b) factor")
    if all(a == b for _, a, b in pairs):
        raise InputError("at least one factor must have distinct endpoints")
    for i, (g, a, b) in enumerate(pairs):
        if not verify_pst(g, a, b, t, tol):
            kind = "periodicity" if a == b else "transfer"
            raise PreconditionError(
                f"factor {i} fails its {kind} check at t={t}", witness=i)
    sizes = [g.n for g, _, _ in pairs]
    total = 1
    for s in sizes:
        total *= s
    if total > PRODUCT_SPACE_LIMIT:
        raise GuardError(f"{total} product vertices exceed {PRODUCT_SPACE_LIMIT}")
    big = None
    for g, _, _ in pairs:
        big = g if big is None else cartesian_product(big, g)
    src = flatten_index(sizes, [a for _, a, _ in pairs])
    dst = flatten_index(sizes, [b for _, _, b in pairs])
    return verify_pst(big, src, dst, t, tol)
