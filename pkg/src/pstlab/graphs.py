"""Weighted graph construction: named families, products, joins, scaling.

Graphs are immutable dense symmetric matrices of nonnegative weights; the
diagonal holds loop weights (stored once, not doubled).  Vertex indexing of
Cartesian products is row-major with the left factor major, which fixes the
Kronecker convention used everywhere else.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from pstlab.errors import GuardError, InputError

# Dense storage is sized for up to ~4096 vertices; eigendecomposition
# dominates well before memory does.
DENSE_VERTEX_LIMIT = 4096


class Graph:
    """Immutable weighted graph on vertices 0..n-1."""

    __slots__ = ("adjacency", "name", "vertex_labels", "_fingerprint")

    def __init__(self, adjacency, name: str | None = None,
                 vertex_labels=None):
        a = np.array(adjacency, dtype=np.float64, order="C")
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputError("adjacency must be a square matrix")
        if a.shape[0] < 1:
            raise InputError("a graph needs at least one vertex")
        if not np.isfinite(a).all():
            raise InputError("adjacency entries must be finite")
        if (a < 0.0).any():
            raise InputError("adjacency entries must be nonnegative")
        if not (a == a.T).all():
            raise InputError("adjacency must be exactly symmetric")
        if vertex_labels is not None:
            vertex_labels = tuple(str(s) for s in vertex_labels)
            if len(vertex_labels) != a.shape[0]:
                raise InputError("expected one label per vertex")
        a.setflags(write=False)
        self.adjacency = a
        self.name = name
        self.vertex_labels = vertex_labels
        self._fingerprint = None

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def fingerprint(self) -> str:
        """Content hash of the adjacency matrix (used for spectrum caching)."""
        if self._fingerprint is None:
            h = hashlib.sha256()
            h.update(str(self.n).encode())
            h.update(self.adjacency.tobytes())
            self._fingerprint = h.hexdigest()
        return self._fingerprint

    def degrees(self) -> np.ndarray:
        """Off-diagonal weight sum per vertex (loops excluded)."""
        return self.adjacency.sum(axis=1) - np.diag(self.adjacency)

    def edge_count(self) -> int:
        """Number of off-diagonal edges (unordered pairs with nonzero weight)."""
        off = self.adjacency.copy()
        np.fill_diagonal(off, 0.0)
        return int(np.count_nonzero(off)) // 2

    def support(self) -> np.ndarray:
        """Boolean off-diagonal adjacency (loops dropped)."""
        off = self.adjacency != 0.0
        np.fill_diagonal(off, False)
        return off

    def check_vertex(self, u: int) -> int:
        if not isinstance(u, (int, np.integer)) or isinstance(u, bool):
            raise InputError(f"vertex index must be an integer, got {u!r}")
        if not 0 <= u < self.n:
            raise InputError(f"vertex index {u} out of range [0, {self.n})")
        return int(u)

    def with_name(self, name: str | None) -> "Graph":
        return Graph(self.adjacency, name=name, vertex_labels=self.vertex_labels)

    def __repr__(self):
        label = self.name if self.name is not None else "graph"
        return f"<Graph {label}: n={self.n}, edges={self.edge_count()}>"


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------

def complete(n: int) -> Graph:
    """Complete graph on n vertices."""
    if n < 1:
        raise InputError("complete graph needs n >= 1")
    a = np.ones((n, n)) - np.eye(n)
    return Graph(a, name=f"K{n}")


def path(n: int) -> Graph:
    """Unweighted path on n vertices."""
    if n < 1:
        raise InputError("path needs n >= 1")
    a = np.zeros((n, n))
    for j in range(n - 1):
        a[j, j + 1] = a[j + 1, j] = 1.0
    return Graph(a, name=f"P{n}")


def cycle(n: int) -> Graph:
    """Unweighted cycle on n vertices."""
    if n < 3:
        raise InputError("cycle needs n >= 3")
    a = np.zeros((n, n))
    for j in range(n):
        a[j, (j + 1) % n] = a[(j + 1) % n, j] = 1.0
    return Graph(a, name=f"C{n}")


def _canonical_connection_set(n: int, connections) -> tuple[int, ...]:
    residues = set()
    for s in connections:
        if not isinstance(s, (int, np.integer)) or isinstance(s, bool):
            raise InputError("connection elements must be integers")
        r = int(s) % n
        if r == 0:
            raise InputError("connection set may not contain 0 mod n")
        residues.add(r)
    if not residues:
        raise InputError("connection set may not be empty")
    for r in residues:
        if (n - r) % n not in residues:
            raise InputError(
                f"connection set not closed under negation mod {n}: missing {n - r}")
    return tuple(sorted(residues))


def circulant(n: int, connections, name: str | None = None) -> Graph:
    """Circulant graph on Z_n with a symmetric connection set.

    ``connections`` is any iterable of integers; residues mod n must be
    nonzero and closed under negation.  Positive and negative representatives
    may be mixed freely.
    """
    if n < 1:
        raise InputError("circulant needs n >= 1")
    residues = _canonical_connection_set(n, connections)
    a = np.zeros((n, n))
    for u in range(n):
        for r in residues:
            a[u, (u + r) % n] = 1.0
    if name is None:
        reps = sorted({min(r, n - r) for r in residues})
        name = f"circ({n};{','.join(str(r) for r in reps)})"
    return Graph(a, name=name)


def cubelike(d: int, generators) -> Graph:
    """Cayley graph of Z_2^d with the given set of nonzero generators."""
    if d < 1:
        raise InputError("cubelike graph needs d >= 1")
    if 2 ** d > DENSE_VERTEX_LIMIT:
        raise GuardError(f"2^{d} vertices exceed the dense limit {DENSE_VERTEX_LIMIT}")
    gens = []
    seen = set()
    for g in generators:
        if not isinstance(g, (int, np.integer)) or isinstance(g, bool):
            raise InputError("generators must be integers")
        g = int(g)
        if not 0 < g < 2 ** d:
            raise InputError(f"generator {g} outside (0, 2^{d})")
        if g in seen:
            raise InputError(f"duplicate generator {g}")
        seen.add(g)
        gens.append(g)
    if not gens:
        raise InputError("generator set may not be empty")
    n = 2 ** d
    a = np.zeros((n, n))
    for u in range(n):
        for g in gens:
            a[u, u ^ g] = 1.0
    gen_str = ",".join(format(g, f"0{d}b") for g in sorted(gens))
    return Graph(a, name=f"cubelike({d};{gen_str})")


def hypercube(d: int) -> Graph:
    """The d-cube: cube-like graph on the standard generating set."""
    if d < 1:
        raise InputError("hypercube needs d >= 1")
    g = cubelike(d, [1 << i for i in range(d)])
    return g.with_name(f"Q{d}")


def weighted_p4(a: float, b: float) -> Graph:
    """4-vertex path with unit outer edges, loops of weight a, middle edge b."""
    if not (a > 0 and b > 0 and math.isfinite(a) and math.isfinite(b)):
        raise InputError("weights a, b must be positive and finite")
    m = np.array([
        [0.0, 1.0, 0.0, 0.0],
        [1.0, a, b, 0.0],
        [0.0, b, a, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ])
    return Graph(m, name=f"wp4({a:.12g},{b:.12g})")


def weighted_p5(a: float, b: float) -> Graph:
    """5-vertex path with outer edge weights a and inner edge weights b."""
    if not (a > 0 and b > 0 and math.isfinite(a) and math.isfinite(b)):
        raise InputError("weights a, b must be positive and finite")
    m = np.array([
        [0.0, a, 0.0, 0.0, 0.0],
        [a, 0.0, b, 0.0, 0.0],
        [0.0, b, 0.0, b, 0.0],
        [0.0, 0.0, b, 0.0, a],
        [0.0, 0.0, 0.0, a, 0.0],
    ])
    return Graph(m, name=f"wp5({a:.12g},{b:.12g})")


def christandl_path(n: int) -> Graph:
    """Weighted (n+1)-vertex path with edge (j, j+1) of weight sqrt((j+1)(n-j))."""
    if n < 1:
        raise InputError("christandl path needs n >= 1")
    a = np.zeros((n + 1, n + 1))
    for j in range(n):
        w = math.sqrt((j + 1) * (n - j))
        a[j, j + 1] = a[j + 1, j] = w
    return Graph(a, name=f"christandl({n})")


@dataclass(frozen=True)
class GodsilFamily:
    """Double-cone circulant sandwich with apex-to-apex state transfer."""

    graph: Graph
    a_vertex: int
    b_vertex: int
    circulant_a: Graph
    circulant_b: Graph
    inner_size: int
    loop_degree: int
    connection_degree: int


def godsil_family(m: int, connection=None) -> GodsilFamily:
    """Build the (2+2n)-vertex family member for parameter m >= 2.

    n = 15*2^(2(m-2)); the two apexes cone over two non-isomorphic a-regular
    circulants joined through a b-regular circulant connection, with
    a = 6*2^(m-2) and b = 8*2^(m-2).  The default connection set is
    {±1, ..., ±b/2}; any symmetric set of exactly b residues may be supplied.
    """
    if m < 2:
        raise InputError("family parameter m must be >= 2")
    n = 15 * 2 ** (2 * (m - 2))
    deg_a = 6 * 2 ** (m - 2)
    deg_b = 8 * 2 ** (m - 2)
    total = 2 + 2 * n
    if total > DENSE_VERTEX_LIMIT:
        raise GuardError(f"{total} vertices exceed the dense limit {DENSE_VERTEX_LIMIT}")
    half = n // 2
    set_a = [s * r for r in range(half + 1, half + deg_a // 2 + 1) for s in (1, -1)]
    set_b = [s * r for r in range(1, deg_a // 2 + 1) for s in (1, -1)]
    circ_a = circulant(n, set_a)
    circ_b = circulant(n, set_b)
    if connection is None:
        default = [s * r for r in range(1, deg_b // 2 + 1) for s in (1, -1)]
        conn_set = _canonical_connection_set(n, default)
    else:
        conn_set = _canonical_connection_set(n, connection)
    if len(conn_set) != deg_b:
        raise InputError(
            f"connection set must have degree {deg_b}, got {len(conn_set)}")
    conn = np.zeros((n, n))
    for u in range(n):
        for r in conn_set:
            conn[u, (u + r) % n] = 1.0

    a = np.zeros((total, total))
    a[0, 1:n + 1] = 1.0
    a[1:n + 1, 0] = 1.0
    a[1:n + 1, 1:n + 1] = circ_a.adjacency
    a[1:n + 1, n + 1:2 * n + 1] = conn
    a[n + 1:2 * n + 1, 1:n + 1] = conn.T
    a[n + 1:2 * n + 1, n + 1:2 * n + 1] = circ_b.adjacency
    a[n + 1:2 * n + 1, total - 1] = 1.0
    a[total - 1, n + 1:2 * n + 1] = 1.0
    graph = Graph(a, name=f"godsil(m={m})")
    return GodsilFamily(
        graph=graph,
        a_vertex=0,
        b_vertex=total - 1,
        circulant_a=circ_a,
        circulant_b=circ_b,
        inner_size=n,
        loop_degree=deg_a,
        connection_degree=deg_b,
    )


# ---------------------------------------------------------------------------
# Combinators
# ---------------------------------------------------------------------------

def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product: adjacency A(G) ⊗ I + I ⊗ A(H).

    Vertex (u, v) is indexed u*|V(H)| + v; diagonal loop weights add.
    """
    a = np.kron(g.adjacency, np.eye(h.n)) + np.kron(np.eye(g.n), h.adjacency)
    name = None
    if g.name is not None and h.name is not None:
        name = f"{g.name}*{h.name}"
    return Graph(a, name=name)


def cartesian_power(g: Graph, k: int, limit: int = DENSE_VERTEX_LIMIT) -> Graph:
    """k-fold Cartesian power of g, guarded at `limit` vertices."""
    if k < 1:
        raise InputError("cartesian power needs k >= 1")
    if g.n ** k > limit:
        raise GuardError(f"{g.n}^{k} vertices exceed the limit {limit}")
    out = g
    for _ in range(k - 1):
        out = cartesian_product(out, g)
    if g.name is not None:
        out = out.with_name(f"{g.name}^{k}")
    return out


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus all unit-weight cross edges."""
    n, m = g.n, h.n
    a = np.zeros((n + m, n + m))
    a[:n, :n] = g.adjacency
    a[n:, n:] = h.adjacency
    a[:n, n:] = 1.0
    a[n:, :n] = 1.0
    name = None
    if g.name is not None and h.name is not None:
        name = f"{g.name}+{h.name}"
    return Graph(a, name=name)


def complement(g: Graph) -> Graph:
    """Unit edge wherever the off-diagonal weight was zero; diagonal zeroed."""
    a = np.where(g.adjacency == 0.0, 1.0, 0.0)
    np.fill_diagonal(a, 0.0)
    name = f"~{g.name}" if g.name is not None else None
    return Graph(a, name=name)


def scale(g: Graph, c: float) -> Graph:
    """Multiply every weight by a positive factor c."""
    if not (isinstance(c, (int, float, np.floating)) and math.isfinite(c) and c > 0):
        raise InputError("scale factor must be positive and finite")
    name = f"{float(c):.12g}*{g.name}" if g.name is not None else None
    return Graph(g.adjacency * float(c), name=name)


# ---------------------------------------------------------------------------
# Product index helpers (row-major, left factor major)
# ---------------------------------------------------------------------------

def flatten_index(sizes, coords) -> int:
    """Flatten a coordinate tuple over factor sizes into a product index."""
    if len(sizes) != len(coords):
        raise InputError("sizes and coordinates must have equal length")
    idx = 0
    for size, c in zip(sizes, coords):
        if not 0 <= c < size:
            raise InputError(f"coordinate {c} out of range [0, {size})")
        idx = idx * size + c
    return idx


def power_index(n: int, coords) -> int:
    """Flatten coordinates of a k-fold power of an n-vertex graph."""
    return flatten_index([n] * len(coords), coords)


def power_coords(n: int, k: int, index: int) -> tuple[int, ...]:
    """Inverse of power_index."""
    coords = []
    for _ in range(k):
        coords.append(index % n)
        index //= n
    if index:
        raise InputError("index out of range for this power")
    return tuple(reversed(coords))


# ---------------------------------------------------------------------------
# Generic dispatcher (used by the CLI)
# ---------------------------------------------------------------------------

def build(family: str, **params) -> Graph:
    """Build a named family from keyword parameters; deterministic output."""
    fam = family.lower().replace("_", "-")
    try:
        if fam == "complete":
            return complete(int(params.pop("n")), **params)
        if fam == "path":
            return path(int(params.pop("n")), **params)
        if fam == "cycle":
            return cycle(int(params.pop("n")), **params)
        if fam == "hypercube":
            return hypercube(int(params.pop("d")), **params)
        if fam == "circulant":
            n = int(params.pop("n"))
            conns = params.pop("s")
            if isinstance(conns, str):
                conns = [int(tok) for tok in conns.split(",") if tok]
            return circulant(n, conns, **params)
        if fam == "cubelike":
            gens = params.pop("gens")
            if isinstance(gens, str):
                tokens = [tok for tok in gens.split(",") if tok]
                if not tokens:
                    raise InputError("generator list may not be empty")
                widths = {len(tok) for tok in tokens}
                if len(widths) != 1:
                    raise InputError("all generator bit strings need equal length")
                d = params.pop("d", widths.pop())
                gens = [int(tok, 2) for tok in tokens]
            else:
                d = params.pop("d")
            return cubelike(int(d), gens, **params)
        if fam == "weighted-p4":
            return weighted_p4(float(params.pop("a")), float(params.pop("b")), **params)
        if fam == "weighted-p5":
            return weighted_p5(float(params.pop("a")), float(params.pop("b")), **params)
        if fam == "christandl":
            return christandl_path(int(params.pop("n")), **params)
        if fam == "godsil":
            m = int(params.pop("m"))
            conn = params.pop("c", None)
            if isinstance(conn, str):
                conn = [int(tok) for tok in conn.split(",") if tok]
            return godsil_family(m, connection=conn, **params).graph
    except KeyError as exc:
        raise InputError(f"family {family!r} is missing parameter {exc}") from None
    except TypeError as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(str(exc)) from None
    raise InputError(f"unknown graph family {family!r}")
