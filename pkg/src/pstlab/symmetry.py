"""Automorphism and isomorphism search for small weighted graphs.

The search is individualization + joint color refinement: domain and range
colorings are refined together over weight classes until stable, a smallest
non-singleton class is split, and candidates are tried depth-first (cells
ordered by size then color, vertices ascending).  Every map that survives to
a discrete coloring is verified entrywise against the adjacency matrices
before being emitted, so quantization of weights can never produce a false
positive.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass

import numpy as np

from pstlab.errors import GuardError, InputError
from pstlab.graphs import Graph

SEARCH_VERTEX_LIMIT = 64
ADJACENCY_TOL = 1e-9
# Weights constructed from the same radicals agree to well below 1e-9; the
# rounding groups them while the final entrywise check keeps the search sound.
WEIGHT_DECIMALS = 9
DEFAULT_LIMIT = 1_000_000


def _class_matrices(graphs: list[Graph]) -> list[np.ndarray]:
    rounded = [np.round(g.adjacency, WEIGHT_DECIMALS) + 0.0 for g in graphs]
    values = np.unique(np.concatenate([r.ravel() for r in rounded]))
    return [np.searchsorted(values, r) for r in rounded]


def _signature(u: int, w: np.ndarray, colors: list[int], zero_id: int):
    row = w[u]
    neigh = sorted((colors[v], int(row[v]))
                   for v in range(len(colors))
                   if v != u and row[v] != zero_id)
    return (colors[u], int(row[u]), tuple(neigh))


def _refine_joint(wd: np.ndarray, wr: np.ndarray,
                  dom: list[int], ran: list[int], zero_id: int):
    """Refine both colorings in a shared id space; None when they diverge."""
    prev_count = -1
    while True:
        sigs_d = [_signature(u, wd, dom, zero_id) for u in range(len(dom))]
        sigs_r = [_signature(u, wr, ran, zero_id) for u in range(len(ran))]
        table = {sig: i for i, sig in enumerate(sorted(set(sigs_d) | set(sigs_r)))}
        new_d = [table[s] for s in sigs_d]
        new_r = [table[s] for s in sigs_r]
        if Counter(new_d) != Counter(new_r):
            return None
        count = len(table)
        if count == prev_count:
            return new_d, new_r
        prev_count = count
        dom, ran = new_d, new_r


class _Search:
    def __init__(self, a_dom: np.ndarray, a_ran: np.ndarray,
                 wd: np.ndarray, wr: np.ndarray,
                 first_only: bool, limit: int):
        self.a_dom = a_dom
        self.a_ran = a_ran
        self.wd = wd
        self.wr = wr
        self.first_only = first_only
        self.limit = limit
        self.found: list[tuple[int, ...]] = []
        self.truncated = False
        self.zero_id = -1

    def run(self, dom_marks: list[int], ran_marks: list[int], next_mark: int):
        self._descend(dom_marks, ran_marks, next_mark)

    def _done(self) -> bool:
        if self.first_only and self.found:
            return True
        if len(self.found) >= self.limit:
            self.truncated = True
            return True
        return False

    def _descend(self, dom_marks, ran_marks, next_mark) -> None:
        state = _refine_joint(self.wd, self.wr, dom_marks, ran_marks, self.zero_id)
        if state is None:
            return
        dom, ran = state
        n = len(dom)
        classes_d = defaultdict(list)
        classes_r = defaultdict(list)
        for u, c in enumerate(dom):
            classes_d[c].append(u)
        for v, c in enumerate(ran):
            classes_r[c].append(v)
        open_classes = [(len(vs), c) for c, vs in classes_d.items() if len(vs) > 1]
        if not open_classes:
            perm = tuple(classes_r[c][0] for c in dom)
            image = self.a_ran[np.ix_(perm, perm)]
            if np.abs(self.a_dom - image).max() <= ADJACENCY_TOL:
                self.found.append(perm)
            return
        _, color = min(open_classes)
        u = classes_d[color][0]
        for v in classes_r[color]:
            dom_next = list(dom_marks)
            ran_next = list(ran_marks)
            dom_next[u] = next_mark
            ran_next[v] = next_mark
            self._descend(dom_next, ran_next, next_mark + 1)
            if self._done():
                return


def _prepare_single(g: Graph) -> _Search:
    if g.n > SEARCH_VERTEX_LIMIT:
        raise GuardError(f"search guarded at {SEARCH_VERTEX_LIMIT} vertices")
    (w,) = _class_matrices([g])
    s = _Search(g.adjacency, g.adjacency, w, w, first_only=False, limit=DEFAULT_LIMIT)
    s.zero_id = _zero_class_id([g], [w])
    return s


def _zero_class_id(graphs: list[Graph], mats: list[np.ndarray]) -> int:
    for g, w in zip(graphs, mats):
        zeros = g.adjacency == 0.0
        if zeros.any():
            return int(w[zeros][0])
    return -1  # no zero weight anywhere: treat every entry as a neighbor


@dataclass(frozen=True)
class AutomorphismSearch:
    permutations: tuple[tuple[int, ...], ...]
    order: int | None  # exact group order when fully enumerated
    exact: bool


def automorphisms(g: Graph, limit: int = DEFAULT_LIMIT) -> AutomorphismSearch:
    """Enumerate automorphisms (up to ``limit``) with refinement pruning.

    Every returned permutation satisfies the adjacency-preservation check
    entrywise; the order is exact iff the search was not truncated.
    """
    if limit < 1:
        raise InputError("limit must be positive")
    search = _prepare_single(g)
    search.limit = limit
    search.run([0] * g.n, [0] * g.n, 1)
    perms = tuple(sorted(search.found))
    exact = not search.truncated
    return AutomorphismSearch(perms, len(perms) if exact else None, exact)


def find_swap(g: Graph, a: int, b: int) -> tuple[int, ...] | None:
    """An automorphism mapping a to b, or None if none exists."""
    a = g.check_vertex(a)
    b = g.check_vertex(b)
    if a == b:
        raise InputError("vertices must be distinct")
    search = _prepare_single(g)
    search.first_only = True
    dom = [0] * g.n
    ran = [0] * g.n
    dom[a] = 1
    ran[b] = 1
    search.run(dom, ran, 2)
    return search.found[0] if search.found else None


def exists_swap(g: Graph, a: int, b: int) -> bool:
    """True iff some automorphism exchanges vertex a into vertex b."""
    return find_swap(g, a, b) is not None


def triangle_census(g: Graph) -> np.ndarray:
    """Per-vertex triangle counts on the 0/1 support of off-diagonal weights."""
    b = g.support().astype(np.float64)
    closed = b @ b @ b
    return np.rint(np.diag(closed) / 2.0).astype(np.int64)


def triangle_total(g: Graph) -> int:
    return int(triangle_census(g).sum()) // 3


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Weight-preserving vertex bijection test for small graphs."""
    if g.n > SEARCH_VERTEX_LIMIT or h.n > SEARCH_VERTEX_LIMIT:
        raise GuardError(f"search guarded at {SEARCH_VERTEX_LIMIT} vertices")
    if g.n != h.n:
        return False
    if sorted(triangle_census(g).tolist()) != sorted(triangle_census(h).tolist()):
        return False
    wd, wr = _class_matrices([g, h])
    search = _Search(g.adjacency, h.adjacency, wd, wr, first_only=True,
                     limit=DEFAULT_LIMIT)
    search.zero_id = _zero_class_id([g, h], [wd, wr])
    search.run([0] * g.n, [0] * h.n, 1)
    return bool(search.found)
