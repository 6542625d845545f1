import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def random_symmetric(rng, n, loops=True):
    m = rng.normal(size=(n, n))
    m = (m + m.T) / 2.0
    if not loops:
        np.fill_diagonal(m, 0.0)
    return m


def random_weighted_graph(rng, n, density=0.5, loops=False):
    """Random nonnegative symmetric matrix wrapped as a Graph."""
    from pstlab.graphs import Graph

    w = rng.uniform(0.1, 3.0, size=(n, n))
    mask = rng.random(size=(n, n)) < density
    m = np.where(mask, w, 0.0)
    m = np.triu(m, 0 if loops else 1)
    m = m + np.triu(m, 1).T
    if not loops:
        np.fill_diagonal(m, 0.0)
    return Graph(m)


def random_connected_unweighted(rng, n):
    """Connected 0/1 graph on n vertices (rejection sampling)."""
    from pstlab.graphs import Graph
    from pstlab.partitions import bfs_distances

    while True:
        m = np.triu((rng.random(size=(n, n)) < 0.5).astype(float), 1)
        m = m + m.T
        g = Graph(m)
        if n == 1 or (bfs_distances(g, 0) >= 0).all():
            return g
