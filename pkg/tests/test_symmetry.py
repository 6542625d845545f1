"""Automorphism search, swap witnesses, triangle census, isomorphism."""

import itertools
import math

import numpy as np
import pytest

from pstlab import graphs as gr
from pstlab import symmetry as sy
from pstlab.errors import GuardError
from pstlab.feder import feder_graph
from pstlab.spectral import deleted_cospectral

from conftest import random_connected_unweighted


def brute_force_automorphisms(g):
    a = g.adjacency
    out = []
    for perm in itertools.permutations(range(g.n)):
        p = list(perm)
        if np.array_equal(a[np.ix_(p, p)], a):
            out.append(perm)
    return out


def brute_force_triangles(g):
    sup = g.support()
    n = g.n
    counts = [0] * n
    for i, j, k in itertools.combinations(range(n), 3):
        if sup[i, j] and sup[j, k] and sup[i, k]:
            counts[i] += 1
            counts[j] += 1
            counts[k] += 1
    return counts


def test_group_orders():
    assert sy.automorphisms(gr.cycle(5)).order == 10
    assert sy.automorphisms(gr.complete(4)).order == 24
    assert sy.automorphisms(gr.hypercube(3)).order == 48
    wp4 = gr.weighted_p4(8 / math.sqrt(15), 6 / math.sqrt(15))
    assert sy.automorphisms(wp4).order == 2


def test_soundness_of_emitted_permutations():
    d6 = feder_graph(gr.path(3), 2).graph  # irrational weights
    result = sy.automorphisms(d6)
    a = d6.adjacency
    for perm in result.permutations:
        p = list(perm)
        assert np.abs(a[np.ix_(p, p)] - a).max() <= 1e-9
    assert result.order >= 2  # mirror symmetry at minimum


def test_completeness_against_brute_force(rng):
    for _ in range(100):
        n = int(rng.integers(2, 7))
        g = random_connected_unweighted(rng, n)
        expected = sorted(brute_force_automorphisms(g))
        got = sy.automorphisms(g)
        assert got.exact
        assert list(got.permutations) == expected


def test_limit_truncation():
    result = sy.automorphisms(gr.complete(5), limit=10)
    assert not result.exact
    assert result.order is None
    assert len(result.permutations) == 10


def test_exists_swap_examples():
    assert sy.exists_swap(gr.hypercube(3), 0, 7)
    assert sy.exists_swap(gr.path(3), 0, 2)
    fam = gr.godsil_family(2)
    assert not sy.exists_swap(fam.graph, fam.a_vertex, fam.b_vertex)


def test_swap_witness_is_valid():
    perm = sy.find_swap(gr.hypercube(3), 0, 7)
    assert perm is not None and perm[0] == 7
    a = gr.hypercube(3).adjacency
    assert np.array_equal(a[np.ix_(list(perm), list(perm))], a)


def test_swap_on_weighted_diamond():
    d6 = feder_graph(gr.path(3), 2).graph
    assert sy.exists_swap(d6, 0, 5)  # the two all-bosons-at-an-end vertices


def test_swap_implies_deleted_cospectral(rng):
    for _ in range(20):
        g = random_connected_unweighted(rng, int(rng.integers(3, 7)))
        for a in range(g.n):
            for b in range(a + 1, g.n):
                if sy.exists_swap(g, a, b):
                    assert deleted_cospectral(g, a, b)


def test_triangle_census_circulants():
    fam = gr.godsil_family(2)
    census_a = sy.triangle_census(fam.circulant_a)
    assert np.array_equal(census_a, np.ones(15, dtype=np.int64))
    census_b = sy.triangle_census(fam.circulant_b)
    assert len(set(census_b.tolist())) == 1
    assert census_b[0] >= 2
    # independent O(n^3) oracle
    assert census_a.tolist() == brute_force_triangles(fam.circulant_a)
    assert census_b.tolist() == brute_force_triangles(fam.circulant_b)


def test_triangle_census_complete4():
    assert sy.triangle_census(gr.complete(4)).tolist() == [3, 3, 3, 3]
    assert sy.triangle_total(gr.complete(4)) == 4


def test_isomorphism_examples():
    fam = gr.godsil_family(2)
    assert not sy.is_isomorphic(fam.circulant_a, fam.circulant_b)
    assert sy.is_isomorphic(gr.cartesian_product(gr.complete(2), gr.complete(2)),
                            gr.cycle(4))
    star = gr.join(gr.complete(1), gr.complement(gr.complete(3)))
    assert not sy.is_isomorphic(gr.path(4), star)
    assert not sy.is_isomorphic(gr.path(4), gr.path(5))


def test_isomorphism_respects_weights():
    g = gr.weighted_p5(1.0, 2.0)
    h = gr.weighted_p5(2.0, 1.0)
    assert not sy.is_isomorphic(g, h)
    assert sy.is_isomorphic(g, gr.weighted_p5(1.0, 2.0))


def test_isomorphic_graphs_share_census():
    g = gr.cycle(6)
    perm = [3, 1, 4, 0, 5, 2]
    h = gr.Graph(g.adjacency[np.ix_(perm, perm)])
    assert sy.is_isomorphic(g, h)
    assert sorted(sy.triangle_census(g).tolist()) == sorted(
        sy.triangle_census(h).tolist())


def test_search_guard():
    big = gr.complement(gr.complete(70))
    with pytest.raises(GuardError):
        sy.automorphisms(big)
    with pytest.raises(GuardError):
        sy.is_isomorphic(big, big)
