"""Graph families, combinators, and their documented regularities."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pstlab import graphs as gr
from pstlab.errors import GuardError, InputError
from pstlab.symmetry import is_isomorphic

SQRT15 = math.sqrt(15.0)


def test_hypercube3_shape():
    g = gr.hypercube(3)
    assert g.n == 8
    assert g.edge_count() == 12
    assert np.array_equal(g.degrees(), np.full(8, 3.0))


def test_circulant_15_123():
    g = gr.circulant(15, [1, 2, 3, -1, -2, -3])
    assert np.array_equal(g.degrees(), np.full(15, 6.0))
    assert g.edge_count() == 45


def test_circulant_accepts_positive_representatives():
    a = gr.circulant(8, [1, 3, -1, -3])
    b = gr.circulant(8, [1, 3, 5, 7])  # -1 = 7, -3 = 5 mod 8
    assert np.array_equal(a.adjacency, b.adjacency)


def test_christandl_weights():
    g = gr.christandl_path(3)
    w = [g.adjacency[j, j + 1] for j in range(3)]
    assert w == [math.sqrt(3.0), 2.0, math.sqrt(3.0)]


def test_cartesian_square_is_c4():
    k2 = gr.complete(2)
    assert is_isomorphic(gr.cartesian_product(k2, k2), gr.cycle(4))


def test_cartesian_cube_matches_hypercube_indexing():
    k2 = gr.complete(2)
    cube = gr.cartesian_product(gr.cartesian_product(k2, k2), k2)
    assert np.array_equal(cube.adjacency, gr.hypercube(3).adjacency)


def test_p3_lattice():
    g = gr.cartesian_product(gr.path(3), gr.path(3))
    assert g.n == 9
    assert sorted(g.degrees().tolist()) == [2, 2, 2, 2, 3, 3, 3, 3, 4]
    # center of the lattice is (1,1) -> index 4
    assert g.degrees()[4] == 4


def test_join_cone_is_star():
    star = gr.join(gr.complete(1), gr.complement(gr.complete(2)))
    assert is_isomorphic(star, gr.path(3))


def test_complement_of_complete_is_empty():
    g = gr.complement(gr.complete(4))
    assert g.edge_count() == 0


def test_double_cone_over_c4():
    g = gr.join(gr.complement(gr.complete(2)), gr.cycle(4))
    assert g.n == 6
    assert g.edge_count() == 12


def test_scale_identity_and_inverse(rng):
    k2 = gr.complete(2)
    assert np.array_equal(gr.scale(k2, 1.0).adjacency, k2.adjacency)
    from conftest import random_weighted_graph

    g = random_weighted_graph(rng, 7)
    assert np.array_equal(gr.scale(gr.scale(g, 2.0), 0.5).adjacency, g.adjacency)


def test_scale_christandl_to_p5():
    scaled = gr.scale(gr.christandl_path(4), 1.0 / math.sqrt(2.0))
    target = gr.weighted_p5(math.sqrt(2.0), math.sqrt(3.0))
    assert np.abs(scaled.adjacency - target.adjacency).max() < 1e-12


def test_weighted_p4_matrix():
    a, b = 8.0 / SQRT15, 6.0 / SQRT15
    g = gr.weighted_p4(a, b)
    expected = np.array([
        [0, 1, 0, 0],
        [1, a, b, 0],
        [0, b, a, 1],
        [0, 0, 1, 0],
    ])
    assert np.array_equal(g.adjacency, expected)


def test_godsil_family_m2():
    fam = gr.godsil_family(2)
    g = fam.graph
    assert g.n == 32
    assert (fam.a_vertex, fam.b_vertex) == (0, 31)
    assert g.degrees()[fam.a_vertex] == 15
    assert g.degrees()[fam.b_vertex] == 15
    # apex a sees exactly the first circulant block
    assert np.array_equal(np.nonzero(g.adjacency[0])[0], np.arange(1, 16))
    assert np.array_equal(fam.circulant_b.adjacency,
                          gr.circulant(15, [1, 2, 3, -1, -2, -3]).adjacency)


def test_godsil_connection_override_and_validation():
    alt = gr.godsil_family(2, connection=[2, 3, 5, 7, -2, -3, -5, -7])
    assert alt.graph.n == 32
    assert np.array_equal(alt.graph.degrees(), np.full(32, 15.0))
    with pytest.raises(InputError):
        gr.godsil_family(2, connection=[1, -1])  # degree 2, needs 8


def test_build_dispatcher_deterministic():
    g1 = gr.build("hypercube", d=4)
    g2 = gr.build("hypercube", d="4")
    assert np.array_equal(g1.adjacency, g2.adjacency)
    assert g1.name == g2.name
    g3 = gr.build("cubelike", gens="100,010,001,011")
    assert g3.n == 8
    with pytest.raises(InputError):
        gr.build("moebius", n=5)
    with pytest.raises(InputError):
        gr.build("hypercube", n=3)


def test_family_regularity():
    assert np.array_equal(gr.cubelike(4, [1, 2, 4, 8, 15]).degrees(), np.full(16, 5.0))
    assert np.array_equal(gr.complete(6).degrees(), np.full(6, 5.0))
    assert np.array_equal(gr.cycle(7).degrees(), np.full(7, 2.0))


def test_cartesian_associativity(rng):
    from conftest import random_weighted_graph

    g = random_weighted_graph(rng, 2, loops=True)
    h = random_weighted_graph(rng, 3)
    k = random_weighted_graph(rng, 4)
    left = gr.cartesian_product(gr.cartesian_product(g, h), k)
    right = gr.cartesian_product(g, gr.cartesian_product(h, k))
    assert np.abs(left.adjacency - right.adjacency).max() < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=7), st.integers(min_value=0))
def test_complement_involution(n, seed):
    from conftest import random_connected_unweighted

    g = random_connected_unweighted(np.random.default_rng(seed), n)
    back = gr.complement(gr.complement(g))
    assert np.array_equal(back.adjacency, g.adjacency)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=5), min_size=1, max_size=4),
       st.integers(min_value=0))
def test_flatten_index_roundtrip(sizes, seed):
    rng = np.random.default_rng(seed)
    coords = tuple(int(rng.integers(0, s)) for s in sizes)
    idx = gr.flatten_index(sizes, coords)
    total = 1
    for s in sizes:
        total *= s
    assert 0 <= idx < total
    if len(set(sizes)) == 1:
        assert gr.power_coords(sizes[0], len(sizes), idx) == coords


def test_loops_propagate_through_products():
    loop = gr.Graph([[2.0]])
    g = gr.cartesian_product(loop, gr.complete(2))
    assert np.array_equal(np.diag(g.adjacency), np.array([2.0, 2.0]))
    both = gr.cartesian_product(loop, loop)
    assert both.adjacency[0, 0] == 4.0


def test_graph_validation_errors():
    with pytest.raises(InputError):
        gr.Graph([[0.0, 1.0], [2.0, 0.0]])  # asymmetric
    with pytest.raises(InputError):
        gr.Graph([[0.0, -1.0], [-1.0, 0.0]])  # negative
    with pytest.raises(InputError):
        gr.Graph(np.full((2, 2), np.nan))
    with pytest.raises(InputError):
        gr.circulant(9, [])
    with pytest.raises(InputError):
        gr.circulant(9, [1])  # not closed under negation
    with pytest.raises(InputError):
        gr.cubelike(3, [1, 1, 2])
    with pytest.raises(InputError):
        gr.weighted_p4(0.0, 1.0)
    with pytest.raises(InputError):
        gr.scale(gr.complete(2), 0.0)
    with pytest.raises(InputError):
        gr.scale(gr.complete(2), math.inf)


def test_guards():
    with pytest.raises(GuardError):
        gr.hypercube(13)
    with pytest.raises(GuardError):
        gr.cartesian_power(gr.complete(2), 13)
    with pytest.raises(GuardError):
        gr.godsil_family(6)


def test_adjacency_is_read_only():
    g = gr.complete(3)
    with pytest.raises(ValueError):
        g.adjacency[0, 1] = 5.0
