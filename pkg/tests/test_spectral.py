"""Eigendecomposition, propagators, fidelity, and the analytic path spectra."""

import math

import numpy as np
import pytest

from pstlab import graphs as gr
from pstlab import spectral as sp
from pstlab.errors import InputError

from conftest import random_weighted_graph

SQRT15 = math.sqrt(15.0)


def k2_propagator(t):
    """Closed-form 2x2 walk propagator, used as an independent oracle."""
    return np.array([
        [math.cos(t), -1j * math.sin(t)],
        [-1j * math.sin(t), math.cos(t)],
    ])


def test_k2_eigenvalues():
    spec = sp.eigendecompose(gr.complete(2))
    assert np.abs(spec.eigenvalues - np.array([-1.0, 1.0])).max() < 1e-12


def test_p3_eigenvalues():
    spec = sp.eigendecompose(gr.path(3))
    expected = np.array([-math.sqrt(2.0), 0.0, math.sqrt(2.0)])
    assert np.abs(spec.eigenvalues - expected).max() < 1e-12


def test_weighted_p4_matches_analytic():
    a, b = 8.0 / SQRT15, 6.0 / SQRT15
    numeric = sp.eigendecompose(gr.weighted_p4(a, b))
    analytic = sp.p4_spectrum(a, b)
    assert np.abs(numeric.eigenvalues - analytic.eigenvalues).max() < 1e-10


def test_propagator_identity_at_zero(rng):
    g = random_weighted_graph(rng, 6)
    u = sp.propagator(sp.eigendecompose(g), 0.0).matrix
    assert np.abs(u - np.eye(6)).max() < 1e-12


def test_k2_off_diagonal_amplitude():
    u = sp.propagator(sp.eigendecompose(gr.complete(2)), math.pi / 2).matrix
    assert abs(abs(u[1, 0]) - 1.0) < 1e-12
    assert np.abs(u - k2_propagator(math.pi / 2)).max() < 1e-12


def test_hypercube4_corner_amplitude_vs_tensor_oracle():
    t = math.pi / 2
    u1 = k2_propagator(t)
    oracle = u1
    for _ in range(3):
        oracle = np.kron(oracle, u1)
    u = sp.propagator(sp.eigendecompose(gr.hypercube(4)), t).matrix
    assert np.abs(u - oracle).max() < 1e-9
    assert abs(abs(u[15, 0]) - 1.0) < 1e-10


def test_fidelity_examples():
    assert abs(sp.fidelity(gr.complete(2), 0, 1, math.pi / 2) - 1.0) < 1e-12
    p5 = gr.weighted_p5(math.sqrt(2.0), math.sqrt(3.0))
    assert abs(sp.fidelity(p5, 0, 4, math.pi / math.sqrt(2.0)) - 1.0) < 1e-10
    wp4 = gr.weighted_p4(8.0 / SQRT15, 6.0 / SQRT15)
    assert abs(sp.fidelity(wp4, 0, 3, SQRT15 * math.pi / 2.0) - 1.0) < 1e-10


def test_fidelity_errors():
    with pytest.raises(InputError):
        sp.fidelity(gr.complete(2), 0, 2, 1.0)
    with pytest.raises(InputError):
        sp.fidelity(gr.complete(2), 0, 1, math.nan)


def test_p4_spectrum_values():
    spec = sp.p4_spectrum(8.0 / SQRT15, 6.0 / SQRT15)
    assert abs(spec.delta_plus - 8.0 / SQRT15) < 1e-12
    assert abs(spec.delta_minus - 4.0 / SQRT15) < 1e-12
    # equal weights collapse the antisymmetric half-sum
    for a in (0.3, 1.0, 4.2):
        assert abs(sp.p4_spectrum(a, a).delta_minus - 1.0) < 1e-12


def test_p4_eigenvectors_are_eigenvectors():
    a, b = 1.7, 0.4
    spec = sp.p4_spectrum(a, b)
    m = gr.weighted_p4(a, b).adjacency
    res = m @ spec.eigenvectors - spec.eigenvectors * spec.eigenvalues
    assert np.abs(res).max() < 1e-12
    assert np.abs(spec.eigenvectors.T @ spec.eigenvectors - np.eye(4)).max() < 1e-12


def test_p5_spectrum_values():
    spec = sp.p5_spectrum(math.sqrt(2.0), math.sqrt(3.0))
    s2 = math.sqrt(2.0)
    expected = np.array([-2 * s2, -s2, 0.0, s2, 2 * s2])
    assert np.abs(spec.eigenvalues - expected).max() < 1e-12
    # for the sqrt(2) member the gap factors as a*sqrt(1+b^2)
    assert abs(spec.delta - s2 * 2.0) < 1e-12


def test_p5_eigenvectors_are_eigenvectors():
    a, b = 0.9, 2.3
    spec = sp.p5_spectrum(a, b)
    m = gr.weighted_p5(a, b).adjacency
    res = m @ spec.eigenvectors - spec.eigenvectors * spec.eigenvalues
    assert np.abs(res).max() < 1e-12
    assert np.abs(spec.eigenvectors.T @ spec.eigenvectors - np.eye(5)).max() < 1e-12


def test_analytic_numeric_agreement_on_grid(rng):
    for _ in range(100):
        a, b = rng.uniform(1e-3, 5.0, size=2)
        n4 = sp.eigendecompose(gr.weighted_p4(a, b), use_cache=False)
        assert np.abs(n4.eigenvalues - sp.p4_spectrum(a, b).eigenvalues).max() < 1e-10
        n5 = sp.eigendecompose(gr.weighted_p5(a, b), use_cache=False)
        assert np.abs(n5.eigenvalues - sp.p5_spectrum(a, b).eigenvalues).max() < 1e-10


def test_pst_condition_p4():
    a, b = 8.0 / SQRT15, 6.0 / SQRT15
    assert sp.pst_condition_p4(a, b, SQRT15 * math.pi / 2) is sp.P4Condition.CONDITION_A
    assert sp.pst_condition_p4(b, a, SQRT15 * math.pi / 4) is sp.P4Condition.CONDITION_B
    assert sp.pst_condition_p4(1.0, 1.0, 0.1) is sp.P4Condition.NEITHER


def test_deleted_cospectral():
    q3 = gr.hypercube(3)
    assert sp.deleted_cospectral(q3, 0, 7)
    # path minus an end is P3 (spectrum -sqrt2,0,sqrt2); minus an inner vertex
    # it is K1 + K2 (spectrum -1,0,1)
    p4 = gr.path(4)
    assert not sp.deleted_cospectral(p4, 0, 1)
    fam = gr.godsil_family(2)
    assert sp.deleted_cospectral(fam.graph, fam.a_vertex, fam.b_vertex)


def test_deleted_subgraph_spectra_oracle():
    p4 = gr.path(4).adjacency
    end = np.delete(np.delete(p4, 0, 0), 0, 1)
    inner = np.delete(np.delete(p4, 1, 0), 1, 1)
    w_end, _ = sp.decompose_symmetric(end)
    w_inner, _ = sp.decompose_symmetric(inner)
    assert np.abs(w_end - np.array([-math.sqrt(2.0), 0.0, math.sqrt(2.0)])).max() < 1e-12
    assert np.abs(w_inner - np.array([-1.0, 0.0, 1.0])).max() < 1e-12


def test_unitarity_and_reconstruction_samples(rng):
    for _ in range(25):
        n = int(rng.integers(2, 12))
        g = random_weighted_graph(rng, n, loops=True)
        spec = sp.eigendecompose(g, use_cache=False)
        t = float(rng.uniform(-10, 10))
        u = sp.propagator(spec, t).matrix
        assert np.abs(u.conj().T @ u - np.eye(n)).max() < 1e-9
        recon = (spec.eigenvectors * spec.eigenvalues) @ spec.eigenvectors.T
        assert np.abs(g.adjacency - recon).max() < 1e-9 * (1 + g.adjacency.max())


def test_scaling_law(rng):
    for _ in range(20):
        g = random_weighted_graph(rng, 7)
        c = float(rng.uniform(0.1, 3.0))
        t = float(rng.uniform(0, 5))
        lhs = sp.fidelity(gr.scale(g, c), 0, 3, t)
        rhs = sp.fidelity(g, 0, 3, c * t)
        assert abs(lhs - rhs) < 1e-10


def test_time_sign_symmetry(rng):
    g = random_weighted_graph(rng, 6, loops=True)
    for t in rng.uniform(0, 8, size=10):
        assert abs(sp.fidelity(g, 1, 4, t) - sp.fidelity(g, 1, 4, -t)) < 1e-12
        assert abs(sp.fidelity(g, 1, 4, t) - sp.fidelity(g, 4, 1, t)) < 1e-12


def test_spectrum_cache_hits():
    sp.clear_spectrum_cache()
    g = gr.hypercube(3)
    first = sp.eigendecompose(g)
    second = sp.eigendecompose(g)
    assert first is second
    third = sp.eigendecompose(gr.hypercube(3))  # same content, new object
    assert third is first
    assert sp.eigendecompose(g, use_cache=False) is not first
