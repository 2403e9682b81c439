import os, sys

current_dir = os.path.dirname(os.path.realpath(__file__))
project_dir = os.path.abspath(os.path.join(current_dir, '..'))

sys.path.append(project_dir)

import math

import numpy as np
import pytest

from Eigen import dense_spectrum, lowest_eigenpairs
from Errors import ConvergenceError, SpecError
from Hamiltonian import assemble
from Options.Ops import Eigen_ops, SpaceSpec
from Space import build_space

SMALL_SPECS = [SpaceSpec(1, 30, 3), SpaceSpec(1, 25, 1, potential=0.8), SpaceSpec(2, 8, 2),
               SpaceSpec(2, 7, 1, "open"), SpaceSpec(2, 9, 1, potential=2.5), SpaceSpec(3, 5, 2),
               SpaceSpec(3, 6, 1, potential=5.0), SpaceSpec(2, 10, 5)]


def _operator(spec):
    graph = build_space(spec)
    return graph, assemble(graph)


def test_ring_spectrum():
    _, op = _operator(SpaceSpec(1, 6, 1))
    np.testing.assert_allclose(dense_spectrum(op), [-2, -1, -1, 1, 1, 2], atol=1e-12)


def test_open_chain_ground_state():
    _, op = _operator(SpaceSpec(1, 5, 1, "open"))
    result = lowest_eigenpairs(op)
    assert result.ground_energy == pytest.approx(-math.sqrt(3.0), abs=1e-10)
    assert result.converged


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_lanczos_agrees_with_dense(spec):
    graph, op = _operator(spec)
    result = lowest_eigenpairs(op)
    assert result.ground_energy == pytest.approx(dense_spectrum(op)[0], abs=1e-10)
    assert result.residuals[0] <= result.tolerance
    psi = result.ground_vector
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)
    # Perron-Frobenius: the ground state of a connected graph has one sign
    assert np.all(psi > 0)


@pytest.mark.parametrize("spec", SMALL_SPECS[:4])
def test_per_site_residual(spec):
    _, op = _operator(spec)
    result = lowest_eigenpairs(op)
    psi, energy = result.ground_vector, result.ground_energy
    assert np.max(np.abs(op @ psi - energy * psi)) <= result.tolerance


def test_several_eigenpairs_of_open_chain():
    L = 40
    _, op = _operator(SpaceSpec(1, L, 1, "open"))
    result = lowest_eigenpairs(op, Eigen_ops(k=3))
    expected = [-2.0 * math.cos(math.pi * n / (L + 1)) for n in (1, 2, 3)]
    np.testing.assert_allclose(result.energies, expected, atol=1e-10)
    np.testing.assert_allclose(result.vectors @ result.vectors.T, np.eye(3), atol=1e-9)


def test_small_basis_cap_forces_restarts():
    _, op = _operator(SpaceSpec(1, 300, 2))
    result = lowest_eigenpairs(op, Eigen_ops(basis_cap=12))
    assert result.restarts > 0
    assert result.ground_energy == pytest.approx(-4.0 / math.sqrt(3.0), abs=1e-9)


def test_same_seed_is_deterministic():
    _, op = _operator(SpaceSpec(2, 12, 3))
    first = lowest_eigenpairs(op, Eigen_ops(seed=7))
    second = lowest_eigenpairs(op, Eigen_ops(seed=7))
    assert first.ground_energy == second.ground_energy
    np.testing.assert_array_equal(first.ground_vector, second.ground_vector)


def test_iteration_cap_raises_convergence_error():
    _, op = _operator(SpaceSpec(1, 400, 2))
    with pytest.raises(ConvergenceError) as caught:
        lowest_eigenpairs(op, Eigen_ops(max_iterations=3))
    assert caught.value.iterations >= 3
    assert caught.value.best_residual > 0


def test_invalid_options():
    _, op = _operator(SpaceSpec(1, 5, 1))
    with pytest.raises(SpecError):
        lowest_eigenpairs(op, Eigen_ops(k=5))
    with pytest.raises(SpecError):
        lowest_eigenpairs(op, Eigen_ops(k=2, reduce_sheets=True))
    with pytest.raises(SpecError):
        lowest_eigenpairs(op, Eigen_ops(tol=0.0))


def test_dense_spectrum_is_size_guarded():
    _, op = _operator(SpaceSpec(2, 70, 1))
    with pytest.raises(SpecError):
        dense_spectrum(op)


def test_point_group_symmetry_of_2d_ground_state():
    L = 10
    graph, op = _operator(SpaceSpec(2, L, 2))
    psi = lowest_eigenpairs(op).ground_vector
    sheet = graph.sheet_sites(0)
    lookup = {tuple(graph.coords[site]): site for site in sheet}
    lookup[(0, 0)] = 0

    def wrap(value):
        return (value + L // 2) % L - L // 2

    for site in sheet:
        x, y = (int(c) for c in graph.coords[site])
        for image in ((y, x), (wrap(-x), y), (x, wrap(-y))):
            assert psi[lookup[image]] == pytest.approx(psi[site], abs=1e-7)
    # the same wavefunction on every sheet
    np.testing.assert_allclose(psi[graph.sheet_sites(0)], psi[graph.sheet_sites(1)], atol=1e-7)
