import os, sys

current_dir = os.path.dirname(os.path.realpath(__file__))
project_dir = os.path.abspath(os.path.join(current_dir, '..'))

sys.path.append(project_dir)

import math

import numpy as np
import pytest

from Analysis import (average_radius, binding_energy, classify_bound, classify_limits, classify_point,
                      count_bound_states, extrapolate_pair, measure_family, radial_profile, series_from_values,
                      solve_ground_state, sweep_degrees, sweep_potentials, SWEEP_COLUMNS)
from Errors import SpecError
from Lattice_type.Types import BoundClass, Observable
from Options.Ops import Bound_ops, Eigen_ops, SpaceSpec
from Space import build_space


def test_binding_energy():
    assert binding_energy(-2.3094011, 1) == pytest.approx(0.3094011)
    assert binding_energy(-4.0, 2) == 0.0
    assert binding_energy(-6.5, 3) == pytest.approx(0.5)


def test_junction_only_profile():
    graph = build_space(SpaceSpec(2, 6, 2))
    psi = np.zeros(graph.site_count)
    psi[0] = 1.0
    profile = radial_profile(psi, graph)
    assert profile.entries()[0] == (0.0, 1.0, 0.0, 1)
    assert not profile.amplitudes[1:].any()
    assert np.all(np.diff(profile.radii) > 0)
    assert average_radius(psi, graph) == 0.0


def test_profile_multiplicities_count_every_sheet():
    graph = build_space(SpaceSpec(2, 10, 3))
    profile = radial_profile(np.ones(graph.site_count) / math.sqrt(graph.site_count), graph)
    assert profile.multiplicities.sum() == graph.site_count
    # four nearest neighbours on each of three sheets
    assert profile.multiplicities[1] == 12
    np.testing.assert_allclose(profile.relative_spread(), 0.0)


def test_count_bound_states():
    assert count_bound_states([-2.3, -2.0, -1.5], 1) == 1
    assert count_bound_states([-4.2, -4.1, -3.9], 2) == 2


def test_classification_thresholds():
    assert classify_limits(0.01, 0.001) == BoundClass.BOUND
    assert classify_limits(1e-5, 0.2) == BoundClass.DELOCALIZED
    assert classify_limits(0.01, 0.2) == BoundClass.INDETERMINATE
    assert classify_limits(1e-5, 0.001) == BoundClass.INDETERMINATE
    assert classify_point(0.3, 1.0, 100) == BoundClass.BOUND
    assert classify_limits(0.01, 0.03, Bound_ops(eps_radius=0.05)) == BoundClass.BOUND


def test_series_validation_and_limits():
    series = series_from_values(Observable.BINDING_ENERGY, [20, 30, 40, 50], [0.5 + 2.0 / L for L in (20, 30, 40, 50)])
    assert series.limit == pytest.approx(0.5, abs=1e-12)
    assert series.rows()[0] == (20, pytest.approx(0.6))
    with pytest.raises(SpecError):
        series_from_values(Observable.BINDING_ENERGY, [20, 30], [1.0, 1.0])
    with pytest.raises(SpecError):
        series_from_values(Observable.BINDING_ENERGY, [20, 40, 30], [1.0, 1.0, 1.0])
    square = series_from_values(Observable.R_AVG_OVER_L, [10, 20, 30], [0.1 + 5.0 / L ** 2 for L in (10, 20, 30)],
                                "inverse-square")
    assert square.limit == pytest.approx(0.1, abs=1e-12)


def test_inverse_square_form_does_not_invent_binding():
    # a delocalized gap closing like L^-3 over the 3D sizes
    sizes = list(range(10, 21, 2))
    gaps = [3.0 / L ** 3 for L in sizes]
    quadratic = series_from_values(Observable.BINDING_ENERGY, sizes, gaps, "quadratic")
    square = series_from_values(Observable.BINDING_ENERGY, sizes, gaps, Bound_ops().energy_form)
    assert quadratic.limit > 0
    assert square.limit < 0


def test_linear_form_absorbs_small_box_excess():
    # r_avg tends to 1.2, with extra weight wrapped around the smallest boxes
    sizes = list(range(10, 21, 2))
    ratios = [(1.2 + 1.5 * math.exp(-0.5 * L)) / L for L in sizes]
    linear = series_from_values(Observable.R_AVG_OVER_L, sizes, ratios, Bound_ops().radius_form)
    assert abs(linear.limit) < 0.02
    assert linear.fit.powers == (0, 1)


def test_bound_ops_forms():
    default = Bound_ops()
    assert (default.energy_form, default.radius_form) == ("inverse-square", "linear")
    single = Bound_ops(form="quadratic")
    assert single.energy_form == single.radius_form == "quadratic"
    assert single.as_dict()["radius_form"] == "quadratic"
    with pytest.raises(SpecError):
        Bound_ops(form="cubic")


def test_bound_singularity_extrapolates_to_bound():
    spec = SpaceSpec(1, 40, 2)
    binding, radius = extrapolate_pair(spec, [40, 60, 80], threads=2)
    assert binding.limit == pytest.approx(4.0 / math.sqrt(3.0) - 2.0, abs=1e-6)
    assert abs(radius.limit) < 0.02
    assert classify_bound(binding, radius) == BoundClass.BOUND


def test_free_ring_extrapolates_to_delocalized():
    binding, radius = extrapolate_pair(SpaceSpec(1, 20, 1), [20, 30, 40])
    assert abs(binding.limit) < 1e-8
    assert radius.limit == pytest.approx(0.25, abs=1e-6)
    assert classify_bound(binding, radius) == BoundClass.DELOCALIZED


def test_measure_family_is_sorted():
    family = measure_family(SpaceSpec(1, 10, 3), [40, 20, 30], threads=3)
    assert [state.spec.extent for state in family] == [20, 30, 40]


def test_sector_reduction_matches_full_solve():
    spec = SpaceSpec(2, 12, 3)
    full = solve_ground_state(spec, Eigen_ops())
    reduced = solve_ground_state(spec, Eigen_ops(reduce_sheets=True))
    assert reduced.graph.site_count == 144
    assert reduced.energy == pytest.approx(full.energy, abs=1e-9)
    assert reduced.average_radius() == pytest.approx(full.average_radius(), abs=1e-7)
    full_profile, reduced_profile = full.radial_profile(), reduced.radial_profile()
    np.testing.assert_array_equal(reduced_profile.radii, full_profile.radii)
    np.testing.assert_array_equal(reduced_profile.multiplicities, full_profile.multiplicities)
    np.testing.assert_allclose(reduced_profile.amplitudes, full_profile.amplitudes, atol=1e-7)
    np.testing.assert_allclose(reduced.full_vector(full.graph), full.vector, atol=1e-7)


def test_sweep_rows_are_ordered_and_monotone():
    rows = sweep_degrees(1, 80, [4, 2, 3], threads=2)
    assert [row.spec.degree for row in rows] == [2, 3, 4]
    energies = [row.binding_energy for row in rows]
    assert energies == sorted(energies)
    for row in rows:
        assert row.gamma == pytest.approx(0.5 * math.log(2 * row.spec.degree - 1), abs=1e-5)
        assert row.classification == BoundClass.BOUND
        assert len(row.values()) == len(SWEEP_COLUMNS)


def test_potential_sweep_in_two_dimensions():
    rows = sweep_potentials(2, 30, [6.0, 4.0], threads=2)
    assert [row.spec.potential for row in rows] == [4.0, 6.0]
    assert rows[0].binding_energy < rows[1].binding_energy
    assert rows[1].classification == BoundClass.BOUND
