import os, sys

current_dir = os.path.dirname(os.path.realpath(__file__))
project_dir = os.path.abspath(os.path.join(current_dir, '..'))

sys.path.append(project_dir)

import json

import numpy as np
import pytest

from Analysis import RadialProfile
from Errors import FitError, SpecError
from Files import json_bytes
from Fitting import cooper_fit, fit_inverse_poly, fit_nonlinear, radial_fit
from Fitting.Models import Bessel2D, Bessel3D
from Fitting.Models_map import Models, Radial
from Options.Ops import Fit_ops, SpaceSpec
from SpecFun import k0, k_half


def test_registry():
    assert sorted(Models) == ["bessel2d", "bessel3d", "cooper"]
    assert Radial[2] is Bessel2D and Radial[3] is Bessel3D


def test_inverse_poly_recovers_exact_coefficients():
    sizes = [10, 14, 18, 22, 30]
    points = [(L, 0.25 - 1.5 / L + 4.0 / L ** 2) for L in sizes]
    fit = fit_inverse_poly(points)
    assert fit.params["a"] == pytest.approx(0.25, abs=1e-10)
    assert fit.params["b"] == pytest.approx(-1.5, abs=1e-8)
    assert fit.params["c"] == pytest.approx(4.0, abs=1e-7)
    assert fit.limit == fit.params["a"]
    assert fit.powers == (0, 1, 2)

    square = fit_inverse_poly([(L, 1.0 + 3.0 / L ** 2) for L in sizes], powers=(0, 2))
    assert square.limit == pytest.approx(1.0, abs=1e-12)
    assert square.params["b"] == pytest.approx(3.0, abs=1e-9)


def test_inverse_poly_without_constant_has_no_limit():
    sizes = [10, 14, 18, 22]
    fit = fit_inverse_poly([(L, 2.0 / L + 5.0 / L ** 2) for L in sizes], powers=(1, 2))
    assert set(fit.params) == {"b", "c"}
    assert fit.params["b"] == pytest.approx(2.0, abs=1e-9)
    assert fit.params["c"] == pytest.approx(5.0, abs=1e-7)
    assert np.isnan(fit.limit)


def test_inverse_poly_residuals_are_orthogonal_to_the_basis():
    sizes = np.array([10.0, 12.0, 14.0, 16.0, 18.0, 20.0])
    values = 0.1 + 1.0 / sizes + 0.001 * np.sin(sizes)
    fit = fit_inverse_poly(list(zip(sizes, values)))
    design = np.stack([np.ones_like(sizes), 1.0 / sizes, 1.0 / sizes ** 2], axis=1)
    residual = values - design @ np.array([fit.params["a"], fit.params["b"], fit.params["c"]])
    np.testing.assert_allclose(design.T @ residual, 0.0, atol=1e-12)


def test_inverse_poly_needs_enough_sizes():
    with pytest.raises(SpecError):
        fit_inverse_poly([(10, 1.0), (10, 1.1), (20, 1.2)])
    with pytest.raises(SpecError):
        fit_inverse_poly([(10, 1.0), (20, 1.0)], powers=(0, 3))


def test_bessel2d_round_trip():
    x = np.linspace(1.0, 25.0, 40)
    truth = {"a": 2.0, "b": 0.3, "gamma": 0.4}
    y = Bessel2D().evaluate(x, Bessel2D().pack(truth))
    fit = fit_nonlinear("bessel2d", list(zip(x, y)), {"a": 1.5, "b": 0.1, "gamma": 0.3})
    assert fit.converged
    for name, value in truth.items():
        assert fit.params[name] == pytest.approx(value, rel=1e-6)
    assert all(later <= earlier for earlier, later in zip(fit.ssr_history, fit.ssr_history[1:]))


def test_bessel3d_round_trip():
    x = np.linspace(1.0, 12.0, 30)
    truth = {"c": 1.2, "b": 0.2, "gamma": 0.5}
    y = truth["c"] * k_half(truth["gamma"] * x + truth["b"]) / np.sqrt(x)
    fit = fit_nonlinear(Bessel3D(), list(zip(x, y)), {"c": 1.0, "b": 0.1, "gamma": 0.45})
    assert fit.converged
    for name, value in truth.items():
        assert fit.params[name] == pytest.approx(value, rel=1e-6)


def test_cooper_round_trip():
    g = np.linspace(0.5, 3.0, 12)
    energies = 2.0 * np.exp(-7.0 / g)
    fit = cooper_fit(list(zip(g, energies)))
    assert fit.converged
    assert fit.params["A"] == pytest.approx(2.0, rel=1e-8)
    assert fit.params["B"] == pytest.approx(7.0, rel=1e-8)


def test_nonlinear_rejects_undefined_start():
    x = np.linspace(1.0, 10.0, 10)
    with pytest.raises(FitError):
        fit_nonlinear("bessel2d", list(zip(x, np.ones(10))), {"a": 1.0, "b": -5.0, "gamma": 0.1})
    with pytest.raises(SpecError):
        fit_nonlinear("cooper", [(1.0, 1.0)], {"A": 1.0, "B": 1.0})


def _profile(radii, amplitudes, extent=100, dimension=2):
    radii = np.asarray(radii, dtype=np.float64)
    return RadialProfile(radii, np.asarray(amplitudes, dtype=np.float64), np.zeros(len(radii)),
                         np.ones(len(radii), dtype=np.int64), SpaceSpec(dimension, extent, 2))


def test_radial_fit_2d_window_and_acceptance():
    radii = np.sqrt(np.arange(0, 900, 7.0))
    profile = _profile(radii, 0.5 * k0(0.35 * radii + 0.2))
    fit = radial_fit(profile, 2)
    assert fit.window == (1.0, 25.0)
    assert fit.acceptable
    assert fit.gamma == pytest.approx(0.35, rel=1e-6)
    assert fit.params["b"] < 1.0
    assert fit.flags == []
    json.loads(json_bytes(fit.as_dict()))


def test_radial_fit_flags_large_offset():
    radii = np.linspace(0.0, 30.0, 61)
    profile = _profile(radii, k0(0.3 * radii + 1.5))
    fit = radial_fit(profile, 2, Fit_ops(b_init=1.0))
    assert fit.params["b"] == pytest.approx(1.5, rel=1e-5)
    assert "b >= 1 lattice spacing" in fit.flags


def test_radial_fit_3d():
    radii = np.linspace(0.5, 6.0, 23)
    profile = _profile(radii, 0.8 * k_half(0.9 * radii + 0.1) / np.sqrt(radii), extent=24, dimension=3)
    fit = radial_fit(profile, 3)
    assert fit.model == "bessel3d"
    assert fit.gamma == pytest.approx(0.9, rel=1e-6)


def test_radial_fit_rejections():
    with pytest.raises(FitError):
        radial_fit(_profile(np.arange(0, 8.0), np.exp(-np.arange(0, 8.0)), extent=20), 2)
    growing = np.linspace(0.0, 30.0, 61)
    with pytest.raises(FitError):
        radial_fit(_profile(growing, 1.0 + growing), 2)
    with pytest.raises(SpecError):
        radial_fit(_profile(growing, np.exp(-growing)), 1)


def test_rippled_profile_is_not_acceptable():
    radii = np.linspace(0.0, 30.0, 61)
    # a ripple no Bessel form can follow
    profile = _profile(radii, k0(0.3 * radii + 0.2) * (1.0 + 0.8 * np.sin(3.0 * radii)))
    fit = radial_fit(profile, 2)
    assert not fit.acceptable
    assert "unacceptable fit" in fit.flags
