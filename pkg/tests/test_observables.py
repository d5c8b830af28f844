import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_solution
from dimhydrogen import DomainError, mean_radius_mc, mean_radius_quadrature, most_probable_radius, normalize
from dimhydrogen.errors import ContractError, DegenerateSolution
from dimhydrogen.observables import BoundaryPeakWarning, norm


def test_analytic_1s_norm(analytic_1s):
    assert norm(analytic_1s) == pytest.approx(1.0, abs=1e-6)


def test_normalize_idempotent(hydrogen_1s):
    again = normalize(hydrogen_1s)
    assert np.allclose(again.u_samples, hydrogen_1s.u_samples, rtol=1e-12, atol=0)
    assert norm(again) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.floats(1e-3, 1e3))
def test_normalize_projective(analytic_1s, scale):
    scaled = dataclasses.replace(analytic_1s, u_samples=scale * analytic_1s.u_samples)
    a, b = normalize(analytic_1s), normalize(scaled)
    assert np.allclose(a.u_samples, b.u_samples, rtol=1e-12, atol=0)
    assert np.allclose(a.radial_samples, b.radial_samples, rtol=1e-12, atol=0)


def test_normalize_rescales_radial_consistently():
    r = np.linspace(0.1, 5, 501)
    sol = normalize(make_solution(7.0 * r**2 * np.exp(-r), r, D=5))
    assert np.allclose(sol.radial_samples * r**2, sol.u_samples, rtol=1e-13)


def test_zero_norm_is_degenerate():
    r = np.linspace(0.1, 5, 101)
    with pytest.raises(DegenerateSolution):
        normalize(make_solution(np.zeros_like(r), r))


def test_mean_radius_analytic(analytic_1s, hydrogen_1s):
    assert mean_radius_quadrature(analytic_1s) == pytest.approx(1.5, rel=5e-3)
    assert mean_radius_quadrature(hydrogen_1s) == pytest.approx(1.5, rel=5e-3)


def test_mean_radius_narrow_bump():
    r = np.linspace(0.1, 0.3, 4001)
    width = 0.005
    u = np.exp(-((r - 0.2) ** 2) / (4 * width**2))
    assert mean_radius_quadrature(normalize(make_solution(u, r, D=6))) == pytest.approx(0.2, abs=width**2)


def test_unnormalized_input_is_rejected(analytic_1s):
    doubled = dataclasses.replace(analytic_1s, u_samples=2 * analytic_1s.u_samples)
    with pytest.raises(ContractError):
        mean_radius_quadrature(doubled)
    with pytest.raises(ContractError):
        mean_radius_mc(doubled, 1000)


def test_quadrature_converges_at_second_order():
    means, steps = [], []
    for n in (101, 201, 401, 801):
        r = np.linspace(0.5, 3.0, n)
        means.append(mean_radius_quadrature(normalize(make_solution(r * np.exp(-r), r))))
        steps.append(r[1] - r[0])
    diffs = np.abs(np.diff(means))
    assert np.all(diffs <= 10 * np.array(steps[:-1]) ** 2)
    assert 3.0 < diffs[0] / diffs[1] < 5.0
    assert 3.0 < diffs[1] / diffs[2] < 5.0


def test_mc_agrees_with_oracle(analytic_1s):
    stats = mean_radius_mc(analytic_1s, 200_000, seed=11)
    assert abs(stats.mean_mc - 1.5) <= 4 * stats.mc_sigma
    assert stats.healthy
    assert stats.mc_sigma > 0
    assert stats.n_samples == 200_000 and stats.seed == 11


def test_mc_deterministic(hydrogen_1s):
    a = mean_radius_mc(hydrogen_1s, 50_000, seed=3)
    b = mean_radius_mc(hydrogen_1s, 50_000, seed=3)
    assert a == b
    c = mean_radius_mc(hydrogen_1s, 50_000, seed=4)
    assert c.mean_mc != a.mean_mc


def test_mc_acceptance_rate(analytic_1s):
    n = 400_000
    stats = mean_radius_mc(analytic_1s, n, seed=5)
    r = analytic_1s.r_samples
    p = analytic_1s.u_samples**2
    # linear interpolation integrates exactly like the trapezoid rule
    expected = np.trapezoid(p, r) / (p.max() * (r[-1] - r[0]))
    sigma = math.sqrt(expected * (1 - expected) / n)
    assert abs(stats.n_accepted / n - expected) <= 4 * sigma


def test_mc_sample_floor(analytic_1s):
    with pytest.raises(DomainError):
        mean_radius_mc(analytic_1s, 999)


def test_most_probable_analytic(analytic_1s, hydrogen_1s):
    h = analytic_1s.r_samples[1] - analytic_1s.r_samples[0]
    assert most_probable_radius(analytic_1s) == pytest.approx(1.0, abs=h)
    h = hydrogen_1s.r_samples[1] - hydrogen_1s.r_samples[0]
    assert most_probable_radius(hydrogen_1s) == pytest.approx(1.0, abs=h)


def test_most_probable_tie_goes_low():
    r = np.linspace(0.0, 4.0, 401)[1:]
    u = np.exp(-((r - 1.0) ** 2) / 0.02) + np.exp(-((r - 3.0) ** 2) / 0.02)
    peak = most_probable_radius(normalize(make_solution(u, r)))
    assert peak == pytest.approx(1.0, abs=1e-6)


def test_monotone_density_warns():
    r = np.linspace(0.1, 2.0, 200)
    sol = normalize(make_solution(r, r))
    with pytest.warns(BoundaryPeakWarning):
        peak = most_probable_radius(sol)
    assert peak == r[-1]


@pytest.mark.parametrize("center", [0.7, 1.3, 2.9])
def test_most_probable_inside_grid(center):
    r = np.linspace(0.5, 3.0, 251)
    sol = normalize(make_solution(np.exp(-((r - center) ** 2)), r))
    assert r[0] <= most_probable_radius(sol) <= r[-1]
