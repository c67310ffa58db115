import numpy as np
import pytest
from conftest import entry

from quadmaps import catalog, oracle
from quadmaps.errors import NotOnSphere
from quadmaps.oracle import (
    SamplePlan,
    convergence_ratio,
    energy_spot_check,
    fd_tension,
    sample_points,
    spot_check_bitension,
    symbolic_tension,
    tangent_frame,
    tension_check,
)
from quadmaps.scalar import FLOAT


def test_plan_validation():
    with pytest.raises(ValueError):
        SamplePlan(step=0.1)
    with pytest.raises(ValueError):
        SamplePlan(count=0)
    with pytest.raises(ValueError):
        SamplePlan(tolerance=0)


def test_sample_points_are_unit_and_seeded():
    a = sample_points(5, SamplePlan(count=10, seed=3))
    b = sample_points(5, SamplePlan(count=10, seed=3))
    assert np.array_equal(a, b)
    assert np.allclose(np.linalg.norm(a, axis=1), 1.0)


def test_tangent_frame_orthonormal():
    p = sample_points(6, SamplePlan(count=1, seed=9))[0]
    frame = tangent_frame(p)
    assert frame.shape == (5, 6)
    assert np.allclose(frame @ frame.T, np.eye(5))
    assert np.allclose(frame @ p, 0.0)


def test_off_sphere_point_rejected(hopf):
    with pytest.raises(NotOnSphere):
        fd_tension(hopf, [1.0, 1.0, 0.0, 0.0])


def test_fd_tension_zero_for_harmonic(hopf):
    p = sample_points(4, SamplePlan(count=1, seed=2))[0]
    assert np.linalg.norm(fd_tension(hopf, p)) < 1e-6


@pytest.mark.parametrize("name", ["F_lambda(1/2)", "F_lambda(0)", "lift(veronese)"])
def test_tension_matches_symbolic(name):
    report = tension_check(entry(name).map, SamplePlan(count=20, seed=1))
    assert report.passed
    assert report.max_rel_error < 1e-5
    assert report.max_normal_defect < 1e-5


def test_tension_check_catches_wrong_symbolic(monkeypatch, f_half):
    good = symbolic_tension(f_half)
    monkeypatch.setattr(oracle, "symbolic_tension", lambda q: (lambda x: 1.01 * good(x)))
    assert not tension_check(f_half, SamplePlan(count=5)).passed


def test_convergence_is_second_order(f_half):
    p = sample_points(8, SamplePlan(count=1, seed=4))[0]
    ratio = convergence_ratio(f_half, p, 8e-3)
    assert 3.9 < ratio < 4.1


def test_bitension_closed_form(f_half):
    report = spot_check_bitension(f_half, SamplePlan(count=10))
    assert report.passed
    assert report.max_closed_form_discrepancy < 1e-9
    assert report.max_abs_bitension > 1.0


def test_bitension_vanishes_for_proper(f0):
    report = spot_check_bitension(f0, SamplePlan(count=10))
    assert report.max_abs_bitension < 1e-9


def test_energy_spot_check(f_half):
    report = energy_spot_check(f_half, SamplePlan(count=10))
    assert report.passed
    # |d phi|^2 = 2e = 4 on F_lambda(1/2)
    assert np.allclose(report.values, 4.0, rtol=1e-6)


def test_energy_spot_check_float_family():
    q = catalog.f_lambda(0.3, FLOAT)
    report = energy_spot_check(q, SamplePlan(count=5))
    assert report.passed
    assert np.allclose(report.values, 4 * (1 - 0.3) * 2, rtol=1e-6)
