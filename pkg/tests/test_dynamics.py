import os

import numpy as np
import pytest

from rotorlab import jets
from rotorlab.degeneracy import ChartState
from rotorlab.dynamics import (
    SingularHessianError,
    SolutionParams,
    angular_speed,
    casimir_drift,
    conservation_drift,
    el_residuals,
    export_trajectory,
    free_motion,
    indeterminacy_demo,
    integrate,
    rest_frame_params,
    speed_to_Q,
)
from rotorlab.fform import builtin, parse_f
from rotorlab.minkowski import DomainError, dot, lorentz_matrix

ROT = builtin("rotator_f")


def bent_phase(t):
    return t + 0.1 * (t - jets.sin(t))


def test_circular_solution_worked_values():
    traj = free_motion(rest_frame_params(lambda t: t))
    assert np.allclose(traj.x(0.0), [0.0, 0.0, 0.5, 0.0])
    assert np.allclose(traj.k(0.0), [1.0, 1.0, 0.0, 0.0])
    assert np.allclose(traj.xdot(0.0), [1.0, 0.5, 0.0, 0.0])
    t = 0.7
    assert np.allclose(traj.x(t), [t, 0.5 * np.sin(t), 0.5 * np.cos(t), 0.0])
    assert np.allclose(traj.k(t), [1.0, np.cos(t), -np.sin(t), 0.0])


def test_k_stays_null():
    for phase in (lambda t: t, bent_phase):
        traj = free_motion(rest_frame_params(phase))
        for t in np.linspace(0.0, 15.0, 7):
            k = traj.k(t)
            assert abs(dot(k, k)) < 1e-10


def test_el_residuals_vanish_on_free_motion():
    for phase in (lambda t: t, bent_phase):
        traj = free_motion(rest_frame_params(phase))
        for t in np.linspace(0.0, 20.0, 11):
            assert el_residuals(ROT, traj, t).max_relative < 1e-8


def test_el_residuals_nonzero_for_other_system():
    traj = free_motion(rest_frame_params(lambda t: t))
    fq = builtin("fq", f=lambda q: q)
    rep = el_residuals(fq, traj, 0.3)
    assert rep.max_abs > 0.1


def test_noether_charges_conserved_along_free_motion():
    p = rest_frame_params(bent_phase)
    d = conservation_drift(p, free_motion(p), np.linspace(0.0, 20.0, 21), ROT)
    assert d["P_drift"] < 1e-9
    assert d["W_drift"] < 1e-9


def test_boosted_params_give_transformed_trajectory():
    L = lorentz_matrix(boost=(0.3, -0.1, 0.2), rotation=(0.0, 0.0, 0.7))
    p0 = rest_frame_params(lambda t: t)
    pb = SolutionParams(P=L @ p0.P, W=L @ p0.W, N=L @ p0.N, phase=p0.phase,
                        x0=L @ p0.x0)
    t0, tb = free_motion(p0), free_motion(pb)
    for t in (0.5, 3.0, 11.0):
        assert np.allclose(tb.x(t), L @ t0.x(t), atol=1e-12)
        assert np.allclose(tb.k(t), L @ t0.k(t), atol=1e-12)
    # the boosted solution still solves the lab-time equations
    assert el_residuals(ROT, tb, 1.2).max_relative < 1e-8


def test_invalid_solution_params_rejected():
    with pytest.raises(DomainError):
        SolutionParams(P=(1, 0, 0, 0), W=(0, 0, 0, 0.7), N=(0, 1, 0, 0),
                       phase=lambda t: t).validate()
    with pytest.raises(DomainError):
        SolutionParams(P=(1.1, 0, 0, 0), W=(0, 0, 0, 0.5), N=(0, 1, 0, 0),
                       phase=lambda t: t).validate()


def test_phase_speed_bound_enforced():
    traj = free_motion(rest_frame_params(lambda t: 3.0 * t))
    with pytest.raises(DomainError):
        traj.x(1.0)
    # phase speed crossing zero is rejected too
    traj = free_motion(rest_frame_params(lambda t: jets.sin(t)))
    with pytest.raises(DomainError):
        traj.x(np.pi / 2)


def test_angular_speed_closed_form():
    assert angular_speed(4.0, 1.0) == pytest.approx(1.0)
    assert angular_speed(1e-8) < 1e-4
    assert angular_speed(1e8) == pytest.approx(2.0, rel=1e-3)
    qs = np.linspace(0.1, 20.0, 40)
    vals = [angular_speed(q, 2.0) for q in qs]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert all(v < 1.0 for v in vals)  # bound 2/ell with ell = 2
    with pytest.raises(DomainError):
        angular_speed(0.0)


def test_speed_to_Q_roundtrip():
    for w in (0.2, 0.5, 1.0, 1.5):
        assert angular_speed(speed_to_Q(w)) == pytest.approx(w, abs=1e-12)
    with pytest.raises(DomainError):
        speed_to_Q(2.0)


def test_integrated_fq_conserves_casimirs():
    fq = builtin("fq", f=lambda q: q)
    st = ChartState(theta=1.1, phi=0.3, v=(0.05, -0.02, 0.03),
                    thetadot=0.4, phidot=0.7)
    traj = integrate(fq, st, (0.0, 30.0))
    d = casimir_drift(traj, np.linspace(0.0, 30.0, 20))
    assert d["PP_drift"] < 1e-6
    assert d["WW_drift"] < 1e-6
    # the integrated path satisfies its own equations of motion
    assert el_residuals(fq, traj, 12.0).max_relative < 1e-8


def test_integrated_casimirs_depend_on_initial_data():
    fq = builtin("fq", f=lambda q: q)
    st1 = ChartState(theta=1.1, phi=0.3, thetadot=0.4, phidot=0.7)
    st2 = ChartState(theta=1.1, phi=0.3, thetadot=0.1, phidot=0.3)
    w1 = casimir_drift(integrate(fq, st1, (0.0, 1.0)), [0.0])["WW"][0]
    w2 = casimir_drift(integrate(fq, st2, (0.0, 1.0)), [0.0])["WW"][0]
    assert abs(w1 - w2) > 0.1 * abs(w1)


def test_point_particle_moves_straight_with_frozen_k():
    pp = builtin("point_particle")
    st = ChartState(theta=1.1, phi=0.3, v=(0.05, -0.02, 0.03),
                    thetadot=0.4, phidot=0.7)
    traj = integrate(pp, st, (0.0, 5.0))
    assert np.allclose(traj.x(5.0) - traj.x(0.0), 5.0 * traj.xdot(0.0), atol=1e-12)
    assert np.allclose(traj.k(5.0), traj.k(0.0), atol=1e-12)


def test_rotator_integration_aborts_immediately():
    st = ChartState(theta=1.1, phi=0.3, thetadot=0.4, phidot=0.7)
    with pytest.raises(SingularHessianError) as e:
        integrate(ROT, st, (0.0, 1.0))
    assert e.value.state is not None and "q" in e.value.state


def test_indeterminacy_demo():
    phases = [
        lambda t: t,
        bent_phase,
        lambda t: t + 0.2 * jets.sin(0.5 * t) * jets.sin(0.5 * t),
    ]
    base = rest_frame_params(phases[0])
    rep = indeterminacy_demo(phases, base, np.linspace(0.0, 5.0, 40), ROT)
    assert rep["max_el_residual"] < 1e-8
    assert rep["divergence"] > 0.05


def test_indeterminacy_demo_rejects_mismatched_or_fast_phases():
    base = rest_frame_params(lambda t: t)
    times = np.linspace(0.0, 5.0, 10)
    with pytest.raises(DomainError):
        indeterminacy_demo([lambda t: t, lambda t: 1.5 * t], base, times, ROT)
    with pytest.raises(DomainError):
        indeterminacy_demo([lambda t: 3.0 * t, lambda t: 3.0 * t], base, times, ROT)


def test_export_trajectory(tmp_path):
    path = os.path.join(tmp_path, "traj.csv")
    p = rest_frame_params(lambda t: t)
    times = np.linspace(0.0, 2.0, 5)
    export_trajectory(path, ROT, free_motion(p), times)
    lines = open(path).read().strip().split("\n")
    header = lines[0].split(",")
    assert header == ["t", "x0", "x1", "x2", "x3", "k0", "k1", "k2", "k3",
                      "el_residual_norm", "PP", "WW"]
    assert len(lines) == 6
    row = [float(v) for v in lines[1].split(",")]
    assert row[0] == 0.0
    assert row[10] == pytest.approx(1.0, rel=1e-12)   # PP
    assert row[11] == pytest.approx(-0.25, rel=1e-12)  # WW
