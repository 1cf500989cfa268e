"""Free motion of the fundamental system, and what indeterminism looks like.

The exact solution winds the null direction around a circle of radius ell/2
while the center moves along P/M.  The phase of the winding is an arbitrary
function with speed in (0, 2/ell): infinitely many solutions share the same
initial position and velocity, all with vanishing Euler-Lagrange residuals.
A nondegenerate relative, f(Q) = Q, integrates like an ordinary dynamical
system, but its mass and spin depend on the initial data.
"""

import numpy as np

from rotorlab import (
    ChartState,
    angular_speed,
    builtin,
    casimir_drift,
    conservation_drift,
    el_residuals,
    free_motion,
    indeterminacy_demo,
    integrate,
    jets,
    rest_frame_params,
    speed_to_Q,
)

rot = builtin("rotator_f")
p = rest_frame_params(lambda t: t)
traj = free_motion(p)
print("circular solution (M = ell = 1, phase = t):")
for t in (0.0, np.pi / 2, np.pi):
    print(f"  t = {t:5.3f}: x = {np.round(traj.x(t), 6)}  "
          f"k = {np.round(traj.k(t), 6)}")
print("  EL residual at t = 1:", el_residuals(rot, traj, 1.0).max_relative)
d = conservation_drift(p, traj, np.linspace(0, 20, 11), rot)
print(f"  Noether drift over t in [0, 20]: P {d['P_drift']:.1e}, "
      f"W {d['W_drift']:.1e}")

print("\nangular speed of the null direction vs invariant Q:")
for w in (0.2, 0.5, 1.0, 1.5):
    Q = speed_to_Q(w)
    print(f"  phidot = {w}: Q = {Q:9.5f}, angular_speed(Q) = "
          f"{angular_speed(Q):.12f}")

print("\nthree solutions sharing position and velocity at t = 0:")
phases = [
    lambda t: t,
    lambda t: t + 0.1 * (t - jets.sin(t)),
    lambda t: t + 0.2 * jets.sin(0.5 * t) * jets.sin(0.5 * t),
]
rep = indeterminacy_demo(phases, p, np.linspace(0.0, 5.0, 40), rot)
print(f"  max EL residual over all three: {rep['max_el_residual']:.1e}")
print(f"  sup-norm divergence by t = 5:   {rep['divergence']:.4f}")
print("  -> one initial state, many futures: not a deterministic system.")

print("\nintegrating the nondegenerate relative f(Q) = Q:")
fq = builtin("fq", f=lambda q: q)
for label, st in [("fast", ChartState(theta=1.1, phi=0.3, thetadot=0.4,
                                      phidot=0.7)),
                  ("slow", ChartState(theta=1.1, phi=0.3, thetadot=0.1,
                                      phidot=0.3))]:
    t_end = 30.0
    dr = casimir_drift(integrate(fq, st, (0.0, t_end)),
                       np.linspace(0.0, t_end, 15))
    print(f"  {label} start: PP = {dr['PP'][0]:+.6f}, WW = {dr['WW'][0]:+.6f} "
          f"(drift {max(dr['PP_drift'], dr['WW_drift']):.1e})")
print("  conserved along each run, but different run to run: mass and spin"
      " are functions of the initial conditions.")
