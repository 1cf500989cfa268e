"""Gallery of Lagrangian family members and their Casimir invariants.

Each member is L = -M sqrt(xdot.xdot) F(P, Q).  The Poincare Casimirs PP and
WW have closed forms in F and its partials; they must (and do) agree with
the dot products of the Noether charges computed by direct differentiation.
Members whose PP and WW are constants (M^2 and -M^4 ell^2 / 4) describe
genuinely fundamental systems; the demo shows which builtins qualify.
"""

import numpy as np

from rotorlab import (
    PQPoint,
    builtin,
    casimirs_closed_form,
    fundamental_residuals,
    momenta,
    pq_from_jet,
    random_kinematic_jet,
)

forms = [
    builtin("point_particle"),
    builtin("rotator_f"),
    builtin("nu_family", nu=0.5),
    builtin("starlike", signs=(1, 1)),
    builtin("fq", f=lambda q: q),
]

print("closed-form Casimirs at (P, Q) = (0.2, 0.9):")
at = PQPoint(0.2, 0.9)
for F in forms:
    if not F.in_domain(at.P, at.Q):
        continue
    c = casimirs_closed_form(F, at)
    print(f"  {F.name:22s} PP = {c.PP:+.6f}   WW = {c.WW:+.6f}")

print("\ncross-check against Noether charges at a random jet:")
rng = np.random.default_rng(7)
J = random_kinematic_jet(rng)
for F in forms:
    at = pq_from_jet(J, F.ell)
    if not F.in_domain(at.P, at.Q):
        continue
    got = momenta(F, J).casimirs()
    want = casimirs_closed_form(F, at)
    print(f"  {F.name:22s} |dPP| = {abs(got.PP - want.PP):.2e}   "
          f"|dWW| = {abs(got.WW - want.WW):.2e}")

print("\nfixed mass and spin over a (P, Q) grid (max relative residual):")
candidates = [builtin("rotator_f"), builtin("nu_family", nu=0.5),
              builtin("starlike", signs=(-1, -1)), builtin("fq", f=lambda q: q)]
for F in candidates:
    grid = [PQPoint(P, Q) for P in np.linspace(-0.5, 0.5, 6)
            for Q in np.linspace(0.2, 2.0, 6) if F.in_domain(P, Q)]
    res = fundamental_residuals(F, grid)
    fundamental = max(res["max_PP_residual"], res["max_WW_residual"]) < 1e-10
    print(f"  {F.name:22s} PP residual {res['max_PP_residual']:.1e}, "
          f"WW residual {res['max_WW_residual']:.1e}  ->"
          f" {'fundamental' if fundamental else 'not fundamental'}")
