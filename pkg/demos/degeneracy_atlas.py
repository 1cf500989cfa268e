"""Atlas of velocity-Hessian degeneracy across the Lagrangian family.

The members with fixed mass and spin pay for it with a singular velocity
Hessian: their accelerations are not algebraically determined, so they are
not deterministic dynamical systems.  The Hessian determinant factorizes as
a kinematical prefactor (identical for every F) times an F-dependent middle
ratio times the Jacobian of (PP, WW) with respect to (P, Q); for the pure
f(Q) subfamily it collapses to f^3 f'^2 (1 + 2Q (f'/f + f''/f')), whose
bracket vanishes exactly on f = sqrt(1 +- sqrt(Q)).
"""

import numpy as np

from rotorlab import (
    DOF5,
    DOF6,
    builtin,
    fq_det_formula,
    hessian,
    jets,
    parse_f,
    random_chart_state,
    relation_check,
)

rng = np.random.default_rng(3)
state = random_chart_state(rng)

print("velocity Hessians at a random lab-time chart state:")
for F, dof in [(builtin("rotator_f"), DOF5),
               (builtin("nu_family", nu=0.4), DOF5),
               (builtin("starlike"), DOF6),
               (parse_f("Q"), DOF5),
               (parse_f("Q^2"), DOF5)]:
    rep = hessian(F, state, dof)
    print(f"  {F.name:22s} dof = {len(dof)}  rank = {rep.rank}  "
          f"det = {rep.det:+.3e}  "
          f"{'SINGULAR' if rep.is_singular else 'nondegenerate'}")

print("\nkinematical factor extracted from six unrelated forms"
      " (must coincide):")
forms = [parse_f(e) for e in ("1+Q+P^2", "Q+P*Q", "P+Q+P*Q", "Q+P^2",
                              "sqrt(1+P^2+Q)", "(1+Q)*(1+P^2)")]
for e in relation_check(forms, state, DOF6):
    tag = f"K = {e.K:.12f}" if e.admissible else e.reason
    print(f"  {e.form:22s} {tag}")

print("\nthe f(Q) determinant bracket 1 + 2Q (f'/f + f''/f'):")
cases = [
    ("f = Q", lambda q: q),
    ("f = Q^2", lambda q: q * q),
    ("f = 1 + Q", lambda q: 1.0 + q),
    ("f = sqrt(1 + sqrt(Q))", lambda q: jets.sqrt(1.0 + jets.sqrt(q))),
    ("f = 3 sqrt(1 + sqrt(Q))", lambda q: 3.0 * jets.sqrt(1.0 + jets.sqrt(q))),
]
for label, f in cases:
    res = fq_det_formula(f, state)
    print(f"  {label:24s} bracket = {res.bracket:+.12f}   "
          f"direct det = {res.direct_det:+.3e}")
print("\nonly the sqrt(1 +- sqrt(Q)) shape (up to a constant) kills the"
      " bracket, hence the determinant, identically.")
