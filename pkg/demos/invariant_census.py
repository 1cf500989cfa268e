"""Census of the gauge-invariant scalars of a worldline + null-vector system.

Ten basic scalars can be formed from first derivatives of the tetrad and the
worldline.  Under the residual gauge freedom they mix; exactly six invariant
combinations survive, and a linear-algebra argument over the shifted scalars
(rank 5 condition system, 10-dimensional nullspace, 2 identically vanishing
combinations, functional rank 3 beyond the 3 manifest invariants) pins the
count down at every random sample point.
"""

import numpy as np

from rotorlab import (
    GaugeJet,
    basic_scalars,
    gauge_jet_transform,
    iota,
    random_kinematic_jet,
    reproduce_invariant_count,
)

rng = np.random.default_rng(42)
J = random_kinematic_jet(rng)
s = basic_scalars(J)
print("ten basic scalars at a random jet:")
for name in ("a_kdot", "b_kdot", "k_xdot", "a_xdot", "b_xdot",
             "a_bdot", "m_kdot", "m_xdot", "a_mdot", "b_mdot"):
    print(f"  {name:8s} = {getattr(s, name):+.6f}")

G = GaugeJet(alpha=0.8, beta=-0.5, alphadot=0.3, betadot=-0.2)
t = basic_scalars(gauge_jet_transform(J, G))
print("\nafter the gauge shift (alpha, beta, alphadot, betadot) =",
      (G.alpha, G.beta, G.alphadot, G.betadot))
print("  a_xdot moved by", t.a_xdot - s.a_xdot,
      "(= alpha * k_xdot =", G.alpha * s.k_xdot, ")")
print("  a_mdot picked up the rate term -2*alphadot =", -2 * G.alphadot)

base, shifted = iota(J), iota(gauge_jet_transform(J, G))
print("\nthe six invariant combinations before/after the shift:")
for i, (x, y) in enumerate(zip(base, shifted), 1):
    print(f"  iota_{i}: {x:+.9f} -> {y:+.9f}   (delta {y - x:+.2e})")

print("\ninvariant-counting reproduction at three seeds:")
for seed in (0, 1, 2):
    rep = reproduce_invariant_count(seed)
    print(f"  seed {seed}: rank = {rep.rank}, nullity = {rep.nullity}, "
          f"identically-zero combos = {rep.zero_combos}, "
          f"functional rank = {rep.functional_rank}, "
          f"total independent invariants = {rep.total_independent}")
