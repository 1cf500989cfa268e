"""Tour of the null tetrad attached to a spinor.

A two-component spinor generates a null tetrad (k, m, a, b): two null
vectors with k.m = 2 and two unit spacelike vectors spanning the plane
orthogonal to both.  The construction leaves a two-parameter gauge freedom
(shifting a, b, m along k) and a rotation freedom in the (a, b) plane,
neither of which touches the scalar products.
"""

import numpy as np

from rotorlab import (
    dot,
    gauge_transform,
    gram_det,
    mate,
    phase_rotate,
    spinor_from_angles,
    tetrad,
)

kappa = spinor_from_angles(theta=0.9, phi=1.2, psi=2.0, Phi=0.4)
tau = mate(kappa)
print("spinor kappa:", kappa)
print("mate tau:    ", tau)
print("symplectic normalization kappa^0 tau^1 - kappa^1 tau^0 =",
      kappa.c0 * tau.c1 - kappa.c1 * tau.c0)

T = tetrad(kappa)
print("\nnull tetrad:")
for name, v in zip("kmab", T.vectors()):
    print(f"  {name} = {np.round(v, 6)}")

print("\nscalar products (expect k.k = m.m = 0, k.m = 2, a.a = b.b = -1):")
for u, v in [("k", "k"), ("m", "m"), ("k", "m"), ("a", "a"), ("b", "b"),
             ("a", "b"), ("k", "a"), ("m", "b")]:
    vs = dict(zip("kmab", T.vectors()))
    print(f"  {u}.{v} = {dot(vs[u], vs[v]):+.3e}")
print("gram determinant (expect -4):", gram_det(*T.vectors()))

G = gauge_transform(T, alpha=0.7, beta=-1.1)
print("\nafter a gauge shift (alpha, beta) = (0.7, -1.1):")
print("  k unchanged:", np.array_equal(G.k, T.k))
print("  a.a =", dot(G.a, G.a), " k.m =", dot(G.k, G.m))

R = phase_rotate(T, delta=0.5)
print("\nafter a phase rotation delta = 0.5:")
print("  a.a =", dot(R.a, R.a), " a.b =", f"{dot(R.a, R.b):.2e}")

v = np.array([1.3, -0.2, 0.8, 0.5])
print("\ntetrad expansion reconstructs an arbitrary vector:")
print("  reconstruction error:", np.max(np.abs(T.expand(v) - v)))
