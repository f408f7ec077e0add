"""
Relativistic collisions as a Yang-Baxter map
============================================

Two particles on a line, masses 3 and 1, the heavy one at 0.6 c hitting
the light one at rest.
"""
from fractions import Fraction as F

from ybcollide.collisions import VelocityPair, collide, energy, momentum, phi, phi_inv, yb_map
from ybcollide.properties import YBTriple, collide_parametric, yb_parametric, yb_residual

m = (F(3), F(1))
before = VelocityPair(F(3, 5), F(0))
after = collide(before, m)
print("outgoing velocities:", after.v1, after.v2)          # 12/37, 171/221
print("energy  ", energy(before, m), "->", energy(after, m))
print("momentum", momentum(before, m), "->", momentum(after, m))

# in rapidity-type coordinates the same collision is a rational map
x, y = phi(before.v1), phi(before.v2)
print("positive coordinates:", (x, y), "->", tuple(yb_map((x, y), m)))

# the same numbers in floating point
print(collide(VelocityPair(0.6, 0.0), (3.0, 1.0)))

# three particles: the order of pairwise collisions does not matter
t = YBTriple(F(2), F(1, 3), F(5, 4), (F(3), F(1), F(7)))
print("YB residual, positive coords:", yb_residual(yb_parametric, t))
# exact velocities have to come from rational rapidities, else phi is irrational
vel = YBTriple(phi_inv(F(2)), phi_inv(F(1, 3)), phi_inv(F(5, 4)), (F(3), F(1), F(7)))
print("YB residual, velocities:     ", yb_residual(collide_parametric(), vel))
