"""
A quad-graph equation behind the map
====================================

w10 (a w00 + b w11) = w01 (b w00 + a w11).  Edge products of a face are
related by the collision map, and the equation is consistent on a cube.
"""
from fractions import Fraction as F

from ybcollide.collisions import yb_map
from ybcollide.properties import QuadFace, cube_values, quad_residual, solve_w01

m = (F(3), F(1))
w00, w10, w11 = F(1), F(3), F(2)
w01 = solve_w01(w00, w10, w11, m)
print("w01 =", w01, " residual:", quad_residual(QuadFace(w00, w10, w01, w11, m)))
print("edges (x, y) -> (u, v):", (w10 * w00, w11 * w10), "->", (w11 * w01, w01 * w00))
print("collision map:          ", tuple(yb_map((w10 * w00, w11 * w10), m)))

# three ways to the far corner of a cube agree
print(cube_values(F(1), F(2), F(3), F(5), (F(1), F(2), F(7))))
print(cube_values(F(1), F(2), F(3), F(5), (F(1), F(2), F(7)), shift=1))  # perturbed face
