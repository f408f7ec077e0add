"""
The four-dimensional map and its reduction
==========================================

The extended Lax matrix gives a map on pairs (x1, x2), (y1, y2).  It is
Poisson for {x1, x2} = x2/alpha, {y1, y2} = y2/beta and restricts to the
collision map on x1 = y1 = 0.
"""
from fractions import Fraction as F

from ybcollide.lax import solve_lax_4d
from ybcollide.poisson import (involution_residual, poisson_map_residual, rtilde,
                               tilde_transfer_jacobian, tilde_transfer_step)
from ybcollide.scalars import Sampler
from ybcollide.states import ExtendedState

m = (F(3), F(1))
print(solve_lax_4d((F(0), F(2)), (F(0), F(1)), m))      # ((0, 7/5), (0, 14/5))
print(solve_lax_4d((F(1, 3), F(2)), (F(-1, 2), F(1)), m))

smp = Sampler(4, "rational")
s = ExtendedState(list(zip(smp.signed(2, F(1, 20), 1), smp.positive(2))),
                  list(zip(smp.signed(2, F(1, 20), 1), smp.positive(2))))
jac = lambda z: tilde_transfer_jacobian(z, m)
print("Poisson residual of T~_2:", poisson_map_residual(lambda z: tilde_transfer_step(z, m), s, m, jac))
print("brackets of trace coefficients:", involution_residual(s, m))

one = ExtendedState([(F(1, 2), F(3))], [(F(-1, 4), F(2))])
print("R~ in floats:", rtilde(ExtendedState.from_vector([float(v) for v in one.as_vector()]),
                               (3.0, 1.0)))
