"""
Lax matrices and monodromy spectra
==================================
"""
from fractions import Fraction as F

from ybcollide.collisions import yb_map
from ybcollide.lax import (conservation_roots, lax_equation_solutions, lax_L, lax_residual,
                           monodromy, trace_coefficients)
from ybcollide.scalars import Sampler
from ybcollide.states import ChainState
from ybcollide.transfer import integrals, transfer_step

m = (F(3), F(1))
print(lax_L(F(2), F(3)))

u, v = yb_map((F(2), F(1)), m)
print("residual along the map is zero:", lax_residual(u, v, F(2), F(1), m).is_zero())

# the zeta^1 equations alone are the conservation laws and have two roots;
# the zeta^0 equations keep only the collision
print("conservation roots:", [tuple(map(str, r)) for r in conservation_roots(F(2), F(1), m)])
print("Lax solutions:     ", [tuple(map(str, r)) for r in lax_equation_solutions(F(2), F(1), m)])

# three sites: Tr M_3 = 2 z^6 + I_2 z^4 + I_1 z^2 + I_0
smp = Sampler(0, "rational")
s = ChainState(smp.positive(3, 1, 3), smp.positive(3, 1, 3))
print("trace of M_3:", [str(c) for c in monodromy(s, m).trace()])
before = trace_coefficients(s, m)
after = trace_coefficients(transfer_step(s, m), m)
print("spectrum preserved:", before == after)

# the constant coefficient is (alpha beta)^n times X/Y + Y/X
print(before[0] == (3 * 1) ** 3 * integrals(s, m).H)
