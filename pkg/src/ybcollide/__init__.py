"""Relativistic elastic collisions as Yang-Baxter maps.

Exact (rational) and floating-point implementations of the collision map,
its Lax matrices, the transfer maps with their integrals, the Poisson
geometry of the extended map and randomised identity checks.
"""
from .collisions import (MassParams, MassParams4, PositivePair, VelocityPair, collide,
                         jacobian_det, nonrel_collision, phi, phi_inv, yb_map, yb_map4)
from .lax import (ZetaMatrix, lax_L, lax_Ltilde, lax_residual, monodromy, solve_lax_4d,
                  trace_coefficients)
from .scalars import (DEFAULT_TOL, Backend, DomainError, Sampler, SingularInputError,
                      ToleranceConfig, approx_eq, sample_positive)
from .states import ChainParams, ChainState, ExtendedState
from .transfer import independence_rank, integrals, iterate, transfer_step, volume_check, volume_density

__version__ = "0.1.0"
