"""Transfer maps of the collision YB map on periodic staircases.

``transfer_step`` collides each (x_i, y_i) pair and then rotates the
y-block one slot to the left.  The closed-form first integrals, the
invariant volume density and the functional-independence diagnostics
live here too.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .collisions import jacobian_det, yb_map
from .dual import gradient
from .lax import trace_coefficients
from .scalars import DomainError, Sampler, is_exact
from .states import ChainState, as_params


@dataclass(frozen=True)
class IntegralReport:
    E: object
    P: object
    H: object
    linear: object
    spectral: list = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {"E": self.E, "P": self.P, "H": self.H, "linear": self.linear}
        for k, v in enumerate(self.spectral):
            out[f"I{k}"] = v
        return out


def transfer_step(s: ChainState, params) -> ChainState:
    """One application of T_n.

    Site i uses masses (alpha[i], beta[i]); the outgoing y-block is rotated so
    slot i holds y'_{i+1} and the last slot holds y'_1.  With per-site masses
    the betas move with the y-block, see ``ChainParams.advanced``.
    """
    params = as_params(params, s.n)
    xs, ys = [], []
    for x, y, a, b in zip(s.x, s.y, params.alpha, params.beta):
        u, v = yb_map((x, y), (a, b))
        xs.append(u)
        ys.append(v)
    return ChainState(xs, ys[1:] + ys[:1])


def iterate(s: ChainState, params, k: int, observer=None, stride: int = 1) -> ChainState:
    """Apply T_n ``k`` times.

    ``observer(step, state, report)`` is called at step 0, every ``stride``
    steps, and at the last step.  Per-site parameters are advanced with the
    y-block so the composition is the physical sequence of collisions.
    """
    if k < 0:
        raise DomainError("number of steps must be non-negative")
    params = as_params(params, s.n)
    if observer is not None:
        observer(0, s, integrals(s, params))
    for step in range(1, k + 1):
        s = transfer_step(s, params)
        if not params.is_autonomous:
            params = params.advanced()
        if observer is not None and (step % stride == 0 or step == k):
            observer(step, s, integrals(s, params))
    return s


def energy_integral(s: ChainState, params):
    params = as_params(params, s.n)
    return sum(a * (x + 1 / x) + b * (y + 1 / y)
               for x, y, a, b in zip(s.x, s.y, params.alpha, params.beta))


def momentum_integral(s: ChainState, params):
    params = as_params(params, s.n)
    return sum(a * (x - 1 / x) + b * (y - 1 / y)
               for x, y, a, b in zip(s.x, s.y, params.alpha, params.beta))


def linear_integral(s: ChainState, params):
    params = as_params(params, s.n)
    return sum(a * x + b * y for x, y, a, b in zip(s.x, s.y, params.alpha, params.beta))


def _products(s: ChainState):
    return math.prod(s.x), math.prod(s.y)


def ratio_integral(s: ChainState):
    """H = X/Y + Y/X with X, Y the products of the x- and y-blocks."""
    X, Y = _products(s)
    return X / Y + Y / X


def h_function(s: ChainState):
    """X/Y - Y/X; changes sign under T_n."""
    X, Y = _products(s)
    return X / Y - Y / X


def integrals(s: ChainState, params, spectral: bool = True) -> IntegralReport:
    params = as_params(params, s.n)
    return IntegralReport(
        E=energy_integral(s, params),
        P=momentum_integral(s, params),
        H=ratio_integral(s),
        linear=linear_integral(s, params),
        spectral=trace_coefficients(s, params) if spectral else [],
    )


def volume_density(s: ChainState):
    """1/prod(x_i^2) - 1/prod(y_i^2)."""
    X, Y = _products(s)
    return 1 / (X * X) - 1 / (Y * Y)


def permutation_parity(perm) -> int:
    """+1 for even permutations of range(len(perm)), -1 for odd."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def shift_permutation(n: int) -> list:
    """Output slot k of T_n reads collided coordinate perm[k] (x-block fixed, y rotated)."""
    return list(range(n)) + [n + (i + 1) % n for i in range(n)]


def transfer_jacobian_det(s: ChainState, params):
    """det of the Jacobian of T_n: parity of the y-rotation times the per-site determinants."""
    params = as_params(params, s.n)
    det = permutation_parity(shift_permutation(s.n))
    for x, y, a, b in zip(s.x, s.y, params.alpha, params.beta):
        det = det * jacobian_det((x, y), (a, b))
    return det


def volume_check(s: ChainState, params):
    """rho(T_n s) * det J(s) - rho(s); vanishes when T_n preserves the volume form."""
    params = as_params(params, s.n)
    image = transfer_step(s, params)
    return volume_density(image) * transfer_jacobian_det(s, params) - volume_density(s)


def signed_volume_residual(s: ChainState, params):
    """(1/prod X_i Y_i) det J + 1/prod x_i y_i, which is zero for every state."""
    params = as_params(params, s.n)
    image = transfer_step(s, params)
    Xi, Yi = _products(image)
    X, Y = _products(s)
    return transfer_jacobian_det(s, params) / (Xi * Yi) + 1 / (X * Y)


def double_step_volume_residual(s: ChainState, params):
    """Residual of T_n^2 preserving the density 1/prod(x_i y_i)."""
    params = as_params(params, s.n)
    mid = transfer_step(s, params)
    nxt = params.advanced() if not params.is_autonomous else params
    end = transfer_step(mid, nxt)
    det = transfer_jacobian_det(s, params) * transfer_jacobian_det(mid, nxt)
    Xe, Ye = _products(end)
    X, Y = _products(s)
    return det / (Xe * Ye) - 1 / (X * Y)


def coordinate_bounds(s: ChainState, params):
    """Box (lo, hi) containing every coordinate on the orbit through ``s``.

    Each term a(x + 1/x) is at least 2a, so the conserved energy caps every
    single term; the cap gives x + 1/x <= B and hence 1/r <= x <= r with
    r the larger root of t + 1/t = B.
    """
    params = as_params(params, s.n)
    e = float(energy_integral(s, params))
    floor_total = 2 * (sum(float(a) for a in params.alpha) + sum(float(b) for b in params.beta))
    bound = 0.0
    for m in list(params.alpha) + list(params.beta):
        m = float(m)
        cap = (e - floor_total + 2 * m) / m
        bound = max(bound, (cap + math.sqrt(max(cap * cap - 4, 0.0))) / 2)
    return 1 / bound, bound


INTEGRAL_NAMES = ("E", "P", "H", "linear")


def integral_function(name: str, params):
    """Scalar function of the 2n-vector for a named integral ("E", "P", "H", "linear", "I<k>")."""
    def f(vec):
        s = ChainState.from_vector(vec)
        if name == "E":
            return energy_integral(s, params)
        if name == "P":
            return momentum_integral(s, params)
        if name == "H":
            return ratio_integral(s)
        if name == "linear":
            return linear_integral(s, params)
        if name.startswith("I"):
            return trace_coefficients(s, params)[int(name[1:])]
        raise KeyError(name)
    return f


def integral_jacobian(s: ChainState, params, which) -> list:
    """Rows are the gradients of the selected integrals (exact on rational states)."""
    params = as_params(params, s.n)
    vec = s.as_vector()
    return [gradient(integral_function(name, params), vec) for name in which]


def matrix_rank(rows, rel_threshold: float = 1e-8) -> int:
    """Exact rank for rational entries, singular-value threshold otherwise."""
    if all(is_exact(v) for row in rows for v in row):
        import sympy as sp

        return sp.Matrix([[sp.Rational(v.numerator, v.denominator) for v in row]
                          for row in rows]).rank()
    sv = np.linalg.svd(np.array(rows, dtype=float), compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > rel_threshold * sv[0]))


def independence_rank(s: ChainState, params, which, rel_threshold: float = 1e-8) -> int:
    """Rank of the Jacobian of the selected integrals at ``s``."""
    return matrix_rank(integral_jacobian(s, params, which), rel_threshold)


def generic_rank(params, n: int, which, sampler: Sampler, points: int = 5, lo=0.1, hi=10):
    """Ranks at ``points`` random states (a list, one entry per point)."""
    ranks = []
    for _ in range(points):
        s = ChainState(sampler.positive(n, lo, hi), sampler.positive(n, lo, hi))
        ranks.append(independence_rank(s, params, which))
    return ranks


def random_state(sampler: Sampler, n: int, lo=0.1, hi=10) -> ChainState:
    return ChainState(sampler.positive(n, lo, hi), sampler.positive(n, lo, hi))
