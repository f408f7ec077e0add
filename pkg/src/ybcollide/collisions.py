"""Two-particle collision maps.

Velocities live in (-c, c); the map ``phi`` sends them to positive
coordinates where the relativistic collision becomes the rational map
``yb_map``.  All functions work on Fractions or floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .scalars import DomainError, sqrt


class VelocityPair(NamedTuple):
    v1: object
    v2: object
    c: object = 1


class PositivePair(NamedTuple):
    x: object
    y: object


@dataclass(frozen=True)
class MassParams:
    alpha: object
    beta: object

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise DomainError(f"masses must be positive, got {self.alpha}, {self.beta}")

    def __iter__(self):
        return iter((self.alpha, self.beta))

    def swapped(self) -> "MassParams":
        return MassParams(self.beta, self.alpha)


@dataclass(frozen=True)
class MassParams4:
    alpha1: object
    alpha2: object
    beta1: object
    beta2: object

    def __post_init__(self):
        if not all(p > 0 for p in self):
            raise DomainError("all four parameters must be positive")

    def __iter__(self):
        return iter((self.alpha1, self.alpha2, self.beta1, self.beta2))

    @classmethod
    def from_masses(cls, m: MassParams) -> "MassParams4":
        """The specialisation that reproduces ``yb_map`` with masses ``m``."""
        return cls(m.beta, m.beta, m.alpha, m.alpha)


def _masses(m):
    return m if isinstance(m, MassParams) else MassParams(*m)


def phi(v, c=1):
    """Rapidity-type coordinate sqrt((c+v)/(c-v)), a bijection (-c, c) -> (0, inf).

    On rationals the result is exact and a ``NotASquareError`` is raised when
    it would be irrational.
    """
    if not c > 0:
        raise DomainError("c must be positive")
    if not -c < v < c:
        raise DomainError(f"|v| must be below c={c}, got v={v}")
    return sqrt((c + v) / (c - v))


def phi_inv(x, c=1):
    if not x > 0:
        raise DomainError(f"phi_inv needs x > 0, got {x}")
    x2 = x * x
    return c * (x2 - 1) / (x2 + 1)


def lorentz_factor(v, c=1):
    """gamma(v), computed through ``phi`` so it stays rational when phi(v) is."""
    x = phi(v, c)
    return (x + 1 / x) / 2


def energy(v: VelocityPair, m) -> object:
    """Total relativistic energy m1 c^2 gamma(v1) + m2 c^2 gamma(v2)."""
    m = _masses(m)
    c = v.c
    return c * c * (m.alpha * lorentz_factor(v.v1, c) + m.beta * lorentz_factor(v.v2, c))


def momentum(v: VelocityPair, m) -> object:
    m = _masses(m)
    c = v.c
    return (m.alpha * v.v1 * lorentz_factor(v.v1, c)
            + m.beta * v.v2 * lorentz_factor(v.v2, c))


def nonrel_collision(v: VelocityPair, m) -> VelocityPair:
    """Newtonian elastic collision; ``c`` is carried along but ignored."""
    m1, m2 = _masses(m)
    v1, v2 = v.v1, v.v2
    total = m1 + m2
    return VelocityPair((v1 * (m1 - m2) + 2 * m2 * v2) / total,
                        (v2 * (m2 - m1) + 2 * m1 * v1) / total, v.c)


def collision_ratio(x, y, alpha, beta):
    return (alpha * x + beta * y) / (beta * x + alpha * y)


def yb_map(pair, m) -> PositivePair:
    """(x, y) -> (y P, x P) with P = (a x + b y)/(b x + a y)."""
    x, y = pair
    alpha, beta = m
    p = collision_ratio(x, y, alpha, beta)
    return PositivePair(y * p, x * p)


def yb_map4(pair, m: MassParams4) -> PositivePair:
    """Four-parameter map (y P, x P), P = (b1 x + a2 y)/(a1 x + b2 y)."""
    x, y = pair
    a1, a2, b1, b2 = m
    p = (b1 * x + a2 * y) / (a1 * x + b2 * y)
    return PositivePair(y * p, x * p)


def collide(v: VelocityPair, m) -> VelocityPair:
    """Velocities after a relativistic elastic collision.

    Computed by conjugating ``yb_map`` with ``phi``.  For rational input the
    velocities must have rational ``phi`` images (e.g. come from ``phi_inv``).
    """
    c = v.c
    u, w = yb_map((phi(v.v1, c), phi(v.v2, c)), _masses(m))
    return VelocityPair(phi_inv(u, c), phi_inv(w, c), c)


def yb_jacobian(pair, m):
    """Analytic Jacobian [[du/dx, du/dy], [dv/dx, dv/dy]] of ``yb_map``."""
    x, y = pair
    a, b = m
    num = a * x + b * y
    den = b * x + a * y
    p = num / den
    # dP/dx and dP/dy
    dpx = (a * den - b * num) / (den * den)
    dpy = (b * den - a * num) / (den * den)
    return [[y * dpx, p + y * dpy],
            [p + x * dpx, x * dpy]]


def jacobian_det(pair, m):
    """Determinant of the Jacobian of ``yb_map``: -P^2 = -(u v)/(x y)."""
    x, y = pair
    p = collision_ratio(x, y, *m)
    return -p * p


def conservation_residuals(before, after, m):
    """Energy- and momentum-type residuals in positive coordinates.

    Returns the differences of a(x + 1/x) + b(y + 1/y) and
    a(x - 1/x) + b(y - 1/y) between ``before`` and ``after``.
    """
    a, b = m
    (x, y), (u, v) = before, after
    e = a * (u + 1 / u) + b * (v + 1 / v) - a * (x + 1 / x) - b * (y + 1 / y)
    p = a * (u - 1 / u) + b * (v - 1 / v) - a * (x - 1 / x) - b * (y - 1 / y)
    return e, p
