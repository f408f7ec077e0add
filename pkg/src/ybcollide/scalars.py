"""Arithmetic backends and the tolerance policy.

Every map in the package is written against plain Python arithmetic, so it
runs unchanged on :class:`fractions.Fraction` (exact) or ``float`` values.
This module decides which of the two is in play and how equality is judged.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np


class DomainError(ValueError):
    """An input lies outside the domain of the requested operation."""


class SingularInputError(DomainError):
    """A denominator of a closed-form solution vanishes at the input."""


class NotASquareError(DomainError):
    """An exact square root was requested of a rational that is not a square."""


class Backend(enum.Enum):
    RATIONAL = "rational"
    FLOAT = "float"

    @property
    def exact(self) -> bool:
        return self is Backend.RATIONAL

    def coerce(self, value):
        """Convert ``value`` (number or string such as ``"3/5"``, ``"0.6"``)."""
        if self is Backend.RATIONAL:
            if isinstance(value, float):
                return Fraction(value).limit_denominator(10**12)
            return Fraction(value)
        if isinstance(value, str):
            return float(Fraction(value))
        return float(value)

    def coerce_all(self, values):
        return [self.coerce(v) for v in values]


def backend_of(*values) -> Backend:
    """The backend implied by a group of values (float wins if mixed)."""
    if all(is_exact(v) for v in values):
        return Backend.RATIONAL
    return Backend.FLOAT


def is_exact(value) -> bool:
    return isinstance(value, Rational)


@dataclass(frozen=True)
class ToleranceConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-9
    drift_tol: float = 1e-8

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "drift_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOL = ToleranceConfig()


def approx_eq(a, b, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Equality under the backend's rules: literal for rationals, toleranced for floats."""
    if is_exact(a) and is_exact(b):
        return a == b
    a, b = float(a), float(b)
    return abs(a - b) <= cfg.abs_tol + cfg.rel_tol * max(abs(a), abs(b))


def is_zero(value, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    if is_exact(value):
        return value == 0
    return abs(float(value)) <= cfg.abs_tol


def exact_sqrt(q) -> Fraction:
    """Square root of a non-negative rational that is a perfect square."""
    q = Fraction(q)
    if q < 0:
        raise DomainError(f"square root of negative value {q}")
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise NotASquareError(f"{q} is not the square of a rational")
    return Fraction(rn, rd)


def sqrt(value):
    """Square root that stays exact on rationals (and raises if it cannot)."""
    if is_exact(value):
        return exact_sqrt(value)
    return math.sqrt(value)


def to_float(value) -> float:
    return float(value)


class Sampler:
    """Seeded source of positive scalars for one backend.

    A sampler owns its generator; give each worker its own (``spawn``)
    rather than sharing one.
    """

    max_height = 1000

    def __init__(self, seed: int, backend: Backend = Backend.FLOAT):
        self.seed = seed
        self.backend = Backend(backend)
        self._rng = np.random.default_rng(seed)

    def spawn(self, key: int) -> "Sampler":
        child = np.random.SeedSequence([self.seed, key]).generate_state(1)[0]
        return Sampler(int(child), self.backend)

    def positive(self, count: int, lo=0.1, hi=10):
        lo_q, hi_q = _as_fraction(lo), _as_fraction(hi)
        if not 0 < lo_q < hi_q:
            raise DomainError(f"invalid sampling range ({lo}, {hi})")
        if self.backend is Backend.FLOAT:
            logs = self._rng.uniform(math.log(lo), math.log(hi), size=count)
            out = [float(v) for v in np.exp(logs)]
            # exp(log(lo)) can round onto the boundary
            return [min(max(v, math.nextafter(float(lo), math.inf)),
                        math.nextafter(float(hi), -math.inf)) for v in out]
        return [self._rational(lo_q, hi_q) for _ in range(count)]

    def signed(self, count: int, lo=0.1, hi=10):
        """Values with magnitude in (lo, hi) and a random sign."""
        mags = self.positive(count, lo, hi)
        signs = self._rng.integers(0, 2, size=count)
        return [m if s else -m for m, s in zip(mags, signs)]

    def scalar(self, lo=0.1, hi=10):
        return self.positive(1, lo, hi)[0]

    def _rational(self, lo: Fraction, hi: Fraction) -> Fraction:
        h = self.max_height
        while True:
            q = int(self._rng.integers(1, h + 1))
            p_lo = math.floor(lo * q) + 1
            p_hi = min(math.ceil(hi * q) - 1, h)
            if p_lo <= p_hi:
                return Fraction(int(self._rng.integers(p_lo, p_hi + 1)), q)


def _as_fraction(v) -> Fraction:
    return Fraction(repr(v)) if isinstance(v, float) else Fraction(v)


def sample_positive(rng_seed: int, count: int, range=(0.1, 10),
                    backend: Backend = Backend.FLOAT):
    """``count`` positive scalars in the open interval ``range``, deterministic in the seed."""
    lo, hi = range
    return Sampler(rng_seed, backend).positive(count, lo, hi)
