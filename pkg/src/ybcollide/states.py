"""State and parameter containers for chains of collisions."""
from __future__ import annotations

from dataclasses import dataclass

from .scalars import DomainError


@dataclass(frozen=True)
class ChainState:
    """Point (x_1..x_n, y_1..y_n) of the 2n-dimensional transfer map."""

    x: tuple
    y: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(self.y))
        if len(self.x) != len(self.y):
            raise DomainError("x and y blocks must have the same length")

    @property
    def n(self) -> int:
        return len(self.x)

    def as_vector(self) -> list:
        return list(self.x) + list(self.y)

    @classmethod
    def from_vector(cls, vec) -> "ChainState":
        vec = list(vec)
        n = len(vec) // 2
        return cls(vec[:n], vec[n:])

    def swapped(self) -> "ChainState":
        return ChainState(self.y, self.x)


@dataclass(frozen=True)
class ChainParams:
    """Per-site masses; ``alpha[i]`` sits with x_i and ``beta[i]`` with y_i."""

    alpha: tuple
    beta: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "beta", tuple(self.beta))
        if len(self.alpha) != len(self.beta):
            raise DomainError("alpha and beta lists must have equal length")
        if not all(p > 0 for p in self.alpha + self.beta):
            raise DomainError("all masses must be positive")

    @classmethod
    def autonomous(cls, alpha, beta, n: int) -> "ChainParams":
        return cls((alpha,) * n, (beta,) * n)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def is_autonomous(self) -> bool:
        return len(set(self.alpha)) <= 1 and len(set(self.beta)) <= 1

    def advanced(self) -> "ChainParams":
        """Parameters after one transfer step: y-masses travel with the y-block."""
        return ChainParams(self.alpha, self.beta[1:] + self.beta[:1])

    def check(self, n: int):
        if self.n != n:
            raise DomainError(f"parameters are for n={self.n}, state has n={n}")


def as_params(params, n: int) -> ChainParams:
    """Accept a ChainParams or an (alpha, beta) pair meaning the autonomous case."""
    if isinstance(params, ChainParams):
        params.check(n)
        return params
    alpha, beta = params
    return ChainParams.autonomous(alpha, beta, n)


@dataclass(frozen=True)
class ExtendedState:
    """Point of the doubled phase space: n pairs (x_{2i-1}, x_{2i}) and n pairs for y."""

    pairs_x: tuple
    pairs_y: tuple

    def __post_init__(self):
        object.__setattr__(self, "pairs_x", tuple(tuple(p) for p in self.pairs_x))
        object.__setattr__(self, "pairs_y", tuple(tuple(p) for p in self.pairs_y))
        if len(self.pairs_x) != len(self.pairs_y):
            raise DomainError("x and y pair lists must have the same length")

    @property
    def n(self) -> int:
        return len(self.pairs_x)

    def as_vector(self) -> list:
        """Coordinates ordered x_1, x_2, ..., x_{2n}, y_1, ..., y_{2n}."""
        return [c for p in self.pairs_x for c in p] + [c for p in self.pairs_y for c in p]

    @classmethod
    def from_vector(cls, vec) -> "ExtendedState":
        vec = list(vec)
        n = len(vec) // 4
        xs = [(vec[2 * i], vec[2 * i + 1]) for i in range(n)]
        ys = [(vec[2 * n + 2 * i], vec[2 * n + 2 * i + 1]) for i in range(n)]
        return cls(xs, ys)

    @classmethod
    def embed(cls, state: ChainState) -> "ExtendedState":
        """The point of the invariant manifold {x_{2i-1} = y_{2i-1} = 0} over ``state``."""
        zero = state.x[0] * 0
        return cls([(zero, v) for v in state.x], [(zero, v) for v in state.y])

    def restrict(self) -> ChainState:
        return ChainState([p[1] for p in self.pairs_x], [p[1] for p in self.pairs_y])
