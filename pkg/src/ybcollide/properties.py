"""Pointwise checks of the defining identities: YB equation, involution,
reversibility, and the quad-graph equation with its 3D consistency.

A *parametric map* here is a callable ``f(x, y, p, q) -> (u, v)`` where
``p`` and ``q`` are the parameters attached to the first and second slot.
Values may be scalars or tuples (the 4D map acts on pairs).
"""
from __future__ import annotations

from dataclasses import dataclass

from .collisions import (MassParams4, VelocityPair, collide, nonrel_collision, yb_map,
                         yb_map4)
from .lax import solve_lax_4d
from .scalars import DEFAULT_TOL, DomainError, ToleranceConfig, approx_eq, is_exact


@dataclass(frozen=True)
class YBTriple:
    x: object
    y: object
    z: object
    params: tuple


@dataclass(frozen=True)
class QuadFace:
    w00: object
    w10: object
    w01: object
    w11: object
    params: tuple


def yb_parametric(x, y, a, b):
    return tuple(yb_map((x, y), (a, b)))


def yb4_parametric(x, y, a, b):
    """Four-parameter map; each slot carries a pair (p1, p2)."""
    return tuple(yb_map4((x, y), MassParams4(a[0], a[1], b[0], b[1])))


def nonrel_parametric(v1, v2, m1, m2):
    out = nonrel_collision(VelocityPair(v1, v2), (m1, m2))
    return out.v1, out.v2


def collide_parametric(c=1):
    def f(v1, v2, m1, m2):
        out = collide(VelocityPair(v1, v2, c), (m1, m2))
        return out.v1, out.v2
    return f


def rtilde_parametric(x, y, a, b):
    return solve_lax_4d(x, y, (a, b))


def broken_parametric(x, y, a, b):
    """(x, y) -> (y^2, x): not a YB map; used as a negative control."""
    return y * y, x


def _flatten(values):
    out = []
    for v in values:
        if isinstance(v, (tuple, list)):
            out.extend(_flatten(v))
        else:
            out.append(v)
    return out


def _max_diff(left, right):
    diffs = [abs(a - b) for a, b in zip(_flatten(left), _flatten(right))]
    return max(diffs)


def yb_sides(f, t: YBTriple):
    """(R23 R13 R12)(x, y, z) and (R12 R13 R23)(x, y, z), parameters attached to slots."""
    a, b, c = t.params

    def r12(s):
        u, v = f(s[0], s[1], a, b)
        return (u, v, s[2])

    def r13(s):
        u, v = f(s[0], s[2], a, c)
        return (u, s[1], v)

    def r23(s):
        u, v = f(s[1], s[2], b, c)
        return (s[0], u, v)

    start = (t.x, t.y, t.z)
    return r23(r13(r12(start))), r12(r13(r23(start)))


def yb_residual(f, t: YBTriple):
    """Max-norm difference of the two sides of the YB equation at ``t``."""
    try:
        left, right = yb_sides(f, t)
    except ZeroDivisionError as exc:
        raise DomainError(f"map undefined at an intermediate point of {t}") from exc
    return _max_diff(left, right)


def _same(left, right, cfg):
    return all(approx_eq(a, b, cfg) for a, b in zip(_flatten(left), _flatten(right)))


def involution_check(f, point, params, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    a, b = params
    once = f(point[0], point[1], a, b)
    twice = f(once[0], once[1], a, b)
    return _same(twice, point, cfg)


def reversibility_check(f, point, params, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    """R^{21}_{b,a} after R_{a,b} is the identity (R^{21} = swap R swap)."""
    a, b = params
    u, v = f(point[0], point[1], a, b)
    back_v, back_u = f(v, u, b, a)
    return _same((back_u, back_v), point, cfg)


def quad_residual(f: QuadFace):
    a, b = f.params
    return f.w10 * (a * f.w00 + b * f.w11) - f.w01 * (b * f.w00 + a * f.w11)


def solve_corner(w00, w10, w01, p, q, shift=0):
    """w11 from the quad equation with parameter p along w00-w10 and q along w00-w01.

    ``shift`` adds shift * w00 * w11 to the equation (negative controls only).
    """
    den = q * w10 - p * w01 + shift * w00
    if den == 0:
        raise DomainError("singular face: corner value is undetermined")
    return w00 * (q * w01 - p * w10) / den


def solve_w01(w00, w10, w11, m):
    """w01 from the quad equation given the other three corners."""
    a, b = m
    den = b * w00 + a * w11
    if den == 0:
        raise DomainError("singular face: b w00 + a w11 vanishes")
    return w10 * (a * w00 + b * w11) / den


def quad_yb_equivalence(w00, w10, w11, m, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Edge products of a solved face are related by the collision YB map.

    With x = w10 w00, y = w11 w10, u = w11 w01, v = w01 w00 the face equation
    holds iff (u, v) = yb_map(x, y).
    """
    w01 = solve_w01(w00, w10, w11, m)
    x, y = w10 * w00, w11 * w10
    u, v = w11 * w01, w01 * w00
    return _same((u, v), tuple(yb_map((x, y), m)), cfg)


def cube_values(w000, w100, w010, w001, m3, shift=0):
    """The three values of w111 obtained from the three faces meeting there.

    ``shift`` perturbs the face equation used on the w100 face.
    """
    a, b, c = m3
    w110 = solve_corner(w000, w100, w010, a, b)
    w101 = solve_corner(w000, w100, w001, a, c)
    w011 = solve_corner(w000, w010, w001, b, c)
    return (solve_corner(w100, w110, w101, b, c, shift),
            solve_corner(w010, w110, w011, a, c),
            solve_corner(w001, w101, w011, a, b))


def cube_consistency(w000, w100, w010, w001, m3, shift=0):
    """Max pairwise discrepancy between the three w111 values (0 means consistent)."""
    vals = cube_values(w000, w100, w010, w001, m3, shift)
    return max(abs(vals[i] - vals[j]) for i in range(3) for j in range(i + 1, 3))


def is_exact_zero(value) -> bool:
    return is_exact(value) and value == 0
