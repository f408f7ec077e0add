"""Forward-mode dual numbers with a gradient vector.

Works over any coefficient field, so Jacobians of rational maps evaluated
at rational points come out exact.
"""
from __future__ import annotations

import math
from numbers import Number


class Dual:
    __slots__ = ("val", "grad")

    def __init__(self, val, grad):
        self.val = val
        self.grad = tuple(grad)

    @classmethod
    def variables(cls, point):
        n = len(point)
        zero, one = _zero_one(point)
        return [cls(p, [one if i == j else zero for j in range(n)])
                for i, p in enumerate(point)]

    def _lift(self, other):
        if isinstance(other, Dual):
            return other
        return Dual(other, [0] * len(self.grad))

    def __add__(self, other):
        o = self._lift(other)
        return Dual(self.val + o.val, [a + b for a, b in zip(self.grad, o.grad)])

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.val, [-a for a in self.grad])

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Dual):
            return Dual(self.val * other, [a * other for a in self.grad])
        return Dual(self.val * other.val,
                    [a * other.val + self.val * b for a, b in zip(self.grad, other.grad)])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Dual):
            return Dual(self.val / other, [a / other for a in self.grad])
        inv = 1 / other.val
        val = self.val * inv
        return Dual(val, [(a - val * b) * inv for a, b in zip(self.grad, other.grad)])

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return self._lift(1)
        if k < 0:
            return 1 / self ** (-k)
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def sqrt(self):
        r = math.sqrt(self.val)
        return Dual(r, [a / (2 * r) for a in self.grad])

    # comparisons act on the value so domain checks still work
    def __lt__(self, other):
        return self.val < _value(other)

    def __le__(self, other):
        return self.val <= _value(other)

    def __gt__(self, other):
        return self.val > _value(other)

    def __ge__(self, other):
        return self.val >= _value(other)

    def __eq__(self, other):
        return isinstance(other, (Dual, Number)) and self.val == _value(other)

    __hash__ = None

    def __repr__(self):
        return f"Dual({self.val!r}, {list(self.grad)!r})"


def _value(x):
    return x.val if isinstance(x, Dual) else x


def _zero_one(point):
    sample = point[0] if len(point) else 0
    return sample * 0, sample * 0 + 1


def value_of(x):
    return _value(x)


def jacobian(f, point):
    """Jacobian of a vector-valued ``f`` at ``point`` as a list of rows."""
    out = f(Dual.variables(list(point)))
    n = len(point)
    rows = []
    for comp in out:
        if isinstance(comp, Dual):
            rows.append(list(comp.grad))
        else:
            rows.append([comp * 0] * n)
    return rows


def gradient(f, point):
    """Gradient of a scalar ``f`` at ``point``."""
    out = f(Dual.variables(list(point)))
    if not isinstance(out, Dual):
        return [0] * len(point)
    return list(out.grad)


def central_difference_jacobian(f, point, rel_step=1e-6):
    """Central-difference Jacobian (float only)."""
    point = [float(p) for p in point]
    f0 = f(point)
    rows = [[0.0] * len(point) for _ in f0]
    for j, p in enumerate(point):
        h = rel_step * max(1.0, abs(p))
        up, dn = list(point), list(point)
        up[j] += h
        dn[j] -= h
        fu, fd = f(up), f(dn)
        for i in range(len(f0)):
            rows[i][j] = (float(fu[i]) - float(fd[i])) / (2 * h)
    return rows
