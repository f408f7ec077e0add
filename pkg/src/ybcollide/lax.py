"""2x2 matrices polynomial in the spectral parameter, and the Lax matrices built on them.

Polynomials are dense coefficient lists (lowest degree first).  Identities
are checked coefficient by coefficient, so on rational input a zero
residual is an exact statement about the polynomial matrix.
"""
from __future__ import annotations

from itertools import zip_longest

from .collisions import phi
from .scalars import (DEFAULT_TOL, DomainError, SingularInputError, ToleranceConfig,
                      approx_eq, is_exact, is_zero, sqrt)
from .states import ChainState, ExtendedState, as_params


def _padd(p, q):
    return [a + b for a, b in zip_longest(p, q, fillvalue=0)]


def _psub(p, q):
    return [a - b for a, b in zip_longest(p, q, fillvalue=0)]


def _pmul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


class ZetaMatrix:
    """2x2 matrix whose entries are polynomials in zeta.

    ``entries[i][j]`` is the coefficient list of entry (i, j), lowest
    degree first.
    """

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(tuple(list(e) for e in row) for row in entries)

    @classmethod
    def identity(cls, one=1):
        return cls([[[one], [one * 0]], [[one * 0], [one]]])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __mul__(self, other):
        if not isinstance(other, ZetaMatrix):
            return ZetaMatrix([[[c * other for c in e] for e in row] for row in self.entries])
        a, b = self.entries, other.entries
        return ZetaMatrix([[_padd(_pmul(a[i][0], b[0][j]), _pmul(a[i][1], b[1][j]))
                            for j in range(2)] for i in range(2)])

    __rmul__ = lambda self, k: self * k  # scalar on the left

    def __add__(self, other):
        return ZetaMatrix([[_padd(p, q) for p, q in zip(r, s)]
                           for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return ZetaMatrix([[_psub(p, q) for p, q in zip(r, s)]
                           for r, s in zip(self.entries, other.entries)])

    @property
    def degree(self) -> int:
        deg = -1
        for row in self.entries:
            for e in row:
                for k, c in enumerate(e):
                    if not _is_literal_zero(c):
                        deg = max(deg, k)
        return deg

    def trace(self) -> list:
        return _padd(self.entries[0][0], self.entries[1][1])

    def det(self) -> list:
        a, b = self.entries
        return _psub(_pmul(a[0], b[1]), _pmul(a[1], b[0]))

    def coefficients(self) -> list:
        """All coefficients of all entries, flattened."""
        return [c for row in self.entries for e in row for c in e]

    def is_zero(self, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
        return all(is_zero(c, cfg) for c in self.coefficients())

    def max_abs(self):
        coeffs = self.coefficients()
        return max((abs(c) for c in coeffs), default=0)

    def equals(self, other, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
        for r, s in zip(self.entries, other.entries):
            for p, q in zip(r, s):
                for a, b in zip_longest(p, q, fillvalue=0):
                    if not approx_eq(a, b, cfg):
                        return False
        return True

    def __eq__(self, other):
        if not isinstance(other, ZetaMatrix):
            return NotImplemented
        return (self - other).is_zero() and all(
            is_exact(c) for c in self.coefficients() + other.coefficients())

    __hash__ = None

    def evaluate(self, zeta):
        return [[sum(c * zeta ** k for k, c in enumerate(e)) for e in row]
                for row in self.entries]

    def __repr__(self):
        return f"ZetaMatrix({[[list(e) for e in row] for row in self.entries]!r})"


def _is_literal_zero(c):
    try:
        return c == 0
    except TypeError:
        return False


def lax_L(x, alpha) -> ZetaMatrix:
    """[[z, a x], [a/x, z]]."""
    if not x > 0:
        raise DomainError(f"Lax matrix needs x > 0, got {x}")
    zero = alpha * 0
    one = zero + 1
    return ZetaMatrix([[[zero, one], [alpha * x]],
                       [[alpha / x], [zero, one]]])


def lax_velocity(v, alpha, c=1) -> ZetaMatrix:
    """Lax matrix of the velocity-space collision map: ``lax_L(phi(v), alpha)``."""
    return lax_L(phi(v, c), alpha)


def lax_Ltilde(x1, x2, alpha) -> ZetaMatrix:
    """[[z/a + x1, x2], [(1 - x1^2)/x2, z/a - x1]]."""
    if x2 == 0:
        raise DomainError("second coordinate of the extended Lax matrix must be nonzero")
    inv = 1 / alpha
    return ZetaMatrix([[[x1, inv], [x2]],
                       [[(1 - x1 * x1) / x2], [-x1, inv]]])


def lax_residual(u, v, x, y, m) -> ZetaMatrix:
    """L(u, a) L(v, b) - L(y, b) L(x, a)."""
    a, b = m
    return lax_L(u, a) * lax_L(v, b) - lax_L(y, b) * lax_L(x, a)


def lax_residual_tilde(u, v, x, y, m) -> ZetaMatrix:
    """Same residual for the extended Lax matrix; u, v, x, y are coordinate pairs."""
    a, b = m
    return (lax_Ltilde(*u, a) * lax_Ltilde(*v, b)
            - lax_Ltilde(*y, b) * lax_Ltilde(*x, a))


def conservation_roots(x, y, m, cfg: ToleranceConfig = DEFAULT_TOL):
    """All (u, v) solving the zeta^1 part of the Lax equation.

    That part reads a u + b v = a x + b y and a/u + b/v = a/x + b/y, whose
    two roots are (x, y) and the after-collision state.
    """
    a, b = m
    s = a * x + b * y
    t = a / x + b / y
    # eliminate u: t b v^2 + (a^2 - b^2 - t s) v + b s = 0
    qa, qb, qc = t * b, a * a - b * b - t * s, b * s
    disc = qb * qb - 4 * qa * qc
    if not is_exact(disc) and disc < 0:
        disc = 0.0 if -disc <= cfg.abs_tol * max(1.0, qb * qb) else disc
    root = sqrt(disc)
    roots = []
    for v in ((-qb + root) / (2 * qa), (-qb - root) / (2 * qa)):
        u = (s - b * v) / a
        if not any(approx_eq(u, r[0], cfg) and approx_eq(v, r[1], cfg) for r in roots):
            roots.append((u, v))
    return roots


def lax_equation_solutions(x, y, m, cfg: ToleranceConfig = DEFAULT_TOL):
    """Every (u, v) with L(u,a) L(v,b) = L(y,b) L(x,a) as polynomial matrices.

    Candidates come from ``conservation_roots``; the zeta^0 coefficients then
    keep those with u/v = y/x.  Generically only the collision survives; the
    no-collision root (x, y) survives only on the diagonal x = y.
    """
    a, b = m
    rhs = lax_L(y, b) * lax_L(x, a)
    return [r for r in conservation_roots(x, y, m, cfg)
            if (lax_L(r[0], a) * lax_L(r[1], b)).equals(rhs, cfg)]


def three_factor_solutions(values, params):
    """All nonzero (X, Y, Z) with L(X,a)L(Y,b)L(Z,c) = L(x,a)L(y,b)L(z,c).

    Solved exactly with sympy over the rationals; returns a list of tuples
    of Fractions.
    """
    import sympy as sp
    from fractions import Fraction

    zeta = sp.Symbol("zeta")
    unknowns = sp.symbols("X Y Z")

    def lax(x, a):
        return sp.Matrix([[zeta, a * x], [a / x, zeta]])

    vals = [sp.Rational(str(Fraction(v))) for v in values]
    pars = [sp.Rational(str(Fraction(p))) for p in params]
    lhs = lax(unknowns[0], pars[0]) * lax(unknowns[1], pars[1]) * lax(unknowns[2], pars[2])
    rhs = lax(vals[0], pars[0]) * lax(vals[1], pars[1]) * lax(vals[2], pars[2])
    eqs = []
    for e in lhs - rhs:
        num = sp.numer(sp.together(sp.expand(e)))
        eqs.extend(sp.Poly(num, zeta).coeffs())
    found = []
    for sol in sp.solve(eqs, unknowns, dict=True):
        if len(sol) != 3 or any(sol[u] == 0 for u in unknowns):
            continue
        if not all(sol[u].is_rational for u in unknowns):
            found.append(tuple(sol[u] for u in unknowns))
            continue
        found.append(tuple(Fraction(int(sol[u].p), int(sol[u].q)) for u in unknowns))
    return found


def solve_lax_4d(x, y, m):
    """The map R~ defined by L~(u,a) L~(v,b) = L~(y,b) L~(x,a).

    ``x`` and ``y`` are coordinate pairs; returns ``(u, v)`` as pairs.  The
    closed form below is the unique solution of the coefficient equations.
    """
    (x1, x2), (y1, y2) = x, y
    a, b = m
    if x2 == 0 or y2 == 0:
        raise DomainError("second coordinates must be nonzero")
    k = x1 * y2 - x2 * y1
    sx = a * x2 + b * y2
    den = a * b * k * k - sx * (b * x2 + a * y2)
    if den == 0:
        raise SingularInputError(f"extended Lax equation is singular at {x}, {y}")
    q = k * k - x2 * x2 - y2 * y2
    u1 = (b * b * y1 * q + (b * b - a * a) * x1 * x2 * y2 - 2 * a * b * x2 * y1 * y2) / den
    v1 = (a * a * x1 * q + (a * a - b * b) * x2 * y1 * y2 - 2 * a * b * x1 * x2 * y2) / den
    u2 = y2 * (b * b * k * k - sx * sx) / den
    v2 = x2 * (a * a * k * k - sx * sx) / den
    if u2 == 0 or v2 == 0:
        raise SingularInputError(f"extended map leaves its domain at {x}, {y}")
    return (u1, u2), (v1, v2)


def jacobian_lax_4d(x, y, m):
    """Analytic 4x4 Jacobian of ``solve_lax_4d`` in coordinates (x1, x2, y1, y2)."""
    (x1, x2), (y1, y2) = x, y
    a, b = m
    k = x1 * y2 - x2 * y1
    sx = a * x2 + b * y2
    tx = b * x2 + a * y2
    den = a * b * k * k - sx * tx
    q = k * k - x2 * x2 - y2 * y2
    # partials of k, sx, tx, q w.r.t. (x1, x2, y1, y2)
    dk = (y2, -y1, -x2, x1)
    dsx = (0, a, 0, b)
    dtx = (0, b, 0, a)
    dq = tuple(2 * k * dk[i] for i in range(4))
    dq = (dq[0], dq[1] - 2 * x2, dq[2], dq[3] - 2 * y2)
    dden = tuple(2 * a * b * k * dk[i] - dsx[i] * tx - sx * dtx[i] for i in range(4))
    ex = (1, 0, 0, 0)
    ex2 = (0, 1, 0, 0)
    ey1 = (0, 0, 1, 0)
    ey2 = (0, 0, 0, 1)

    n_u1 = b * b * y1 * q + (b * b - a * a) * x1 * x2 * y2 - 2 * a * b * x2 * y1 * y2
    d_u1 = tuple(b * b * (ey1[i] * q + y1 * dq[i])
                 + (b * b - a * a) * (ex[i] * x2 * y2 + x1 * ex2[i] * y2 + x1 * x2 * ey2[i])
                 - 2 * a * b * (ex2[i] * y1 * y2 + x2 * ey1[i] * y2 + x2 * y1 * ey2[i])
                 for i in range(4))
    n_v1 = a * a * x1 * q + (a * a - b * b) * x2 * y1 * y2 - 2 * a * b * x1 * x2 * y2
    d_v1 = tuple(a * a * (ex[i] * q + x1 * dq[i])
                 + (a * a - b * b) * (ex2[i] * y1 * y2 + x2 * ey1[i] * y2 + x2 * y1 * ey2[i])
                 - 2 * a * b * (ex[i] * x2 * y2 + x1 * ex2[i] * y2 + x1 * x2 * ey2[i])
                 for i in range(4))
    n_u2 = y2 * (b * b * k * k - sx * sx)
    d_u2 = tuple(ey2[i] * (b * b * k * k - sx * sx)
                 + y2 * (2 * b * b * k * dk[i] - 2 * sx * dsx[i]) for i in range(4))
    n_v2 = x2 * (a * a * k * k - sx * sx)
    d_v2 = tuple(ex2[i] * (a * a * k * k - sx * sx)
                 + x2 * (2 * a * a * k * dk[i] - 2 * sx * dsx[i]) for i in range(4))

    def quotient_rule(num, dnum):
        return [(dnum[i] * den - num * dden[i]) / (den * den) for i in range(4)]

    return [quotient_rule(n_u1, d_u1), quotient_rule(n_u2, d_u2),
            quotient_rule(n_v1, d_v1), quotient_rule(n_v2, d_v2)]


def monodromy(state: ChainState, params) -> ZetaMatrix:
    """L(y_n,b_n) L(x_n,a_n) ... L(y_1,b_1) L(x_1,a_1)."""
    params = as_params(params, state.n)
    out = None
    for i in reversed(range(state.n)):
        site = lax_L(state.y[i], params.beta[i]) * lax_L(state.x[i], params.alpha[i])
        out = site if out is None else out * site
    return out


def monodromy_tilde(state: ExtendedState, params) -> ZetaMatrix:
    """Monodromy of a chain of extended Lax matrices, same ordering as ``monodromy``."""
    params = as_params(params, state.n)
    out = None
    for i in reversed(range(state.n)):
        site = (lax_Ltilde(*state.pairs_y[i], params.beta[i])
                * lax_Ltilde(*state.pairs_x[i], params.alpha[i]))
        out = site if out is None else out * site
    return out


def trace_coefficients(state: ChainState, params) -> list:
    """[I_0, ..., I_{n-1}] where Tr M_n = 2 z^{2n} + I_{n-1} z^{2n-2} + ... + I_0.

    Raises AssertionError if the trace does not have that shape.
    """
    n = state.n
    tr = monodromy(state, params).trace()
    tr = tr + [0] * (2 * n + 1 - len(tr))
    assert len(tr) == 2 * n + 1, "monodromy degree exceeds 2n"
    assert all(_is_literal_zero(c) for c in tr[1::2]), "odd powers of zeta in the trace"
    assert tr[2 * n] == 2, "leading trace coefficient is not 2"
    return tr[0:2 * n:2]
