"""Poisson structure on the doubled phase space and the reduction to the collision map.

Coordinates of an :class:`ExtendedState` are ordered
(x_1, x_2, ..., x_{2n}, y_1, ..., y_{2n}); pair i of the x-block is
(x_{2i-1}, x_{2i}) with bracket {x_{2i-1}, x_{2i}} = x_{2i}/alpha, and
likewise for y with beta.  Matrices are numpy arrays, of dtype object when
the entries are exact.
"""
from __future__ import annotations

import numpy as np

from .collisions import jacobian_det, yb_map
from .dual import central_difference_jacobian, gradient, jacobian
from .lax import jacobian_lax_4d, monodromy_tilde, solve_lax_4d
from .scalars import DEFAULT_TOL, ToleranceConfig, is_exact, is_zero
from .states import ChainState, ExtendedState, as_params


def _array(rows):
    exact = all(is_exact(v) for row in rows for v in row)
    return np.array(rows, dtype=object if exact else float)


def poisson_tensor_at(s: ExtendedState, m) -> np.ndarray:
    alpha, beta = m
    vec = s.as_vector()
    dim = len(vec)
    zero = vec[0] * 0
    rows = [[zero] * dim for _ in range(dim)]
    two_n = 2 * s.n
    for i in range(s.n):
        for base, mass in ((0, alpha), (two_n, beta)):
            p, q = base + 2 * i, base + 2 * i + 1
            rows[p][q] = vec[q] / mass
            rows[q][p] = -vec[q] / mass
    return _array(rows)


def _max_abs(arr):
    return max((abs(v) for v in np.asarray(arr).ravel()), default=0)


def _gradient(f, vec, hook=None):
    if hook is not None:
        return list(hook(vec))
    try:
        return gradient(f, vec)
    except TypeError:
        return central_difference_jacobian(lambda v: [f(v)], vec)[0]


def bracket(f, g, s: ExtendedState, m, grad_f=None, grad_g=None):
    """{f, g}(s) = grad f . Pi(s) . grad g.

    ``f`` and ``g`` take the coordinate list of ``s``.  Gradients come from
    dual numbers unless analytic hooks are supplied; functions that reject
    dual numbers fall back to central differences.
    """
    vec = s.as_vector()
    pi = poisson_tensor_at(s, m)
    df = _gradient(f, vec, grad_f)
    dg = _gradient(g, vec, grad_g)
    total = vec[0] * 0
    for i, a in enumerate(df):
        for j, b in enumerate(dg):
            entry = pi[i, j]
            if entry != 0:
                total = total + a * entry * b
    return total


def coordinate(k: int):
    """The k-th coordinate function (0-based, vector ordering)."""
    return lambda vec: vec[k]


def jacobi_residual(s: ExtendedState, m):
    """Largest Jacobi-identity defect over all coordinate triples.

    Uses sum over l of Pi^{il} d_l Pi^{jk} + cyclic, with the tensor's
    derivatives taken by dual numbers.
    """
    vec = s.as_vector()
    dim = len(vec)
    alpha, beta = m

    pi = poisson_tensor_at(s, m)
    dpi = jacobian(lambda v: _tensor_entries(v, s.n, alpha, beta), vec)
    worst = vec[0] * 0

    def d(j, k, l):
        return dpi[j * dim + k][l]

    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                total = vec[0] * 0
                for l in range(dim):
                    total = (total + pi[i, l] * d(j, k, l) + pi[j, l] * d(k, i, l)
                             + pi[k, l] * d(i, j, l))
                worst = max(worst, abs(total))
    return worst


def _tensor_entries(v, n, alpha, beta):
    dim = len(v)
    zero = v[0] * 0
    rows = [[zero] * dim for _ in range(dim)]
    for i in range(n):
        for base, mass in ((0, alpha), (2 * n, beta)):
            p, q = base + 2 * i, base + 2 * i + 1
            rows[p][q] = v[q] / mass
            rows[q][p] = -v[q] / mass
    return [e for row in rows for e in row]


def rtilde(s: ExtendedState, m) -> ExtendedState:
    """The four-dimensional map R~ (n = 1)."""
    u, v = solve_lax_4d(s.pairs_x[0], s.pairs_y[0], m)
    return ExtendedState([u], [v])


def tilde_transfer_step(s: ExtendedState, m) -> ExtendedState:
    """Transfer map of R~: collide pair i of x with pair i of y, rotate the y pairs."""
    xs, ys = [], []
    for px, py in zip(s.pairs_x, s.pairs_y):
        u, v = solve_lax_4d(px, py, m)
        xs.append(u)
        ys.append(v)
    return ExtendedState(xs, ys[1:] + ys[:1])


def tilde_transfer_jacobian(s: ExtendedState, m) -> list:
    """Analytic Jacobian of ``tilde_transfer_step`` assembled from the per-site blocks."""
    n = s.n
    dim = 4 * n
    zero = s.pairs_x[0][0] * 0
    rows = [[zero] * dim for _ in range(dim)]
    for i in range(n):
        block = jacobian_lax_4d(s.pairs_x[i], s.pairs_y[i], m)
        cols = [2 * i, 2 * i + 1, 2 * n + 2 * i, 2 * n + 2 * i + 1]
        # u-pair stays at site i; v-pair moves to y-slot i-1
        j = (i - 1) % n
        out_rows = [2 * i, 2 * i + 1, 2 * n + 2 * j, 2 * n + 2 * j + 1]
        for r in range(4):
            for c in range(4):
                rows[out_rows[r]][cols[c]] = block[r][c]
    return rows


def poisson_map_residual(f, s: ExtendedState, m, jac=None):
    """max |J Pi(s) J^T - Pi(f(s))| for a map ``f`` on extended states.

    ``jac`` may supply the Jacobian rows; otherwise dual numbers are used.
    """
    image = f(s)
    if jac is None:
        jac_rows = jacobian(lambda v: f(ExtendedState.from_vector(v)).as_vector(), s.as_vector())
    else:
        jac_rows = jac(s) if callable(jac) else jac
    J = _array(jac_rows)
    lhs = J.dot(poisson_tensor_at(s, m)).dot(J.T)
    return _max_abs(lhs - poisson_tensor_at(image, m))


def tilde_trace(s: ExtendedState, params) -> list:
    """Coefficients of the trace of the extended monodromy, lowest degree first."""
    return monodromy_tilde(s, params).trace()


def tilde_trace_function(k: int, n: int, m):
    def f(vec):
        return tilde_trace(ExtendedState.from_vector(vec), m)[k]
    return f


def involution_residual(s: ExtendedState, m) -> object:
    """Largest |{t_j, t_k}| over pairs of extended-monodromy trace coefficients."""
    vec = s.as_vector()
    coeffs = tilde_trace(s, m)
    grads = [gradient(tilde_trace_function(k, s.n, m), vec) for k in range(len(coeffs))]
    pi = poisson_tensor_at(s, m)
    worst = vec[0] * 0
    for j in range(len(grads)):
        for k in range(j + 1, len(grads)):
            val = np.array(grads[j], dtype=pi.dtype).dot(pi).dot(np.array(grads[k], dtype=pi.dtype))
            worst = max(worst, abs(val))
    return worst


def symplectic_residual_2d(pair, m):
    """(1/u^2 - 1/v^2) det J_R - (1/x^2 - 1/y^2) for the collision map."""
    x, y = pair
    u, v = yb_map(pair, m)
    return (1 / (u * u) - 1 / (v * v)) * jacobian_det(pair, m) - (1 / (x * x) - 1 / (y * y))


def on_manifold(s: ExtendedState, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    return all(is_zero(p[0], cfg) for p in s.pairs_x + s.pairs_y)


def reduction_check(x2, y2, m, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether R~ maps (0, x2), (0, y2) to (0, u2), (0, v2) with (u2, v2) = yb_map."""
    zero = x2 * 0
    (u1, u2), (v1, v2) = solve_lax_4d((zero, x2), (zero, y2), m)
    eu, ev = yb_map((x2, y2), m)
    if is_exact(u2) and is_exact(v2):
        return u1 == 0 and v1 == 0 and (u2, v2) == (eu, ev)
    from .scalars import approx_eq

    return (is_zero(u1, cfg) and is_zero(v1, cfg)
            and approx_eq(u2, eu, cfg) and approx_eq(v2, ev, cfg))


def reduced_transfer_matches(state: ChainState, m) -> bool:
    """T~_n restricted to the invariant manifold reproduces T_n on the x_{2i}, y_{2i}."""
    from .transfer import transfer_step

    ext = ExtendedState.embed(state)
    image = tilde_transfer_step(ext, m)
    if not on_manifold(image):
        return False
    expected = transfer_step(state, as_params(m, state.n))
    got = image.restrict()
    if all(is_exact(v) for v in got.as_vector()):
        return got == expected
    from .scalars import approx_eq

    return all(approx_eq(a, b) for a, b in zip(got.as_vector(), expected.as_vector()))
