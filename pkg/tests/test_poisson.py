from fractions import Fraction as F

import numpy as np
import pytest

from oracles import finite_difference_jacobian
from ybcollide.poisson import (bracket, coordinate, involution_residual, jacobi_residual,
                               on_manifold, poisson_map_residual, poisson_tensor_at,
                               reduced_transfer_matches, reduction_check, rtilde,
                               symplectic_residual_2d, tilde_transfer_jacobian, tilde_transfer_step)
from ybcollide.scalars import Sampler
from ybcollide.states import ChainState, ExtendedState

M = (F(3), F(1))


def ext_state(smp, n, lo=F(1, 20), hi=1):
    return ExtendedState(list(zip(smp.signed(n, lo, hi), smp.positive(n))),
                         list(zip(smp.signed(n, lo, hi), smp.positive(n))))


def test_tensor_example():
    s = ExtendedState([(F(0), F(2))], [(F(0), F(3))])
    pi = poisson_tensor_at(s, M)
    expected = np.array([[0, F(2, 3), 0, 0], [F(-2, 3), 0, 0, 0], [0, 0, 0, 3], [0, 0, -3, 0]],
                        dtype=object)
    assert (pi == expected).all()
    assert (pi + pi.T == 0).all()


def test_tensor_has_no_cross_couplings():
    s = ext_state(Sampler(1, "rational"), 3)
    pi = poisson_tensor_at(s, M)
    for i in range(12):
        for j in range(12):
            if pi[i, j] != 0:
                assert i // 2 == j // 2


def test_coordinate_brackets():
    s = ext_state(Sampler(2, "rational"), 2)
    vec = s.as_vector()
    assert bracket(coordinate(0), coordinate(1), s, M) == vec[1] / M[0]
    assert bracket(coordinate(4), coordinate(5), s, M) == vec[5] / M[1]
    assert bracket(coordinate(0), coordinate(4), s, M) == 0
    f = lambda v: v[0] * v[3] + v[5] / v[1]
    assert bracket(f, f, s, M) == 0


def test_bracket_falls_back_to_finite_differences():
    s = ext_state(Sampler(2), 1)
    f = lambda v: float(np.sin(float(v[0]))) * v[1]  # rejects dual numbers
    g = coordinate(1)
    vec = s.as_vector()
    exact = np.cos(vec[0]) * vec[1] * vec[1] / 3.0
    assert bracket(f, g, s, (3.0, 1.0)) == pytest.approx(exact, rel=1e-6)


def test_jacobi_identity():
    assert jacobi_residual(ext_state(Sampler(3, "rational"), 2), M) == 0


def test_identity_map_is_poisson():
    s = ext_state(Sampler(4, "rational"), 2)
    assert poisson_map_residual(lambda z: z, s, M) == 0


def test_rtilde_is_poisson_exact():
    smp = Sampler(5, "rational")
    for _ in range(10):
        m = tuple(smp.positive(2))
        s = ext_state(smp, 1)
        assert poisson_map_residual(lambda z: rtilde(z, m), s, m) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_tilde_transfer_is_poisson(n):
    smp = Sampler(10 + n, "rational")
    m = tuple(smp.positive(2))
    s = ext_state(smp, n)
    jac = lambda z: tilde_transfer_jacobian(z, m)
    assert poisson_map_residual(lambda z: tilde_transfer_step(z, m), s, m, jac) == 0


def test_analytic_jacobian_matches_finite_differences():
    smp = Sampler(6)
    m = (2.0, 0.7)
    s = ext_state(smp, 3, 0.05, 1)
    J = np.array(tilde_transfer_jacobian(s, m), dtype=float)
    fd = finite_difference_jacobian(
        lambda v: tilde_transfer_step(ExtendedState.from_vector(v), m).as_vector(), s.as_vector())
    assert np.allclose(J, fd, rtol=1e-5, atol=1e-6)


def test_breaking_the_map_breaks_the_residual():
    s = ext_state(Sampler(7, "rational"), 1)

    def skewed(z):
        out = rtilde(z, M)
        (u1, u2), = out.pairs_x
        return ExtendedState([(2 * u1, u2)], out.pairs_y)

    assert poisson_map_residual(skewed, s, M) != 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_trace_coefficients_in_involution(n):
    smp = Sampler(20 + n, "rational")
    s = ext_state(smp, n)
    assert involution_residual(s, tuple(smp.positive(2))) == 0


def test_symplectic_residual():
    assert symplectic_residual_2d((F(2), F(1)), M) == 0
    assert symplectic_residual_2d((F(4, 3), F(4, 3)), M) == 0
    smp = Sampler(8, "rational")
    for _ in range(20):
        assert symplectic_residual_2d(tuple(smp.positive(2)), tuple(smp.positive(2))) == 0


def test_reduction():
    assert reduction_check(F(2), F(1), M)
    assert reduction_check(F(5, 2), F(5, 2), M)
    assert rtilde(ExtendedState([(F(0), F(2))], [(F(0), F(1))]), M).pairs_x == ((0, F(7, 5)),)
    smp = Sampler(9, "rational")
    for _ in range(20):
        assert reduction_check(*smp.positive(2), tuple(smp.positive(2)))
    assert reduction_check(2.0, 1.0, (3.0, 1.0))


def test_reduced_transfer_map():
    smp = Sampler(10, "rational")
    for n in (1, 2, 3):
        state = ChainState(smp.positive(n), smp.positive(n))
        assert reduced_transfer_matches(state, tuple(smp.positive(2)))
    assert on_manifold(ExtendedState.embed(state))
