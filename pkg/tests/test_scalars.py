from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ybcollide.scalars import (DEFAULT_TOL, Backend, DomainError, NotASquareError, Sampler,
                               ToleranceConfig, approx_eq, exact_sqrt, sample_positive, sqrt)


def test_approx_eq_examples():
    assert approx_eq(Fraction(1, 3), Fraction(1, 3), DEFAULT_TOL)
    assert approx_eq(0.1 + 0.2, 0.3, DEFAULT_TOL)
    assert not approx_eq(1.0, 1.0 + 1e-6, DEFAULT_TOL)


def test_exact_equality_is_literal():
    assert not approx_eq(Fraction(1, 3), Fraction(1, 3) + Fraction(1, 10**30))


@pytest.mark.parametrize("kwargs", [{"abs_tol": 0}, {"rel_tol": -1e-9}, {"drift_tol": 0.0}])
def test_tolerances_must_be_positive(kwargs):
    with pytest.raises(ValueError):
        ToleranceConfig(**kwargs)


def test_sampling_is_deterministic():
    assert sample_positive(42, 3, (0.1, 10)) == sample_positive(42, 3, (0.1, 10))
    exact = sample_positive(42, 3, (0.1, 10), Backend.RATIONAL)
    assert exact == sample_positive(42, 3, (0.1, 10), Backend.RATIONAL)


@pytest.mark.parametrize("backend", list(Backend))
def test_samples_stay_inside_open_range(backend):
    vals = sample_positive(7, 2000, (0.1, 10), backend)
    assert all(0.1 < v < 10 for v in vals)


def test_rational_samples_have_small_height():
    vals = sample_positive(3, 500, (0.1, 10), Backend.RATIONAL)
    assert all(isinstance(v, Fraction) for v in vals)
    assert all(v.denominator <= 1000 and v.numerator <= 1000 for v in vals)


def test_float_samples_are_log_uniform():
    vals = sample_positive(11, 20000, (0.1, 10))
    below_one = sum(v < 1 for v in vals) / len(vals)
    assert abs(below_one - 0.5) < 0.02


@pytest.mark.parametrize("rng", [(0, 1), (2, 1), (-1, 3), (1, 1)])
def test_invalid_range(rng):
    with pytest.raises(DomainError):
        sample_positive(0, 3, rng)


def test_spawned_samplers_are_independent_and_reproducible():
    a, b = Sampler(5).spawn(0), Sampler(5).spawn(1)
    assert a.positive(4) != b.positive(4)
    assert Sampler(5).spawn(1).positive(4) == Sampler(5).spawn(1).positive(4)


def test_backend_coercion():
    assert Backend.RATIONAL.coerce("3/5") == Fraction(3, 5)
    assert Backend.RATIONAL.coerce("0.6") == Fraction(3, 5)
    assert Backend.FLOAT.coerce("3/5") == pytest.approx(0.6)


def test_exact_sqrt():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt(Fraction(4)) == 2
    with pytest.raises(NotASquareError):
        exact_sqrt(Fraction(2))


@given(st.fractions(), st.fractions())
def test_field_axioms_hold_literally(a, b):
    assert (a + b) - b == a
    if b != 0:
        assert (a * b) / b == a
