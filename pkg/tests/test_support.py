from fractions import Fraction as F

import pytest

from ybcollide import export
from ybcollide.dual import Dual, central_difference_jacobian, gradient, jacobian
from ybcollide.scalars import Backend
from ybcollide.verification import SUITES, SuiteReport, run_suite
from ybcollide.scalars import DEFAULT_TOL


def test_dual_arithmetic():
    x, y = Dual.variables([F(2), F(3)])
    f = (x * y + x / y - 1 / x) ** 2
    assert f.val == (6 + F(2, 3) - F(1, 2)) ** 2
    assert gradient(lambda v: v[0] * v[0] * v[1], [F(2), F(3)]) == [12, 4]
    assert gradient(lambda v: v[0].sqrt(), [4.0])[0] == pytest.approx(0.25)


def test_dual_matches_central_differences():
    f = lambda v: [v[0] * v[1] / (v[0] + v[1]), v[0] ** 3 - 2 * v[1]]
    exact = jacobian(f, [1.3, 0.7])
    approx = central_difference_jacobian(f, [1.3, 0.7])
    for r, s in zip(exact, approx):
        assert r == pytest.approx(s, rel=1e-7)


def test_format_scalar():
    assert export.format_scalar(F(12, 37)) == "12/37"
    assert export.format_scalar(F(4)) == "4"
    x = 12 / 37
    assert float(export.format_scalar(x)) == x
    assert export.parse_scalar("12/37", Backend.RATIONAL) == F(12, 37)


def test_jsonable():
    out = export.jsonable({"a": F(1, 3), "b": [0.5, F(2)], "c": True, "d": 3, "e": None})
    assert out == {"a": "1/3", "b": [0.5, "2"], "c": True, "d": 3, "e": None}


def test_plot_script():
    text = export.plot_script("p.csv", ["x1", "x2", "y1"], "orbit")
    assert "splot 'p.csv' skip 1 using 1:2:3" in text
    assert "set zlabel 'y1'" in text


def test_suite_report_records():
    rep = SuiteReport("yb", 1, "float")
    rep.record("a", 1e-13, 0, DEFAULT_TOL)
    rep.record("b", 1e-3, 0, DEFAULT_TOL)
    rep.record("c", F(0), 0, DEFAULT_TOL)
    rep.record("d", F(1, 10**20), 0, DEFAULT_TOL)
    assert [f["check"] for f in rep.failures] == ["b", "d"]
    assert rep.checks == 4 and rep.max_residual == 1e-3


@pytest.mark.parametrize("suite", SUITES)
@pytest.mark.parametrize("backend", ["rational", "float"])
def test_suites_pass(suite, backend):
    rep = run_suite(suite, 15, 123, backend)
    assert rep.passed, rep.failures[:3]
    assert rep.checks > 0
    if backend == "rational":
        assert rep.max_residual == 0
    else:
        assert rep.max_residual <= 1e-12


@pytest.mark.parametrize("suite", ["yb", "quad"])
def test_negative_controls_are_detected(suite):
    rep = run_suite(suite, 5, 1, "rational", negative_control=True)
    assert not rep.passed
    assert all("negative control" in f["check"] for f in rep.failures)
