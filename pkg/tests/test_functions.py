import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opmeans import functions as fn
from opmeans.errors import NonConvergenceError, ParameterError

GRID = np.logspace(-6, 6, 100)

FAMILIES = [fn.arithmetic(0.3), fn.geometric(0.5), fn.geometric(0.2), fn.harmonic(0.7),
            fn.logarithmic(), fn.power_quasi(1, 0.3), fn.power_quasi(-1, 0.3),
            fn.power_quasi(0.5, 0.5), fn.power_quasi(-0.4, 0.6), fn.power_quasi(0, 0.4),
            fn.affine(1, 2)]


def test_closed_forms():
    x = np.array([0.25, 1.0, 4.0])
    assert np.allclose(fn.arithmetic(0.25)(x), 0.75 + 0.25 * x)
    assert np.allclose(fn.geometric(0.3)(x), x ** 0.3)
    assert np.allclose(fn.harmonic(0.3)(x), 1 / (0.7 + 0.3 / x))
    assert np.allclose(fn.logarithmic()(x), [(-0.75) / math.log(0.25), 1.0, 3 / math.log(4)])
    assert np.allclose(fn.power_quasi(0.5, 0.3)(x), (0.7 + 0.3 * x ** 0.5) ** 2)
    assert np.allclose(fn.affine(2, 3)(x), 2 + 3 * x)


def test_right_limits_at_zero():
    assert fn.logarithmic().value(0.0) == 0.0
    assert fn.harmonic(0.5).value(0.0) == 0.0
    assert fn.power_quasi(-1, 0.5).value(0.0) == 0.0
    assert fn.geometric(0.0).value(0.0) == 1.0


def test_logarithmic_near_one():
    for u in (1e-9, -3e-7, 5e-5, -9e-5):
        x = 1 + u
        exact = 1 + u / 2 - u * u / 12 + u ** 3 / 24
        assert fn.logarithmic().value(x) == pytest.approx(exact, rel=1e-15)
    assert fn.logarithmic().value(1.0) == 1.0


@pytest.mark.parametrize("alpha", [0.0, 0.3, 1.0])
def test_power_quasi_special_cases(alpha):
    # p = 1, -1, 0 reduce to the weighted arithmetic, harmonic and geometric means
    assert np.allclose(fn.power_quasi(1, alpha)(GRID), fn.arithmetic(alpha)(GRID), rtol=1e-14)
    assert np.allclose(fn.power_quasi(-1, alpha)(GRID), fn.harmonic(alpha)(GRID), rtol=1e-13)
    assert np.allclose(fn.power_quasi(0, alpha)(GRID), fn.geometric(alpha)(GRID), rtol=1e-15)


def test_power_quasi_p_to_zero_is_continuous():
    a = 0.4
    lim = fn.power_quasi(0, a)(GRID[20:80])
    near = fn.power_quasi(2e-6, a)(GRID[20:80])
    assert np.allclose(near, lim, rtol=1e-4)


@pytest.mark.parametrize("family,params", [
    ("arithmetic", {"t": 1.5}), ("geometric", {"t": -0.1}), ("harmonic", {"t": 2}),
    ("power_quasi", {"p": 1.5, "alpha": 0.5}), ("power_quasi", {"p": 0.5, "alpha": 1.2}),
    ("power_quasi", {"alpha": 0.5}), ("affine", {"alpha": -1, "beta": 0}),
    ("nonsense", {}), ("geometric", {"s": 0.5}), ("geometric", {"t": float("nan")}),
])
def test_parameter_validation(family, params):
    with pytest.raises(ParameterError):
        fn.FamilyFunction(family, **params)


def test_aliases():
    assert fn.FamilyFunction("geometric_t", t=0.3) == fn.geometric(0.3)


def test_transpose_examples():
    assert fn.transpose(fn.geometric(0.5)) == fn.geometric(0.5)
    assert fn.transpose(fn.arithmetic(0.5)) == fn.arithmetic(0.5)
    g = fn.transpose(fn.affine(0, 1))
    assert np.allclose(g(GRID), 1.0)
    assert g.alpha == 1.0 and g.beta == 0.0


@pytest.mark.parametrize("f", FAMILIES, ids=lambda f: f.label)
def test_closed_form_transpose_matches_definition(f):
    closed = fn.transpose(f)
    generic = fn.generic_transpose(f)
    assert np.allclose(closed(GRID), generic(GRID), rtol=1e-12)
    assert closed.alpha == pytest.approx(f.beta) and closed.beta == pytest.approx(f.alpha)


@pytest.mark.parametrize("f", FAMILIES, ids=lambda f: f.label)
def test_transpose_involution(f):
    for g in (fn.generic_transpose(fn.generic_transpose(f)), fn.transpose(fn.transpose(f))):
        assert np.allclose(g(GRID), f(GRID), rtol=1e-12, atol=0)


def test_boundary_coefficient_examples():
    assert fn.boundary_coefficients(fn.arithmetic(0.5)) == (0.5, 0.5)
    assert fn.boundary_coefficients(fn.geometric(0.5)) == (0.0, 0.0)
    assert fn.boundary_coefficients(fn.harmonic(0.5)) == (0.0, 0.0)
    # independent oracle: direct evaluation far out
    h = fn.harmonic(0.5)
    assert h.value(1e-8) < 1e-7 and h.value(1e8) / 1e8 < 1e-7


@pytest.mark.parametrize("f", [fn.arithmetic(0.3), fn.geometric(0.5), fn.harmonic(0.5),
                               fn.power_quasi(1, 0.3), fn.power_quasi(-1, 0.3),
                               fn.power_quasi(0.5, 0.5), fn.affine(1, 2)],
                         ids=lambda f: f.label)
def test_numeric_boundary_matches_closed_form(f):
    a, b = fn.boundary_coefficients(f, numeric=True)
    assert a == pytest.approx(f.alpha, abs=1e-3)
    assert b == pytest.approx(f.beta, abs=1e-3)


def test_numeric_boundary_diverges():
    with pytest.raises(NonConvergenceError):
        fn.boundary_coefficients(fn.negative_control("square"), numeric=True)


def test_custom_function_elementwise_fallback():
    f = fn.custom(lambda x: math.sqrt(x), "scalar-sqrt")
    assert np.allclose(f(np.array([4.0, 9.0])), [2, 3])
    assert f.alpha == pytest.approx(0, abs=1e-3)


def test_combination():
    f = 0.3 * fn.harmonic(0.5) + 0.7 * fn.arithmetic(0.5)
    assert np.allclose(f(GRID), 0.3 * fn.harmonic(0.5)(GRID) + 0.7 * fn.arithmetic(0.5)(GRID))
    assert f.alpha == pytest.approx(0.35) and f.beta == pytest.approx(0.35)
    assert f.is_mean()
    with pytest.raises(ParameterError):
        -1 * fn.geometric()


def test_drop_linear():
    for f in FAMILIES:
        d = f.drop_linear()
        assert d.beta == 0.0
        # error measured against |f|: the reference f - beta x itself cancels
        assert np.all(np.abs(d(GRID) - (f(GRID) - f.beta * GRID)) <= 1e-12 * f(GRID))


def test_json_round_trip():
    for f in FAMILIES:
        assert fn.from_json(f.to_json()) == f
    t = fn.from_json({"transpose": fn.geometric(0.2).to_json()})
    assert t == fn.geometric(0.8)
    sq = fn.from_json({"family": "custom", "params": {"name": "square"}})
    assert sq.value(3.0) == 9.0


def test_negative_controls():
    assert fn.negative_control("cube").value(2.0) == 8.0
    with pytest.raises(ParameterError):
        fn.negative_control("sin")


@settings(max_examples=60, deadline=None)
@given(t=st.floats(0, 1), x=st.floats(1e-6, 1e6))
def test_transpose_identity_property(t, x):
    # the closed form stores 1 - t, so tiny t costs digits through the parameter
    for f in (fn.geometric(t), fn.harmonic(t), fn.arithmetic(t), fn.power_quasi(0.5, t)):
        assert fn.transpose(f).value(x) == pytest.approx(x * f.value(1 / x), rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(t=st.floats(0, 1), x=st.floats(1e-6, 1e6), y=st.floats(1e-6, 1e6))
def test_means_monotone_and_normalized(t, x, y):
    lo, hi = min(x, y), max(x, y)
    for f in (fn.geometric(t), fn.harmonic(t), fn.arithmetic(t), fn.logarithmic(),
              fn.power_quasi(-0.5, t)):
        assert f.value(1.0) == pytest.approx(1.0, rel=1e-14)
        assert f.value(lo) <= f.value(hi) * (1 + 1e-14)
