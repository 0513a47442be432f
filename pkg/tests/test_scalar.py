import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opmeans import connections as C
from opmeans import functions as fn
from opmeans import measures as M
from opmeans.errors import DegenerateInputError, ParameterError
from opmeans.scalar import (ScalarConnection, chain_is_ordered, induced_eval, induced_of,
                            lift_to_operator, measure_induced, named,
                            representing_from_scalar, scalar_chain_check)

from conftest import random_pd

pos = st.floats(1e-6, 1e6)
FAMILIES = [("arithmetic", {"t": 0.3}), ("geometric", {"t": 0.5}), ("harmonic", {"t": 0.5}),
            ("logarithmic", {}), ("power_quasi", {"p": 0.5, "alpha": 0.5}),
            ("power_quasi", {"p": -0.4, "alpha": 0.25})]


def test_induced_eval_examples():
    assert induced_eval(named("geometric"), 4.0, 9.0) == pytest.approx(6.0, rel=1e-15)
    assert induced_eval(named("harmonic"), 3.0, 6.0) == pytest.approx(4.0, rel=1e-15)
    assert induced_eval(named("arithmetic"), 2.0, 4.0) == pytest.approx(3.0, rel=1e-15)
    assert induced_eval(named("logarithmic"), 1.0, math.e) == pytest.approx(math.e - 1, rel=1e-14)


def test_induced_eval_boundaries():
    a = named("arithmetic", t=0.25)
    assert induced_eval(a, 0.0, 4.0) == pytest.approx(1.0)
    assert induced_eval(a, 4.0, 0.0) == pytest.approx(3.0)
    assert induced_eval(a, 0.0, 0.0) == 0.0
    for name in ("geometric", "harmonic", "logarithmic"):
        assert induced_eval(named(name), 0.0, 5.0) == 0.0
        assert induced_eval(named(name), 5.0, 0.0) == 0.0


def test_induced_eval_arrays_and_errors():
    out = induced_eval(named("geometric"), np.array([1.0, 4.0, 0.0]), np.array([4.0, 1.0, 2.0]))
    assert np.allclose(out, [2.0, 2.0, 0.0])
    with pytest.raises(ParameterError):
        induced_eval(named("geometric"), -1.0, 1.0)


def test_representing_function_round_trip():
    s = ScalarConnection.from_binary(lambda x, y: np.sqrt(x * y), "gm", alpha=0.0, beta=0.0)
    f = representing_from_scalar(s)
    xs = np.logspace(-3, 3, 13)
    assert np.allclose(f(xs), np.sqrt(xs), rtol=1e-14)
    assert C.boundary_coefficients(f) == (0.0, 0.0)
    assert representing_from_scalar(named("harmonic")) == fn.harmonic(0.5)


def test_lift_examples():
    conn = lift_to_operator(named("power_quasi", p=-1, alpha=0.5))
    assert np.allclose(conn([[2.0]], [[6.0]]), [[3.0]])
    s = ScalarConnection.from_binary(lambda x, y: np.sqrt(x * y), "gm", alpha=0.0, beta=0.0)
    A, B = np.diag([1.0, 4.0]), np.diag([4.0, 1.0])
    assert np.allclose(lift_to_operator(s)(A, B), 2 * np.eye(2))


def test_lift_agrees_with_named_operator(rng):
    A, B = random_pd(rng, 4), random_pd(rng, 4)
    for name, params in FAMILIES:
        lifted = lift_to_operator(named(name, **params))
        direct = C.make_named(name, **params)
        assert np.allclose(lifted(A, B), direct(A, B), rtol=1e-12, atol=1e-12)


def test_induced_of_round_trip(rng):
    for name, params in FAMILIES:
        conn = C.make_named(name, **params)
        s = induced_of(conn)
        for x, y in [(2.0, 5.0), (0.3, 0.03)]:
            k = conn(x * np.eye(2), y * np.eye(2))
            assert np.allclose(k, induced_eval(s, x, y) * np.eye(2), rtol=1e-12)


def test_chain_examples():
    h, g, l, a = scalar_chain_check(4.0)
    assert h == pytest.approx(1.6, rel=1e-15)
    assert g == pytest.approx(2.0, rel=1e-15)
    assert l == pytest.approx(3 / math.log(4), rel=1e-14)
    assert a == pytest.approx(2.5, rel=1e-15)
    assert chain_is_ordered((h, g, l, a))
    with pytest.raises(DegenerateInputError):
        scalar_chain_check(1.0)
    for bad in (0.0, -2.0, float("nan"), float("inf")):
        with pytest.raises(ParameterError):
            scalar_chain_check(bad)


def test_chain_transpose_symmetry():
    # all four means are symmetric: m(1, 1/x) = m(1, x) / x
    lo, hi = scalar_chain_check(0.25), scalar_chain_check(4.0)
    for u, v in zip(lo, hi):
        assert u == pytest.approx(v / 4.0, rel=1e-14)


@settings(max_examples=200, deadline=None)
@given(pos.filter(lambda x: abs(x - 1) > 1e-6))
def test_chain_strictly_ordered(x):
    assert chain_is_ordered(scalar_chain_check(x))


@settings(max_examples=100, deadline=None)
@given(pos, pos, pos, pos, st.floats(0, 1), st.floats(0, 1))
def test_induced_affinity(x, y, u, v, c, d):
    s1, s2 = named("geometric"), named("harmonic", t=0.3)
    combo = c * s1 + d * s2
    lhs = induced_eval(combo, x, y)
    rhs = c * induced_eval(s1, x, y) + d * induced_eval(s2, x, y)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-300)


@settings(max_examples=100, deadline=None)
@given(pos, pos, st.floats(1e-3, 1e3))
def test_induced_homogeneity(x, y, a):
    for name, params in FAMILIES:
        s = named(name, **params)
        assert induced_eval(s, a * x, a * y) == pytest.approx(a * induced_eval(s, x, y), rel=1e-9)


@settings(max_examples=100, deadline=None)
@given(pos, pos, pos, pos)
def test_induced_monotone(x, y, dx, dy):
    for name, params in FAMILIES:
        s = named(name, **params)
        assert induced_eval(s, x, y) <= induced_eval(s, x + dx, y + dy) * (1 + 1e-12)


@settings(max_examples=100, deadline=None)
@given(pos, pos)
def test_means_lie_between_operands(x, y):
    for name, params in FAMILIES:
        v = induced_eval(named(name, **params), x, y)
        assert min(x, y) * (1 - 1e-12) <= v <= max(x, y) * (1 + 1e-12)


def test_measure_induced_matches_function():
    m = M.harmonic_measure(0.5)
    xs, ys = np.array([1.0, 2.0, 0.0, 5.0]), np.array([3.0, 0.0, 4.0, 5.0])
    ref = induced_eval(induced_of(C.Connection(m)), xs, ys)
    assert np.allclose(measure_induced(m, xs, ys), ref, rtol=1e-14)
    assert np.allclose(ref, [1.5, 0.0, 0.0, 5.0])
    q = M.geometric_measure(0.5, 400)
    assert np.allclose(measure_induced(q, xs, ys), np.sqrt(xs * ys), rtol=1e-9)
