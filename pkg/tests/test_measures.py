import math

import numpy as np
import pytest
from scipy.integrate import quad

from opmeans import functions as fn
from opmeans import measures as M
from opmeans.errors import ParameterError


def test_density_integrates_to_sqrt():
    # independent oracle for the quadrature density of x**(1/2)
    dens = lambda l: l ** -0.5 / (1 + l) / math.pi
    for x in (1e-3, 0.5, 4.0, 1e3):
        val, _ = quad(lambda l: (l + 1) * x / (l + x) * dens(l), 0, np.inf, limit=400)
        assert val == pytest.approx(math.sqrt(x), rel=1e-8)


@pytest.mark.parametrize("t", [0.2, 0.5, 0.8])
def test_geometric_density_integrates(t):
    c = math.sin(math.pi * t) / math.pi
    for x in (0.1, 7.0):
        val, _ = quad(lambda l: (l + 1) * x / (l + x) * c * l ** (t - 1) / (1 + l),
                      0, np.inf, limit=400)
        assert val == pytest.approx(x ** t, rel=1e-7)


def test_geometric_measure_converges_in_node_count():
    xs = np.logspace(-6, 6, 61)
    errs = []
    for n in (100, 200, 400, 800):
        f = fn.MeasureFunction(M.geometric_measure(0.5, n))
        errs.append(float(np.max(np.abs(f(xs) / np.sqrt(xs) - 1))))
    assert errs[-1] < 1e-11
    # decreasing until the roundoff floor
    assert all(b <= max(a, 1e-12) for a, b in zip(errs, errs[1:]))


def test_geometric_measure_mass():
    # mu([0, inf]) = f(1) = 1 for a mean
    assert M.geometric_measure(0.5, 200).total_mass == pytest.approx(1.0, rel=1e-12)


def test_harmonic_measure_is_exact():
    for t in (0.2, 0.5, 0.9):
        m = M.harmonic_measure(t)
        xs = np.logspace(-4, 4, 33)
        assert np.allclose(fn.MeasureFunction(m)(xs), fn.harmonic(t)(xs), rtol=1e-14)
    assert M.harmonic_measure(0.5).nodes == ((1.0, 1.0),)
    assert M.harmonic_measure(0).alpha == 1.0 and M.harmonic_measure(1).beta == 1.0


def test_arithmetic_measure():
    m = M.arithmetic_measure(0.3)
    assert (m.alpha, m.beta, m.nodes) == (0.7, 0.3, ())


def test_transpose_measure():
    m = M.DiscreteMeasure(0.1, 0.2, ((0.5, 1.0), (2.0, 3.0)))
    t = m.transpose()
    assert (t.alpha, t.beta) == (0.2, 0.1)
    assert t.nodes == ((0.5, 3.0), (2.0, 1.0))
    xs = np.logspace(-3, 3, 13)
    g = fn.MeasureFunction(t)(xs)
    assert np.allclose(g, xs * fn.MeasureFunction(m)(1 / xs), rtol=1e-13)


@pytest.mark.parametrize("kwargs", [
    {"alpha": -1.0}, {"beta": float("inf")}, {"nodes": ((0.0, 1.0),)},
    {"nodes": ((1.0, -1.0),)}, {"nodes": ((2.0, 1.0), (1.0, 1.0))},
    {"nodes": ((1.0, 1.0), (1.0, 1.0))},
])
def test_measure_validation(kwargs):
    with pytest.raises(ParameterError):
        M.DiscreteMeasure(**kwargs)


def test_measure_json_round_trip():
    m = M.geometric_measure(0.5, 20)
    back = M.DiscreteMeasure.from_json(m.to_json())
    assert back == m
