import numpy as np
import pytest

from opmeans import kernels
from opmeans.kernels import _pykernels

FAMILIES = [
    (kernels.ARITHMETIC, 0.3, 0.0), (kernels.GEOMETRIC, 0.5, 0.0),
    (kernels.GEOMETRIC, 0.0, 0.0), (kernels.HARMONIC, 0.7, 0.0),
    (kernels.HARMONIC, 1.0, 0.0), (kernels.LOGARITHMIC, 0.0, 0.0),
    (kernels.POWER_QUASI, -1.0, 0.3), (kernels.POWER_QUASI, 1e-8, 0.4),
    (kernels.POWER_QUASI, 0.5, 0.5), (kernels.AFFINE, 1.0, 2.0),
]

X = np.concatenate([[0.0, 1.0, 1 - 1e-6, 1 + 1e-5], np.logspace(-12, 12, 97)])


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    assert "python" in kernels.backends()


@pytest.mark.skipif(kernels.compiled is None, reason="compiled kernels not built")
@pytest.mark.parametrize("code,p0,p1", FAMILIES)
def test_backends_agree_family(code, p0, p1):
    c = kernels.compiled.family_eval(code, p0, p1, X)
    p = _pykernels.family_eval(code, p0, p1, X)
    assert np.allclose(c, p, rtol=1e-14, atol=0)


@pytest.mark.skipif(kernels.compiled is None, reason="compiled kernels not built")
def test_backends_agree_measure():
    rng = np.random.default_rng(1)
    lam = np.sort(np.exp(rng.uniform(-5, 5, 50)))
    w = rng.uniform(0, 1, 50)
    x = np.exp(rng.uniform(-5, 5, 200))
    y = np.exp(rng.uniform(-5, 5, 200))
    x[:3] = 0.0
    y[3:6] = 0.0
    c = kernels.compiled.measure_pairs(0.2, 0.3, lam, w, x, y)
    p = _pykernels.measure_pairs(0.2, 0.3, lam, w, x, y)
    assert np.allclose(c, p, rtol=1e-14, atol=0)


def test_family_values():
    x = np.array([0.0, 0.25, 1.0, 4.0])
    assert np.allclose(kernels.family_eval(kernels.GEOMETRIC, 0.5, 0, x), [0, 0.5, 1, 2])
    assert np.allclose(kernels.family_eval(kernels.HARMONIC, 0.5, 0, x), [0, 0.4, 1, 1.6])
    log = kernels.family_eval(kernels.LOGARITHMIC, 0, 0, x)
    assert np.allclose(log, [0, 0.75 / np.log(4), 1, 3 / np.log(4)])


def test_logarithmic_series_is_continuous():
    u = np.array([1e-4 - 1e-12, 1e-4 + 1e-12])
    v = kernels.family_eval(kernels.LOGARITHMIC, 0, 0, 1 + u)
    assert abs(v[1] - v[0]) < 1e-11


def test_measure_pairs_shapes():
    out = kernels.measure_pairs(0.5, 0.5, [], [], np.ones((2, 3)), 3.0)
    assert out.shape == (2, 3)
    assert np.allclose(out, 2.0)
