"""Scalar kernels with a compiled core and a numpy fallback.

The compiled extension is used when it imports; set ``OPMEANS_PURE_PYTHON=1``
to force the fallback.  Both expose ``family_eval`` and ``measure_pairs``.
"""
import os

import numpy as np

from . import _pykernels as python

ARITHMETIC, GEOMETRIC, HARMONIC, LOGARITHMIC, POWER_QUASI, AFFINE = range(6)

compiled = None
if not os.environ.get("OPMEANS_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled
    except ImportError:
        compiled = None

BACKEND = "cython" if compiled is not None else "python"
_impl = compiled if compiled is not None else python


def _vec(a):
    return np.ascontiguousarray(a, dtype=np.float64).reshape(-1)


def family_eval(code, p0, p1, x):
    x = np.asarray(x, dtype=np.float64)
    return _impl.family_eval(code, float(p0), float(p1), _vec(x)).reshape(x.shape)


def measure_pairs(alpha, beta, lam, w, x, y):
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
    out = _impl.measure_pairs(float(alpha), float(beta), _vec(lam), _vec(w), _vec(x), _vec(y))
    return out.reshape(x.shape)


def backends():
    """Available kernel modules keyed by name (for tests and benchmarks)."""
    out = {"python": python}
    if compiled is not None:
        out["cython"] = compiled
    return out
