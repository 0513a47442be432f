"""Induced scalar connections on ``[0, inf)``.

Every operator connection restricts to the center ``{k I}`` as a scalar
connection ``x s~ y = x f(y/x)``; conversely each scalar connection lifts to
a unique operator connection with the same representing function.
"""
from dataclasses import dataclass
import math

import numpy as np

from . import functions as fn
from . import kernels
from .connections import DEFAULT_EPS, Connection
from .errors import DegenerateInputError, ParameterError
from .measures import DiscreteMeasure


@dataclass(frozen=True)
class ScalarConnection:
    """Scalar connection given by its representing function.

    ``op`` optionally holds a user-supplied binary operation ``(x, y) ->
    x s~ y``; the representing function is then recovered as ``1 s~ x``.
    """

    f: fn.RepresentingFunction
    label: str = ""
    op: object = None

    def __post_init__(self):
        if not self.label:
            object.__setattr__(self, "label", self.f.label)

    @classmethod
    def from_binary(cls, op, label="scalar", alpha=None, beta=None):
        f = fn.CustomFunction(lambda x: op(np.ones_like(x), x), label, alpha=alpha, beta=beta)
        return cls(f, label, op)

    def __call__(self, x, y):
        return induced_eval(self, x, y)

    def __add__(self, other):
        if not isinstance(other, ScalarConnection):
            return NotImplemented
        return ScalarConnection(self.f + other.f)

    def __mul__(self, c):
        return ScalarConnection(c * self.f)

    __rmul__ = __mul__


def named(name, **params):
    return ScalarConnection(fn.FamilyFunction(name, **params))


def induced_eval(s, x, y):
    """``x s~ y``: ``x f(y/x)`` for positive arguments.

    Boundary values come from the boundary coefficients: ``0 s~ y = beta y``,
    ``x s~ 0 = alpha x`` and ``0 s~ 0 = 0``.  Accepts scalars or arrays.
    """
    scalar_in = np.isscalar(x) and np.isscalar(y)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any(x < 0) or np.any(y < 0):
        raise ParameterError("induced connections are defined on [0, inf)")
    if s.op is not None:
        out = np.asarray(s.op(x, y), dtype=float)
    else:
        out = np.zeros(x.shape)
        both = (x > 0) & (y > 0)
        if both.any():
            out[both] = x[both] * s.f(y[both] / x[both])
        x0 = (x == 0) & (y > 0)
        if x0.any():
            out[x0] = s.f.beta * y[x0]
        y0 = (x > 0) & (y == 0)
        if y0.any():
            out[y0] = s.f.alpha * x[y0]
    return float(out) if scalar_in else out


def measure_induced(m, x, y):
    """``alpha x + beta y + sum_i w_i (l_i + 1)/(2 l_i) (l_i x ! y)`` for a discrete measure."""
    return kernels.measure_pairs(m.alpha, m.beta, m.lam, m.w, x, y)


def representing_from_scalar(s):
    """``f(x) = 1 s~ x``.

    Family-backed connections return their (identical) closed form so the
    exact boundary coefficients survive.
    """
    if s.op is None:
        return s.f
    return fn.CustomFunction(lambda x: induced_eval(s, np.ones_like(x), x),
                             f"1 {s.label} x", alpha=s.f._alpha, beta=s.f._beta)


def lift_to_operator(s, eps=DEFAULT_EPS):
    """The unique operator connection inducing ``s``."""
    return Connection(representing_from_scalar(s), eps, label=s.label)


def induced_of(conn):
    """Scalar connection induced by an operator connection."""
    if isinstance(conn.backend, DiscreteMeasure):
        return ScalarConnection(fn.MeasureFunction(conn.backend), conn.label)
    return ScalarConnection(conn.backend, conn.label)


def scalar_chain_check(x):
    """Harmonic, geometric, logarithmic and arithmetic means of ``1`` and ``x``.

    Returns ``(2x/(1+x), sqrt(x), (x-1)/log x, (1+x)/2)``, which is strictly
    increasing for ``x > 0, x != 1``.
    """
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise ParameterError(f"chain needs a finite x > 0, got {x!r}")
    if x == 1.0:
        raise DegenerateInputError("x = 1: all four means equal 1")
    xs = np.array([x])
    return tuple(float(f(xs)[0]) for f in (fn.harmonic(0.5), fn.geometric(0.5),
                                            fn.logarithmic(), fn.arithmetic(0.5)))


def chain_is_ordered(values):
    h, g, l, a = values
    return h < g < l < a
