"""Representing functions of connections.

A representing function ``f`` on ``[0, inf)`` determines a connection through
``A s B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}``.  Built-in families are
evaluated by the scalar kernels; custom callables are wrapped as-is.

Every function exposes its boundary coefficients ``alpha = f(0+)`` and
``beta = lim f(x)/x``; they are the masses at 0 and infinity of the
representing measure and drive evaluation on singular operands.
"""
import math

import numpy as np

from . import kernels
from .errors import EvaluationError, NonConvergenceError, ParameterError

FAMILIES = {
    # name: (kernel code, parameter names)
    "arithmetic": (kernels.ARITHMETIC, ("t",)),
    "geometric": (kernels.GEOMETRIC, ("t",)),
    "harmonic": (kernels.HARMONIC, ("t",)),
    "logarithmic": (kernels.LOGARITHMIC, ()),
    "power_quasi": (kernels.POWER_QUASI, ("p", "alpha")),
    "affine": (kernels.AFFINE, ("alpha", "beta")),
}
_ALIASES = {"arithmetic_t": "arithmetic", "geometric_t": "geometric", "harmonic_t": "harmonic"}
_DEFAULTS = {"t": 0.5, "alpha": 0.5, "beta": 0.5}

P_ZERO_RADIUS = 1e-6  # |p| below this routes power_quasi to x**alpha


def _as_vector(x):
    return np.asarray(x, dtype=float)


class RepresentingFunction:
    """Base class: a nonnegative function on ``[0, inf)``.

    Calling it on an array evaluates pointwise; the value at 0 is the right
    limit for closed-form families.
    """

    label = "f"

    def __call__(self, x):
        raise NotImplementedError

    def value(self, x):
        """Scalar evaluation."""
        return float(self(np.array([float(x)]))[0])

    @property
    def alpha(self):
        raise NotImplementedError

    @property
    def beta(self):
        raise NotImplementedError

    def transpose(self):
        return TransposedFunction(self)

    def drop_linear(self):
        """``f(x) - beta * x``: the part of ``f`` not carried by the atom at infinity."""
        if self.beta == 0:
            return self
        return _DropLinear(self)

    def is_mean(self, tol=1e-12):
        return abs(self.value(1.0) - 1.0) <= tol

    def to_json(self):
        raise ValueError(f"{self.label} has no JSON descriptor")

    def __add__(self, other):
        if not isinstance(other, RepresentingFunction):
            return NotImplemented
        return Combination(((1.0, self), (1.0, other)))

    def __mul__(self, c):
        c = float(c)
        if not (c >= 0 and math.isfinite(c)):
            raise ParameterError("only nonnegative finite multiples keep a connection")
        return Combination(((c, self),))

    __rmul__ = __mul__

    def __repr__(self):
        return f"<{type(self).__name__} {self.label}>"


class FamilyFunction(RepresentingFunction):
    """One of the closed-form families of the named-mean catalog."""

    def __init__(self, family, **params):
        family = _ALIASES.get(family, family)
        if family not in FAMILIES:
            raise ParameterError(f"unknown family {family!r}")
        code, names = FAMILIES[family]
        unknown = set(params) - set(names)
        if unknown:
            raise ParameterError(f"{family} takes {names}, got unexpected {sorted(unknown)}")
        vals = {}
        for name in names:
            if name in params:
                v = float(params[name])
            elif name in _DEFAULTS:
                v = _DEFAULTS[name]
            else:
                raise ParameterError(f"{family}: missing parameter {name!r}")
            if not math.isfinite(v):
                raise ParameterError(f"{family}: {name} must be finite")
            vals[name] = v
        _validate(family, vals)
        self.family = family
        self.params = vals
        self._code = code
        self._p = tuple(vals.values()) + (0.0,) * (2 - len(vals))

    @property
    def label(self):
        if not self.params:
            return self.family
        args = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.family}({args})"

    def __call__(self, x):
        return kernels.family_eval(self._code, self._p[0], self._p[1], _as_vector(x))

    @property
    def alpha(self):
        return _family_alpha(self.family, self.params)

    @property
    def beta(self):
        return _family_beta(self.family, self.params)

    def transpose(self):
        f, p = self.family, self.params
        if f in ("arithmetic", "geometric", "harmonic"):
            return FamilyFunction(f, t=1.0 - p["t"])
        if f == "logarithmic":
            return self
        if f == "power_quasi":
            return FamilyFunction(f, p=p["p"], alpha=1.0 - p["alpha"])
        return FamilyFunction("affine", alpha=p["beta"], beta=p["alpha"])

    def drop_linear(self):
        beta = self.beta
        if beta == 0:
            return self
        f, p = self.family, self.params
        linear = (f in ("arithmetic", "affine", "geometric", "harmonic")
                  or (f == "power_quasi" and (p["p"] == 1.0 or p["p"] < P_ZERO_RADIUS)))
        if linear:
            # these have beta > 0 only when f(x) = f(0) + beta*x exactly
            return FamilyFunction("affine", alpha=self.alpha, beta=0.0)
        return _DropLinear(self)

    def to_json(self):
        return {"backend": "function", "family": self.family, "params": dict(self.params)}

    def __eq__(self, other):
        return (isinstance(other, FamilyFunction) and self.family == other.family
                and self.params == other.params)

    def __hash__(self):
        return hash((self.family, tuple(self.params.items())))


def _validate(family, p):
    def unit(name):
        if not 0.0 <= p[name] <= 1.0:
            raise ParameterError(f"{family}: {name} must lie in [0, 1], got {p[name]}")

    if family in ("arithmetic", "geometric", "harmonic"):
        unit("t")
    elif family == "power_quasi":
        if not -1.0 <= p["p"] <= 1.0:
            raise ParameterError(f"power_quasi: p must lie in [-1, 1], got {p['p']}")
        unit("alpha")
    elif family == "affine":
        if p["alpha"] < 0 or p["beta"] < 0:
            raise ParameterError("affine: alpha and beta must be >= 0")


def _family_alpha(family, p):
    if family == "arithmetic":
        return 1.0 - p["t"]
    if family in ("geometric", "harmonic"):
        return 1.0 if p["t"] == 0 else 0.0
    if family == "logarithmic":
        return 0.0
    if family == "power_quasi":
        q, a = p["p"], p["alpha"]
        if q >= P_ZERO_RADIUS:
            return (1.0 - a) ** (1.0 / q)
        return 1.0 if a == 0 else 0.0
    return p["alpha"]


def _family_beta(family, p):
    if family == "arithmetic":
        return p["t"]
    if family in ("geometric", "harmonic"):
        return 1.0 if p["t"] == 1 else 0.0
    if family == "logarithmic":
        return 0.0
    if family == "power_quasi":
        q, a = p["p"], p["alpha"]
        if q >= P_ZERO_RADIUS:
            return a ** (1.0 / q)
        return 1.0 if a == 1 else 0.0
    return p["beta"]


class CustomFunction(RepresentingFunction):
    """Wraps a user callable, which must be total on ``[0, inf)``.

    Boundary coefficients default to numerical extrapolation; pass them
    explicitly when known.
    """

    def __init__(self, fn, label="custom", alpha=None, beta=None):
        self.fn = fn
        self.label = label
        self._alpha = alpha
        self._beta = beta

    def __call__(self, x):
        x = _as_vector(x)
        try:
            with np.errstate(all="ignore"):
                out = np.asarray(self.fn(x), dtype=float)
        except (TypeError, ValueError):
            out = None
        if out is None or out.shape != x.shape:
            out = np.array([float(self.fn(float(v))) for v in x.reshape(-1)]).reshape(x.shape)
        return out

    @property
    def alpha(self):
        if self._alpha is None:
            self._alpha = extrapolate_boundary(self, "alpha")
        return self._alpha

    @property
    def beta(self):
        if self._beta is None:
            self._beta = extrapolate_boundary(self, "beta")
        return self._beta

    def to_json(self):
        if self.label in NEGATIVE_CONTROLS:
            return {"backend": "function", "family": "custom", "params": {"name": self.label}}
        return super().to_json()


class TransposedFunction(RepresentingFunction):
    """``g(x) = x f(1/x)``, the representing function of ``(A, B) -> B s A``."""

    def __init__(self, base):
        self.base = base
        self.label = f"transpose({base.label})"

    def __call__(self, x):
        x = _as_vector(x)
        pos = x > 0
        out = np.empty_like(x)
        xp = x[pos]
        out[pos] = xp * self.base(1.0 / xp)
        if (~pos).any():
            out[~pos] = self.base.beta
        return out

    @property
    def alpha(self):
        return self.base.beta

    @property
    def beta(self):
        return self.base.alpha

    def transpose(self):
        return self.base

    def to_json(self):
        return {"transpose": self.base.to_json()}


class Combination(RepresentingFunction):
    """Nonnegative linear combination ``sum c_i f_i``."""

    def __init__(self, terms):
        flat = []
        for c, f in terms:
            if isinstance(f, Combination):
                flat.extend((c * c2, f2) for c2, f2 in f.terms)
            else:
                flat.append((float(c), f))
        self.terms = tuple(flat)
        self.label = " + ".join(f"{c:g}*{f.label}" for c, f in self.terms)

    def __call__(self, x):
        x = _as_vector(x)
        out = np.zeros_like(x)
        for c, f in self.terms:
            out = out + c * f(x)
        return out

    @property
    def alpha(self):
        return sum(c * f.alpha for c, f in self.terms)

    @property
    def beta(self):
        return sum(c * f.beta for c, f in self.terms)

    def transpose(self):
        return Combination(tuple((c, f.transpose()) for c, f in self.terms))

    def drop_linear(self):
        return Combination(tuple((c, f.drop_linear()) for c, f in self.terms))

    def to_json(self):
        return {"combination": [[c, f.to_json()] for c, f in self.terms]}


class _DropLinear(RepresentingFunction):
    def __init__(self, base):
        self.base = base
        self._b = base.beta
        self.label = f"{base.label} - {self._b:g}*x"

    def __call__(self, x):
        x = _as_vector(x)
        return self.base(x) - self._b * x

    @property
    def alpha(self):
        return self.base.alpha

    @property
    def beta(self):
        return 0.0


class MeasureFunction(RepresentingFunction):
    """``f(x) = alpha + beta x + sum_i w_i (l_i + 1) x / (l_i + x)`` for a discrete measure."""

    def __init__(self, measure):
        self.measure = measure
        self.label = measure.label

    def __call__(self, x):
        x = _as_vector(x)
        m = self.measure
        return kernels.measure_pairs(m.alpha, m.beta, m.lam, m.w, np.ones_like(x), x)

    @property
    def alpha(self):
        return self.measure.alpha

    @property
    def beta(self):
        return self.measure.beta

    def transpose(self):
        return MeasureFunction(self.measure.transpose())

    def drop_linear(self):
        if self.measure.beta == 0:
            return self
        return MeasureFunction(self.measure.without_beta())

    def to_json(self):
        return self.measure.to_json()


# ----------------------------------------------------------------------------
# constructors

def arithmetic(t=0.5):
    return FamilyFunction("arithmetic", t=t)


def geometric(t=0.5):
    return FamilyFunction("geometric", t=t)


def harmonic(t=0.5):
    return FamilyFunction("harmonic", t=t)


def logarithmic():
    return FamilyFunction("logarithmic")


def power_quasi(p, alpha=0.5):
    return FamilyFunction("power_quasi", p=p, alpha=alpha)


def affine(alpha, beta):
    return FamilyFunction("affine", alpha=alpha, beta=beta)


def custom(fn, label="custom", alpha=None, beta=None):
    return CustomFunction(fn, label, alpha=alpha, beta=beta)


def transpose(f):
    """Representing function of the transposed connection, ``x f(1/x)``."""
    return f.transpose()


def generic_transpose(f):
    """Transpose via the defining formula, bypassing closed-form shortcuts."""
    return TransposedFunction(f)


# Functions that are not operator monotone; the verifier must reject them.
NEGATIVE_CONTROLS = {
    "square": lambda: CustomFunction(np.square, "square", alpha=0.0),
    "cube": lambda: CustomFunction(lambda x: x ** 3, "cube", alpha=0.0),
    "exp": lambda: CustomFunction(np.exp, "exp", alpha=1.0),
}


NEGATIVE_CONTROL_FORMULAS = {"square": "x**2", "cube": "x**3", "exp": "exp(x)"}


def negative_control(name):
    try:
        return NEGATIVE_CONTROLS[name]()
    except KeyError:
        raise ParameterError(f"unknown negative control {name!r}; "
                             f"known: {sorted(NEGATIVE_CONTROLS)}") from None


# ----------------------------------------------------------------------------
# boundary coefficients

_PROBES = (1e-4, 1e-6, 1e-8)
_AGREEMENT = 1e-3


def extrapolate_boundary(f, which):
    """Numerically extrapolate ``f(0+)`` (``which="alpha"``) or ``lim f(x)/x``.

    Samples at ``x = 1e-4, 1e-6, 1e-8`` (reciprocals for ``beta``), applies
    one Aitken step and requires the extrapolant to agree with the last
    sample to relative ``1e-3`` (unit floor).  Slowly varying functions such
    as ``-1/log x`` near 0 do not meet this contract.
    """
    if which == "alpha":
        xs = np.array(_PROBES)
        v = f(xs)
    elif which == "beta":
        xs = 1.0 / np.array(_PROBES)
        v = f(xs) / xs
    else:
        raise ValueError(which)
    if not np.all(np.isfinite(v)):
        raise NonConvergenceError(f"{f.label}: non-finite samples for {which}: {v}")
    d1, d2 = v[1] - v[0], v[2] - v[1]
    est = v[2]
    if d1 != 0 and 0 < d2 / d1 < 1:
        r = d2 / d1
        est = v[2] + d2 * r / (1 - r)
    floor = _AGREEMENT * max(1.0, abs(est))
    if abs(est - v[2]) > floor or (abs(d2) > abs(d1) and abs(d2) > floor):
        raise NonConvergenceError(
            f"{f.label}: {which} extrapolation does not settle (samples {v.tolist()})")
    if -1e-9 < est < 0:
        est = 0.0
    return float(est)


def boundary_coefficients(f, numeric=False):
    """Return ``(alpha, beta) = (f(0+), lim f(x)/x)``.

    Closed-form families answer exactly; everything else (or ``numeric=True``)
    goes through :func:`extrapolate_boundary`.
    """
    if numeric:
        return extrapolate_boundary(f, "alpha"), extrapolate_boundary(f, "beta")
    return f.alpha, f.beta


def check_values(f, x):
    """Evaluate and insist on finite, nonnegative output."""
    v = f(x)
    bad = ~np.isfinite(v)
    if bad.any():
        pt = float(np.asarray(x).reshape(-1)[np.argmax(bad.reshape(-1))])
        raise EvaluationError(f"{f.label} is not finite at {pt!r}", point=pt)
    return v


def from_json(obj):
    """Representing function from a connection descriptor (function backend)."""
    if "transpose" in obj:
        return transpose(from_json(obj["transpose"]))
    if "combination" in obj:
        return Combination(tuple((float(c), from_json(d)) for c, d in obj["combination"]))
    family = obj.get("family")
    params = dict(obj.get("params") or {})
    if family == "custom":
        return negative_control(params.get("name"))
    if family is None:
        raise ParameterError("function descriptor needs 'family'")
    return FamilyFunction(family, **params)
