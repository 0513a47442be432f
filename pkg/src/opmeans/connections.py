"""Operator connections built from representing functions or measures.

``eval`` returns the value of ``A s B`` for PSD operands.  Positive definite
``A`` uses ``A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}`` directly.  Singular
operands are the limit of the ``(A + eps I, B + eps I)`` sequence; that limit
is computed in closed form whenever possible:

* function backend, singular ``A``: ``A s B = beta B + A s' S`` where ``S`` is
  the short of ``B`` to the range of ``A`` and ``s'`` has representing
  function ``f(x) - beta x``;
* measure backend: every ``(l A) ! B`` is an exact parallel sum
  ``2 l A (l A + B)^+ B``.

The regularized iterates are still computed for singular inputs and reported
in the :class:`EvalTrace`; the last iterate is returned only when no closed
form applies (e.g. a custom function whose ``f(x)/x`` diverges).
"""
from dataclasses import dataclass
import math

import numpy as np

from . import functions as fn
from .errors import (ConvergenceError, NonConvergenceError, ParameterError,
                     SingularMatrixError)
from .measures import DiscreteMeasure
from .psd import (DEFAULT_TOL, apply_spectral, as_square, check_same_dim,
                  clean_spectrum, from_spectrum, loewner_leq, norm2, rank_tol,
                  spectral, symmetrize)

DEFAULT_EPS = tuple(0.1 * 4.0 ** -k for k in range(15))
EPS_MIN = 1e-8
CONVERGENCE_TOL = 1e-7

_EPS = np.finfo(float).eps


def validate_eps(eps):
    eps = tuple(float(e) for e in eps)
    if not eps:
        raise ParameterError("eps schedule is empty")
    if any(not (math.isfinite(e) and e > 0) for e in eps):
        raise ParameterError("eps schedule must be positive and finite")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ParameterError("eps schedule must be strictly decreasing")
    if eps[-1] > EPS_MIN:
        raise ParameterError(f"eps schedule must end at or below {EPS_MIN:g}")
    return eps


@dataclass(frozen=True)
class Connection:
    """A binary operation on PSD matrices given by a function or a measure."""

    backend: object
    eps: tuple = DEFAULT_EPS
    label: str = ""

    def __post_init__(self):
        if not isinstance(self.backend, (fn.RepresentingFunction, DiscreteMeasure)):
            raise ParameterError("backend must be a RepresentingFunction or DiscreteMeasure")
        object.__setattr__(self, "eps", validate_eps(self.eps))
        if not self.label:
            object.__setattr__(self, "label", self.backend.label)

    @property
    def kind(self):
        return "measure" if isinstance(self.backend, DiscreteMeasure) else "function"

    @property
    def function(self):
        """Representing function (derived from the measure for measure backends)."""
        if self.kind == "measure":
            return fn.MeasureFunction(self.backend)
        return self.backend

    def is_mean(self):
        return self.function.is_mean()

    def transpose(self):
        return Connection(self.backend.transpose(), self.eps)

    def __call__(self, A, B):
        return eval(self, A, B)[0]

    def to_json(self):
        out = dict(self.backend.to_json())
        if self.eps != DEFAULT_EPS:
            out["eps"] = list(self.eps)
        return out

    @classmethod
    def from_json(cls, obj):
        """Parse a connection descriptor (see the README for the schema)."""
        if not isinstance(obj, dict):
            raise ParameterError("connection descriptor must be a JSON object")
        eps = obj.get("eps", DEFAULT_EPS)
        backend = obj.get("backend", "function")
        if backend == "measure":
            return cls(DiscreteMeasure.from_json(obj), eps)
        if backend == "function":
            return cls(fn.from_json(obj), eps)
        raise ParameterError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class EvalTrace:
    """Diagnostics of the epsilon-regularized sequence behind one evaluation.

    ``terminal_delta`` is the spectral-norm gap between the last two
    iterates (0 when no regularization was needed); ``monotone`` records
    whether every step decreased in the Löwner order within tolerance.
    """

    epsilons_used: tuple = ()
    terminal_delta: float = 0.0
    monotone: bool = True
    worst_step_margin: float = 0.0
    route: str = "direct"

    def to_json(self):
        return {"epsilons_used": list(self.epsilons_used),
                "terminal_delta": self.terminal_delta,
                "monotone": self.monotone,
                "worst_step_margin": self.worst_step_margin,
                "route": self.route}


# ----------------------------------------------------------------------------
# spectral building blocks

def _prepare(A, B):
    """Symmetrize, certify PSD and eigendecompose both operands.

    Eigenvalues at or below ``32 n eps max(|A|, |B|)`` become exact zeros: the
    operands share one scale, so a spectrum that is pure rounding relative to
    the larger operand is treated as zero rather than as data.
    """
    A, B = symmetrize(as_square(A)), symmetrize(as_square(B))
    check_same_dim(A, B)
    wa, Ua = spectral(A)
    wb, Ub = spectral(B)
    wa = clean_spectrum(wa, norm=max(abs(wa[0]), abs(wa[-1])))
    wb = clean_spectrum(wb, norm=max(abs(wb[0]), abs(wb[-1])))
    scale = max(wa[-1], wb[-1])
    cut = 32.0 * A.shape[0] * _EPS * scale
    wa = np.where(wa > cut, wa, 0.0)
    wb = np.where(wb > cut, wb, 0.0)
    return A, wa, Ua, B, wb, Ub, scale


def _pd_formula(f, wa, Ua, wb, Ub):
    """``A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}`` from eigendata, ``A`` PD.

    ``A^{-1/2} B A^{-1/2} = W W*`` with ``W = A^{-1/2} B^{1/2}`` restricted to
    the range of ``B``; its SVD gives the spectrum with small eigenvalues
    resolved to relative accuracy, and the exact kernel of ``B`` maps to
    ``f(0)``.
    """
    n = wa.shape[0]
    sa = np.sqrt(wa)
    keep = wb > 0
    L = Ub[:, keep] * np.sqrt(wb[keep])
    W = (Ua / sa) @ (Ua.conj().T @ L)
    if W.shape[1] == 0:
        return symmetrize(apply_spectral(f, np.zeros(1))[0] * ((Ua * wa) @ Ua.conj().T))
    Q, s, _ = np.linalg.svd(W, full_matrices=False)
    fv = apply_spectral(f, s * s)
    # assemble sum_i f(s_i^2) v_i v_i* with v_i = A^{1/2} q_i; never forming
    # f(C) itself keeps large eigenvalues of C from swamping the result
    V = (Ua * sa) @ (Ua.conj().T @ Q)
    if W.shape[1] < n:
        f0 = apply_spectral(f, np.zeros(1))[0]
        out = (V * (fv - f0)) @ V.conj().T
        if f0:
            out = out + f0 * ((Ua * wa) @ Ua.conj().T)
    else:
        out = (V * fv) @ V.conj().T
    return symmetrize(out)


def _shorted(f, wa, Ua, B, scale):
    """Exact ``A s B`` for singular ``A`` (function backend)."""
    beta = f.beta
    pos = wa > 0
    r = int(pos.sum())
    if r == 0:
        return beta * B
    Ur, Un = Ua[:, pos], Ua[:, ~pos]
    B11 = Ur.conj().T @ B @ Ur
    B12 = Ur.conj().T @ B @ Un
    B22 = symmetrize(Un.conj().T @ B @ Un)
    cut = 32.0 * B.shape[0] * _EPS * scale
    w22, U22 = spectral(B22)
    inv = np.where(w22 > cut, 1.0 / np.where(w22 > cut, w22, 1.0), 0.0)
    S = symmetrize(B11 - (B12 @ U22) * inv @ (B12 @ U22).conj().T)
    ws, Us = spectral(S)
    ws = clean_spectrum(ws, norm=scale)
    ws = np.where(ws > cut, ws, 0.0)
    core = _pd_formula(f.drop_linear(), wa[pos], np.eye(r, dtype=Ua.dtype), ws, Us)
    out = Ur @ core @ Ur.conj().T
    if beta:
        out = out + beta * B
    return symmetrize(out)


def _measure_value(m, A, B, pd):
    """``alpha A + beta B + sum_i w_i (l_i + 1) A (l_i A + B)^+ B``."""
    out = m.alpha * A + m.beta * B
    if m.nodes:
        lam, w = m.lam, m.w
        M = lam[:, None, None] * A[None] + B[None]
        stackB = np.broadcast_to(B, M.shape)
        if pd:
            X = np.linalg.solve(M, stackB)
        else:
            X = np.linalg.pinv(M, rcond=32.0 * A.shape[0] * _EPS, hermitian=True) @ stackB
        terms = A[None] @ X
        out = out + np.tensordot(w * (lam + 1.0), terms, axes=1)
    return symmetrize(out)


def _iterates(conn, A, wa, Ua, B, wb, Ub, tol):
    n = A.shape[0]
    eye = np.eye(n, dtype=np.result_type(A, B))
    seq = []
    for e in conn.eps:
        if conn.kind == "function":
            seq.append(_pd_formula(conn.backend, wa + e, Ua, wb + e, Ub))
        else:
            seq.append(_measure_value(conn.backend, A + e * eye, B + e * eye, True))
    worst = math.inf
    monotone = True
    for prev, nxt in zip(seq, seq[1:]):
        ok, margin = loewner_leq(nxt, prev, tol)
        worst = min(worst, margin)
        monotone = monotone and ok
    delta = norm2(seq[-1] - seq[-2]) if len(seq) > 1 else 0.0
    return seq, monotone, (0.0 if worst == math.inf else worst), delta


def eval(conn, A, B, *, trace=True, tol=DEFAULT_TOL, convergence_tol=CONVERGENCE_TOL):
    """Evaluate ``A s B``; returns ``(result, EvalTrace)``.

    With ``trace=False`` the regularized sequence is skipped whenever a closed
    form is available (the returned trace then carries no epsilons).

    Raises :class:`ConvergenceError` when only the regularized sequence is
    available and its terminal step exceeds
    ``convergence_tol * (1 + |result|)``.
    """
    A, wa, Ua, B, wb, Ub, scale = _prepare(A, B)
    singular = not (wa[0] > 0 and wb[0] > 0)

    exact = None
    route = "direct"
    try:
        if conn.kind == "function":
            if wa[0] > 0:
                exact = _pd_formula(conn.backend, wa, Ua, wb, Ub)
            else:
                route = "shorted"
                exact = _shorted(conn.backend, wa, Ua, B, scale)
        else:
            route = "direct" if not singular else "parallel-sum"
            if singular:
                A, B = from_spectrum(Ua, wa), from_spectrum(Ub, wb)
            exact = _measure_value(conn.backend, A, B, not singular)
    except NonConvergenceError:
        exact = None

    if not singular:
        return exact, EvalTrace(route=route)
    if exact is not None and not trace:
        return exact, EvalTrace(route=route)

    seq, monotone, worst, delta = _iterates(conn, A, wa, Ua, B, wb, Ub, tol)
    if exact is None:
        result = seq[-1]
        tr = EvalTrace(conn.eps, delta, monotone, worst, "limit")
        if delta > convergence_tol * (1.0 + norm2(result)):
            raise ConvergenceError(
                f"{conn.label}: regularized sequence did not settle "
                f"(terminal_delta={delta:.3e})", trace=tr, result=result)
        return result, tr
    return exact, EvalTrace(conn.eps, delta, monotone, worst, route)


def eval_function_pd(f, A, B):
    """``A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}`` for positive definite ``A``."""
    A, wa, Ua, B, wb, Ub, _ = _prepare(A, B)
    if not wa[0] > 0:
        raise SingularMatrixError("first operand must be positive definite; "
                                  "regularize or use eval()", min_eig=float(wa[0]))
    return _pd_formula(f, wa, Ua, wb, Ub)


def eval_measure(m, A, B, eps=DEFAULT_EPS):
    """Evaluate the integral representation for a discrete measure ``m``."""
    return eval(Connection(m, eps), A, B, trace=False)[0]


def harmonic_mean(A, B, eps=DEFAULT_EPS):
    return eval(Connection(fn.harmonic(0.5), eps), A, B, trace=False)[0]


def parallel_sum(A, B, eps=DEFAULT_EPS):
    """``(A^{-1} + B^{-1})^{-1}``, extended to singular operands by continuity."""
    return 0.5 * harmonic_mean(A, B, eps)


def transpose(f):
    return fn.transpose(f)


def boundary_coefficients(f, numeric=False):
    return fn.boundary_coefficients(f, numeric=numeric)


# ----------------------------------------------------------------------------
# named catalog

CATALOG = {
    "arithmetic": ("t-weighted arithmetic mean (1-t) + t x", ("t",)),
    "geometric": ("t-weighted geometric mean x**t", ("t",)),
    "harmonic": ("t-weighted harmonic mean [(1-t) + t/x]**-1", ("t",)),
    "logarithmic": ("logarithmic mean (x-1)/log x", ()),
    "power_quasi": ("quasi-arithmetic power mean [(1-alpha) + alpha x**p]**(1/p)", ("p", "alpha")),
    "affine": ("affine connection alpha + beta x (alpha=beta=1 is the sum)", ("alpha", "beta")),
}


def make_named(name, eps=DEFAULT_EPS, **params):
    """Connection for a catalog family, e.g. ``make_named("geometric", t=0.3)``.

    ``name`` may also be a negative control (``square``, ``cube``, ``exp``),
    the naive lift of a function that is not operator monotone.
    """
    if name in fn.NEGATIVE_CONTROLS:
        if params:
            raise ParameterError(f"negative control {name!r} takes no parameters")
        return Connection(fn.negative_control(name), eps)
    return Connection(fn.FamilyFunction(name, **params), eps)
