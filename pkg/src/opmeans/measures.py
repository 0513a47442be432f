"""Discrete representing measures and quadrature builders.

A connection is ``alpha A + beta B + sum_i w_i (l_i + 1)/(2 l_i) (l_i A) ! B``:
atoms ``alpha`` at 0 and ``beta`` at infinity plus weighted nodes in
``(0, inf)``.  Continuous measures are discretized by Gauss-Legendre on
``theta in (0, pi/2)`` under ``lambda = tan(theta)**2``.
"""
from dataclasses import dataclass, field
import math

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ParameterError

DEFAULT_NODES = 200


@dataclass(frozen=True)
class DiscreteMeasure:
    alpha: float = 0.0
    beta: float = 0.0
    nodes: tuple = ()
    label: str = field(default="measure", compare=False)

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ParameterError(f"{name} mass must be finite and >= 0, got {v!r}")
        nodes = tuple((float(l), float(w)) for l, w in self.nodes)
        for l, w in nodes:
            if not (math.isfinite(l) and l > 0):
                raise ParameterError(f"node location must be finite and > 0, got {l!r}")
            if not (math.isfinite(w) and w >= 0):
                raise ParameterError(f"node weight must be finite and >= 0, got {w!r}")
        if any(b[0] <= a[0] for a, b in zip(nodes, nodes[1:])):
            raise ParameterError("node locations must be strictly increasing")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "nodes", nodes)

    @property
    def lam(self):
        return np.array([l for l, _ in self.nodes], dtype=float)

    @property
    def w(self):
        return np.array([w for _, w in self.nodes], dtype=float)

    @property
    def total_mass(self):
        return self.alpha + self.beta + float(self.w.sum())

    def transpose(self):
        """Measure of the transposed connection: swap the atoms, invert the nodes."""
        nodes = tuple(sorted((1.0 / l, w) for l, w in self.nodes))
        return DiscreteMeasure(self.beta, self.alpha, nodes, label=f"transpose({self.label})")

    def without_beta(self):
        return DiscreteMeasure(self.alpha, 0.0, self.nodes, label=self.label)

    def to_json(self):
        return {"backend": "measure", "alpha": self.alpha, "beta": self.beta,
                "nodes": [[l, w] for l, w in self.nodes]}

    @classmethod
    def from_json(cls, obj):
        try:
            nodes = sorted((float(l), float(w)) for l, w in obj.get("nodes", []))
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"malformed nodes: {exc}") from None
        return cls(float(obj.get("alpha", 0.0)), float(obj.get("beta", 0.0)), tuple(nodes))


def quadrature_measure(density, n=DEFAULT_NODES, alpha=0.0, beta=0.0, label="quadrature"):
    """Discretize ``density(l) dl`` on ``(0, inf)`` with ``n`` nodes.

    ``l = tan(theta)**2`` maps ``(0, pi/2)`` onto the half line; the weights
    fold in the Jacobian ``2 tan(theta) sec(theta)**2`` and the density.
    """
    if n < 1:
        raise ParameterError("need at least one node")
    z, gw = leggauss(n)
    theta = (z + 1.0) * (math.pi / 4)
    gw = gw * (math.pi / 4)
    tan = np.tan(theta)
    lam = tan ** 2
    jac = 2.0 * tan / np.cos(theta) ** 2
    w = gw * density(lam) * jac
    return DiscreteMeasure(alpha, beta, tuple(zip(lam.tolist(), w.tolist())), label=label)


def geometric_measure(t=0.5, n=DEFAULT_NODES):
    """Quadrature measure representing ``x**t`` for ``0 < t < 1``.

    Density ``sin(pi t)/pi * l**(t-1) / (1 + l)``; for ``t = 1/2`` the folded
    weights are constant in ``theta``.
    """
    if not 0 < t < 1:
        raise ParameterError("geometric_measure needs 0 < t < 1")
    c = math.sin(math.pi * t) / math.pi
    return quadrature_measure(lambda l: c * l ** (t - 1.0) / (1.0 + l), n,
                              label=f"geometric_measure(t={t:g}, n={n})")


def harmonic_measure(t=0.5):
    """Exact measure of ``[(1-t) + t/x]^{-1}``: one node at ``t/(1-t)`` of unit weight."""
    if t <= 0:
        return DiscreteMeasure(alpha=1.0, label="harmonic_measure(t=0)")
    if t >= 1:
        return DiscreteMeasure(beta=1.0, label="harmonic_measure(t=1)")
    return DiscreteMeasure(0.0, 0.0, ((t / (1.0 - t), 1.0),), label=f"harmonic_measure(t={t:g})")


def arithmetic_measure(t=0.5):
    """``(1-t) + t x`` is purely atomic."""
    return DiscreteMeasure(1.0 - t, t, (), label=f"arithmetic_measure(t={t:g})")
