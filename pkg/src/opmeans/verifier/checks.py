"""Axiom checks as (draw, assess) pairs.

``draw(rng, dim, cfg)`` samples the inputs of one trial as a dict of named
matrices and scalar parameters.  ``assess(conn, inputs, cfg)`` evaluates the
connection and returns :class:`Assertion` records.  Keeping the two apart is
what makes counterexamples replayable and shrinkable: a payload is just the
``inputs`` dict.
"""
from dataclasses import dataclass
import math

import numpy as np

from .. import connections as C
from ..psd import is_pd, min_eig, norm2
from . import generators as G


@dataclass(frozen=True)
class Assertion:
    """One numerical claim of a trial.

    ``margin`` is the smallest eigenvalue of ``rhs - lhs`` for Löwner
    inequalities and ``-|lhs - rhs|_2`` for equalities; the claim fails when
    ``margin < -slack``.  A ``witness`` assertion inverts this: it claims a
    violation exists and fails when ``margin >= -slack``.
    """

    label: str
    margin: float
    scale: float
    slack: float
    witness: bool = False

    @property
    def violated(self):
        if self.witness:
            return self.margin >= -self.slack
        return self.margin < -self.slack

    @property
    def score(self):
        """Margin relative to the operand scale; negative means trouble."""
        rel = self.margin / self.scale if self.scale > 0 else self.margin
        return -rel if self.witness else rel

    def to_json(self):
        return {"label": self.label, "margin": self.margin, "scale": self.scale,
                "slack": self.slack, "witness": self.witness}


def _scale(*mats):
    return max((norm2(M) for M in mats), default=0.0)


def leq(label, lhs, rhs, cfg, *operands):
    """``lhs <= rhs`` in the Löwner order."""
    scale = _scale(lhs, rhs, *operands)
    return Assertion(label, min_eig(rhs - lhs), scale, cfg.tol.threshold(scale))


def eq(label, lhs, rhs, cfg, *operands):
    scale = _scale(lhs, rhs, *operands)
    return Assertion(label, -norm2(lhs - rhs), scale, cfg.tol.threshold(scale))


def ev(conn, A, B):
    return C.eval(conn, A, B, trace=False)[0]


def _eye(n):
    return np.eye(n)


def _dim(inputs):
    for v in inputs.values():
        if isinstance(v, np.ndarray):
            return v.shape[0]
    raise ValueError("trial has no matrix inputs")


# ----------------------------------------------------------------------------
# monotonicity, transformer inequality, concavity, superadditivity

def draw_M1(rng, dim, cfg):
    return {k: G.gen_psd(dim, cfg.cond_max, rng) for k in ("A", "B", "E", "F")}


def assess_M1(conn, x, cfg):
    A, B, E, F = x["A"], x["B"], x["E"], x["F"]
    return [leq("A s B <= (A+E) s (B+F)", ev(conn, A, B), ev(conn, A + E, B + F), cfg,
                A + E, B + F)]


# CAC squares the conditioning of C; beyond this the computed congruence is
# dominated by rounding in the product itself
CONGRUENCE_COND = 1e2


def draw_M2(rng, dim, cfg):
    x = {k: G.gen_psd(dim, cfg.cond_max, rng) for k in ("A", "B")}
    x["C"] = G.gen_psd(dim, min(cfg.cond_max, CONGRUENCE_COND), rng)
    return x


def assess_M2(conn, x, cfg):
    A, B, Cm = x["A"], x["B"], x["C"]
    lhs = Cm @ ev(conn, A, B) @ Cm
    rhs = ev(conn, Cm @ A @ Cm, Cm @ B @ Cm)
    cc = norm2(Cm) ** 2
    out = [leq("C(A s B)C <= (CAC) s (CBC)", lhs, rhs, cfg, cc * A, cc * B)]
    if is_pd(Cm):
        out.append(eq("C(A s B)C = (CAC) s (CBC), C > 0", lhs, rhs, cfg, cc * A, cc * B))
    return out


def _draw_M4(t_fixed):
    def draw(rng, dim, cfg):
        x = {k: G.gen_psd(dim, cfg.cond_max, rng) for k in ("A", "A2", "B", "B2")}
        x["t"] = t_fixed if t_fixed is not None else float(rng.uniform(0.0, 1.0))
        return x
    return draw


def assess_M4(conn, x, cfg):
    A, A2, B, B2, t = x["A"], x["A2"], x["B"], x["B2"], x["t"]
    lhs = t * ev(conn, A, A2) + (1 - t) * ev(conn, B, B2)
    P, Q = t * A + (1 - t) * B, t * A2 + (1 - t) * B2
    return [leq("t(A s A') + (1-t)(B s B') <= (tA+(1-t)B) s (tA'+(1-t)B')",
                lhs, ev(conn, P, Q), cfg, A, A2, B, B2)]


def draw_superadditivity(rng, dim, cfg):
    return {k: G.gen_psd(dim, cfg.cond_max, rng) for k in ("A", "B", "C", "D")}


def assess_superadditivity(conn, x, cfg):
    A, B, Cm, D = x["A"], x["B"], x["C"], x["D"]
    return [leq("(A s B) + (C s D) <= (A+C) s (B+D)",
                ev(conn, A, B) + ev(conn, Cm, D), ev(conn, A + Cm, B + D), cfg,
                A + Cm, B + D)]


# ----------------------------------------------------------------------------
# continuity from above along A + eps I

def _sequence(conn, cfg, label, make, limit, *operands):
    """Assertions for ``make(eps)`` decreasing to ``limit`` along the schedule.

    Every step must be Löwner-decreasing within tolerance (the worst step is
    reported) and the last iterate must lie within ``continuity_tol`` of the
    limit, relative to the operand scale.
    """
    seq = [make(e) for e in conn.eps]
    worst = None
    for k in range(1, len(seq)):
        a = leq(f"{label}: step {k} decreasing", seq[k], seq[k - 1], cfg, *operands)
        if worst is None or a.score < worst.score:
            worst = a
    scale = _scale(seq[0], limit, *operands)
    gap = norm2(seq[-1] - limit)
    slack = cfg.continuity_tol * scale + cfg.tol.threshold(scale)
    out = [] if worst is None else [worst]
    out.append(Assertion(f"{label}: terminal gap to limit", -gap, scale, slack))
    return out


def draw_pair(rng, dim, cfg):
    return {"A": G.gen_psd(dim, cfg.cond_max, rng), "X": G.gen_psd(dim, cfg.cond_max, rng)}


def assess_M3prime(conn, x, cfg):
    A, X = x["A"], x["X"]
    I = _eye(A.shape[0])
    return (_sequence(conn, cfg, "A_n s X", lambda e: ev(conn, A + e * I, X), ev(conn, A, X), A, X)
            + _sequence(conn, cfg, "I s A_n", lambda e: ev(conn, I, A + e * I), ev(conn, I, A), A, I))


def assess_M3doubleprime(conn, x, cfg):
    A, X = x["A"], x["X"]
    I = _eye(A.shape[0])
    return (_sequence(conn, cfg, "X s A_n", lambda e: ev(conn, X, A + e * I), ev(conn, X, A), A, X)
            + _sequence(conn, cfg, "A_n s I", lambda e: ev(conn, A + e * I, I), ev(conn, A, I), A, I))


def draw_M3(rng, dim, cfg):
    return {"A": G.gen_psd(dim, cfg.cond_max, rng), "B": G.gen_psd(dim, cfg.cond_max, rng)}


def assess_M3(conn, x, cfg):
    A, B = x["A"], x["B"]
    I = _eye(A.shape[0])
    return _sequence(conn, cfg, "A_n s B_n", lambda e: ev(conn, A + e * I, B + e * I),
                     ev(conn, A, B), A, B)


# ----------------------------------------------------------------------------
# properties (P) and (F)

def draw_P(rng, dim, cfg):
    """Shared unitary plus diagonal spectra; products like ``PA`` are then
    formed as ``U diag(p a) U*`` so they are accurate relative to their own
    size rather than to ``|A|``."""
    U = G.haar_unitary(dim, rng)
    a = G.spectrum(dim, cfg.cond_max, rng, rng.random() < G.ZERO_PROB)
    b = G.spectrum(dim, cfg.cond_max, rng, rng.random() < G.ZERO_PROB)
    return {"U": U, "a": np.diag(a), "b": np.diag(b),
            "p": np.diag(G.projection_pattern(dim, rng))}


def assess_P(conn, x, cfg):
    U = x["U"]
    a, b, p = (np.real(np.diagonal(x[k])) for k in ("a", "b", "p"))
    A, B, P = G.compose(U, a), G.compose(U, b), G.compose(U, p)
    S = ev(conn, A, B)
    PS = ev(conn, G.compose(U, p * a), G.compose(U, p * b))
    return [eq("P(A s B) = (PA) s (PB)", P @ S, PS, cfg, A, B),
            eq("P(A s B) = (A s B)P", P @ S, S @ P, cfg, A, B)]


F_GRID = (1e-3, 1e3)


def draw_F(rng, dim, cfg):
    lo, hi = (math.log(v) for v in F_GRID)
    xval = 0.0 if rng.random() < 0.1 else float(math.exp(rng.uniform(lo, hi)))
    return {"x": xval, "A": G.gen_pd(dim, cfg.cond_max, rng),
            "A0": G.gen_psd(dim, cfg.cond_max, rng), "P": G.gen_projection(dim, rng)}


def assess_F(conn, x, cfg, f=None):
    """The four equivalent forms ``f(x)M = M s (xM)`` for ``M = I``, a
    projection, a PD and a PSD matrix."""
    f = conn.function if f is None else f
    xv, A, A0, P = x["x"], x["A"], x["A0"], x["P"]
    fx = float(f.value(xv))
    I = _eye(A.shape[0])
    return [eq(f"{name}: f(x)M = M s (xM)", ev(conn, M, xv * M), fx * M, cfg, M, xv * M)
            for name, M in (("(i) M = I", I), ("(ii) M = P", P),
                            ("(iii) M = A > 0", A), ("(iv) M = A >= 0", A0))]


# ----------------------------------------------------------------------------
# order isomorphism between two representing functions

ORDER_GRID = np.concatenate([[0.0], np.logspace(-4, 4, 161)])


def scalar_dominance(f1, f2, tol):
    """``(holds, x_worst)``: does ``f1 <= f2`` hold on the grid?"""
    v1, v2 = f1(ORDER_GRID), f2(ORDER_GRID)
    slack = tol.abs + tol.rel * np.maximum(np.abs(v1), np.abs(v2))
    gap = v2 - v1 + slack
    k = int(np.argmin(gap))
    return bool(gap[k] >= 0), float(ORDER_GRID[k])


def order_check(f1, f2, cfg):
    """(draw, assess) for ``check_order_isomorphism``.

    When ``f1 <= f2`` on the grid, trials assert ``A s1 B <= A s2 B``;
    otherwise every trial asserts that ``(I, x* I)`` at the worst grid point
    witnesses ``I s1 x*I  not<=  I s2 x*I``.
    """
    holds, xw = scalar_dominance(f1, f2, cfg.tol)
    c1, c2 = C.Connection(f1), C.Connection(f2)

    def draw(rng, dim, cfg):
        if holds:
            return draw_M3(rng, dim, cfg)
        return {"A": _eye(dim), "x": xw}

    def assess(conn, x, cfg):
        if holds:
            A, B = x["A"], x["B"]
            return [leq("A s1 B <= A s2 B", ev(c1, A, B), ev(c2, A, B), cfg, A, B)]
        I = x["A"]
        lhs, rhs = ev(c1, I, x["x"] * I), ev(c2, I, x["x"] * I)
        a = leq("witness: I s1 xI not<= I s2 xI", lhs, rhs, cfg, x["x"] * I)
        return [Assertion(a.label, a.margin, a.scale, a.slack, witness=True)]

    return draw, assess, holds
