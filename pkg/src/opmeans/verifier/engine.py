"""Trial engine, check registry and verification reports."""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math
import time
import zlib

import numpy as np

from .. import connections as C
from ..errors import OpMeansError, ParameterError
from ..psd import DEFAULT_TOL, Tolerance, matrix_from_json, matrix_to_json
from . import checks as K
from .shrink import shrink

NOTE = ("Checks sample finitely many inputs at finite dimension; "
        "'no violation found' is evidence, not proof.")


@dataclass(frozen=True)
class TrialConfig:
    dims: tuple = (1, 2, 3, 5, 8)
    trials_per_check: int = 200
    seed: int = 0
    cond_max: float = 1e6
    tol: Tolerance = DEFAULT_TOL
    continuity_tol: float = 0.1
    jobs: int = 1
    shrink: bool = True

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ParameterError("dims must be a nonempty list of integers >= 1")
        object.__setattr__(self, "dims", dims)
        if self.trials_per_check < 1:
            raise ParameterError("trials_per_check must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ParameterError("seed must be a 64-bit unsigned integer")
        if not (math.isfinite(self.cond_max) and self.cond_max >= 1):
            raise ParameterError("cond_max must be finite and >= 1")
        if not (math.isfinite(self.continuity_tol) and self.continuity_tol >= 0):
            raise ParameterError("continuity_tol must be finite and >= 0")
        if self.jobs < 1:
            raise ParameterError("jobs must be >= 1")

    def to_json(self):
        return {"dims": list(self.dims), "trials_per_check": self.trials_per_check,
                "seed": self.seed, "cond_max": self.cond_max,
                "tol": {"abs": self.tol.abs, "rel": self.tol.rel},
                "continuity_tol": self.continuity_tol, "shrink": self.shrink}


@dataclass(frozen=True)
class CheckSpec:
    name: str
    draw: object
    assess: object
    shrinkable: bool = True


CHECKS = {s.name: s for s in (
    CheckSpec("M1", K.draw_M1, K.assess_M1),
    CheckSpec("M2", K.draw_M2, K.assess_M2),
    CheckSpec("M3", K.draw_M3, K.assess_M3),
    CheckSpec("M3prime", K.draw_pair, K.assess_M3prime),
    CheckSpec("M3doubleprime", K.draw_pair, K.assess_M3doubleprime),
    CheckSpec("M4", K._draw_M4(None), K.assess_M4),
    CheckSpec("M4prime", K._draw_M4(0.5), K.assess_M4),
    CheckSpec("P", K.draw_P, K.assess_P, shrinkable=False),
    CheckSpec("F", K.draw_F, K.assess_F, shrinkable=False),
    CheckSpec("superadditivity", K.draw_superadditivity, K.assess_superadditivity),
)}

ALL_CHECKS = tuple(CHECKS)

# characterizations of connections; each set names the checks it needs
AXIOM_SETS = {
    "BO(M1, M2, M3)": ("M1", "M2", "M3"),
    "BO(M1, M2, M3')": ("M1", "M2", "M3prime"),
    "BO(M1, M2, M3'')": ("M1", "M2", "M3doubleprime"),
    "BO(M2, M4, M3)": ("M2", "M4", "M3"),
    "BO(M2, M4, M3')": ("M2", "M4", "M3prime"),
    "BO(M2, M4, M3'')": ("M2", "M4", "M3doubleprime"),
    "BO(M2, M4', M3)": ("M2", "M4prime", "M3"),
    "BO(M2, M4', M3')": ("M2", "M4prime", "M3prime"),
    "BO(M2, M4', M3'')": ("M2", "M4prime", "M3doubleprime"),
}

FOUND = "violation found"
NOT_FOUND = "no violation found"
NOT_RUN = "not run"


@dataclass(frozen=True)
class CheckResult:
    check_name: str
    trials: int
    violations: int
    worst_margin: object  # float, or None when no trial executed
    counterexample: object = None
    errors: int = 0
    first_error: str = ""

    @property
    def executed(self):
        return self.trials - self.errors

    @property
    def passed(self):
        return self.violations == 0 and self.executed > 0

    def to_json(self):
        return {"name": self.check_name, "trials": self.trials,
                "executed": self.executed, "violations": self.violations,
                "errors": self.errors, "first_error": self.first_error or None,
                "worst_margin": self.worst_margin,
                "counterexample": self.counterexample}


@dataclass(frozen=True)
class VerificationReport:
    connection: dict
    config: TrialConfig
    checks: tuple
    wall_time: float = field(default=0.0, compare=False)

    @property
    def seed(self):
        return self.config.seed

    @property
    def verdict(self):
        return "pass" if all(c.passed for c in self.checks) else "fail"

    def axiom_sets(self):
        by_name = {c.check_name: c for c in self.checks}
        out = {}
        for name, needed in AXIOM_SETS.items():
            if not all(n in by_name for n in needed):
                out[name] = NOT_RUN
            elif all(by_name[n].passed for n in needed):
                out[name] = NOT_FOUND
            else:
                out[name] = FOUND
        return out

    def result(self, name):
        for c in self.checks:
            if c.check_name == name:
                return c
        raise KeyError(name)

    def to_json(self, wall_time=True):
        out = {"connection": self.connection, "seed": self.seed,
               "config": self.config.to_json(),
               "checks": [c.to_json() for c in self.checks],
               "axiom_sets": self.axiom_sets(), "verdict": self.verdict,
               "note": NOTE}
        if wall_time:
            out["wall_time"] = self.wall_time
        return out


# ----------------------------------------------------------------------------
# payload (de)serialization

def _encode(inputs):
    out = {}
    for k, v in inputs.items():
        out[k] = matrix_to_json(v) if isinstance(v, np.ndarray) else v
    return out


def _decode(payload_inputs):
    out = {}
    for k, v in payload_inputs.items():
        out[k] = matrix_from_json(v) if isinstance(v, dict) else float(v)
    return out


def trial_rng(seed, name, index):
    """Independent substream for one trial, fixed by ``(seed, check, index)``."""
    ss = np.random.SeedSequence([int(seed), zlib.crc32(name.encode()), int(index)])
    return np.random.default_rng(ss)


def _worst(assertions):
    return min(assertions, key=lambda a: a.score)


def _first_violation(assertions):
    bad = [a for a in assertions if a.violated]
    return _worst(bad) if bad else None


def run_check(name, conn, cfg=TrialConfig(), *, draw=None, assess=None, shrinkable=None):
    """Run one named check (or a custom ``draw``/``assess`` pair)."""
    if draw is None:
        spec = CHECKS[name]
        draw, assess = spec.draw, spec.assess
        shrinkable = spec.shrinkable if shrinkable is None else shrinkable

    def one(i):
        dim = cfg.dims[i % len(cfg.dims)]
        inputs = draw(trial_rng(cfg.seed, name, i), dim, cfg)
        try:
            return i, inputs, assess(conn, inputs, cfg), None
        except (OpMeansError, np.linalg.LinAlgError) as exc:
            return i, inputs, None, f"{type(exc).__name__}: {exc}"

    idx = range(cfg.trials_per_check)
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            outcomes = list(pool.map(one, idx))
    else:
        outcomes = [one(i) for i in idx]

    violations = errors = 0
    first_error = ""
    worst_score = None
    worst_bad = None  # (score, index, inputs, assertion)
    for i, inputs, assertions, err in outcomes:
        if err is not None:
            errors += 1
            first_error = first_error or f"trial {i}: {err}"
            continue
        w = _worst(assertions).score
        worst_score = w if worst_score is None else min(worst_score, w)
        bad = _first_violation(assertions)
        if bad is not None:
            violations += 1
            if worst_bad is None or bad.score < worst_bad[0]:
                worst_bad = (bad.score, i, inputs, bad)

    counterexample = None
    if worst_bad is not None:
        _, i, inputs, bad = worst_bad
        shrunk = inputs
        if cfg.shrink and shrinkable:
            shrunk = shrink(inputs, lambda x: _first_violation(assess(conn, x, cfg)) is not None)
        final = _first_violation(assess(conn, shrunk, cfg))
        counterexample = {"trial": i, "original_dim": K._dim(inputs), "dim": K._dim(shrunk),
                          "assertion": final.to_json(), "inputs": _encode(shrunk)}
    return CheckResult(name, cfg.trials_per_check, violations, worst_score,
                       counterexample, errors, first_error)


def replay_counterexample(name, conn, counterexample, cfg=TrialConfig(), *, assess=None):
    """Re-evaluate a reported counterexample; returns its violated assertion or None."""
    assess = CHECKS[name].assess if assess is None else assess
    return _first_violation(assess(conn, _decode(counterexample["inputs"]), cfg))


def check_order_isomorphism(f1, f2, cfg=TrialConfig()):
    """Dominance ``f1 <= f2`` on a grid versus Löwner dominance of the lifts."""
    draw, assess, _ = K.order_check(f1, f2, cfg)
    label = f"order({f1.label} <= {f2.label})"
    return run_check(label, None, cfg, draw=draw, assess=assess, shrinkable=True)


def check_property_F(conn, f=None, cfg=TrialConfig()):
    return run_check("F", conn, cfg, draw=K.draw_F,
                     assess=lambda c, x, g: K.assess_F(c, x, g, f), shrinkable=False)


def run_suite(conn, cfg=TrialConfig(), checks=ALL_CHECKS):
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ParameterError(f"unknown checks: {unknown}")
    t0 = time.perf_counter()
    results = tuple(run_check(name, conn, cfg) for name in checks)
    return VerificationReport(conn.to_json(), cfg, results, time.perf_counter() - t0)
