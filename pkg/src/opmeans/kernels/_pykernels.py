"""Pure numpy fallback for the compiled scalar kernels."""
import numpy as np

ARITHMETIC, GEOMETRIC, HARMONIC, LOGARITHMIC, POWER_QUASI, AFFINE = range(6)
LOG_SERIES_RADIUS = 1e-4
P_ZERO_RADIUS = 1e-6


def _logarithmic(x):
    u = x - 1.0
    near = np.abs(u) < LOG_SERIES_RADIUS
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = u / np.log(x)
    series = 1.0 + u * (0.5 + u * (-1.0 / 12.0 + u * (1.0 / 24.0)))
    out = np.where(near, series, direct)
    return np.where(x == 0.0, 0.0, out)


def _power_quasi(p, a, x):
    if abs(p) < P_ZERO_RADIUS:
        return np.power(x, a)
    if p > 0:
        return np.power((1.0 - a) + a * np.power(x, p), 1.0 / p)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = x * np.power((1.0 - a) * np.power(x, -p) + a, 1.0 / p)
    return np.where(x == 0.0, 0.0 if a > 0 else 1.0, out)


def family_eval(code, p0, p1, x):
    x = np.ascontiguousarray(x, dtype=np.float64)
    if code == ARITHMETIC:
        return (1.0 - p0) + p0 * x
    if code == GEOMETRIC:
        return np.power(x, p0)
    if code == HARMONIC:
        if p0 == 0.0:
            return np.ones_like(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            return x / ((1.0 - p0) * x + p0)
    if code == LOGARITHMIC:
        return _logarithmic(x)
    if code == POWER_QUASI:
        return _power_quasi(p0, p1, x)
    if code == AFFINE:
        return p0 + p1 * x
    raise ValueError(f"unknown family code {code}")


def measure_pairs(alpha, beta, lam, w, x, y):
    lam = np.asarray(lam, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    den = lam[None, :] * x[:, None] + y[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = w * (lam + 1.0) * x[:, None] * y[:, None] / den
    terms = np.where(den > 0.0, terms, 0.0)
    acc = np.zeros(x.shape[0])
    # sequential accumulation keeps the summation order of the compiled loop
    for k in range(lam.shape[0]):
        acc = acc + terms[:, k]
    return alpha * x + beta * y + acc
