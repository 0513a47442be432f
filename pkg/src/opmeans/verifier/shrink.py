"""Greedy shrinking of counterexamples.

First drop one coordinate at a time (principal submatrices of PSD matrices
stay PSD), then round spectra and scalar parameters to one significant
digit, keeping each step only while the violation persists.
"""
import math

import numpy as np


def round_sig(v, digits=1):
    if v == 0 or not math.isfinite(v):
        return v
    return float(f"{v:.{digits - 1}e}")


def drop_index(inputs, k):
    out = {}
    for name, v in inputs.items():
        if isinstance(v, np.ndarray):
            keep = [i for i in range(v.shape[0]) if i != k]
            out[name] = v[np.ix_(keep, keep)]
        else:
            out[name] = v
    return out


def round_spectrum(M):
    w, U = np.linalg.eigh((M + M.conj().T) / 2)
    w = np.array([round_sig(max(v, 0.0)) for v in w])
    R = (U * w) @ U.conj().T
    return (R + R.conj().T) / 2


def shrink(inputs, fails, max_steps=200):
    """Smallest-found inputs for which ``fails(inputs)`` is still true.

    ``fails`` must be deterministic; any exception it raises counts as "no
    longer failing" so shrinking never trades a violation for an error.
    """
    def still(cand):
        try:
            return bool(fails(cand))
        except Exception:
            return False

    cur = inputs
    steps = 0
    dim = next(v.shape[0] for v in cur.values() if isinstance(v, np.ndarray))
    progress = True
    while progress and dim > 1 and steps < max_steps:
        progress = False
        for k in range(dim):
            steps += 1
            cand = drop_index(cur, k)
            if still(cand):
                cur, dim, progress = cand, dim - 1, True
                break
    for name in list(cur):
        v = cur[name]
        if isinstance(v, np.ndarray):
            cand = dict(cur, **{name: round_spectrum(v)})
        elif isinstance(v, float):
            cand = dict(cur, **{name: round_sig(v)})
        else:
            continue
        if still(cand):
            cur = cand
    return cur
