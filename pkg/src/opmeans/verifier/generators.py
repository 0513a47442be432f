"""Random PSD inputs for the verifier.

All generators draw complex Hermitian matrices ``U diag(l) U*`` with a Haar
unitary ``U``.  Spectra are log-uniform with a bounded condition number (over
the nonzero eigenvalues) and an overall scale in ``[e^-1, e^2]``.
"""
import math

import numpy as np

ZERO_PROB = 0.25  # chance that gen_psd plants at least one zero eigenvalue


def haar_unitary(dim, rng):
    """Haar-distributed unitary from the QR factorization of a complex Gaussian."""
    Z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def spectrum(dim, cond_max, rng, zeros=False):
    """Log-uniform eigenvalues with ``max/min <= cond_max``.

    With ``zeros`` a random nonempty subset (proper when ``dim > 1``) is set
    to zero.
    """
    logc = math.log(max(cond_max, 1.0))
    lam = np.exp(rng.uniform(-logc, 0.0, dim))
    lam *= math.exp(rng.uniform(-1.0, 2.0)) / lam.max()
    if zeros:
        k = 1 if dim == 1 else int(rng.integers(1, dim))
        lam[rng.choice(dim, size=k, replace=False)] = 0.0
    return lam


def compose(U, lam):
    M = (U * lam) @ U.conj().T
    return (M + M.conj().T) / 2


def gen_psd(dim, cond_max, rng):
    """PSD matrix; singular with probability ``ZERO_PROB``."""
    zeros = rng.random() < ZERO_PROB
    return compose(haar_unitary(dim, rng), spectrum(dim, cond_max, rng, zeros))


def gen_pd(dim, cond_max, rng):
    return compose(haar_unitary(dim, rng), spectrum(dim, cond_max, rng))


def projection_pattern(dim, rng):
    """0/1 diagonal for a projection; the trivial patterns 0 and I are included."""
    return (rng.random(dim) < rng.uniform(0.2, 0.8)).astype(float)


def gen_projection(dim, rng, U=None):
    if U is None:
        U = haar_unitary(dim, rng)
    return compose(U, projection_pattern(dim, rng))


def gen_commuting_pair(dim, cond_max, rng):
    """``(A, B, U)`` with ``A, B`` diagonal in the shared basis ``U``.

    Either operand may be singular.
    """
    U = haar_unitary(dim, rng)
    a = spectrum(dim, cond_max, rng, rng.random() < ZERO_PROB)
    b = spectrum(dim, cond_max, rng, rng.random() < ZERO_PROB)
    return compose(U, a), compose(U, b), U
