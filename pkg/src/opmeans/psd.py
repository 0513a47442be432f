"""Dense Hermitian / positive semidefinite primitives.

Matrices are plain ``numpy`` arrays (real symmetric or complex Hermitian).
Every matrix function goes through one Hermitian eigendecomposition; there
are no Padé or Schur variants.
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import (DimensionError, EigenError, EvaluationError, NotPSDError,
                     ParameterError, SingularMatrixError)

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative slack used by Löwner comparisons."""

    abs: float = 1e-8
    rel: float = 1e-8

    def __post_init__(self):
        for name in ("abs", "rel"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ParameterError(f"tolerance {name} must be finite and >= 0, got {v!r}")

    def threshold(self, scale):
        return self.abs + self.rel * scale


DEFAULT_TOL = Tolerance()


def as_square(M):
    """Return ``M`` as a 2-D float or complex array, checking it is square."""
    M = np.asarray(M)
    if M.dtype.kind not in "fc":
        M = M.astype(float)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise DimensionError(f"expected a non-empty square matrix, got shape {M.shape}")
    return M


def check_same_dim(*mats):
    dims = {m.shape[0] for m in mats}
    if len(dims) != 1:
        raise DimensionError(f"operand dimensions differ: {sorted(dims)}")
    return dims.pop()


def symmetrize(M):
    """Hermitian part ``(M + M*) / 2``.

    The result is exactly Hermitian: the diagonal is real and the strict
    lower triangle is the conjugate of the upper one.
    """
    M = as_square(M)
    # floating addition commutes, so (i, j) and (j, i) come out as exact conjugates
    return (M + M.conj().T) / 2


def spectral(A):
    """Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix."""
    A = as_square(A)
    if not np.all(np.isfinite(A)):
        raise EigenError("matrix has non-finite entries", matrix=A)
    try:
        w, U = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise EigenError(f"eigensolver failed: {exc}", matrix=A) from exc
    return w, U


def norm2(A):
    """Spectral norm."""
    A = np.asarray(A)
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


def psd_tol(A=None, norm=None):
    """Acceptance slack for PSD certificates: ``1e-9 * (1 + ||A||_2)``."""
    if norm is None:
        norm = norm2(A)
    return 1e-9 * (1.0 + norm)


def rank_tol(w):
    """Eigenvalues at or below this are numerically zero (rank-revealing cut)."""
    w = np.asarray(w)
    if w.size == 0:
        return 0.0
    return 32.0 * w.size * _EPS * float(np.max(np.abs(w)))


def clean_spectrum(w, norm=None):
    """Validate a PSD spectrum and snap numerically-zero eigenvalues to 0."""
    if norm is None:
        norm = float(np.max(np.abs(w))) if w.size else 0.0
    lo = float(w[0]) if w.size else 0.0
    if lo < -psd_tol(norm=norm):
        raise NotPSDError(f"smallest eigenvalue {lo:.3e} is below -psd_tol", min_eig=lo)
    w = np.where(w <= rank_tol(w), 0.0, w)
    return w


def as_psd(M):
    """Symmetrize ``M`` and certify it is PSD within ``psd_tol``."""
    H = symmetrize(M)
    w, _ = spectral(H)
    clean_spectrum(w)
    return H


def _apply(f, w):
    vals = np.asarray(f(w), dtype=float)
    if vals.shape != w.shape:
        vals = np.array([float(f(float(v))) for v in w])
    bad = ~np.isfinite(vals)
    if bad.any():
        x = float(w[np.argmax(bad)])
        raise EvaluationError(f"function is not finite at eigenvalue {x!r}", point=x)
    return vals


def apply_spectral(f, w):
    """Evaluate ``f`` on an array of nonnegative eigenvalues, checking finiteness."""
    return _apply(f, np.asarray(w, dtype=float))


def from_spectrum(U, vals):
    """``U diag(vals) U*`` as an exactly Hermitian matrix."""
    return symmetrize((U * vals) @ U.conj().T)


def matrix_function(A, f):
    """Functional calculus ``f(A) = U diag(f(λ)) U*`` for PSD ``A``.

    ``f`` is any callable accepting an array of eigenvalues.  Eigenvalues
    within rounding of zero are passed as exact zeros, so closed-form
    families see their right limit at 0.
    """
    w, U = spectral(symmetrize(A))
    w = clean_spectrum(w)
    return from_spectrum(U, _apply(f, w))


def sqrt_psd(A):
    return matrix_function(A, np.sqrt)


def inv_pd(A, floor=None):
    """Inverse of a positive definite matrix.

    Raises :class:`SingularMatrixError` when the smallest eigenvalue is below
    ``floor`` (defaults to the rank-revealing cut); callers regularize first.
    """
    w, U = spectral(symmetrize(A))
    if floor is None:
        floor = rank_tol(w)
    elif floor <= 0:
        raise ParameterError("floor must be > 0")
    if w[0] < floor or w[0] <= 0:
        raise SingularMatrixError(
            f"smallest eigenvalue {w[0]:.3e} is below floor {floor:.3e}", min_eig=float(w[0]))
    return from_spectrum(U, 1.0 / w)


def min_eig(H):
    return float(np.linalg.eigvalsh(symmetrize(H))[0])


def loewner_leq(A, B, tol=DEFAULT_TOL):
    """Test ``A <= B`` in the Löwner order.

    Returns ``(ok, margin)`` where ``margin`` is the smallest eigenvalue of
    ``B - A``; ``ok`` allows a slack of ``tol.abs + tol.rel * max(|A|, |B|)``.
    """
    A, B = as_square(A), as_square(B)
    check_same_dim(A, B)
    margin = min_eig(B - A)
    scale = max(norm2(A), norm2(B))
    return margin >= -tol.threshold(scale), margin


def regularize(A, eps):
    """``A + eps I``."""
    if not eps > 0:
        raise ParameterError(f"eps must be > 0, got {eps!r}")
    A = as_square(A)
    return A + eps * np.eye(A.shape[0], dtype=A.dtype)


def is_pd(A):
    """True when every eigenvalue clears the rank-revealing cut."""
    w = np.linalg.eigvalsh(symmetrize(A))
    return bool(w[0] > rank_tol(w))


# ----------------------------------------------------------------------------
# JSON schema: {"dim": n, "re": [[...]], "im": [[...]]}; "im" optional.

def matrix_to_json(M):
    M = as_square(M)
    out = {"dim": int(M.shape[0]), "re": np.real(M).tolist()}
    if np.iscomplexobj(M) and np.any(np.imag(M) != 0):
        out["im"] = np.imag(M).tolist()
    return out


def matrix_from_json(obj):
    """Parse the matrix schema; raises ``ValueError`` on malformed input."""
    if not isinstance(obj, dict) or "dim" not in obj or "re" not in obj:
        raise ValueError("matrix JSON needs 'dim' and 're'")
    n = obj["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"'dim' must be a positive integer, got {n!r}")
    re = np.array(obj["re"], dtype=float)
    if re.shape != (n, n):
        raise ValueError(f"'re' has shape {re.shape}, expected {(n, n)}")
    if "im" in obj and obj["im"] is not None:
        im = np.array(obj["im"], dtype=float)
        if im.shape != (n, n):
            raise ValueError(f"'im' has shape {im.shape}, expected {(n, n)}")
        if np.any(im != 0):
            return re + 1j * im
    return re
