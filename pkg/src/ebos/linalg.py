"""Dense matrix helpers and an SVD-based Moore-Penrose pseudo-inverse.

Matrices are plain 2-D numpy arrays (float64 or complex128). Everything
here uses the conjugate transpose, so the complex case needs no extra code.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NumericalError, ValidationError

__all__ = [
    "PinvOptions",
    "as_matrix",
    "conj_transpose",
    "matmul",
    "frobenius_norm",
    "pinv",
    "truncated_svd",
    "penrose_check",
]

EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class PinvOptions:
    """Rank truncation rule for pseudo-inverses.

    Parameters
    ----------
    rank_tolerance : float or None
        Absolute cutoff; singular values ``<=`` it are treated as zero.
        ``None`` means automatic: ``max(rows, cols) * eps * sigma_max``.
    """

    rank_tolerance: Optional[float] = None

    def __post_init__(self):
        tol = self.rank_tolerance
        if tol is not None and not (np.isfinite(tol) and tol >= 0):
            raise ValidationError(f"rank_tolerance must be a nonnegative number, got {tol!r}")

    def resolve(self, shape, sigma_max):
        if self.rank_tolerance is not None:
            return float(self.rank_tolerance)
        return max(shape) * EPS * float(sigma_max)


AUTOMATIC = PinvOptions()


def as_matrix(x, name="matrix"):
    """Validate external input and return it as a 2-D float or complex array."""
    a = np.asarray(x)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValidationError(f"{name} must be 2-D, got {a.ndim} dimensions")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValidationError(f"{name} must be non-empty, got shape {a.shape}")
    if np.iscomplexobj(a):
        a = a.astype(np.complex128, copy=False)
    else:
        try:
            a = a.astype(np.float64, copy=False)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"{name} has non-numeric entries") from exc
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{name} contains NaN or Inf")
    return a


def conj_transpose(m):
    return np.conj(m).T if np.iscomplexobj(m) else m.T


def matmul(a, b):
    """Matrix product with a shape check.

    numpy dispatches to BLAS, whose summation order is fixed for a given
    build and thread count, so repeated calls are bit-reproducible.
    """
    if a.shape[1] != b.shape[0]:
        raise ValidationError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def frobenius_norm(m):
    return float(np.linalg.norm(m))


def truncated_svd(m, opts=None, scale=None):
    """Thin SVD of ``m`` keeping only singular values above the cutoff.

    Parameters
    ----------
    m : ndarray
    opts : PinvOptions, optional
    scale : float, optional
        Reference magnitude for the automatic cutoff. When given, the
        cutoff is ``max(rows, cols) * eps * max(sigma_max, scale)``; used
        by the block reductions, whose blocks can collapse to rounding
        noise that must be measured against the original matrix.

    Returns
    -------
    u, s, vh : ndarray
        ``u @ diag(s) @ vh`` is the rank-truncated part of ``m``.
    """
    opts = opts or AUTOMATIC
    if m.size == 0:
        r, c = m.shape
        return np.zeros((r, 0), m.dtype), np.zeros(0), np.zeros((0, c), m.dtype)
    try:
        u, s, vh = np.linalg.svd(m, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed for {m.shape} matrix: {exc}") from exc
    smax = s[0] if s.size else 0.0
    if scale is not None:
        smax = max(smax, scale)
    tol = opts.resolve(m.shape, smax)
    k = int(np.count_nonzero(s > tol))
    return u[:, :k], s[:k], vh[:k]


def pinv(m, opts=None, *, scale=None):
    """Moore-Penrose pseudo-inverse from the thin SVD.

    Works for any shape and rank; the pinv of a zero matrix is the zero
    matrix of transposed shape.
    """
    u, s, vh = truncated_svd(m, opts, scale)
    return (conj_transpose(vh) / s) @ conj_transpose(u)


def penrose_check(m, p, tol):
    """True iff ``p`` satisfies all four Penrose conditions for ``m``.

    Each residual is compared against ``tol * (1 + ||m||_F)``.
    """
    if p.shape != m.shape[::-1]:
        raise ValidationError(f"pinv candidate shape {p.shape} does not match {m.shape[::-1]}")
    bound = tol * (1.0 + frobenius_norm(m))
    mp = m @ p
    pm = p @ m
    residuals = (
        frobenius_norm(mp @ m - m),
        frobenius_norm(pm @ p - p),
        frobenius_norm(conj_transpose(mp) - mp),
        frobenius_norm(conj_transpose(pm) - pm),
    )
    return all(r <= bound for r in residuals)
