"""Solvers for ``min_X ||A - B X C||_F``.

Three routes are offered:

``ebos_solve``
    block reductions of ``C`` and ``B``; only small block pseudo-inverses.
``direct_solve``
    the minimum-norm kernel ``B^+ A C^+`` from two full pseudo-inverses.
``independent_solve``
    ``X_ij = B_i^+ A C_j^+`` blockwise, valid only when the blocks of ``B``
    have mutually orthogonal ranges and those of ``C`` mutually orthogonal
    row spaces.

The kernels returned by the first two generally differ, but the
reconstructions ``B X C`` coincide.
"""

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import NumericalError, OrthogonalityError, ValidationError
from .linalg import AUTOMATIC, as_matrix, conj_transpose, frobenius_norm, pinv
from .partition import BlockGrid, ColPartition, Partition, RowPartition, assemble_B, assemble_C
from .reduction import ColReduction, RowReduction, reduce_cols, reduce_rows

__all__ = [
    "SolveResult",
    "solve_Y",
    "solve_X",
    "ebos_solve",
    "direct_solve",
    "independent_solve",
    "reconstruct",
    "residual",
    "normal_equation_defect",
    "exactness_check",
]

Method = Literal["ebos", "direct", "independent"]


@dataclass(frozen=True, eq=False)
class SolveResult:
    """Kernel ``x_plus``, intermediate ``y_plus`` and ``||A - B X C||_F``."""

    x_plus: np.ndarray
    y_plus: np.ndarray
    residual: float
    method: Method


def _check_problem(a, b, c):
    m, n = a.shape
    if b.shape[0] != m:
        raise ValidationError(f"B has {b.shape[0]} rows but A has {m}")
    if c.shape[1] != n:
        raise ValidationError(f"C has {c.shape[1]} columns but A has {n}")


def reconstruct(b, x, c):
    if b.shape[1] != x.shape[0] or x.shape[1] != c.shape[0]:
        raise ValidationError(f"cannot form B X C from {b.shape}, {x.shape}, {c.shape}")
    return b @ x @ c


def residual(a, b, x, c):
    return frobenius_norm(a - reconstruct(b, x, c))


def normal_equation_defect(a, b, c, x):
    """``||B^* B X C C^* - B^* A C^*||_F``."""
    bh, ch = conj_transpose(b), conj_transpose(c)
    return frobenius_norm(bh @ (b @ x @ c - a) @ ch)


def solve_Y(a, rr: RowReduction):
    """Solve ``Y C C^* = A C^*`` from a row reduction of ``C``.

    Returns ``Y = A [C^(q-1)]^+ F``; the pseudo-inverse of the reduced
    stack is the concatenation of the block pseudo-inverses, and ``F`` is
    applied through its elementary factors.
    """
    if a.shape[1] != rr.c_reduced.shape[1]:
        raise ValidationError(f"A has {a.shape[1]} columns but C has {rr.c_reduced.shape[1]}")
    z0 = a @ rr.reduced_pinv()
    return rr.apply_f_right(z0)


def solve_X(cr: ColReduction, y):
    """Solve ``B^* B X = B^* Y`` from a column reduction of ``B``: ``X = E [B^(p-1)]^+ Y``."""
    if y.shape[0] != cr.b_reduced.shape[0]:
        raise ValidationError(f"Y has {y.shape[0]} rows but B has {cr.b_reduced.shape[0]}")
    w0 = cr.reduced_pinv() @ y
    return cr.apply_e_left(w0)


def _staged(stage, fn, *args):
    try:
        return fn(*args)
    except NumericalError as exc:
        raise NumericalError(str(exc), stage=stage) from exc


def ebos_solve(a, b, c, cp, rp, opts=None):
    """Optimal kernel via block reductions.

    Rows of ``C`` are reduced first and ``Y`` solved, then the columns of
    ``B`` are reduced and ``X`` solved. The returned ``x_plus`` satisfies
    ``B^* B X C C^* = B^* A C^*``.

    Parameters
    ----------
    a : ndarray, shape (m, n)
    b : ndarray, shape (m, g)
    c : ndarray, shape (h, n)
    cp : ColPartition or sequence of int
        Column-block sizes of ``b``.
    rp : RowPartition or sequence of int
        Row-block sizes of ``c``.
    opts : PinvOptions, optional

    Returns
    -------
    SolveResult
    """
    opts = opts or AUTOMATIC
    _check_problem(a, b, c)
    cp = cp if isinstance(cp, Partition) else ColPartition(tuple(cp))
    rp = rp if isinstance(rp, Partition) else RowPartition(tuple(rp))
    rr = _staged("reduce_rows", reduce_rows, c, rp, opts)
    y = _staged("solve_Y", solve_Y, a, rr)
    cr = _staged("reduce_cols", reduce_cols, b, cp, opts)
    x = _staged("solve_X", solve_X, cr, y)
    return SolveResult(x, y, residual(a, b, x, c), "ebos")


def direct_solve(a, b, c, opts=None):
    """Minimum-norm kernel ``B^+ A C^+``; ``y_plus`` holds ``A C^+``."""
    _check_problem(a, b, c)
    cp = _staged("pinv(C)", pinv, c, opts)
    bp = _staged("pinv(B)", pinv, b, opts)
    y0 = a @ cp
    x0 = bp @ y0
    return SolveResult(x0, y0, residual(a, b, x0, c), "direct")


def _check_orthogonal(blocks, side, tol, gram):
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            norm = frobenius_norm(gram(blocks[i], blocks[j]))
            bound = tol * frobenius_norm(blocks[i]) * frobenius_norm(blocks[j])
            if norm > bound:
                raise OrthogonalityError(side, (i, j), norm, bound)


def independent_solve(a, b_blocks, c_blocks, opts=None, tol=1e-10):
    """Blockwise kernel ``X_ij = B_i^+ A C_j^+`` for mutually orthogonal blocks.

    Orthogonality is verified first: ``||B_i^* B_j||_F`` and
    ``||C_i C_j^*||_F`` must not exceed ``tol`` times the product of the
    two blocks' norms, otherwise ``OrthogonalityError`` names the pair.
    """
    b, cp = assemble_B(b_blocks)
    c, rp = assemble_C(c_blocks)
    a = as_matrix(a, "A")
    _check_problem(a, b, c)
    bs = [b[:, s] for s in cp.slices()]
    cs = [c[s] for s in rp.slices()]
    _check_orthogonal(bs, "B", tol, lambda x, y: conj_transpose(x) @ y)
    _check_orthogonal(cs, "C", tol, lambda x, y: x @ conj_transpose(y))
    left = [_staged("pinv(B_i)", pinv, bi, opts) @ a for bi in bs]
    right = [_staged("pinv(C_j)", pinv, cj, opts) for cj in cs]
    grid = [[li @ rj for rj in right] for li in left]
    return BlockGrid(grid, cp, rp)


def exactness_check(a, b, c, result, x_vec):
    """``||B X C x - A x||_2`` for the kernel in ``result``.

    Zero (to rounding) whenever ``x`` lies in the row space of ``C`` and
    ``A x`` lies in the range of ``B``; outside that case the value is
    just the observed gap.
    """
    x_vec = np.asarray(x_vec).reshape(-1, 1)
    if x_vec.shape[0] != c.shape[1]:
        raise ValidationError(f"x has {x_vec.shape[0]} entries, expected {c.shape[1]}")
    got = b @ (result.x_plus @ (c @ x_vec))
    return float(np.linalg.norm(got - a @ x_vec))
