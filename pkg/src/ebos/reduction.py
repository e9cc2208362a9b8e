"""Elementary block row/column reductions.

``reduce_rows`` turns a row-partitioned ``C`` into ``FC`` whose row blocks
are mutually orthogonal, so that ``FC (FC)^*`` is block diagonal and the
pseudo-inverse of ``FC`` is the concatenation of the block pseudo-inverses.
``reduce_cols`` does the same for the column blocks of ``B`` by right
multiplication with a block unit-upper-triangular ``E``.

Each stage needs the pseudo-inverse of one small block only. The trailing
blocks are updated as ``M - (M P^+) P`` so the ``n x n`` projector
``I - P^+ P`` is never formed; the product ``-M P^+`` is the stage's
multiplier block and is kept, since it is exactly the nonzero block of the
elementary factor ``F_r``.
"""

from dataclasses import dataclass, field
from typing import List

import numpy as np

from .errors import ValidationError
from .linalg import (
    AUTOMATIC,
    PinvOptions,
    conj_transpose,
    frobenius_norm,
    pinv,
    truncated_svd,
)
from .partition import (
    ColPartition,
    Partition,
    RowPartition,
    check_col_partition,
    check_row_partition,
)

__all__ = [
    "RowReduction",
    "ColReduction",
    "ConditionReport",
    "reduce_rows",
    "reduce_cols",
    "accumulate_F_optimized",
    "accumulate_F_naive",
    "block_pinv_condition",
    "block_diag",
]


def block_diag(blocks):
    """Assemble square blocks into a block-diagonal matrix."""
    n = sum(b.shape[0] for b in blocks)
    dtype = np.result_type(*blocks) if blocks else np.float64
    out = np.zeros((n, n), dtype=dtype)
    k = 0
    for b in blocks:
        s = b.shape[0]
        out[k:k + s, k:k + s] = b
        k += s
    return out


def _elementary_lower(h, offsets, r, mult, dtype):
    f = np.eye(h, dtype=dtype)
    f[offsets[r + 1]:, offsets[r]:offsets[r + 1]] = mult
    return f


@dataclass(frozen=True, eq=False)
class RowReduction:
    """Result of ``reduce_rows``.

    Attributes
    ----------
    c_reduced : ndarray
        ``C^(q-1) = F C``, rows blocks mutually orthogonal.
    f : ndarray
        ``F = F_{q-1} ... F_1``, block unit-lower-triangular.
    d_blocks, d_pinv_blocks : list of ndarray
        Diagonal Grammian blocks ``C_r^(r-1) [C_r^(r-1)]^*`` and their
        pseudo-inverses.
    block_pinvs : list of ndarray
        ``[C_r^(r-1)]^+`` for every block (``n x h_r``).
    multipliers : list of ndarray
        ``-C_{r+1,c}^(r-1) [C_r^(r-1)]^+``, the off-diagonal block of each
        elementary factor ``F_r``.
    partition : RowPartition
    """

    c_reduced: np.ndarray
    f: np.ndarray
    d_blocks: List[np.ndarray]
    d_pinv_blocks: List[np.ndarray]
    block_pinvs: List[np.ndarray]
    multipliers: List[np.ndarray]
    partition: RowPartition = field(repr=False)

    @property
    def f_factors(self):
        """Dense elementary factors ``[F_1, ..., F_{q-1}]`` in stage order."""
        h = self.partition.total
        off = self.partition.offsets
        return [
            _elementary_lower(h, off, r, mult, self.f.dtype)
            for r, mult in enumerate(self.multipliers)
        ]

    @property
    def d(self):
        return block_diag(self.d_blocks)

    @property
    def d_pinv(self):
        return block_diag(self.d_pinv_blocks)

    def reduced_pinv(self):
        """``[C^(q-1)]^+`` assembled from the block pseudo-inverses."""
        return np.hstack(self.block_pinvs)

    def apply_f_right(self, z):
        """Return ``z @ F`` using the elementary factors."""
        z = np.array(z, dtype=np.result_type(z, self.f), copy=True)
        off = self.partition.offsets
        for r in reversed(range(len(self.multipliers))):
            a, b = off[r], off[r + 1]
            z[:, a:b] += z[:, b:] @ self.multipliers[r]
        return z

    def solve_f(self, w):
        """Solve ``F z = w`` by block forward substitution."""
        z = np.array(w, dtype=np.result_type(w, self.f), copy=True)
        sl = self.partition.slices()
        for i, si in enumerate(sl):
            for sj in sl[:i]:
                z[si] -= self.f[si, sj] @ z[sj]
        return z


@dataclass(frozen=True, eq=False)
class ColReduction:
    """Result of ``reduce_cols``; the column-side mirror of ``RowReduction``.

    ``b_reduced = B E`` with ``E = E_1 ... E_{p-1}`` block
    unit-upper-triangular; ``multipliers[r]`` is ``-[B_r]^+ B_{r+1,c}``.
    """

    b_reduced: np.ndarray
    e: np.ndarray
    d_blocks: List[np.ndarray]
    d_pinv_blocks: List[np.ndarray]
    block_pinvs: List[np.ndarray]
    multipliers: List[np.ndarray]
    partition: ColPartition = field(repr=False)

    @property
    def e_factors(self):
        g = self.partition.total
        off = self.partition.offsets
        return [
            conj_transpose(_elementary_lower(g, off, r, conj_transpose(mult), self.e.dtype))
            for r, mult in enumerate(self.multipliers)
        ]

    @property
    def d(self):
        return block_diag(self.d_blocks)

    @property
    def d_pinv(self):
        return block_diag(self.d_pinv_blocks)

    def reduced_pinv(self):
        """``[B^(p-1)]^+`` assembled from the block pseudo-inverses."""
        return np.vstack(self.block_pinvs)

    def apply_e_left(self, w):
        """Return ``E @ w`` using the elementary factors."""
        w = np.array(w, dtype=np.result_type(w, self.e), copy=True)
        off = self.partition.offsets
        for r in reversed(range(len(self.multipliers))):
            a, b = off[r], off[r + 1]
            w[a:b] += self.multipliers[r] @ w[b:]
        return w


def _accumulate(multipliers, partition, dtype):
    # Q_r = F_r Q_{r-1} only changes rows below block r and columns up to
    # block r; block column r of Q_{r-1} is the unit column, so the update
    # also drops the multiplier into place.
    h = partition.total
    off = partition.offsets
    q = np.eye(h, dtype=dtype)
    for r, mult in enumerate(multipliers):
        a, b = off[r], off[r + 1]
        q[b:, :b] += mult @ q[a:b, :b]
    return q


def _reduce_stack(c, partition, opts):
    """Row reduction of ``c``; shared by both public reductions."""
    work = np.array(c, copy=True)
    slices = partition.slices()
    # Reduced blocks can collapse to rounding noise when a block depends
    # on earlier ones; judge their rank against the scale of the whole stack.
    scale = frobenius_norm(c) if opts.rank_tolerance is None else None
    block_pinvs, multipliers, grams, gram_pinvs = [], [], [], []
    for r, sr in enumerate(slices):
        blk = work[sr]
        u, s, vh = truncated_svd(blk, opts, scale)
        uh = conj_transpose(u)
        p = (conj_transpose(vh) / s) @ uh
        block_pinvs.append(p)
        grams.append(blk @ conj_transpose(blk))
        gram_pinvs.append((u / s**2) @ uh)
        if r < len(slices) - 1:
            trail = work[sr.stop:]
            mult = -(trail @ p)
            trail += mult @ blk
            multipliers.append(mult)
    f = _accumulate(multipliers, partition, work.dtype)
    return work, f, grams, gram_pinvs, block_pinvs, multipliers


def reduce_rows(c, rp, opts=None):
    """Reduce the row blocks of ``c`` to mutually orthogonal blocks.

    Parameters
    ----------
    c : ndarray, shape (h, n)
    rp : RowPartition
        Row-block sizes; must sum to ``h``.
    opts : PinvOptions, optional
        Rank truncation for the block pseudo-inverses. With the automatic
        rule the cutoff of every block is measured against ``||C||_F``.

    Returns
    -------
    RowReduction
    """
    opts = opts or AUTOMATIC
    rp = rp if isinstance(rp, Partition) else RowPartition(tuple(rp))
    check_row_partition(c, rp)
    work, f, grams, gram_pinvs, block_pinvs, multipliers = _reduce_stack(c, rp, opts)
    return RowReduction(
        c_reduced=work,
        f=f,
        d_blocks=grams,
        d_pinv_blocks=gram_pinvs,
        block_pinvs=block_pinvs,
        multipliers=multipliers,
        partition=RowPartition(rp.sizes),
    )


def reduce_cols(b, cp, opts=None):
    """Reduce the column blocks of ``b``; the conjugate-transposed row reduction."""
    opts = opts or AUTOMATIC
    cp = cp if isinstance(cp, Partition) else ColPartition(tuple(cp))
    check_col_partition(b, cp)
    work, f, grams, gram_pinvs, block_pinvs, multipliers = _reduce_stack(
        conj_transpose(b), cp, opts
    )
    ct = lambda m: np.ascontiguousarray(conj_transpose(m))  # noqa: E731
    return ColReduction(
        b_reduced=ct(work),
        e=ct(f),
        d_blocks=grams,
        d_pinv_blocks=gram_pinvs,
        block_pinvs=[ct(p) for p in block_pinvs],
        multipliers=[ct(m) for m in multipliers],
        partition=ColPartition(cp.sizes),
    )


def accumulate_F_naive(factors):
    """``F_{q-1} ... F_1`` by full dense products (reference path)."""
    f = np.eye(factors[0].shape[0], dtype=factors[0].dtype)
    for fr in factors:
        f = fr @ f
    return f


def accumulate_F_optimized(factors, rp):
    """Accumulate ``F = F_{q-1} ... F_1`` touching only the changing sub-blocks.

    ``factors`` are the dense elementary factors in stage order (as given
    by ``RowReduction.f_factors``).
    """
    rp = rp if isinstance(rp, Partition) else RowPartition(tuple(rp))
    h = rp.total
    if len(factors) != rp.count - 1:
        raise ValidationError(f"expected {rp.count - 1} factors for {rp.count} blocks, got {len(factors)}")
    off = rp.offsets
    mults = []
    for r, fr in enumerate(factors):
        if fr.shape != (h, h):
            raise ValidationError(f"factor {r + 1} has shape {fr.shape}, expected {(h, h)}")
        mults.append(fr[off[r + 1]:, off[r]:off[r + 1]])
    dtype = np.result_type(*factors) if factors else np.float64
    return _accumulate(mults, rp, dtype)


@dataclass(frozen=True)
class ConditionReport:
    """Whether ``[R1^+ | R2^+]`` is the pseudo-inverse of ``[R1; R2]``.

    ``rsr_residual`` is ``||R S R - R||_F`` and ``max_abs_defect`` its
    largest entry; ``range_nullspace_residual`` is ``||R2 R1^+||_F``, which
    vanishes exactly when the row space of ``R1`` lies in the null space of
    ``R2``.
    """

    holds: bool
    rsr_residual: float
    range_nullspace_residual: float
    max_abs_defect: float


def block_pinv_condition(r1, r2, tol=1e-8, opts=None):
    if r1.shape[1] != r2.shape[1]:
        raise ValidationError(f"R1 has {r1.shape[1]} columns but R2 has {r2.shape[1]}")
    r = np.vstack([r1, r2])
    p1 = pinv(r1, opts)
    s = np.hstack([p1, pinv(r2, opts)])
    defect = r @ s @ r - r
    rsr = frobenius_norm(defect)
    return ConditionReport(
        holds=bool(rsr <= tol * (1.0 + frobenius_norm(r))),
        rsr_residual=rsr,
        range_nullspace_residual=frobenius_norm(r2 @ p1),
        max_abs_defect=float(np.max(np.abs(defect))),
    )
