"""Block partitions of B (column blocks) and C (row blocks)."""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import ValidationError
from .linalg import as_matrix

__all__ = [
    "Partition",
    "ColPartition",
    "RowPartition",
    "BlockGrid",
    "parse_partition",
    "assemble_B",
    "assemble_C",
    "split_X",
]


@dataclass(frozen=True)
class Partition:
    """Ordered list of positive block sizes."""

    sizes: Tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(self.sizes)
        if not sizes:
            raise ValidationError("partition must contain at least one block")
        for s in sizes:
            if isinstance(s, bool) or int(s) != s or s < 1:
                raise ValidationError(f"block sizes must be positive integers, got {sizes}")
        object.__setattr__(self, "sizes", tuple(int(s) for s in sizes))

    @classmethod
    def uniform(cls, count, size):
        return cls((size,) * count)

    @property
    def total(self):
        return sum(self.sizes)

    @property
    def count(self):
        return len(self.sizes)

    @property
    def offsets(self):
        """Block boundaries ``[0, s1, s1+s2, ..., total]``."""
        return np.concatenate(([0], np.cumsum(self.sizes))).astype(int).tolist()

    def slices(self):
        off = self.offsets
        return [slice(off[i], off[i + 1]) for i in range(self.count)]

    def __len__(self):
        return self.count

    def __str__(self):
        return ",".join(map(str, self.sizes))


class ColPartition(Partition):
    """Column-block sizes ``(g_1, ..., g_p)`` of B."""


class RowPartition(Partition):
    """Row-block sizes ``(h_1, ..., h_q)`` of C."""


def parse_partition(text, cls=Partition):
    """Parse CLI syntax such as ``"2,2,3"``."""
    try:
        sizes = [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ValidationError(f"invalid partition {text!r}: expected comma-separated integers") from exc
    return cls(tuple(sizes))


@dataclass(frozen=True)
class BlockGrid:
    """A ``p x q`` grid of kernel blocks ``X_ij`` of shape ``g_i x h_j``."""

    blocks: List[List[np.ndarray]]
    col_partition: ColPartition
    row_partition: RowPartition

    def __post_init__(self):
        cp, rp = self.col_partition, self.row_partition
        if len(self.blocks) != cp.count or any(len(row) != rp.count for row in self.blocks):
            raise ValidationError("grid shape does not match partitions")
        for i, g in enumerate(cp.sizes):
            for j, h in enumerate(rp.sizes):
                if self.blocks[i][j].shape != (g, h):
                    raise ValidationError(
                        f"block ({i}, {j}) has shape {self.blocks[i][j].shape}, expected {(g, h)}"
                    )

    def __getitem__(self, ij):
        i, j = ij
        return self.blocks[i][j]

    @property
    def shape(self):
        return self.col_partition.count, self.row_partition.count

    def assemble(self):
        return np.block(self.blocks)


def assemble_B(blocks):
    """Concatenate column blocks ``[B_1 ... B_p]``; returns ``(B, ColPartition)``."""
    if not blocks:
        raise ValidationError("need at least one B block")
    mats = [as_matrix(b, f"B_{i + 1}") for i, b in enumerate(blocks)]
    m = mats[0].shape[0]
    for i, b in enumerate(mats):
        if b.shape[0] != m:
            raise ValidationError(f"B_{i + 1} has {b.shape[0]} rows, expected {m}")
    return np.hstack(mats), ColPartition(tuple(b.shape[1] for b in mats))


def assemble_C(blocks):
    """Stack row blocks ``[C_1; ...; C_q]``; returns ``(C, RowPartition)``."""
    if not blocks:
        raise ValidationError("need at least one C block")
    mats = [as_matrix(c, f"C_{j + 1}") for j, c in enumerate(blocks)]
    n = mats[0].shape[1]
    for j, c in enumerate(mats):
        if c.shape[1] != n:
            raise ValidationError(f"C_{j + 1} has {c.shape[1]} columns, expected {n}")
    return np.vstack(mats), RowPartition(tuple(c.shape[0] for c in mats))


def split_X(x, cp, rp):
    """Cut a ``g x h`` kernel into its ``X_ij`` blocks."""
    if x.shape != (cp.total, rp.total):
        raise ValidationError(f"X has shape {x.shape}, partitions require {(cp.total, rp.total)}")
    blocks = [[x[rs, cs].copy() for cs in rp.slices()] for rs in cp.slices()]
    return BlockGrid(blocks, ColPartition(cp.sizes), RowPartition(rp.sizes))


def check_col_partition(b, cp):
    if cp.total != b.shape[1]:
        raise ValidationError(f"column partition {cp} sums to {cp.total}, B has {b.shape[1]} columns")


def check_row_partition(c, rp):
    if rp.total != c.shape[0]:
        raise ValidationError(f"row partition {rp} sums to {rp.total}, C has {c.shape[0]} rows")
