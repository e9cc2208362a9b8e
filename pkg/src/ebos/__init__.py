"""Optimal approximation of a matrix by ``B X C`` through elementary block reductions."""

from .errors import NumericalError, OrthogonalityError, ValidationError
from .flops import (
    FlopReport,
    flop_report,
    flops_direct,
    flops_n1,
    flops_n2,
    flops_n2_summation,
    flops_n3,
    table1_report,
)
from .linalg import (
    PinvOptions,
    as_matrix,
    conj_transpose,
    frobenius_norm,
    matmul,
    penrose_check,
    pinv,
)
from .matio import read_matrix, write_matrix
from .partition import BlockGrid, ColPartition, RowPartition, assemble_B, assemble_C, split_X
from .reduction import (
    ColReduction,
    ConditionReport,
    RowReduction,
    accumulate_F_optimized,
    block_pinv_condition,
    reduce_cols,
    reduce_rows,
)
from .solver import (
    SolveResult,
    direct_solve,
    ebos_solve,
    exactness_check,
    independent_solve,
    reconstruct,
    solve_X,
    solve_Y,
)

__version__ = "0.1.0"
