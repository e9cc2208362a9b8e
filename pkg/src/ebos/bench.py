"""Timing comparison of the block-reduction and direct solvers.

Instances are built as ``A = rand(m, q*dh) @ rand(q*dh, n)`` and
``C = rand(q*dh, n)`` with entries uniform on ``[0, 1)`` from a seeded
PCG64 stream, so a seed and a config pin down the numbers exactly.
Timings are medians over ``trials`` runs after one untimed warm-up, with
BLAS limited to one thread.
"""

import csv
import io
import json
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Literal, Optional

import numpy as np
from threadpoolctl import threadpool_limits

from .errors import ValidationError
from .linalg import frobenius_norm, pinv
from .partition import ColPartition, RowPartition
from .reduction import reduce_rows
from .solver import direct_solve, ebos_solve, normal_equation_defect, reconstruct, solve_Y

__all__ = [
    "BenchConfig",
    "BenchRecord",
    "gen_instance",
    "gen_B",
    "bench_y_equation",
    "bench_full",
    "records_to_csv",
    "records_to_json",
    "random_problem",
    "verify_random",
]

CSV_COLUMNS = [
    "m", "n", "dh", "q",
    "t_direct_s", "t_ebos_s", "ratio",
    "residual_direct", "residual_ebos",
]


@dataclass(frozen=True)
class BenchConfig:
    m: int
    n: int
    q: int
    dh: int
    trials: int = 3
    seed: int = 0
    mode: Literal["y-equation", "full-solve", "flops", "verify"] = "y-equation"
    output_format: Literal["csv", "json"] = "csv"
    # column blocks of B for full-solve; default to the C layout
    p: Optional[int] = None
    dg: Optional[int] = None

    def __post_init__(self):
        for name in ("m", "n", "q", "dh", "trials"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValidationError(f"{name} must be a positive integer, got {v!r}")
        for name in ("p", "dg"):
            v = getattr(self, name)
            if v is not None and (int(v) != v or v < 1):
                raise ValidationError(f"{name} must be a positive integer, got {v!r}")
        if not 0 <= self.seed < 2**64:
            raise ValidationError(f"seed must fit in 64 bits, got {self.seed}")

    @property
    def h(self):
        return self.q * self.dh

    @property
    def row_partition(self):
        return RowPartition.uniform(self.q, self.dh)

    @property
    def col_partition(self):
        return ColPartition.uniform(self.p or self.q, self.dg or self.dh)


@dataclass
class BenchRecord:
    m: int
    n: int
    dh: int
    q: int
    t_direct: float
    t_ebos: float
    residual_direct: float
    residual_ebos: float
    max_abs_defect: float
    max_abs_defect_direct: float
    mode: str = "y-equation"
    trials: int = 1
    reconstruction_diff: Optional[float] = None
    passed: Optional[bool] = None
    extra: dict = field(default_factory=dict)

    @property
    def ratio(self):
        return self.t_ebos / self.t_direct if self.t_direct > 0 else float("inf")

    def as_dict(self):
        d = asdict(self)
        d["ratio"] = self.ratio
        return d


def _rng(seed, stream=0):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,))))


def gen_instance(cfg):
    """Return ``(A, C)``; ``A`` has rank at most ``q*dh``."""
    rng = _rng(cfg.seed)
    h = cfg.h
    a = rng.random((cfg.m, h)) @ rng.random((h, cfg.n))
    c = rng.random((h, cfg.n))
    return a, c


def gen_B(cfg):
    """Uniform ``m x g`` matrix for full-solve runs, on its own stream."""
    return _rng(cfg.seed, stream=1).random((cfg.m, cfg.col_partition.total))


def _time(fn, trials):
    fn()  # warm-up, never timed
    times, out = [], None
    for _ in range(trials):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def bench_y_equation(cfg):
    """Time ``Y C C^* = A C^*``: ``A @ pinv(C)`` against reduction + block solve."""
    a, c = gen_instance(cfg)
    rp = cfg.row_partition

    def direct():
        return a @ pinv(c)

    def ebos():
        return solve_Y(a, reduce_rows(c, rp))

    with threadpool_limits(limits=1):
        t_d, y_d = _time(direct, cfg.trials)
        t_e, y_e = _time(ebos, cfg.trials)
    e_d = y_d @ c - a
    e_e = y_e @ c - a
    return BenchRecord(
        m=cfg.m, n=cfg.n, dh=cfg.dh, q=cfg.q,
        t_direct=t_d, t_ebos=t_e,
        residual_direct=frobenius_norm(e_d),
        residual_ebos=frobenius_norm(e_e),
        max_abs_defect=float(np.max(np.abs(e_e))),
        max_abs_defect_direct=float(np.max(np.abs(e_d))),
        mode="y-equation",
        trials=cfg.trials,
    )


def bench_full(cfg, rec_tol=1e-9):
    """Time the complete ``X`` solve; ``passed`` compares the two reconstructions."""
    a, c = gen_instance(cfg)
    b = gen_B(cfg)
    cp, rp = cfg.col_partition, cfg.row_partition

    with threadpool_limits(limits=1):
        t_d, r_d = _time(lambda: direct_solve(a, b, c), cfg.trials)
        t_e, r_e = _time(lambda: ebos_solve(a, b, c, cp, rp), cfg.trials)
    rec_d = reconstruct(b, r_d.x_plus, c)
    rec_e = reconstruct(b, r_e.x_plus, c)
    diff = frobenius_norm(rec_e - rec_d)
    return BenchRecord(
        m=cfg.m, n=cfg.n, dh=cfg.dh, q=cfg.q,
        t_direct=t_d, t_ebos=t_e,
        residual_direct=r_d.residual,
        residual_ebos=r_e.residual,
        max_abs_defect=float(np.max(np.abs(rec_e - a))),
        max_abs_defect_direct=float(np.max(np.abs(rec_d - a))),
        mode="full-solve",
        trials=cfg.trials,
        reconstruction_diff=diff,
        passed=bool(diff <= rec_tol * (1 + frobenius_norm(a))),
        extra={"p": cp.count, "dg": cp.sizes[0]},
    )


def records_to_csv(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([
            r.m, r.n, r.dh, r.q,
            f"{r.t_direct:.6f}", f"{r.t_ebos:.6f}", f"{r.ratio:.4f}",
            f"{r.residual_direct:.6e}", f"{r.residual_ebos:.6e}",
        ])
    return buf.getvalue()


def records_to_json(records):
    return json.dumps([r.as_dict() for r in records], indent=2)


def _random_sizes(rng, count, lo=1, hi=4):
    return tuple(int(s) for s in rng.integers(lo, hi + 1, size=count))


def _dependent_block(rng, earlier, rows_or_cols, axis):
    # A block mixing earlier blocks with one fresh direction, so that it is
    # partly or wholly in the span of its predecessors.
    if axis == 0:
        base = np.vstack(earlier)
        mixed = rng.standard_normal((rows_or_cols, base.shape[0])) @ base
        if rows_or_cols > 1:
            mixed[-1] = rng.standard_normal(base.shape[1])
        return mixed
    base = np.hstack(earlier)
    mixed = base @ rng.standard_normal((base.shape[1], rows_or_cols))
    if rows_or_cols > 1:
        mixed[:, -1] = rng.standard_normal(base.shape[0])
    return mixed


def random_problem(rng, deficient=False, m_range=(10, 60), n_range=(10, 60), pq_range=(1, 4)):
    """Random ``(A, B, C, cp, rp)`` for property checks.

    With ``deficient`` some later blocks of ``B`` and ``C`` are built from
    earlier ones, and ``A`` may be low rank.
    """
    m = int(rng.integers(m_range[0], m_range[1] + 1))
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    p = int(rng.integers(pq_range[0], pq_range[1] + 1))
    q = int(rng.integers(pq_range[0], pq_range[1] + 1))
    gs = _random_sizes(rng, p)
    hs = _random_sizes(rng, q)
    b_blocks, c_blocks = [], []
    for i, g in enumerate(gs):
        if deficient and i > 0 and rng.random() < 0.5:
            b_blocks.append(_dependent_block(rng, b_blocks, g, axis=1))
        else:
            b_blocks.append(rng.standard_normal((m, g)))
    for j, h in enumerate(hs):
        if deficient and j > 0 and rng.random() < 0.5:
            c_blocks.append(_dependent_block(rng, c_blocks, h, axis=0))
        else:
            c_blocks.append(rng.standard_normal((h, n)))
    if deficient and rng.random() < 0.5:
        k = int(rng.integers(1, min(m, n) // 2 + 1))
        a = rng.standard_normal((m, k)) @ rng.standard_normal((k, n))
    else:
        a = rng.standard_normal((m, n))
    return a, np.hstack(b_blocks), np.vstack(c_blocks), ColPartition(gs), RowPartition(hs)


def verify_random(instances, seed=0):
    """Solve random instances both ways; one dict of defects per instance."""
    rng = _rng(seed, stream=2)
    out = []
    for k in range(instances):
        a, b, c, cp, rp = random_problem(rng, deficient=bool(k % 2))
        e = ebos_solve(a, b, c, cp, rp)
        d = direct_solve(a, b, c)
        na, nb, nc = frobenius_norm(a), frobenius_norm(b), frobenius_norm(c)
        rec = frobenius_norm(reconstruct(b, e.x_plus, c) - reconstruct(b, d.x_plus, c))
        ne = normal_equation_defect(a, b, c, e.x_plus)
        gap = frobenius_norm(d.x_plus) - frobenius_norm(e.x_plus)
        out.append({
            "instance": k,
            "shape": [a.shape[0], a.shape[1], cp.total, rp.total],
            "reconstruction_diff": rec,
            "normal_defect": ne,
            "min_norm_gap": gap,
            "passed": bool(
                rec <= 1e-8 * (1 + na)
                and ne <= 1e-7 * (1 + na * nb**2 * nc**2)
                and gap <= 1e-9
            ),
        })
    return out
