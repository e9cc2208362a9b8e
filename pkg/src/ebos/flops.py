"""Analytic flop counts for solving ``Y C C^* = A C^*``.

Block reduction (``N = N1 + N2 + N3``) is compared with the direct
``Y0 = A C^+`` route (``F``). ``C`` is ``h x n`` with ``q`` equal blocks
of ``h/q`` rows and ``A`` is ``m x n``. The counts follow the textbook
accounting of each dense step (including the explicit ``n x n`` projector
that the solver itself avoids); they model the method, not this
implementation's instruction stream.

Counts are floats: ``n**3`` overflows int64 long before it stops being
interesting.
"""

import csv
import io
from dataclasses import asdict, dataclass

from .errors import ValidationError

__all__ = [
    "FlopReport",
    "flops_n1",
    "flops_n2",
    "flops_n2_summation",
    "flops_n3",
    "flops_direct",
    "flop_report",
    "table1_report",
    "table1_csv",
    "TABLE1_EPS",
    "TABLE1_Q",
]

TABLE1_EPS = (1.0, 0.75, 0.5, 0.25)
TABLE1_Q = (2, 3, 5, 10)


@dataclass(frozen=True)
class FlopReport:
    n1: float
    n2: float
    n3: float
    f_direct: float

    @property
    def n_total(self):
        return self.n1 + self.n2 + self.n3

    @property
    def ratio(self):
        return self.n_total / self.f_direct if self.f_direct else float("inf")

    def as_dict(self):
        d = asdict(self)
        d["n_total"] = self.n_total
        d["ratio"] = self.ratio
        return d


def _check_q(q):
    if int(q) != q or q < 1:
        raise ValidationError(f"block count q must be a positive integer, got {q!r}")
    return int(q)


def flops_n1(n, h, q):
    """Cost of all ``q - 1`` reduction stages producing ``C^(q-1)``.

    Each stage forms one block Grammian and its pseudo-inverse, the block
    pseudo-inverse, the projector ``I - P^+ P`` and the trailing update.
    """
    q = _check_q(q)
    b = h / q
    return (21 * b**3 + 4 * n * b**2 + 2 * n**2 * b + n**2 * h + n) * (q - 1)


def _n2_integer(q):
    # q^4/6 + q^3/3 - 13q^2/6 + 5q/3, kept integral
    return (q**4 + 2 * q**3 - 13 * q**2 + 10 * q) // 6


def flops_n2(h, q):
    """Cost of accumulating ``F`` block-sparsely; closed form."""
    q = _check_q(q)
    return (h / q) ** 3 * _n2_integer(q)


def flops_n2_summation(h, q):
    """Same as ``flops_n2`` by literal summation over stages ``r = 2..q-1``."""
    q = _check_q(q)
    total = 0
    for r in range(2, q):
        total += 2 * r * (q - r) * (q - r + 1)
    return (h / q) ** 3 * total


def flops_n3(m, n, h):
    """Cost of the final product ``A [C^(q-1)]^+ F``."""
    return 2 * m * n * h + min(2 * m * h**2, 2 * n * h**2)


def flops_direct(m, n, h):
    """Cost of ``A C^* (C C^*)^+``."""
    return 21 * h**3 + 4 * n * h**2 + 2 * m * n * h


def flop_report(m, n, h, q):
    return FlopReport(
        n1=float(flops_n1(n, h, q)),
        n2=float(flops_n2(h, q)),
        n3=float(flops_n3(m, n, h)),
        f_direct=float(flops_direct(m, n, h)),
    )


def _leading(eps, q):
    # n^3 coefficients for m = n, h = eps * n. The reduction term is the
    # customary single-stage leading term; a single block has no stages.
    n1 = 0.0 if q == 1 else 21 * eps**3 / q**3 + 4 * eps**2 / q**2 + 2 * eps / q + eps
    n2 = eps**3 * _n2_integer(q) / q**3
    n3 = 2 * eps + 2 * eps**2
    f = 21 * eps**3 + 4 * eps**2 + 2 * eps
    return FlopReport(n1=n1, n2=n2, n3=n3, f_direct=f)


def table1_report(eps_list=TABLE1_EPS, q_list=TABLE1_Q):
    """Leading ``n^3`` coefficients for every ``(eps, q)`` pair.

    Returns a list of ``(eps, q, FlopReport)`` in ``eps``-major order.
    """
    rows = []
    for eps in eps_list:
        if not 0 < eps <= 1:
            raise ValidationError(f"eps must lie in (0, 1], got {eps}")
        for q in q_list:
            q = _check_q(q)
            rows.append((float(eps), q, _leading(eps, q)))
    return rows


TABLE1_HEADER = ["eps", "q", "N1/n^3", "N2/n^3", "N3/n^3", "N/n^3", "F/n^3", "N/F"]


def table1_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE1_HEADER)
    for eps, q, rep in rows:
        w.writerow([eps, q] + [f"{v:.4f}" for v in (rep.n1, rep.n2, rep.n3, rep.n_total, rep.f_direct, rep.ratio)])
    return buf.getvalue()
