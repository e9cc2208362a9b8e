"""Command-line entry point: ``ebos {bench,solve,flops,verify}``.

Exit status is 0 on success, 2 for invalid input and 3 when a numerical
routine fails.
"""

import argparse
import json
import logging
import sys

import numpy as np

from . import bench as _bench
from .errors import NumericalError, ValidationError
from .flops import TABLE1_EPS, TABLE1_Q, flop_report, table1_csv, table1_report
from .linalg import PinvOptions, as_matrix
from .matio import read_matrix, write_matrix
from .partition import ColPartition, RowPartition, parse_partition
from .solver import direct_solve, ebos_solve, independent_solve, residual

log = logging.getLogger("ebos")

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 2, 3


def _emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_bench(args):
    cfg = _bench.BenchConfig(
        m=args.m, n=args.n, q=args.q, dh=args.dh, trials=args.trials, seed=args.seed,
        mode="y-equation" if args.mode == "y" else "full-solve",
        output_format=args.format, p=args.p, dg=args.dg,
    )
    log.info("running %s benchmark: m=%d n=%d q=%d dh=%d", cfg.mode, cfg.m, cfg.n, cfg.q, cfg.dh)
    rec = _bench.bench_y_equation(cfg) if args.mode == "y" else _bench.bench_full(cfg)
    if args.format == "csv":
        text = _bench.records_to_csv([rec])
    else:
        text = _bench.records_to_json([rec]) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_solve(args):
    a = as_matrix(read_matrix(args.a), "A")
    b = as_matrix(read_matrix(args.b), "B")
    c = as_matrix(read_matrix(args.c), "C")
    cp = parse_partition(args.gpart, ColPartition) if args.gpart else ColPartition((b.shape[1],))
    rp = parse_partition(args.hpart, RowPartition) if args.hpart else RowPartition((c.shape[0],))
    opts = PinvOptions(args.tol)
    if args.method == "ebos":
        res = ebos_solve(a, b, c, cp, rp, opts)
        x, r = res.x_plus, res.residual
    elif args.method == "direct":
        res = direct_solve(a, b, c, opts)
        x, r = res.x_plus, res.residual
    else:
        if cp.total != b.shape[1] or rp.total != c.shape[0]:
            raise ValidationError("partitions do not match the shapes of B and C")
        grid = independent_solve(
            a, [b[:, s] for s in cp.slices()], [c[s] for s in rp.slices()], opts
        )
        x = grid.assemble()
        r = residual(a, b, x, c)
    write_matrix(args.out, x)
    print(json.dumps({"method": args.method, "residual": r, "x_shape": list(x.shape)}))
    return EXIT_OK


def cmd_flops(args):
    if args.table1:
        _emit(table1_csv(table1_report(TABLE1_EPS, TABLE1_Q)), args.out)
        return EXIT_OK
    missing = [k for k in ("m", "n", "h", "q") if getattr(args, k) is None]
    if missing:
        raise ValidationError("flops needs --m --n --h --q (or --table1); missing " + ", ".join(missing))
    rep = flop_report(args.m, args.n, args.h, args.q)
    d = rep.as_dict()
    header = ["m", "n", "h", "q", "N1", "N2", "N3", "N", "F", "N/F"]
    vals = [args.m, args.n, args.h, args.q] + [
        f"{d[k]:.6g}" for k in ("n1", "n2", "n3", "n_total", "f_direct", "ratio")
    ]
    _emit(",".join(header) + "\n" + ",".join(map(str, vals)) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args):
    results = _bench.verify_random(args.instances, args.seed)
    failed = [r for r in results if not r["passed"]]
    worst = {
        k: max(r[k] for r in results)
        for k in ("reconstruction_diff", "normal_defect", "min_norm_gap")
    }
    print(json.dumps({"instances": len(results), "failed": len(failed), "worst": worst}))
    return EXIT_OK if not failed else EXIT_NUMERICAL


def build_parser():
    parser = argparse.ArgumentParser(prog="ebos", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bench", help="time block reduction against the direct pseudo-inverse")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--dh", type=int, required=True)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["y", "full"], default="y")
    p.add_argument("--p", type=int, help="column blocks of B (full mode; default q)")
    p.add_argument("--dg", type=int, help="columns per B block (full mode; default dh)")
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("solve", help="solve min ||A - BXC||_F for matrices on disk")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--gpart", help="column-block sizes of B, e.g. 2,4")
    p.add_argument("--hpart", help="row-block sizes of C, e.g. 2,2,3")
    p.add_argument("--method", choices=["ebos", "direct", "independent"], default="ebos")
    p.add_argument("--out", required=True)
    p.add_argument("--tol", type=float, default=None, help="absolute rank tolerance")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("flops", help="analytic flop counts")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--table1", action="store_true", help="print leading n^3 coefficients table")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_flops)

    p = sub.add_parser("verify", help="check both solvers agree on random instances")
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
