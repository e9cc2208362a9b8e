"""Plain-text matrix files: one row per line, comma-separated decimals."""

import math

import numpy as np

from .errors import ValidationError

__all__ = ["MatrixParseError", "read_matrix", "write_matrix", "parse_matrix", "format_matrix"]


class MatrixParseError(ValidationError):
    def __init__(self, message, line, column=None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


def parse_matrix(text):
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise MatrixParseError(f"expected {width} entries, found {len(fields)}", lineno)
        row = []
        for col, tok in enumerate(fields, start=1):
            try:
                v = float(tok)
            except ValueError:
                raise MatrixParseError(f"cannot parse {tok.strip()!r} as a number", lineno, col) from None
            if not math.isfinite(v):
                raise MatrixParseError(f"non-finite value {tok.strip()!r}", lineno, col)
            row.append(v)
        rows.append(row)
    if not rows:
        raise MatrixParseError("no data", 1)
    return np.array(rows, dtype=np.float64)


def read_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def format_matrix(m):
    m = np.asarray(m)
    if m.ndim != 2:
        raise ValidationError("only 2-D matrices can be written")
    if np.iscomplexobj(m):
        raise ValidationError("the text format holds real matrices only")
    # 17 significant digits round-trip every double exactly
    return "".join(",".join(format(float(v), ".17g") for v in row) + "\n" for row in m)


def write_matrix(path, m):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(m))
