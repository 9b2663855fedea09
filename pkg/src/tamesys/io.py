"""Text formats for matrices, point sets and solution tuples.

Matrix file::

    q=5                      (or  q=2^2 poly=1,1,1)
    1 1 -2
    ...

Point-set file: ``n=<dim>`` then one point code per line.
Tuple file: ``n=<dim>`` then k lines of n integers.
Blank lines and ``#`` comments are ignored everywhere.
"""
from __future__ import annotations

import re

from .errors import DimensionMismatch, InputError
from .field import GF, Field, field_make, prime_power
from .linalg import Matrix, format_matrix
from .search import PointSet


def _lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _ints(line: str) -> list[int]:
    try:
        return [int(tok) for tok in line.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"bad integer in line {line!r}") from exc


def parse_field(header: str) -> Field:
    m = re.fullmatch(r"q\s*=\s*(\d+)(?:\s*\^\s*(\d+))?(?:\s+poly\s*=\s*([-\d,\s]+))?", header.strip())
    if not m:
        raise InputError(f"bad field header {header!r}")
    base, exp, poly = m.groups()
    modulus = _ints(poly) if poly else None
    if exp is not None:
        return field_make(int(base), int(exp), modulus)
    return field_spec(int(base), modulus)


def field_spec(q: int, modulus=None) -> Field:
    if modulus is None:
        return GF(q)
    p, e = prime_power(q)
    return field_make(p, e, modulus)


def parse_matrix(text: str) -> Matrix:
    lines = _lines(text)
    if not lines:
        raise InputError("empty matrix file")
    F = parse_field(lines[0])
    rows = [[F.from_int(v) for v in _ints(line)] for line in lines[1:]]
    if not rows:
        raise InputError("matrix has no rows")
    if len({len(r) for r in rows}) != 1:
        raise DimensionMismatch("rows of different lengths")
    return Matrix.from_rows(F, rows)


def read_matrix(path: str) -> Matrix:
    with open(path) as fh:
        return parse_matrix(fh.read())


def _dim_header(line: str) -> int:
    m = re.fullmatch(r"n\s*=\s*(\d+)", line)
    if not m:
        raise InputError(f"expected 'n=<dim>' header, got {line!r}")
    return int(m.group(1))


def parse_point_set(text: str, F: Field) -> PointSet:
    lines = _lines(text)
    if not lines:
        raise InputError("empty point-set file")
    n = _dim_header(lines[0])
    codes = [c for line in lines[1:] for c in _ints(line)]
    return PointSet(F, n, codes)


def read_point_set(path: str, F: Field) -> PointSet:
    with open(path) as fh:
        return parse_point_set(fh.read(), F)


def format_point_set(S: PointSet) -> str:
    return "\n".join([f"n={S.n}"] + [str(c) for c in S.codes]) + "\n"


def parse_tuple(text: str, F: Field) -> tuple[tuple[int, ...], ...]:
    lines = _lines(text)
    if not lines:
        raise InputError("empty tuple file")
    n = _dim_header(lines[0])
    pts = []
    for line in lines[1:]:
        vals = _ints(line)
        if len(vals) != n:
            raise DimensionMismatch(f"point {vals} does not have {n} coordinates")
        pts.append(tuple(F.from_int(v) for v in vals))
    if not pts:
        raise InputError("tuple has no points")
    return tuple(pts)


def read_tuple(path: str, F: Field) -> tuple[tuple[int, ...], ...]:
    with open(path) as fh:
        return parse_tuple(fh.read(), F)


__all__ = ["parse_field", "field_spec", "parse_matrix", "read_matrix", "parse_point_set",
           "read_point_set", "format_point_set", "parse_tuple", "read_tuple", "format_matrix"]
