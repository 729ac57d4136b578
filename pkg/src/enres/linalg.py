"""Exact rank of rational matrices by fraction-free (Bareiss) elimination."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence, Union

Number = Union[int, Fraction]


def _integer_rows(rows: Sequence[Sequence[Number]]) -> List[List[int]]:
    out = []
    for row in rows:
        den = 1
        for v in row:
            if isinstance(v, Fraction) and v.denominator != 1:
                den = lcm(den, v.denominator)
        out.append([int(v * den) for v in row])
    return out


def bareiss_rank(rows: Sequence[Sequence[Number]]) -> int:
    """Rank over Q.  Rows are scaled to integers first; all divisions are exact."""
    m = _integer_rows(rows)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            row_r, row_p = m[r], m[rank]
            for c in range(col + 1, ncols):
                row_r[c] = (p * row_r[c] - f * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank
