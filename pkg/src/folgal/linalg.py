"""Sparse exact linear algebra over the rationals.

Rows are dicts mapping column index -> Fraction.  Elimination picks the
smallest column present as pivot, so results are deterministic and no
numerical thresholds are involved anywhere in the symbolic pipeline.
"""

from fractions import Fraction


def _echelon(rows, rhss):
    """Reduce to echelon form.

    Returns (pivots, inconsistent) where pivots maps a pivot column to its
    normalized (row, rhs) pair and inconsistent flags a row 0 = nonzero.
    """
    pivots = {}
    for row0, rhs in zip(rows, rhss):
        row = dict(row0)
        placed = False
        while row and not placed:
            col = min(row)
            hit = pivots.get(col)
            if hit is None:
                inv = Fraction(1) / row[col]
                pivots[col] = ({c: v * inv for c, v in row.items()},
                               rhs * inv if rhs is not None else None)
                placed = True
            else:
                prow, prhs = hit
                factor = row[col]
                for c, v in prow.items():
                    s = row.get(c, 0) - factor * v
                    if s == 0:
                        row.pop(c, None)
                    else:
                        row[c] = s
                if rhs is not None:
                    rhs = rhs - factor * prhs
        if not placed and rhs is not None and rhs != 0:
            return pivots, True
    return pivots, False


def solve(rows, rhs):
    """Particular solution of the sparse system, free variables set to 0.

    rows: list of {col: Fraction}; rhs: list of Fraction.  Returns a dict
    col -> Fraction over the pivot columns, or None when inconsistent.
    """
    pivots, bad = _echelon(rows, rhs)
    if bad:
        return None
    x = {}
    for col in sorted(pivots, reverse=True):
        prow, prhs = pivots[col]
        val = prhs
        for c, v in prow.items():
            if c != col:
                val -= v * x.get(c, 0)
        if val != 0:
            x[col] = val
    return x


def rank(rows):
    """Rank of the sparse row collection (exact)."""
    pivots, _ = _echelon(rows, [None] * len(rows))
    return len(pivots)
