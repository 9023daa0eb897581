"""Exact left-stationary vectors of integer substitution matrices.

Solves  p S = m p,  sum p = 1  over the rationals by Gauss-Jordan
elimination of (S - mI)^T.  Uses gmpy2.mpq when available (identical
semantics, much faster big-rational arithmetic), stdlib Fraction otherwise.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SelfsimError

try:
    from gmpy2 import mpq as _field
except ImportError:
    _field = Fraction


def stationary_exact(
    successor_counts: list[list[tuple[int, int]]], m: int
) -> list[Fraction]:
    """Exact stationary distribution of the substitution Markov chain.

    ``successor_counts[k]`` lists (target, count) pairs of row k of the
    substitution matrix S (row sums m).  Requires a unique stationary
    vector (one recurrent class); raises ``SelfsimError`` otherwise.
    """
    K = len(successor_counts)
    zero = _field(0)
    one = _field(1)
    # B = (S - mI)^T, so B x = 0 gives the left eigenvector.
    B = [[zero] * K for _ in range(K)]
    for k, items in enumerate(successor_counts):
        for target, count in items:
            B[target][k] += count
        B[k][k] -= m

    pivot_of_col: dict[int, int] = {}
    free_cols: list[int] = []
    row = 0
    for col in range(K):
        pivot = None
        for r in range(row, K):
            if B[r][col] != zero:
                pivot = r
                break
        if pivot is None:
            free_cols.append(col)
            continue
        B[row], B[pivot] = B[pivot], B[row]
        inv = one / B[row][col]
        B[row] = [x * inv for x in B[row]]
        lead = B[row]
        for r in range(K):
            if r != row and B[r][col] != zero:
                factor = B[r][col]
                target_row = B[r]
                B[r] = [
                    target_row[c] - factor * lead[c] for c in range(K)
                ]
        pivot_of_col[col] = row
        row += 1

    if len(free_cols) != 1:
        raise SelfsimError(
            f"stationary distribution is not unique: nullity {len(free_cols)}"
        )
    free = free_cols[0]
    x = [zero] * K
    x[free] = one
    for col, r in pivot_of_col.items():
        x[col] = -B[r][free]

    total = sum(x, zero)
    if total == zero:
        raise SelfsimError("degenerate stationary solve: null vector sums to zero")
    p = [value / total for value in x]
    if any(value < 0 for value in p):
        raise SelfsimError("stationary solve produced negative mass")

    # Exact verification of p S = m p.
    check = [zero] * K
    for k, items in enumerate(successor_counts):
        pk = p[k]
        if pk != zero:
            for target, count in items:
                check[target] += pk * count
    for k in range(K):
        if check[k] != m * p[k]:
            raise SelfsimError("stationary verification failed")

    return [Fraction(int(v.numerator), int(v.denominator)) for v in p]
