"""Exact linear algebra over the rationals and over the expression field.

Rational routines work on lists of lists of Fraction.  Rank and
determinant use fraction-free Bareiss elimination on cleared integer
matrices; reduced row echelon uses Fraction arithmetic directly.  The
expression-field routines run Gaussian elimination with symbolic
division, picking the structurally simplest canonically-nonzero pivot.
"""

from fractions import Fraction
from math import gcd, lcm


def _clear_denominators(matrix):
    out = []
    for row in matrix:
        m = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * m) for x in row])
    return out


def bareiss_rank(matrix) -> int:
    """Rank by fraction-free elimination on the denominator-cleared matrix."""
    m = [row[:] for row in _clear_denominators(matrix)]
    if not m or not m[0]:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        rank += 1
        r += 1
        if r == rows:
            break
    return rank


def bareiss_det(matrix) -> Fraction:
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    m = []
    for row in matrix:
        mm = lcm(*(Fraction(x).denominator for x in row))
        scale *= mm
        m.append([int(Fraction(x) * mm) for x in row])
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) // prev
            m[i][c] = 0
        prev = m[c][c]
    return Fraction(sign * m[n - 1][n - 1], 1) / scale


def rref(matrix):
    """(reduced row echelon form, pivot column list) over Fraction."""
    m = [[Fraction(x) for x in row] for row in matrix]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def nullspace(matrix):
    """Basis of the right kernel, deterministic (free variable = 1)."""
    if not matrix:
        return []
    cols = len(matrix[0])
    red, pivots = rref(matrix)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(matrix, rhs):
    """Unique solution of matrix @ x = rhs; raises ValueError otherwise."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    if cols in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) < cols:
        raise ValueError("underdetermined linear system")
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def mat_mul(a, b):
    return [
        [sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)]
        for row in a
    ]


def mat_inv(matrix):
    n = len(matrix)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in red]


# -- elimination over the expression field ----------------------------


def _pivot_cost(e):
    c = e.as_fraction()
    if c is not None:
        return (0, 1)
    return (1 if e.is_rational else 2, len(e.num) + len(e.den))


def expr_rref(matrix, augment=None):
    """Gauss-Jordan over the expression field.

    Returns (reduced matrix, reduced augment, pivot columns).  Pivots are
    canonically nonzero expressions; among candidates the structurally
    simplest is chosen to keep intermediate fractions small.
    """
    m = [row[:] for row in matrix]
    aug = [row[:] for row in augment] if augment is not None else None
    if not m:
        return m, aug, []
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        cands = [i for i in range(r, rows) if not m[i][c].is_zero_expr]
        if not cands:
            continue
        piv = min(cands, key=lambda i: _pivot_cost(m[i][c]))
        m[r], m[piv] = m[piv], m[r]
        if aug is not None:
            aug[r], aug[piv] = aug[piv], aug[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        if aug is not None:
            aug[r] = [x / inv for x in aug[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero_expr:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                if aug is not None:
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, aug, pivots


def expr_solve(matrix, rhs):
    """Unique symbolic solution of matrix @ x = rhs over the expression field."""
    cols = len(matrix[0])
    red, aug, pivots = expr_rref(matrix, augment=[[b] for b in rhs])
    if len(pivots) < cols:
        raise ValueError("singular symbolic linear system")
    zero = matrix[0][0].chart.zero() if hasattr(matrix[0][0], "chart") else None
    for i in range(len(matrix)):
        if i >= len(pivots) and not aug[i][0].is_zero_expr:
            raise ValueError("inconsistent symbolic linear system")
    x = [zero] * cols
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][0]
    return x


def expr_nullspace(matrix):
    cols = len(matrix[0]) if matrix else 0
    red, _, pivots = expr_rref(matrix)
    chart = matrix[0][0].chart
    from .symexpr import const

    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [const(chart, 0)] * cols
        v[fc] = const(chart, 1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def expr_mat_inv(matrix):
    n = len(matrix)
    chart = matrix[0][0].chart
    from .symexpr import const

    ident = [[const(chart, int(i == j)) for j in range(n)] for i in range(n)]
    red, aug, pivots = expr_rref(matrix, augment=ident)
    if pivots != list(range(n)):
        raise ValueError("singular symbolic matrix")
    return aug
