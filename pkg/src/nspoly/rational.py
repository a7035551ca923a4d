"""Exact rational scalars, vectors and linear algebra.

Every number in this package is an arbitrary-precision rational (gmpy2.mpq).
Vectors and matrices are plain tuples/lists of rationals; the helpers here
provide the exact linear algebra (rank, solve, primitive integer forms) that
the polytope and LP code builds on.
"""

from __future__ import annotations

from math import gcd, lcm
from typing import Optional, Sequence

from gmpy2 import mpq, mpz

Rational = mpq
ZERO = mpq(0)
ONE = mpq(1)


def rat(numerator, denominator=1) -> Rational:
    """Canonical rational n/d. Raises ZeroDivisionError on d = 0."""
    if denominator == 0:
        raise ZeroDivisionError("division by zero")
    return mpq(numerator, denominator)


# spec name for rat(); the canonical (reduced, positive-denominator) form is
# what mpq stores internally.
reduce = rat


def format_rational(q) -> str:
    """Text form 'n/d', with '/d' omitted when the denominator is 1."""
    return str(mpq(q))


def parse_rational(token: str) -> Rational:
    token = token.strip()
    if "/" in token:
        n, d = token.split("/")
        return rat(int(n), int(d))
    return mpq(int(token))


def dot(u: Sequence, v: Sequence):
    assert len(u) == len(v)
    return sum(a * b for a, b in zip(u, v))


def scaled_integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Clear denominators row by row, returning integer rows (same row spans)."""
    out = []
    for row in rows:
        qs = [mpq(x) for x in row]
        m = 1
        for q in qs:
            m = lcm(m, int(q.denominator))
        out.append([int(q * m) for q in qs])
    return out


def _row_echelon_int(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Bareiss) elimination. Returns echelon rows and pivot columns."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            fi = rows[i][col]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(col, ncols):
                row_i[j] = (p * row_i[j] - fi * row_r[j]) // prev
        prev = p
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank via fraction-free Gaussian elimination."""
    int_rows = scaled_integer_rows(rows)
    int_rows = [r for r in int_rows if any(r)]
    _, pivots = _row_echelon_int(int_rows)
    return len(pivots)


def independent_row_indices(rows: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent subset of rows (greedy order)."""
    chosen: list[int] = []
    basis: list[list[Rational]] = []  # reduced rows
    piv_cols: list[int] = []
    for idx, row in enumerate(rows):
        v = [mpq(x) for x in row]
        for b, pc in zip(basis, piv_cols):
            if v[pc]:
                f = v[pc]
                v = [x - f * y for x, y in zip(v, b)]
        pc = next((j for j, x in enumerate(v) if x), None)
        if pc is None:
            continue
        inv = 1 / v[pc]
        v = [x * inv for x in v]
        basis.append(v)
        piv_cols.append(pc)
        chosen.append(idx)
    return chosen


def solve_linear(a: Sequence[Sequence], b: Sequence) -> Optional[list[Rational]]:
    """Any exact solution x of a x = b, or None if the system is inconsistent."""
    m = len(a)
    assert len(b) == m
    if m == 0:
        return []
    n = len(a[0])
    aug = [[mpq(x) for x in row] + [mpq(rhs)] for row, rhs in zip(a, b)]
    piv_of_col: dict[int, int] = {}
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_of_col[col] = r
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n]:
            return None
    x = [ZERO] * n
    for col, row in piv_of_col.items():
        x[col] = aug[row][n]
    return x


def nullspace_basis(rows: Sequence[Sequence], n: Optional[int] = None) -> list[list[Rational]]:
    """Basis of {x : rows x = 0} as a list of exact vectors."""
    if n is None:
        n = len(rows[0])
    red: list[list[Rational]] = []
    piv_cols: list[int] = []
    for row in rows:
        v = [mpq(x) for x in row]
        for b, pc in zip(red, piv_cols):
            if v[pc]:
                f = v[pc]
                v = [x - f * y for x, y in zip(v, b)]
        pc = next((j for j, x in enumerate(v) if x), None)
        if pc is None:
            continue
        inv = 1 / v[pc]
        v = [x * inv for x in v]
        for b in red:
            if b[pc]:
                f = b[pc]
                for j in range(n):
                    b[j] -= f * v[j]
        red.append(v)
        piv_cols.append(pc)
    free_cols = [j for j in range(n) if j not in piv_cols]
    basis = []
    for fc in free_cols:
        vec = [ZERO] * n
        vec[fc] = ONE
        for b, pc in zip(red, piv_cols):
            vec[pc] = -b[fc]
        basis.append(vec)
    return basis


def primitive_integer_form(v: Sequence, fix_sign: bool = True) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers.

    With fix_sign (the default) the first nonzero entry is made positive, which
    gives a canonical form for lines; pass fix_sign=False for oriented vectors
    such as inequality normals.
    """
    qs = [mpq(x) for x in v]
    if not any(qs):
        raise ValueError("zero vector has no primitive form")
    m = 1
    for q in qs:
        m = lcm(m, int(q.denominator))
    ints = [int(q * m) for q in qs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if fix_sign:
        lead = next(x for x in ints if x)
        if lead < 0:
            ints = [-x for x in ints]
    return tuple(ints)
