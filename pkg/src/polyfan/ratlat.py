"""Exact rational and integer linear algebra over lattices.

Vectors are plain tuples (of ints for lattice vectors, of Fraction for
rational vectors); matrices are tuples of row tuples.  Everything is
arbitrary precision and exact; there is no floating point anywhere.
"""

from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch, ZeroVector


# ---------------------------------------------------------------------------
# vectors


def vadd(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"{len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"{len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(c, u):
    return tuple(c * a for a in u)


def dot(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"{len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def zero(n):
    return (0,) * n


def is_zero(u):
    return all(a == 0 for a in u)


def unit(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


def primitive(v):
    """Scale v to the primitive integer vector on the same ray.

    Accepts integer or rational coordinates; the result has integer
    coordinates with gcd 1 and the same direction as v.
    """
    if is_zero(v):
        raise ZeroVector("the zero vector spans no ray")
    den = 1
    for a in v:
        if isinstance(a, Fraction):
            den = den * a.denominator // gcd(den, a.denominator)
    w = [int(a * den) for a in v]
    g = 0
    for a in w:
        g = gcd(g, abs(a))
    return tuple(a // g for a in w)


def as_fraction_vector(v):
    return tuple(Fraction(a) for a in v)


# ---------------------------------------------------------------------------
# rational elimination


def _pivot_row(rows, col, start):
    for i in range(start, len(rows)):
        if rows[i][col] != 0:
            return i
    return None


def row_echelon(rows):
    """Reduced row echelon form over the rationals.

    Returns (rref rows as list of Fraction tuples, pivot column list).
    """
    m = [[Fraction(a) for a in r] for r in rows]
    pivots = []
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        i = _pivot_row(m, c, r)
        if i is None:
            continue
        m[r], m[i] = m[i], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for j in range(len(m)):
            if j != r and m[j][c] != 0:
                f = m[j][c]
                m[j] = [a - f * b for a, b in zip(m[j], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m], pivots


def rank(rows):
    if not rows:
        return 0
    _, pivots = row_echelon(rows)
    return len(pivots)


def kernel_basis(rows, n=None):
    """Basis of {x : A x = 0} for the matrix with the given rows.

    Returns primitive integer vectors, one per free column.
    """
    if n is None:
        n = len(rows[0])
    if not rows:
        return [unit(n, i) for i in range(n)]
    rref, pivots = row_echelon(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for c in free:
        x = [Fraction(0)] * n
        x[c] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -rref[r][c]
        basis.append(primitive(tuple(x)))
    return basis


def solve_rational(rows, b):
    """One exact solution x of A x = b, or None when inconsistent.

    ``rows`` are the rows of A; free variables are set to zero.
    """
    if not rows:
        return None if any(c != 0 for c in b) else ()
    n = len(rows[0])
    aug = [tuple(Fraction(a) for a in r) + (Fraction(c),)
           for r, c in zip(rows, b)]
    rref, pivots = row_echelon(aug)
    for r in range(len(rref)):
        if all(a == 0 for a in rref[r][:n]) and rref[r][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        if c == n:
            return None
        x[c] = rref[r][n]
    return tuple(x)


def in_span(rows, v):
    """Whether v lies in the rational row span of ``rows``."""
    if not rows:
        return is_zero(v)
    cols = [tuple(r[i] for r in rows) for i in range(len(rows[0]))]
    return solve_rational(cols, v) is not None


# ---------------------------------------------------------------------------
# integer normal forms


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def hermite_normal_form(rows):
    """Row-style Hermite normal form of an integer matrix.

    Zero rows are dropped; pivots are positive and entries above each
    pivot are reduced into [0, pivot).  The result is the canonical
    basis of the row lattice.
    """
    m = [list(r) for r in rows if not is_zero(r)]
    if not m:
        return ()
    ncols = len(m[0])
    row = 0
    for col in range(ncols):
        # gcd out the column below `row` by euclidean row operations
        while True:
            nz = [i for i in range(row, len(m)) if m[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(m[i][col]))
            _swap_rows(m, row, i0)
            done = True
            for i in range(row + 1, len(m)):
                if m[i][col] != 0:
                    q = m[i][col] // m[row][col]
                    m[i] = [a - q * b for a, b in zip(m[i], m[row])]
                    if m[i][col] != 0:
                        done = False
            if done:
                break
        if any(m[i][col] != 0 for i in range(row, len(m))):
            if m[row][col] < 0:
                m[row] = [-a for a in m[row]]
            for i in range(row):
                q = m[i][col] // m[row][col]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[row])]
            row += 1
            if row == len(m):
                break
    return tuple(tuple(r) for r in m[:row])


def smith_normal_form(rows):
    """Smith normal form with transforms.

    Returns (divisors, L, R) where L*M*R is diagonal with the elementary
    divisors on the diagonal (each dividing the next) and L, R are
    unimodular.  ``divisors`` lists the diagonal of the min(r, c) slots.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    left = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    right = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def row_op(i, j, q):
        m[i] = [a - q * b for a, b in zip(m[i], m[j])]
        left[i] = [a - q * b for a, b in zip(left[i], left[j])]

    def col_op(i, j, q):
        for r in range(nrows):
            m[r][i] -= q * m[r][j]
        for r in range(ncols):
            right[r][i] -= q * right[r][j]

    def swap_cols(i, j):
        for r in range(nrows):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        for r in range(ncols):
            right[r][i], right[r][j] = right[r][j], right[r][i]

    t = 0
    while t < min(nrows, ncols):
        # find a nonzero pivot in the remaining block
        pi = pj = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best):
                    best, pi, pj = abs(m[i][j]), i, j
        if pi is None:
            break
        _swap_rows(m, t, pi)
        _swap_rows(left, t, pi)
        swap_cols(t, pj)
        while True:
            for i in range(t + 1, nrows):
                if m[i][t] != 0:
                    row_op(i, t, m[i][t] // m[t][t])
            for j in range(t + 1, ncols):
                if m[t][j] != 0:
                    col_op(j, t, m[t][j] // m[t][t])
            bad_r = [i for i in range(t + 1, nrows) if m[i][t] != 0]
            bad_c = [j for j in range(t + 1, ncols) if m[t][j] != 0]
            if not bad_r and not bad_c:
                break
            cand = min(bad_r + [t], key=lambda i: abs(m[i][t]) if m[i][t] else 0)
            if bad_r and abs(m[cand][t]) < abs(m[t][t]):
                _swap_rows(m, t, cand)
                _swap_rows(left, t, cand)
            elif bad_c:
                cand = min(bad_c, key=lambda j: abs(m[t][j]))
                swap_cols(t, cand)
        if m[t][t] < 0:
            m[t] = [-a for a in m[t]]
            left[t] = [-a for a in left[t]]
        # enforce divisibility d_t | entries of the lower block
        fixed = True
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if m[i][j] % m[t][t] != 0:
                    m[t] = [a + b for a, b in zip(m[t], m[i])]
                    left[t] = [a + b for a, b in zip(left[t], left[i])]
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1
    divisors = [m[i][i] for i in range(min(nrows, ncols))]
    return divisors, tuple(tuple(r) for r in left), tuple(tuple(r) for r in right)


def det(rows):
    """Determinant of a square rational matrix, exact."""
    n = len(rows)
    m = [[Fraction(a) for a in r] for r in rows]
    d = Fraction(1)
    for c in range(n):
        i = _pivot_row(m, c, c)
        if i is None:
            return Fraction(0)
        if i != c:
            m[c], m[i] = m[i], m[c]
            d = -d
        d *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for j in range(c + 1, n):
            if m[j][c] != 0:
                f = m[j][c] * inv
                m[j] = [a - f * b for a, b in zip(m[j], m[c])]
    return d


def spans_saturated_basis(rows):
    """Whether the integer rows extend to a Z-basis of the full lattice.

    True iff the rows are linearly independent and every elementary
    divisor of their matrix equals 1.
    """
    rows = [tuple(r) for r in rows]
    if not rows:
        return True
    if rank(rows) != len(rows):
        return False
    divisors, _, _ = smith_normal_form(rows)
    return all(d == 1 for d in divisors)


def lattice_denominator(v, gens):
    """Minimum m > 0 with m*v in the integer span of ``gens``.

    ``v`` has rational coordinates and must lie in the rational span of
    ``gens``; raises ValueError otherwise.
    """
    v = as_fraction_vector(v)
    if is_zero(v):
        return 1
    if not gens:
        raise ValueError("vector outside the lattice span")
    # coordinates c with gens^T c = v
    cols = [tuple(g[i] for g in gens) for i in range(len(v))]
    c = solve_rational(cols, v)
    if c is None:
        raise ValueError("vector outside the lattice span")
    # m*v in ZZ-span(gens) iff m*c is in the integer solution lattice of
    # gens^T x = gens^T c; with gens independent this is just m*c integral.
    # For dependent gens reduce to a lattice basis first.
    basis = hermite_normal_form(gens)
    cols = [tuple(b[i] for b in basis) for i in range(len(v))]
    c = solve_rational(cols, v)
    if c is None:
        raise ValueError("vector outside the lattice span")
    m = 1
    for a in c:
        m = m * a.denominator // gcd(m, a.denominator)
    return m
