"""Small exact linear algebra over the rationals.

Matrices are lists of rows. Sizes here never exceed a few dozen, so plain
Gaussian elimination over ``Fraction`` is fast enough and keeps results exact.
"""
from fractions import Fraction
from math import gcd


def _echelon(rows):
    """Row-reduce a copy of ``rows``; return (reduced rows, pivot columns)."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [v / piv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(_echelon(rows)[1])


def det(rows):
    """Determinant by fraction-free (Bareiss) elimination; exact for ints."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(row) for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(rows):
    n = len(rows)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(rows)]
    red, pivots = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


def nullspace(rows, ncols):
    """Basis of {x : rows @ x = 0} as a list of rational vectors."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = _echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def primitive(vec):
    """Scale a rational vector to the primitive integer vector with the same direction."""
    fr = [Fraction(v) for v in vec]
    den = 1
    for v in fr:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def normal_vector(vectors, dim):
    """Generalized cross product of ``dim - 1`` integer vectors (cofactor expansion).

    The result is orthogonal to every input and is zero iff they are linearly
    dependent.
    """
    out = []
    for j in range(dim):
        minor = [[v[c] for c in range(dim) if c != j] for v in vectors]
        out.append((-1) ** j * det(minor))
    return tuple(out)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))
