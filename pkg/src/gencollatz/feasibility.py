"""Exact rational linear feasibility by Fourier-Motzkin elimination.

A system is a list of inequalities ``a . x >= b`` plus optional equalities
``a . x == b``. Equalities are removed first by parametrising their solution
space; the remaining inequalities are eliminated one variable at a time and a
witness point is recovered by back-substitution.

Every system solved by this package has at most four unknowns after
equality removal, so the doubly-exponential worst case of FME never bites;
``max_constraints`` guards against misuse anyway.
"""
from fractions import Fraction
from math import ceil, floor, gcd

from . import _linalg
from .errors import FeasibilityBlowup

MAX_CONSTRAINTS = 50_000


def _normalize(coeffs, rhs):
    coeffs = [Fraction(c) for c in coeffs]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints), Fraction(rhs)
    return tuple(v // g for v in ints), Fraction(rhs) * den / g


def _add(system, coeffs, rhs):
    key, b = _normalize(coeffs, rhs)
    old = system.get(key)
    if old is None or b > old:
        system[key] = b


def _pick(lo, hi):
    """Choose a value in [lo, hi], preferring small integers."""
    if (lo is None or lo <= 0) and (hi is None or hi >= 0):
        return Fraction(0)
    if lo is not None and lo > 0:
        c = Fraction(ceil(lo))
        if hi is None or c <= hi:
            return c
    if hi is not None and hi < 0:
        c = Fraction(floor(hi))
        if lo is None or c >= lo:
            return c
    return (lo + hi) / 2


def _fme(ineqs, n, max_constraints):
    system = {}
    for a, b in ineqs:
        _add(system, a, b)
    history = []
    for var in range(n - 1, -1, -1):
        history.append(system)
        pos, neg, nxt = [], [], {}
        for a, b in system.items():
            if a[var] > 0:
                pos.append((a, b))
            elif a[var] < 0:
                neg.append((a, b))
            else:
                nxt[a] = b
        if len(nxt) + len(pos) * len(neg) > max_constraints:
            raise FeasibilityBlowup(
                f"elimination of variable {var} would create {len(pos) * len(neg)} constraints")
        for ap, bp in pos:
            for an, bn in neg:
                sp, sn = -an[var], ap[var]
                coeffs = [sp * x + sn * y for x, y in zip(ap, an)]
                _add(nxt, coeffs, sp * bp + sn * bn)
        system = nxt
    # only the all-zero row can remain
    for a, b in system.items():
        if b > 0:
            return None
    history.reverse()
    point = []
    for var, sysv in enumerate(history):
        lo = hi = None
        for a, b in sysv.items():
            c = a[var]
            if c == 0:
                continue
            rest = b - sum(a[j] * point[j] for j in range(var))
            bound = rest / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None and lo > hi:
            # cannot happen for a consistent projection; defensive
            return None
        point.append(_pick(lo, hi))
    return point


def find_point(ineqs, dim, eqs=(), max_constraints=MAX_CONSTRAINTS):
    """Return a rational point satisfying every constraint, or ``None``.

    ``ineqs`` and ``eqs`` are iterables of ``(coeffs, rhs)`` pairs meaning
    ``coeffs . x >= rhs`` and ``coeffs . x == rhs`` respectively.
    """
    ineqs = [(tuple(a), b) for a, b in ineqs]
    eqs = [(tuple(a), b) for a, b in eqs]
    if not eqs:
        pt = _fme(ineqs, dim, max_constraints)
        return None if pt is None else [Fraction(v) for v in pt]

    aug = [list(a) + [b] for a, b in eqs]
    red, pivots = _linalg._echelon(aug)
    if dim in pivots:
        return None
    x0 = [Fraction(0)] * dim
    for i, p in enumerate(pivots):
        x0[p] = red[i][dim]
    basis = _linalg.nullspace([list(a) for a, _ in eqs], dim)
    f = len(basis)
    reduced = []
    for a, b in ineqs:
        coeffs = [sum(a[j] * v[j] for j in range(dim)) for v in basis]
        reduced.append((coeffs, Fraction(b) - _linalg.dot(a, x0)))
    if f == 0:
        return x0 if all(b <= 0 for _, b in reduced) else None
    t = _fme(reduced, f, max_constraints)
    if t is None:
        return None
    return [x0[j] + sum(t[i] * basis[i][j] for i in range(f)) for j in range(dim)]


def is_feasible(ineqs, dim, eqs=(), max_constraints=MAX_CONSTRAINTS):
    return find_point(ineqs, dim, eqs, max_constraints) is not None
