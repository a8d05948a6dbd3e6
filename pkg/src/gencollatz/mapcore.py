"""Generalized Collatz mappings ``T(x) = (m_w x + r_w) / d`` on Z^e.

The branch ``w`` is the residue class of ``x`` modulo ``d``. A map is stored
as its full residue table and validated once on construction; everything
downstream assumes a valid map.
"""
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from operator import index

from . import _linalg
from .errors import (BadModulus, DivisibilityError, InvalidEntry, MissingResidue,
                     NonpositiveMultiplier, RankMismatch)
from .feasibility import find_point
from .forms import IntegerForm


@dataclass(frozen=True, eq=False)
class CollatzMap:
    """A validated map. Build instances with :func:`validate_map`."""

    modulus: int
    rank: int
    table: dict = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, CollatzMap):
            return NotImplemented
        return (self.modulus, self.rank, self.table) == (other.modulus, other.rank, other.table)

    def __hash__(self):
        return hash((self.modulus, self.rank, tuple(sorted(self.table.items()))))

    def residues(self):
        return sorted(self.table)

    def residue(self, x):
        return residue_of(x, self)

    def multiplier(self, omega):
        return self.table[omega][0]

    def shift(self, omega):
        return self.table[omega][1]

    @property
    def multipliers(self):
        return [self.table[w][0] for w in self.residues()]

    @property
    def shifts(self):
        """The shift set S_r, one vector per residue (zeros included)."""
        return [self.table[w][1] for w in self.residues()]

    @property
    def nonzero_shifts(self):
        seen = []
        for r in self.shifts:
            if any(r) and r not in seen:
                seen.append(r)
        return seen

    def __call__(self, x):
        from .trajectory import step
        return step(self, x)


def _as_point(v, what):
    try:
        return tuple(index(c) for c in v)
    except TypeError:
        raise InvalidEntry(f"{what} must be a sequence of integers, got {v!r}") from None


def validate_map(modulus, table):
    """Check a raw residue table and return a :class:`CollatzMap`.

    ``table`` maps residue vectors (coordinates in ``[0, d)``) to pairs
    ``(m, r)``. Keys and shifts may be any integer sequences.
    """
    try:
        d = index(modulus)
    except TypeError:
        raise BadModulus(f"modulus must be an integer, got {modulus!r}") from None
    if d <= 1:
        raise BadModulus(f"modulus must exceed 1, got {d}")
    if not table:
        raise MissingResidue("empty residue table")

    clean = {}
    rank = None
    for key, value in table.items():
        omega = _as_point(key, "residue")
        try:
            m, r = value
        except (TypeError, ValueError):
            raise InvalidEntry(f"entry for {omega} must be a pair (m, r)") from None
        r = _as_point(r, f"shift of {omega}")
        try:
            m = index(m)
        except TypeError:
            raise InvalidEntry(f"multiplier of {omega} must be an integer") from None
        if rank is None:
            rank = len(omega)
        if rank == 0 or len(omega) != rank or len(r) != rank:
            raise RankMismatch(f"entry {omega} -> {r} does not have rank {rank}")
        if any(not 0 <= c < d for c in omega):
            raise InvalidEntry(f"residue {omega} has a coordinate outside [0, {d})")
        if omega in clean:
            raise InvalidEntry(f"duplicate residue {omega}")
        clean[omega] = (m, r)

    missing = [w for w in product(range(d), repeat=rank) if w not in clean]
    if missing:
        shown = ", ".join(str(w) for w in missing[:8])
        more = "" if len(missing) <= 8 else f" (+{len(missing) - 8} more)"
        raise MissingResidue(f"missing residue classes: {shown}{more}")

    for omega in sorted(clean):
        m, r = clean[omega]
        if m <= 0:
            raise NonpositiveMultiplier(f"multiplier {m} of residue {omega} is not positive")
        image = [m * c + s for c, s in zip(omega, r)]
        if any(v % d for v in image):
            raise DivisibilityError(
                f"residue {omega}: m*w + r = {tuple(image)} is not divisible by {d}")
    return CollatzMap(d, rank, clean)


def residue_of(x, cmap):
    if len(x) != cmap.rank:
        raise RankMismatch(f"point of length {len(x)} for a rank-{cmap.rank} map")
    d = cmap.modulus
    return tuple(c % d for c in x)


def is_relatively_prime_type(cmap):
    return all(gcd(m, cmap.modulus) == 1 for m in cmap.multipliers)


def shift_span_rank(cmap):
    return _linalg.rank(cmap.shifts)


def strictly_positive_witness(shifts, vanish_on=(), rank=None):
    """Find an integer form that is strictly positive on every nonzero shift.

    Solves ``<a, w> >= 1`` for all nonzero ``w`` (scale-equivalent to strict
    positivity) exactly, optionally with ``<a, x> = 0`` for each ``x`` in
    ``vanish_on``. Returns ``None`` when no such form exists.
    """
    shifts = [tuple(w) for w in shifts]
    vanish_on = [tuple(x) for x in vanish_on]
    if rank is None:
        rank = len(shifts[0]) if shifts else len(vanish_on[0])
    ineqs = [(w, 1) for w in shifts if any(w)]
    eqs = [(x, 0) for x in vanish_on]
    pt = find_point(ineqs, rank, eqs)
    if pt is None:
        return None
    if not any(pt):
        # no inequality forced a nonzero value; any nontrivial solution will do
        kernel = _linalg.nullspace([list(x) for x in vanish_on], rank)
        if not kernel:
            return None
        pt = kernel[0]
    return IntegerForm(_linalg.primitive(pt))
