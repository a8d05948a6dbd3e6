"""Cone geometry of a generalized Collatz map.

Separating forms, the shift cone ``B_r^+``, the chamber decomposition cut out
by the separating hyperplanes, and the wild/tame split. All predicates are
exact: integer arithmetic for sign tests, rational Fourier-Motzkin for
feasibility.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property, cmp_to_key
from itertools import combinations, product
from math import ceil, floor, gcd

import numpy as np

from . import _linalg
from .errors import NotAcute, NotRelativelyPrime, ShiftsDontSpan, TooManyForms, ZeroPoint
from .feasibility import find_point, is_feasible
from .forms import IntegerForm
from .mapcore import is_relatively_prime_type, shift_span_rank, strictly_positive_witness

MAX_SIGN_FORMS = 20
_COMBINATION_LIMIT = 20_000

__all__ = [
    "IntegerForm", "FinitelyGeneratedCone", "Chamber", "TameCone",
    "min_nonzero_abs", "is_separating", "separating_search_box",
    "enumerate_separating_forms", "cone_contains", "shift_cone", "is_directed",
    "sign_vector", "build_chambers", "classify_wild", "build_tame_cone",
    "tame_cone_contains", "tame_mask",
]


def _coeffs(form):
    return form.coeffs if isinstance(form, IntegerForm) else tuple(form)


def _sign(v):
    return (v > 0) - (v < 0)


# -- separating forms ---------------------------------------------------------

def min_nonzero_abs(form, omega, d):
    """Smallest nonzero ``|Phi(x)|`` over the coset ``omega + d Z^e``.

    A primitive form takes every integer value on Z^e, so on the coset it takes
    exactly ``c + dZ`` with ``c = Phi(omega) mod d``.
    """
    c = _linalg.dot(_coeffs(form), omega) % d
    return d if c == 0 else min(c, d - c)


def is_separating(form, cmap):
    a = _coeffs(form)
    d = cmap.modulus
    for omega, (m, r) in cmap.table.items():
        if m * min_nonzero_abs(a, omega, d) <= abs(_linalg.dot(a, r)):
            return False
    return True


def _spanning_columns(vectors, e):
    """Indices of ``e`` vectors maximising ``|det|`` (greedy once the search gets big)."""
    n = len(vectors)
    count = 1
    for i in range(e):
        count = count * (n - i) // (i + 1)
    if count <= _COMBINATION_LIMIT:
        best, best_det = None, 0
        for idx in combinations(range(n), e):
            dt = abs(_linalg.det([list(vectors[i]) for i in idx]))
            if dt > best_det:
                best, best_det = idx, dt
        return best
    chosen = []
    for _ in range(e):
        best, best_rank = None, -1
        for i in range(n):
            if i in chosen:
                continue
            rows = [list(vectors[j]) for j in chosen + [i]]
            # among rank-increasing picks prefer long vectors
            rk = _linalg.rank(rows)
            if rk == len(rows) and (best is None or sum(c * c for c in vectors[i]) > best_rank):
                best, best_rank = i, sum(c * c for c in vectors[i])
        if best is None:
            return None
        chosen.append(best)
    return tuple(chosen)


def separating_search_box(cmap, scale=1):
    """Per-coordinate bounds ``|a_j| <= B_j`` containing every separating form.

    Any separating ``a`` has ``|<a, r_w>| <= d m_w - 1``. Inverting that on
    ``e`` independent shifts ``G`` gives ``|a_j| <= sum_i (d m_i - 1) |G^-1_ij|``.
    """
    e, d = cmap.rank, cmap.modulus
    if shift_span_rank(cmap) < e:
        raise ShiftsDontSpan("shift vectors do not span the ambient space")
    entries = [(cmap.multiplier(w), cmap.shift(w)) for w in cmap.residues() if any(cmap.shift(w))]
    idx = _spanning_columns([r for _, r in entries], e)
    g_rows = [list(entries[i][1]) for i in idx]      # row i is shift g_i
    g_inv = _linalg.inverse([list(col) for col in zip(*g_rows)])  # inverse of columns matrix
    caps = [d * entries[i][0] - 1 for i in idx]
    return [floor(scale * sum(caps[i] * abs(g_inv[i][j]) for i in range(e))) for j in range(e)]


def enumerate_separating_forms(cmap, box_scale=1):
    """All separating hyperplanes, one canonical primitive form each, sorted."""
    e, d = cmap.rank, cmap.modulus
    box = separating_search_box(cmap, box_scale)
    caps = [(d * m - 1, r) for m, r in cmap.table.values()]
    inner = max(range(e), key=lambda j: box[j])
    outer = [j for j in range(e) if j != inner]
    found = []
    for vals in product(*(range(-box[j], box[j] + 1) for j in outer)):
        lo, hi = -box[inner], box[inner]
        for cap, r in caps:
            fixed = sum(v * r[j] for v, j in zip(vals, outer))
            ri = r[inner]
            if ri == 0:
                if abs(fixed) > cap:
                    lo, hi = 1, 0
                    break
                continue
            a, b = Fraction(-cap - fixed, ri), Fraction(cap - fixed, ri)
            if ri < 0:
                a, b = b, a
            lo, hi = max(lo, ceil(a)), min(hi, floor(b))
            if lo > hi:
                break
        for t in range(lo, hi + 1):
            a = [0] * e
            for v, j in zip(vals, outer):
                a[j] = v
            a[inner] = t
            first = next((c for c in a if c != 0), 0)
            if first <= 0:
                continue
            g = 0
            for c in a:
                g = gcd(g, c)
            if g != 1:
                continue
            if is_separating(a, cmap):
                found.append(IntegerForm(tuple(a)))
    return sorted(found)


# -- cones ---------------------------------------------------------------------

@dataclass(frozen=True)
class FinitelyGeneratedCone:
    """Closed convex cone spanned by integer generators (zeros dropped)."""

    generators: tuple
    rank: int

    def __init__(self, generators, rank=None):
        gens = []
        for g in generators:
            g = tuple(g)
            if any(g) and g not in gens:
                gens.append(g)
        if rank is None:
            if not gens:
                raise ValueError("rank is required for a cone without generators")
            rank = len(gens[0])
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "rank", rank)

    def __neg__(self):
        return FinitelyGeneratedCone([tuple(-c for c in g) for g in self.generators], self.rank)

    def contains(self, x):
        return cone_contains(self, x)

    @cached_property
    def halfspaces(self):
        """Inward facet normals ``n`` with ``cone = {y : <n, y> >= 0 for all n}``.

        Only for full-dimensional cones. Each facet hyperplane is spanned by
        ``rank - 1`` independent generators, so candidates come from their
        generalized cross products.
        """
        e = self.rank
        if _linalg.rank(self.generators) < e:
            raise ShiftsDontSpan("facet description needs a full-dimensional cone")
        normals = []
        for sub in combinations(self.generators, e - 1):
            n = _linalg.normal_vector(sub, e)
            if not any(n):
                continue
            vals = [_linalg.dot(n, g) for g in self.generators]
            if all(v >= 0 for v in vals):
                pass
            elif all(v <= 0 for v in vals):
                n = tuple(-c for c in n)
            else:
                continue
            n = _linalg.primitive(n)
            if n not in normals:
                normals.append(n)
        return tuple(sorted(normals))

    def contains_by_halfspaces(self, x):
        return all(_linalg.dot(n, x) >= 0 for n in self.halfspaces)


def cone_contains(cone, x):
    """Exact membership by Farkas: ``x`` is outside iff some ``y`` has
    ``<y, g> >= 0`` on all generators and ``<y, x> <= -1``."""
    ineqs = [(g, 0) for g in cone.generators]
    ineqs.append((tuple(-c for c in x), 1))
    return not is_feasible(ineqs, cone.rank)


def shift_cone(cmap):
    return FinitelyGeneratedCone(cmap.shifts, cmap.rank)


def is_directed(cmap, x):
    """Whether ``x`` lies on a semipermeable hyperplane, i.e. outside ``B_r^+ u B_r^-``."""
    if not any(x):
        raise ZeroPoint("the origin is never directed")
    if strictly_positive_witness(cmap.shifts, rank=cmap.rank) is None:
        raise NotAcute("shift set admits no strictly positive form")
    cone = shift_cone(cmap)
    return not cone_contains(cone, x) and not cone_contains(-cone, x)


# -- chambers ------------------------------------------------------------------

def sign_vector(forms, x):
    return tuple(_sign(_linalg.dot(_coeffs(f), x)) for f in forms)


@dataclass(frozen=True)
class Chamber:
    """Open cone ``{x : signs[j] * Phi_j(x) > 0}``.

    ``interior`` is an integer point inside it. Rank-2 chambers also carry
    their two bounding rays in counterclockwise order.
    """

    signs: tuple
    wild: bool = False
    interior: tuple = field(default=None, compare=False)
    rays: tuple = field(default=None, compare=False)


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _angle_cmp(u, v):
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return hu - hv
    return -_sign(_cross(u, v))


def sort_rays(rays):
    return sorted(rays, key=cmp_to_key(_angle_cmp))


def _chambers_angular(forms):
    rays = []
    for f in forms:
        a, b = _coeffs(f)
        rays += [(-b, a), (b, -a)]
    rays = sort_rays(rays)
    out = []
    n = len(rays)
    for i in range(n):
        s, t = rays[i], rays[(i + 1) % n]
        if _cross(s, t) > 0:
            inside = (s[0] + t[0], s[1] + t[1])
        else:
            # a single line: the sector is a half-plane
            inside = (-s[1], s[0])
        out.append(Chamber(sign_vector(forms, inside), interior=inside, rays=(s, t)))
    return out


def _chambers_by_signs(forms, rank):
    coeffs = [_coeffs(f) for f in forms]
    out = []

    def extend(prefix):
        ineqs = [(tuple(s * c for c in coeffs[j]), 1) for j, s in enumerate(prefix)]
        pt = find_point(ineqs, rank)
        if pt is None:
            return
        if len(prefix) == len(coeffs):
            out.append(Chamber(tuple(prefix), interior=_linalg.primitive(pt)))
            return
        for s in (1, -1):
            extend(prefix + [s])

    extend([])
    return out


def build_chambers(forms, rank, method="auto"):
    """Feasible sign vectors of the arrangement, as :class:`Chamber` objects.

    ``method`` is ``"angular"`` (rank 2 only), ``"signs"`` (any rank, exact
    feasibility per sign prefix) or ``"auto"``.
    """
    forms = list(forms)
    if not forms:
        # no hyperplanes: the whole space is one chamber
        return [Chamber((), interior=(1,) + (0,) * (rank - 1))]
    if method == "auto":
        method = "angular" if rank == 2 else "signs"
    if method == "angular":
        if rank != 2:
            raise ValueError("angular chamber construction is rank 2 only")
        return _chambers_angular(forms)
    if len(forms) > MAX_SIGN_FORMS:
        raise TooManyForms(f"{len(forms)} forms exceed the sign-vector guard {MAX_SIGN_FORMS}")
    return _chambers_by_signs(forms, rank)


def classify_wild(chambers, forms, cone):
    """Flag chambers meeting ``cone``: feasibility of ``s_j Phi_j >= 1`` inside it."""
    inner = [(n, 0) for n in cone.halfspaces]
    coeffs = [_coeffs(f) for f in forms]
    out = []
    for ch in chambers:
        ineqs = [(tuple(s * c for c in a), 1) for s, a in zip(ch.signs, coeffs)]
        out.append(replace(ch, wild=is_feasible(ineqs + inner, cone.rank)))
    return out


@dataclass(frozen=True)
class TameCone:
    forms: tuple
    chambers: tuple
    shift_cone: FinitelyGeneratedCone

    @property
    def rank(self):
        return self.shift_cone.rank

    @cached_property
    def wild_chambers(self):
        return tuple(c for c in self.chambers if c.wild)

    def contains(self, x):
        return tame_cone_contains(self, x)


def build_tame_cone(cmap, forms=None):
    if not is_relatively_prime_type(cmap):
        raise NotRelativelyPrime("tame cone needs a map of relatively prime type")
    if strictly_positive_witness(cmap.shifts, rank=cmap.rank) is None:
        raise NotAcute("shift set admits no strictly positive form")
    if forms is None:
        forms = enumerate_separating_forms(cmap)
    cone = shift_cone(cmap)
    chambers = classify_wild(build_chambers(forms, cmap.rank), forms, cone)
    return TameCone(tuple(forms), tuple(chambers), cone)


def tame_cone_contains(tame, x):
    """Membership in the tame cone; the origin (which lies in ``B_r^-``) is not tame."""
    if not any(x):
        return False
    neg = tuple(-c for c in x)
    if tame.shift_cone.contains_by_halfspaces(neg):
        return False
    s = sign_vector(tame.forms, x)
    for ch in tame.wild_chambers:
        if all(sj == 0 or sj == cj for sj, cj in zip(s, ch.signs)):
            return False
    return True


def tame_mask(tame, points):
    """Vectorised :func:`tame_cone_contains` over an integer array of shape (n, e)."""
    pts = np.asarray(points)
    e = tame.rank
    forms = np.array([f.coeffs for f in tame.forms], dtype=object).reshape(-1, e)
    normals = np.array(tame.shift_cone.halfspaces, dtype=object).reshape(-1, e)
    bound = max(int(np.abs(forms).max()) if forms.size else 0,
                int(np.abs(normals).max()) if normals.size else 0)
    span = int(np.abs(pts).max()) if pts.size else 0
    dtype = np.int64 if span * bound * e < 2**62 else object
    pts = pts.astype(dtype)
    forms = forms.astype(dtype)
    vals = pts @ forms.T
    s = (vals > 0).astype(np.int64) - (vals < 0).astype(np.int64)
    zero = ~np.any(pts != 0, axis=1)
    if len(normals):
        in_neg = np.all((-pts) @ normals.astype(dtype).T >= 0, axis=1)
    else:
        in_neg = np.ones(len(pts), dtype=bool)
    wild = np.zeros(len(pts), dtype=bool)
    for ch in tame.wild_chambers:
        sig = np.array(ch.signs, dtype=np.int64)
        wild |= np.all(s * sig >= 0, axis=1)
    return ~(zero | in_neg | wild)
