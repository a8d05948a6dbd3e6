"""Densities: lattice counts in balls, the tame-cone measure, A_k fractions,
the product hypothesis and seeded Monte Carlo estimators."""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import floor, isqrt, log, prod, sqrt

import mpmath
import numpy as np

from .errors import EmptySample, SizeGuard, StateGuard
from .geometry import build_tame_cone, tame_mask
from .trajectory import CertifiedDivergent, detect_cycle, stopping_time

BALL_GUARD = 20_000_000
AK_STATE_CAP = 1_000_000
_DIRECTION_SCALE = 2**40


@dataclass(frozen=True)
class DensityEstimate:
    value: object
    kind: str                 # "exact" or "monte_carlo"
    ci_halfwidth: float | None = None
    samples: int | None = None
    seed: int | None = None

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class AkTable:
    k: int
    fraction: Fraction


@dataclass(frozen=True)
class ProductHypothesis:
    holds: bool
    product: int
    threshold: int


def hoeffding_halfwidth(n, confidence=0.95):
    return sqrt(log(2 / (1 - confidence)) / (2 * n))


# -- lattice points in balls ----------------------------------------------------

def _squared_bound(radius):
    r = Fraction(radius)
    if r < 0:
        raise ValueError("radius must be non-negative")
    return floor(r * r)


def _check_size(radius, rank):
    count = (2 * floor(Fraction(radius)) + 1) ** rank
    if count > BALL_GUARD:
        raise SizeGuard(f"box of {count} lattice points exceeds the guard {BALL_GUARD}")


def lattice_points_in_ball(radius, norm="euclidean", rank=2):
    """Yield every ``x`` in Z^rank with ``||x|| <= radius`` (exact comparison)."""
    if rank > 3:
        raise SizeGuard("exact ball enumeration is limited to rank <= 3")
    _check_size(radius, rank)
    if norm == "sup":
        big_r = floor(Fraction(radius))
        yield from product(range(-big_r, big_r + 1), repeat=rank)
        return
    if norm != "euclidean":
        raise ValueError(f"unknown norm {norm!r}")

    def rec(prefix, budget, left):
        if left == 0:
            yield tuple(prefix)
            return
        r = isqrt(budget)
        for c in range(-r, r + 1):
            yield from rec(prefix + [c], budget - c * c, left - 1)

    yield from rec([], _squared_bound(radius), rank)


def lattice_ball_array(radius, norm="euclidean", rank=2):
    """Same points as :func:`lattice_points_in_ball`, as an int64 array."""
    _check_size(radius, rank)
    big_r = floor(Fraction(radius))
    axis = np.arange(-big_r, big_r + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([axis] * rank), indexing="ij"), axis=-1).reshape(-1, rank)
    if norm == "sup":
        return grid
    return grid[(grid * grid).sum(axis=1) <= _squared_bound(radius)]


# -- tame cone measure ------------------------------------------------------------

def _extreme_rays(generators):
    """Bounding rays (start, end), counterclockwise, of a pointed planar cone."""
    cross = lambda u, v: u[0] * v[1] - u[1] * v[0]
    start = next(s for s in generators if all(cross(s, g) >= 0 for g in generators))
    end = next(t for t in generators if all(cross(g, t) >= 0 for g in generators))
    return start, end


def _in_sector(p, sector):
    s, t = sector
    return s[0] * p[1] - s[1] * p[0] >= 0 and p[0] * t[1] - p[1] * t[0] >= 0


def _same_direction(u, v):
    return u[0] * v[1] == u[1] * v[0] and u[0] * v[0] + u[1] * v[1] > 0


def _sector_angle(s, t):
    cross = s[0] * t[1] - s[1] * t[0]
    dot = s[0] * t[0] + s[1] * t[1]
    return mpmath.atan2(cross, dot)


def _intersection_angle(a, b):
    """Angle of the intersection of two closed sectors, each of opening <= pi."""
    starts = [p for p in (a[0], b[0]) if _in_sector(p, a) and _in_sector(p, b)]
    ends = [p for p in (a[1], b[1]) if _in_sector(p, a) and _in_sector(p, b)]
    if not starts or not ends:
        return mpmath.mpf(0)
    if len(starts) == 2 and not _same_direction(*starts):
        # two half-planes meeting along a line
        return mpmath.mpf(0)
    return _sector_angle(starts[0], ends[0])


def _angular_tame_fraction(tame, dps=40):
    neg = [tuple(-c for c in g) for g in tame.shift_cone.generators]
    b_minus = _extreme_rays(neg)
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        for ch in tame.chambers:
            if ch.wild:
                continue
            total += _sector_angle(*ch.rays) - _intersection_angle(ch.rays, b_minus)
        return +(total / (2 * mpmath.pi))


def _sample_directions(rng, n, rank, norm):
    if norm == "euclidean":
        pts = np.rint(rng.standard_normal((n, rank)) * _DIRECTION_SCALE)
        return pts.astype(np.int64)
    if norm == "sup":
        return rng.integers(-_DIRECTION_SCALE, _DIRECTION_SCALE, size=(n, rank), endpoint=True)
    raise ValueError(f"unknown norm {norm!r}")


def monte_carlo_tame_fraction(tame, samples=20_000, seed=0, norm="euclidean"):
    """Fraction of the unit ball in the tame cone, by sampling.

    Euclidean: isotropic Gaussian directions. Sup norm: uniform points of the
    cube. Each sample is rounded to an integer point and tested exactly.
    """
    if samples <= 0:
        raise EmptySample("need at least one sample")
    rng = np.random.default_rng(seed)
    pts = _sample_directions(rng, samples, tame.rank, norm)
    hits = int(tame_mask(tame, pts).sum())
    return DensityEstimate(hits / samples, "monte_carlo", hoeffding_halfwidth(samples), samples, seed)


def tame_measure_fraction(tame, norm="euclidean", samples=20_000, seed=0):
    """``vol(D_T n ball) / vol(ball)``: exact angular sum in rank 2, Monte Carlo otherwise."""
    if not any(not c.wild for c in tame.chambers):
        return DensityEstimate(mpmath.mpf(0), "exact")
    if tame.rank == 2 and norm == "euclidean" and all(c.rays for c in tame.chambers):
        return DensityEstimate(_angular_tame_fraction(tame), "exact")
    return monte_carlo_tame_fraction(tame, samples, seed, norm)


def divergence_density_bound(cmap, norm="euclidean", samples=20_000, seed=0):
    """Lower bound on the lower density of divergent points."""
    return tame_measure_fraction(build_tame_cone(cmap), norm, samples, seed)


def exact_tame_lattice_density(cmap, radius, norm="euclidean", tame=None):
    """Fraction of lattice points in the ball of given radius that are tame."""
    if cmap.rank > 3:
        raise SizeGuard("exact lattice density is limited to rank <= 3")
    if tame is None:
        tame = build_tame_cone(cmap)
    pts = lattice_ball_array(radius, norm, cmap.rank)
    hits = int(tame_mask(tame, pts).sum())
    return DensityEstimate(Fraction(hits, len(pts)), "exact")


# -- stopping-time ingredients ---------------------------------------------------

def ak_fraction(cmap, k, state_cap=AK_STATE_CAP):
    """``|A_k| / d^(ek)``: share of residue sequences with multiplier product below ``d^k``.

    Dynamic programme over distinct partial products; a product that reaches
    ``d^k`` can only grow, so it is dropped immediately.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    d, e = cmap.modulus, cmap.rank
    limit = d**k
    weights = Counter(cmap.multipliers)
    states = {1: 1}
    for _ in range(k):
        nxt = Counter()
        for p, count in states.items():
            for m, mult in weights.items():
                q = p * m
                if q < limit:
                    nxt[q] += count * mult
        if len(nxt) > state_cap:
            raise StateGuard(f"{len(nxt)} distinct products exceed the cap {state_cap}")
        states = nxt
    return AkTable(k, Fraction(sum(states.values()), d ** (e * k)))


def product_hypothesis(cmap):
    """Exact test of ``prod_w m_w < d^(d^e)``."""
    d, e = cmap.modulus, cmap.rank
    total = prod(cmap.multipliers)
    threshold = d ** (d**e)
    return ProductHypothesis(total < threshold, total, threshold)


# -- seeded sampling ---------------------------------------------------------------

def sample_ball_points(radius, rank, samples, seed, norm="euclidean", shards=1):
    """Uniform lattice points of the closed ball, by rejection from the bounding box.

    Shard ``i`` draws ``samples // shards`` points (the first shards take the
    remainder) from its own child of ``SeedSequence(seed)``, so the result
    depends only on ``(seed, samples, shards)``.
    """
    big_r = floor(Fraction(radius))
    bound = _squared_bound(radius)
    children = np.random.SeedSequence(seed).spawn(shards)
    out = []
    for i, child in enumerate(children):
        want = samples // shards + (1 if i < samples % shards else 0)
        rng = np.random.default_rng(child)
        got = []
        while len(got) < want:
            batch = rng.integers(-big_r, big_r, size=(max(2 * (want - len(got)), 16), rank),
                                 endpoint=True)
            for row in batch.tolist():
                if norm == "sup" or sum(c * c for c in row) <= bound:
                    got.append(tuple(row))
                    if len(got) == want:
                        break
        out.extend(got)
    return out


def empirical_stopping_fraction(cmap, radius, cap, samples, seed, norm="euclidean", shards=1):
    """Share of sampled ball points whose stopping time is at most ``cap``."""
    if samples <= 0:
        raise EmptySample("need at least one sample")
    if cap <= 0:
        return DensityEstimate(0.0, "monte_carlo", hoeffding_halfwidth(samples), samples, seed)
    pts = sample_ball_points(radius, cmap.rank, samples, seed, norm, shards)
    hits = sum(stopping_time(cmap, x, norm, cap).k is not None for x in pts)
    return DensityEstimate(hits / samples, "monte_carlo", hoeffding_halfwidth(samples), samples, seed)


def empirical_divergence_fraction(cmap, radius, max_steps, samples, seed, tame=None,
                                  norm="euclidean", shards=1):
    """Share of sampled ball points certified divergent within ``max_steps``."""
    if samples <= 0:
        raise EmptySample("need at least one sample")
    if tame is None:
        tame = build_tame_cone(cmap)
    pts = sample_ball_points(radius, cmap.rank, samples, seed, norm, shards)
    hits = sum(isinstance(detect_cycle(cmap, x, max_steps, tame), CertifiedDivergent) for x in pts)
    return DensityEstimate(hits / samples, "monte_carlo", hoeffding_halfwidth(samples), samples, seed)
