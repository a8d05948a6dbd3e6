"""Iteration, cycle detection, divergence certificates and stopping times."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod

from .errors import InternalDivisibility, SizeGuard
from .mapcore import residue_of

OMEGA_GUARD = 10**6


@dataclass(frozen=True)
class Cycle:
    preperiod: int
    period: int


@dataclass(frozen=True)
class CertifiedDivergent:
    witness_step: int


@dataclass(frozen=True)
class ExceededCap:
    steps: int


TrajectoryOutcome = Cycle | CertifiedDivergent | ExceededCap


@dataclass(frozen=True)
class StoppingResult:
    k: int | None
    cap: int


def step(cmap, x):
    omega = residue_of(x, cmap)
    m, r = cmap.table[omega]
    d = cmap.modulus
    out = []
    for c, s in zip(x, r):
        q, rem = divmod(m * c + s, d)
        if rem:
            raise InternalDivisibility(f"T{tuple(x)} is not integral")
        out.append(q)
    return tuple(out)


def iterate(cmap, x, k):
    x = tuple(x)
    for _ in range(k):
        x = step(cmap, x)
    return x


def residual_sequence(cmap, x, k):
    seq = []
    x = tuple(x)
    for _ in range(k):
        seq.append(residue_of(x, cmap))
        x = step(cmap, x)
    return seq


def closed_form_iterate(cmap, x, k):
    """k-th iterate from the residual sequence alone.

    ``d^k T^k(x) = (prod m_i) x + sum_j (prod_{i>j} m_i) d^j r_j``.
    """
    d = cmap.modulus
    seq = residual_sequence(cmap, x, k)
    ms = [cmap.multiplier(w) for w in seq]
    rs = [cmap.shift(w) for w in seq]
    total = [prod(ms) * c for c in x]
    tail = 1
    for j in range(k - 1, -1, -1):
        scale = tail * d**j
        total = [t + scale * s for t, s in zip(total, rs[j])]
        tail *= ms[j]
    dk = d**k
    out = []
    for t in total:
        q, rem = divmod(t, dk)
        if rem:
            raise InternalDivisibility("closed form left a remainder")
        out.append(q)
    return tuple(out)


def omega_map(cmap, k):
    """The map Lambda/d^k Lambda -> (Lambda/d Lambda)^k; raises if not injective."""
    d, e = cmap.modulus, cmap.rank
    if d ** (e * k) > OMEGA_GUARD:
        raise SizeGuard(f"{d}^{e * k} cosets exceed the guard {OMEGA_GUARD}")
    out = {}
    seen = {}
    for rep in product(range(d**k), repeat=e):
        seq = tuple(residual_sequence(cmap, rep, k))
        if seq in seen:
            raise AssertionError(f"cosets {seen[seq]} and {rep} share a residual sequence")
        seen[seq] = rep
        out[rep] = seq
    return out


def detect_cycle(cmap, x, max_steps, tame=None):
    """Brent cycle detection, optionally certifying divergence via a tame cone.

    With ``tame`` given, the first orbit point inside the tame cone ends the
    search: tame lattice points diverge, so does everything mapping onto one.
    """
    def certified(p):
        return tame is not None and tame.contains(p)

    x0 = tuple(x)
    if certified(x0):
        return CertifiedDivergent(0)
    power = lam = 1
    tortoise = x0
    hare = step(cmap, x0)
    steps = 1
    while tortoise != hare:
        if certified(hare):
            return CertifiedDivergent(steps)
        if steps >= max_steps:
            return ExceededCap(steps)
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(cmap, hare)
        steps += 1
        lam += 1

    tortoise = hare = x0
    for _ in range(lam):
        hare = step(cmap, hare)
    mu = 0
    while tortoise != hare:
        tortoise = step(cmap, tortoise)
        hare = step(cmap, hare)
        mu += 1
    return Cycle(mu, lam)


def norm_key(x, norm="euclidean"):
    """Exact monotone proxy for the norm: squared length, or max |coord|."""
    if norm == "euclidean":
        return sum(c * c for c in x)
    if norm == "sup":
        return max(abs(c) for c in x)
    raise ValueError(f"unknown norm {norm!r}")


def stopping_time(cmap, x, norm="euclidean", cap=1000):
    """Least ``k`` in ``[1, cap]`` with ``||T^k x|| < ||x||``; ``k=None`` otherwise.

    The origin never stops.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    start = norm_key(x, norm)
    y = tuple(x)
    if start == 0:
        return StoppingResult(None, cap)
    for k in range(1, cap + 1):
        y = step(cmap, y)
        if norm_key(y, norm) < start:
            return StoppingResult(k, cap)
    return StoppingResult(None, cap)


@dataclass(frozen=True)
class StoppingRadius:
    """Radius ``factor * R`` with ``R = max ||r_w||`` kept exact.

    ``r_key`` is ``R^2`` for the Euclidean norm and ``R`` for the sup norm.
    """

    factor: Fraction
    r_key: int
    norm: str

    @property
    def value(self):
        if self.norm == "euclidean":
            return float(self.factor) * self.r_key**0.5
        return float(self.factor * self.r_key)

    def exceeded_by(self, y):
        """Exact test ``||y|| > radius``."""
        key = norm_key(y, self.norm)
        if self.norm == "euclidean":
            return key > self.factor**2 * self.r_key
        return key > self.factor * self.r_key


def guaranteed_stopping_radius(cmap, seq, norm="euclidean"):
    """Radius past which every ``y`` with residual sequence ``seq`` stops at step ``k``.

    ``R (M^k - d^k) / (lambda_k (M - d))`` with ``lambda_k = d^k - prod m``; when
    ``M == d`` the geometric sum degenerates to ``k R d^(k-1) / lambda_k``.
    Returns ``None`` unless ``prod m < d^k``.
    """
    if not seq:
        raise ValueError("residue sequence must be nonempty")
    k = len(seq)
    d = cmap.modulus
    lam = d**k - prod(cmap.multiplier(tuple(w)) for w in seq)
    if lam <= 0:
        return None
    big_m = max(cmap.multipliers)
    if big_m == d:
        geom = k * d ** (k - 1)
    else:
        geom = Fraction(big_m**k - d**k, big_m - d)
    r_key = max(norm_key(r, norm) for r in cmap.shifts)
    return StoppingRadius(Fraction(geom) / lam, r_key, norm)

