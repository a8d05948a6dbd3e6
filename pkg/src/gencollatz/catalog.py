"""The two worked examples: T = C^2 on Z[sqrt 2], and the (d, b) family on Z^2."""
from dataclasses import dataclass

import mpmath

from .mapcore import validate_map


@dataclass(frozen=True)
class Section4Params:
    d: int
    b: int

    def __post_init__(self):
        if self.d < 2 or self.b < 1:
            raise ValueError(f"need d >= 2 and b >= 1, got d={self.d}, b={self.b}")


def build_zsqrt2_map():
    """Square of the 3x+1 extension to Z[sqrt 2], in the basis (1, sqrt 2)."""
    return validate_map(2, {
        (0, 0): (1, (0, 0)),
        (1, 0): (3, (1, 0)),
        (0, 1): (3, (0, 1)),
        (1, 1): (9, (3, 1)),
    })


def section4_multiplier(d, i, j):
    if i == j == 0:
        return 1
    if max(i, j) < d - 1:
        return d - 1
    return d + 1


def section4_shift(d, b, i, j):
    if i == j == 0:
        return (0, 0)
    if max(i, j) < d - 1:
        return (i, j + b * d * i)
    if i == d - 1:
        return (1, (b + 1) * d - j)
    return (d - i, b * d * (d - i) + 1)


def build_section4_map(p):
    d, b = p.d, p.b
    table = {(i, j): (section4_multiplier(d, i, j), section4_shift(d, b, i, j))
             for i in range(d) for j in range(d)}
    return validate_map(d, table)


def section4_closed_form_bound(p, dps=50):
    """``1 - arccos(bd / sqrt(1 + (bd)^2)) / pi`` as an mpmath float."""
    with mpmath.workdps(dps):
        bd = mpmath.mpf(p.b * p.d)
        return +(1 - mpmath.acos(bd / mpmath.sqrt(1 + bd * bd)) / mpmath.pi)


def parse_catalog_name(name):
    """``zsqrt2`` or ``section4:d=<D>,b=<B>``."""
    name = name.strip()
    if name == "zsqrt2":
        return build_zsqrt2_map()
    if name.startswith("section4:"):
        params = {}
        for part in name.split(":", 1)[1].split(","):
            key, _, val = part.partition("=")
            params[key.strip()] = int(val)
        if set(params) != {"d", "b"}:
            raise ValueError(f"section4 needs exactly d and b, got {sorted(params)}")
        return build_section4_map(Section4Params(params["d"], params["b"]))
    raise ValueError(f"unknown catalog map {name!r}; known: zsqrt2, section4:d=<D>,b=<B>")
