"""Primitive integer linear forms."""
from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True, order=True)
class IntegerForm:
    """Linear form ``x -> <coeffs, x>`` with coprime integer coefficients.

    Orientation is kept as given; :meth:`canonical` picks the representative
    whose first nonzero coefficient is positive, giving one form per
    hyperplane.
    """

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        g = 0
        for c in coeffs:
            g = gcd(g, c)
        if g == 0:
            raise ValueError("the zero covector is not a form")
        object.__setattr__(self, "coeffs", tuple(c // g for c in coeffs))

    def __call__(self, x):
        return sum(a * b for a, b in zip(self.coeffs, x))

    def __len__(self):
        return len(self.coeffs)

    def __neg__(self):
        return IntegerForm(tuple(-c for c in self.coeffs))

    @property
    def is_canonical(self):
        return next(c for c in self.coeffs if c != 0) > 0

    def canonical(self):
        return self if self.is_canonical else -self

    def __str__(self):
        return ",".join(str(c) for c in self.coeffs)
