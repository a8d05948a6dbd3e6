# The 3x+1 map extended to Z[sqrt 2], squared so it lives on Z^2.
# Walk through the whole pipeline: forms -> chambers -> tame cone -> bound.
from fractions import Fraction

from gencollatz import build_zsqrt2_map
from gencollatz.density import divergence_density_bound, exact_tame_lattice_density
from gencollatz.geometry import build_tame_cone, enumerate_separating_forms, tame_cone_contains
from gencollatz.trajectory import detect_cycle, iterate, residual_sequence

T = build_zsqrt2_map()
for w in T.residues():
    print(w, "->", "m =", T.multiplier(w), " r =", T.shift(w))

# a few orbits
print(iterate(T, (1, 0), 1), iterate(T, (1, 0), 2))   # (2,0), back to (1,0)
print(residual_sequence(T, (7, 3), 6))
print(detect_cycle(T, (1, 0), 100))
print(detect_cycle(T, (0, 0), 100))

# separating hyperplanes, one primitive form per line
forms = enumerate_separating_forms(T)
print(len(forms), "separating forms:", [f.coeffs for f in forms])

# the lines cut the plane into 2 * len(forms) sectors
tame = build_tame_cone(T, forms)
print(len(tame.chambers), "chambers,", len(tame.wild_chambers), "wild")
for ch in tame.wild_chambers:
    print("  wild sector between", ch.rays[0], "and", ch.rays[1])

# points off the first and third quadrants are tame, hence divergent
for p in [(-1, 1), (5, -2), (3, 4), (-3, -4), (0, 7)]:
    print(p, "tame" if tame_cone_contains(tame, p) else "-")

# the bound, and lattice counts approaching it
print("bound:", divergence_density_bound(T).value)
for n in (10, 50, 200):
    v = exact_tame_lattice_density(T, n, tame=tame).value
    print(n, v if n == 10 else float(v), float(v - Fraction(1, 2)))
