# A rank-3 map: no angular formula, so the tame measure is sampled.
from itertools import product

from gencollatz.density import (divergence_density_bound, empirical_divergence_fraction,
                                exact_tame_lattice_density)
from gencollatz.geometry import build_tame_cone
from gencollatz.mapcore import validate_map

table = {}
for w in product(range(2), repeat=3):
    table[w] = (3, (w[0] + 2, w[1], w[2])) if any(w) else (1, (0, 0, 0))
T = validate_map(2, table)

tame = build_tame_cone(T)
print(len(tame.forms), "forms,", len(tame.chambers), "chambers,", len(tame.wild_chambers), "wild")

est = divergence_density_bound(T, samples=20000, seed=0)
print("Monte Carlo:", est.value, "+/-", round(est.ci_halfwidth, 4))

# exact counts creep up towards the sampled value
for n in (10, 20, 40):
    print(n, float(exact_tame_lattice_density(T, n, tame=tame).value))

# certified-divergent share of a sampled ball, split over shards
print(empirical_divergence_fraction(T, 1000, 100, 400, seed=2, tame=tame, shards=4).value)
