# The (d, b) family on Z^2: the bound tends to 1 as bd grows.
from gencollatz.catalog import Section4Params, build_section4_map, section4_closed_form_bound
from gencollatz.density import divergence_density_bound, product_hypothesis
from gencollatz.geometry import build_tame_cone, enumerate_separating_forms
from gencollatz.mapcore import strictly_positive_witness

p = Section4Params(3, 1)
T = build_section4_map(p)
for (i, j), (m, r) in sorted(T.table.items()):
    print((i, j), m, r)

# all shifts sit in the first quadrant
print("positive form:", strictly_positive_witness(T.shifts).coeffs)

forms = enumerate_separating_forms(T)
print("forms:", [f.coeffs for f in forms])
tame = build_tame_cone(T, forms)
print("wild sectors:", [c.rays for c in tame.wild_chambers])

# pipeline vs the closed form 1 - arccos(bd / sqrt(1 + (bd)^2)) / pi
for d, b in [(2, 1), (3, 1), (4, 2), (3, 10), (5, 20), (3, 100)]:
    q = Section4Params(d, b)
    got = float(divergence_density_bound(build_section4_map(q)).value)
    ref = float(section4_closed_form_bound(q))
    print(f"d={d} b={b:<3} bd={d * b:<4} pipeline={got:.12f} closed={ref:.12f}")
# d = 2 sits above the closed form: there B^+ is not just the shift sector

# the stopping-time hypothesis prod m < d^(d^2)
for d in range(2, 7):
    ph = product_hypothesis(build_section4_map(Section4Params(d, 1)))
    print(d, ph.holds, ph.product, ph.threshold)
