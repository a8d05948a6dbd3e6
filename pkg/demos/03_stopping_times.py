# Stopping times for the (3, 1) family, and the A_k fractions behind them.
from gencollatz.catalog import Section4Params, build_section4_map
from gencollatz.density import ak_fraction, empirical_stopping_fraction
from gencollatz.trajectory import guaranteed_stopping_radius, omega_map, stopping_time

T = build_section4_map(Section4Params(3, 1))

for x in [(10, 0), (100, 37), (-55, 201), (1234, -987)]:
    print(x, "stops after", stopping_time(T, x, cap=200).k)

# share of residue sequences whose multiplier product is below 3^k
for k in range(1, 9):
    a = ak_fraction(T, k).fraction
    print(k, float(a))

# beyond this radius a point stops within k steps, given its first k residues
for rep, seq in list(omega_map(T, 2).items())[:5]:
    r = guaranteed_stopping_radius(T, list(seq))
    print(seq, None if r is None else round(r.value, 2))

# sampled points from a large ball nearly all stop
est = empirical_stopping_fraction(T, 10**4, 200, 2000, seed=1)
print("stopping fraction:", est.value, "+/-", round(est.ci_halfwidth, 4))
