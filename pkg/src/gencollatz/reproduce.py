"""Recompute the worked examples' headline numbers in one pass.

Backs the ``report`` CLI command. Each check records what was expected, what
came out, and whether they agree.
"""
from fractions import Fraction

from .catalog import Section4Params, build_section4_map, build_zsqrt2_map, section4_closed_form_bound
from .density import ak_fraction, divergence_density_bound, exact_tame_lattice_density, product_hypothesis
from .geometry import build_tame_cone, enumerate_separating_forms
from .trajectory import Cycle, detect_cycle

ZSQRT2_FORMS = {(1, 1), (1, -1), (1, 0), (1, 2), (1, -2), (1, 4), (1, -4), (0, 1), (2, 1), (2, -1)}


def _check(name, expected, observed, passed):
    return {"name": name, "expected": expected, "observed": observed, "passed": bool(passed)}


def run_checks():
    out = []
    z = build_zsqrt2_map()
    forms = enumerate_separating_forms(z)
    got = sorted(f.coeffs for f in forms)
    out.append(_check("zsqrt2 separating forms", sorted(ZSQRT2_FORMS), got, set(got) == ZSQRT2_FORMS))

    tame = build_tame_cone(z, forms)
    wild = sum(c.wild for c in tame.chambers)
    out.append(_check("zsqrt2 chambers / wild", [20, 5], [len(tame.chambers), wild],
                      (len(tame.chambers), wild) == (20, 5)))

    bound = float(divergence_density_bound(z).value)
    out.append(_check("zsqrt2 divergence bound", 0.5, bound, abs(bound - 0.5) < 1e-12))

    dens = exact_tame_lattice_density(z, 10, tame=tame).value
    out.append(_check("zsqrt2 tame lattice density r=10", "138/317", str(dens), dens == Fraction(138, 317)))

    cyc = detect_cycle(z, (1, 0), 100)
    out.append(_check("zsqrt2 cycle through (1,0)", "Cycle(0, 2)", repr(cyc), cyc == Cycle(0, 2)))

    ph = product_hypothesis(z)
    out.append(_check("zsqrt2 product hypothesis", False, ph.holds, not ph.holds))

    values = []
    # ordered by bd: 3, 30, 100, 300
    for d, b in [(3, 1), (3, 10), (5, 20), (3, 100)]:
        p = Section4Params(d, b)
        got = float(divergence_density_bound(build_section4_map(p)).value)
        ref = float(section4_closed_form_bound(p))
        values.append(got)
        out.append(_check(f"section4 d={d} b={b} bound", ref, got, abs(got - ref) < 1e-9))
    out.append(_check("section4 bounds increase with bd", "increasing", values,
                      all(a < b for a, b in zip(values, values[1:]))))

    for d in range(3, 7):
        ph = product_hypothesis(build_section4_map(Section4Params(d, 1)))
        out.append(_check(f"section4 d={d} product hypothesis", True,
                          f"{ph.product} < {ph.threshold}" if ph.holds else f"{ph.product} >= {ph.threshold}",
                          ph.holds))

    s = build_section4_map(Section4Params(3, 1))
    a1, a8 = ak_fraction(s, 1).fraction, ak_fraction(s, 8).fraction
    out.append(_check("section4 d=3 a_8 > a_1", "a_8 > a_1", [str(a1), str(a8)], a8 > a1))
    return out
