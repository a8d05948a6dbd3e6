import random
from itertools import product
from math import gcd

import pytest

from gencollatz import _linalg
from gencollatz.catalog import Section4Params, build_section4_map
from gencollatz.errors import NotAcute, ShiftsDontSpan, TooManyForms, ZeroPoint
from gencollatz.forms import IntegerForm
from gencollatz.geometry import (Chamber, FinitelyGeneratedCone, TameCone, build_chambers,
                                 build_tame_cone, classify_wild, cone_contains,
                                 enumerate_separating_forms, is_directed, is_separating,
                                 min_nonzero_abs, separating_search_box, sign_vector, shift_cone,
                                 tame_cone_contains, tame_mask)
from gencollatz.mapcore import strictly_positive_witness, validate_map
from gencollatz.trajectory import step

ZSQRT2_FORMS = {(1, 1), (1, -1), (1, 0), (1, 2), (1, -2), (1, 4), (1, -4), (0, 1), (2, 1), (2, -1)}


def rank3_map():
    """d = 2 on Z^3: x/2 on the even class, (3x + r)/2 otherwise, r = w + 2 e_1."""
    table = {}
    for w in product(range(2), repeat=3):
        if any(w):
            table[w] = (3, (w[0] + 2, w[1], w[2]))
        else:
            table[w] = (1, (0, 0, 0))
    return validate_map(2, table)


def test_integer_form_normalisation():
    f = IntegerForm((4, -6))
    assert f.coeffs == (2, -3)
    assert (-f).canonical() == f
    assert IntegerForm((0, -3)).canonical().coeffs == (0, 1)
    with pytest.raises(ValueError):
        IntegerForm((0, 0))


def test_min_nonzero_abs_examples():
    assert min_nonzero_abs((1, 0), (1, 0), 2) == 1
    assert min_nonzero_abs((1, 1), (1, 1), 2) == 2
    assert min_nonzero_abs((1, 0), (0, 1), 2) == 2


def test_min_nonzero_abs_against_window_search():
    rng = random.Random(5)
    for _ in range(200):
        d = rng.randint(2, 6)
        a = (rng.randint(-7, 7), rng.randint(-7, 7))
        if gcd(*a) != 1:
            continue
        w = (rng.randrange(d), rng.randrange(d))
        vals = {abs(a[0] * (w[0] + d * i) + a[1] * (w[1] + d * j))
                for i in range(-20, 21) for j in range(-20, 21)}
        assert min_nonzero_abs(a, w, d) == min(v for v in vals if v)


def test_is_separating_examples(zmap):
    assert is_separating((1, 1), zmap)
    assert not is_separating((1, 3), zmap)
    assert is_separating((0, 1), zmap)


def _separating_by_definition(a, cmap, window=6):
    d = cmap.modulus
    for w, (m, r) in cmap.table.items():
        pr = abs(_linalg.dot(a, r))
        for off in product(range(-window, window + 1), repeat=cmap.rank):
            x = [c + d * o for c, o in zip(w, off)]
            v = _linalg.dot(a, x)
            if v != 0 and abs(m * v) <= pr:
                return False
    return True


def test_is_separating_matches_definition(zmap, s4map):
    for cmap in (zmap, s4map):
        for a in product(range(-6, 7), repeat=2):
            if gcd(*a) != 1:
                continue
            assert is_separating(a, cmap) == _separating_by_definition(a, cmap)


def test_zsqrt2_has_ten_separating_hyperplanes(zmap):
    forms = enumerate_separating_forms(zmap)
    assert {f.coeffs for f in forms} == ZSQRT2_FORMS
    assert all(f.is_canonical for f in forms)


def test_section4_contains_boundary_lines(s4map):
    forms = {f.coeffs for f in enumerate_separating_forms(s4map)}
    # kernels R(1, 3) and R(0, 1)
    assert (3, -1) in forms
    assert (1, 0) in forms


def _brute_force_forms(cmap, scale):
    box = separating_search_box(cmap, scale)
    out = set()
    for a in product(*(range(-b, b + 1) for b in box)):
        if not any(a) or next(c for c in a if c) < 0:
            continue
        g = 0
        for c in a:
            g = gcd(g, c)
        if g == 1 and is_separating(a, cmap):
            out.add(a)
    return out


@pytest.mark.parametrize("params", [None, (2, 1), (3, 1), (3, 2), (4, 1)])
def test_enumeration_complete_in_enlarged_box(zmap, params):
    cmap = zmap if params is None else build_section4_map(Section4Params(*params))
    found = {f.coeffs for f in enumerate_separating_forms(cmap)}
    assert _brute_force_forms(cmap, 2) == found
    assert {f.coeffs for f in enumerate_separating_forms(cmap, box_scale=2)} == found


def test_enumeration_needs_spanning_shifts():
    flat = validate_map(2, {(0, 0): (2, (0, 0)), (1, 0): (2, (0, 0)),
                            (0, 1): (2, (0, 0)), (1, 1): (2, (0, 0))})
    with pytest.raises(ShiftsDontSpan):
        enumerate_separating_forms(flat)


def test_map_without_separating_forms_is_all_wild():
    cmap = validate_map(2, {w: (1, w) for w in product(range(2), repeat=3)})
    assert enumerate_separating_forms(cmap) == []
    tame = build_tame_cone(cmap)
    assert len(tame.chambers) == 1 and tame.chambers[0].wild
    assert not tame_cone_contains(tame, (1, -1, 0))
    assert not tame_mask(tame, [(1, -1, 0), (0, 0, 1)]).any()


def test_separating_forms_preserve_sign(zmap, s4map, rng):
    for cmap in (zmap, s4map):
        forms = enumerate_separating_forms(cmap)
        for _ in range(1000):
            x = tuple(rng.randint(-10**6, 10**6) for _ in range(2))
            tx = step(cmap, x)
            for f in forms:
                v = f(x)
                if v:
                    assert (f(tx) > 0) == (v > 0)


def test_cone_contains_examples():
    cone = FinitelyGeneratedCone([(1, 0), (0, 1), (3, 1)])
    assert cone_contains(cone, (2, 3))
    assert not cone_contains(cone, (-1, 2))
    assert cone_contains(FinitelyGeneratedCone([(1, 2), (2, 1)]), (1, 1))
    assert cone_contains(cone, (0, 0))


def test_cone_membership_two_routes_agree(rng):
    for _ in range(40):
        e = rng.choice([2, 3])
        gens = [tuple(rng.randint(-4, 4) for _ in range(e)) for _ in range(rng.randint(e, e + 3))]
        cone = FinitelyGeneratedCone(gens, e)
        if _linalg.rank(cone.generators) < e:
            continue
        for _ in range(30):
            x = tuple(rng.randint(-6, 6) for _ in range(e))
            assert cone_contains(cone, x) == cone.contains_by_halfspaces(x)


def test_is_directed_examples(zmap):
    assert is_directed(zmap, (-1, 1))
    assert not is_directed(zmap, (1, 1))
    assert not is_directed(zmap, (-2, -5))
    with pytest.raises(ZeroPoint):
        is_directed(zmap, (0, 0))
    opposite = validate_map(2, {(0, 0): (1, (0, 0)), (1, 0): (1, (1, 0)),
                                (0, 1): (1, (0, 1)), (1, 1): (1, (-1, -1))})
    with pytest.raises(NotAcute):
        is_directed(opposite, (1, -1))


def test_directed_iff_semipermeable_witness(zmap, s4map):
    for cmap in (zmap, s4map):
        for x in product(range(-20, 21), repeat=2):
            if not any(x):
                continue
            witness = strictly_positive_witness(cmap.shifts, vanish_on=[x], rank=2)
            assert is_directed(cmap, x) == (witness is not None), x


def test_chamber_counts():
    zforms = [IntegerForm(a) for a in sorted(ZSQRT2_FORMS)]
    assert len(build_chambers(zforms, 2)) == 20
    assert len(build_chambers([IntegerForm((1, 1))], 2)) == 2
    quads = build_chambers([IntegerForm((1, 0)), IntegerForm((0, 1))], 2)
    assert {c.signs for c in quads} == {(1, 1), (1, -1), (-1, 1), (-1, -1)}


def test_angular_and_sign_paths_agree(zmap, s4map):
    for cmap in (zmap, s4map, build_section4_map(Section4Params(4, 2))):
        forms = enumerate_separating_forms(cmap)
        ang = build_chambers(forms, 2, "angular")
        sig = build_chambers(forms, 2, "signs")
        assert {c.signs for c in ang} == {c.signs for c in sig}
        assert len(ang) == 2 * len(forms)
        for c in ang + sig:
            assert sign_vector(forms, c.interior) == c.signs


def test_sign_path_guard():
    forms = [IntegerForm((1, k)) for k in range(21)]
    with pytest.raises(TooManyForms):
        build_chambers(forms, 2, "signs")


def test_chambers_partition_lattice(zmap):
    tame = build_tame_cone(zmap)
    for x in product(range(-15, 16), repeat=2):
        s = sign_vector(tame.forms, x)
        if 0 in s:
            continue
        assert sum(c.signs == s for c in tame.chambers) == 1


def test_zsqrt2_wild_chambers(zmap):
    tame = build_tame_cone(zmap)
    wild = [c for c in tame.chambers if c.wild]
    assert len(tame.chambers) == 20 and len(wild) == 5
    assert all(c.interior[0] > 0 and c.interior[1] > 0 for c in wild)
    assert all(not (c.interior[0] > 0 and c.interior[1] > 0) for c in tame.chambers if not c.wild)


def test_quadrant_toy_classification():
    forms = [IntegerForm((1, 0)), IntegerForm((0, 1))]
    cone = FinitelyGeneratedCone([(1, 2), (2, 1)])
    chambers = classify_wild(build_chambers(forms, 2), forms, cone)
    assert [c.signs for c in chambers if c.wild] == [(1, 1)]


def test_section4_wild_chambers_fill_shift_sector(s4map):
    tame = build_tame_cone(s4map)
    for c in tame.chambers:
        x, y = c.interior
        inside = x > 0 and y - 3 * x > 0
        assert c.wild == inside


def test_tame_membership_examples(zmap):
    tame = build_tame_cone(zmap)
    assert tame_cone_contains(tame, (-3, 7))
    assert not tame_cone_contains(tame, (5, 2))
    assert not tame_cone_contains(tame, (0, 1))
    assert not tame_cone_contains(tame, (0, 0))


def test_zsqrt2_tame_cone_is_open_quadrants(zmap):
    tame = build_tame_cone(zmap)
    for x, y in product(range(-25, 26), repeat=2):
        assert tame_cone_contains(tame, (x, y)) == (x * y < 0)


def test_tame_mask_matches_scalar(zmap, s4map):
    import numpy as np
    for cmap in (zmap, s4map, rank3_map()):
        tame = build_tame_cone(cmap)
        pts = np.array(list(product(range(-6, 7), repeat=cmap.rank)), dtype=np.int64)
        mask = tame_mask(tame, pts)
        assert mask.tolist() == [tame_cone_contains(tame, tuple(p)) for p in pts.tolist()]
        big = pts * (10**17)
        assert tame_mask(tame, big).tolist() == mask.tolist()


@pytest.mark.parametrize("params", [None, (3, 1), (4, 2), (5, 1)])
def test_tame_cone_is_invariant(zmap, params):
    cmap = zmap if params is None else build_section4_map(Section4Params(*params))
    tame = build_tame_cone(cmap)
    rng = random.Random(11)
    n = 0
    while n < 1000:
        x = (rng.randint(-10**5, 10**5), rng.randint(-10**5, 10**5))
        if not tame_cone_contains(tame, x):
            continue
        assert tame_cone_contains(tame, step(cmap, x))
        n += 1


def test_rank3_pipeline():
    cmap = rank3_map()
    forms = enumerate_separating_forms(cmap)
    assert {f.coeffs for f in forms} == {(0, 0, 1), (0, 1, -2), (0, 1, -1), (0, 1, 0),
                                         (0, 1, 1), (0, 2, -1)}
    tame = build_tame_cone(cmap)
    cone = tame.shift_cone
    for x in product(range(-2, 3), repeat=3):
        assert cone.contains_by_halfspaces(x) == cone_contains(cone, x)
    assert not tame_cone_contains(tame, (-3, -1, -1))   # in B^-
    # tame lattice points stay tame under T
    for x in product(range(-4, 5), repeat=3):
        if tame_cone_contains(tame, x):
            assert tame_cone_contains(tame, step(cmap, x))
    # every plane contains the x-axis, so the arrangement is a 2D fan times a line
    assert len(tame.chambers) == 12
    rng = random.Random(2)
    n = 0
    while n < 300:
        x = tuple(rng.randint(-10**4, 10**4) for _ in range(3))
        if tame_cone_contains(tame, x):
            assert tame_cone_contains(tame, step(cmap, x))
            n += 1
