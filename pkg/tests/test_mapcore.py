import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from gencollatz.catalog import Section4Params, build_section4_map
from gencollatz.errors import (BadModulus, DivisibilityError, InvalidEntry, MissingResidue,
                               NonpositiveMultiplier, RankMismatch)
from gencollatz.mapcore import (is_relatively_prime_type, residue_of, shift_span_rank,
                                strictly_positive_witness, validate_map)

from conftest import random_valid_map

ZTABLE = {(0, 0): (1, (0, 0)), (1, 0): (3, (1, 0)), (0, 1): (3, (0, 1)), (1, 1): (9, (3, 1))}


def test_zsqrt2_table_is_valid(zmap):
    cmap = validate_map(2, ZTABLE)
    assert cmap == zmap
    assert cmap.modulus == 2 and cmap.rank == 2
    assert sorted(cmap.multipliers) == [1, 3, 3, 9]


def test_divisibility_failure_is_reported():
    bad = dict(ZTABLE)
    bad[(1, 1)] = (9, (3, 2))
    with pytest.raises(DivisibilityError, match=r"\(12, 11\)"):
        validate_map(2, bad)


def test_missing_residue_is_named():
    bad = {k: v for k, v in ZTABLE.items() if k != (0, 1)}
    with pytest.raises(MissingResidue, match=r"\(0, 1\)"):
        validate_map(2, bad)


@pytest.mark.parametrize("d", [1, 0, -3])
def test_bad_modulus(d):
    with pytest.raises(BadModulus):
        validate_map(d, ZTABLE)


def test_nonpositive_multiplier():
    bad = dict(ZTABLE)
    bad[(0, 0)] = (0, (0, 0))
    with pytest.raises(NonpositiveMultiplier):
        validate_map(2, bad)


def test_malformed_entries():
    with pytest.raises(InvalidEntry):
        validate_map(2, {**ZTABLE, (2, 0): (1, (0, 0))})
    with pytest.raises(RankMismatch):
        validate_map(2, {**ZTABLE, (1, 1): (9, (3, 1, 0))})


def _divisible(d, w, m, r):
    return all((m * c + s) % d == 0 for c, s in zip(w, r))


def test_single_entry_perturbations():
    # every +-1 change to one multiplier or one shift coordinate
    for w, (m, r) in ZTABLE.items():
        variants = [(m + s, r) for s in (-1, 1)]
        for i in range(2):
            for s in (-1, 1):
                rr = list(r)
                rr[i] += s
                variants.append((m, tuple(rr)))
        for mm, rr in variants:
            table = {**ZTABLE, w: (mm, rr)}
            if mm <= 0:
                with pytest.raises(NonpositiveMultiplier):
                    validate_map(2, table)
            elif _divisible(2, w, mm, rr):
                validate_map(2, table)
            else:
                with pytest.raises(DivisibilityError):
                    validate_map(2, table)


def test_divisibility_holds_on_whole_coset(zmap, s4map, rng):
    for cmap in (zmap, s4map):
        d = cmap.modulus
        for w in cmap.residues():
            m, r = cmap.table[w]
            for _ in range(20):
                x = [c + d * rng.randint(-50, 50) for c in w]
                assert all((m * c + s) % d == 0 for c, s in zip(x, r))


def test_residue_of_examples(zmap, s4map):
    assert residue_of((-1, 5), zmap) == (1, 1)
    assert residue_of((0, 0), zmap) == (0, 0)
    assert residue_of((3, 4), s4map) == (0, 1)
    with pytest.raises(RankMismatch):
        residue_of((1, 2, 3), zmap)


def test_residue_invariant_under_lattice_shift(zmap, s4map, rng):
    for cmap in (zmap, s4map):
        d = cmap.modulus
        for _ in range(100):
            x = tuple(rng.randint(-10**6, 10**6) for _ in range(2))
            v = tuple(rng.randint(-10**6, 10**6) for _ in range(2))
            assert residue_of(x, cmap) == residue_of(tuple(a + d * b for a, b in zip(x, v)), cmap)


@given(st.tuples(st.integers(), st.integers()))
def test_residue_in_range(x):
    cmap = build_section4_map(Section4Params(3, 1))
    w = residue_of(x, cmap)
    assert all(0 <= c < 3 for c in w)
    assert all((a - c) % 3 == 0 for a, c in zip(x, w))


def test_relatively_prime_type(zmap, s4map):
    assert is_relatively_prime_type(zmap)
    assert is_relatively_prime_type(s4map)
    table = dict(ZTABLE)
    table[(0, 0)] = (2, (0, 0))
    assert not is_relatively_prime_type(validate_map(2, table))


def test_witness_examples(zmap):
    w = strictly_positive_witness(zmap.shifts)
    assert w.coeffs == (1, 1)
    assert strictly_positive_witness([(1, 0), (-1, 0)]) is None
    vac = strictly_positive_witness([(0, 0)])
    assert vac is not None and any(vac.coeffs)


def test_witness_is_strictly_positive(rng):
    for _ in range(50):
        e = rng.choice([2, 3])
        vecs = [tuple(rng.randint(-5, 5) for _ in range(e)) for _ in range(rng.randint(1, 6))]
        w = strictly_positive_witness(vecs, rank=e)
        if w is not None:
            assert all(w(v) > 0 for v in vecs if any(v))


def test_shift_span_rank_examples(zmap, s4map):
    assert shift_span_rank(zmap) == 2
    assert shift_span_rank(s4map) == 2
    assert shift_span_rank(validate_map(2, {w: (2, (0, 0)) for w in product(range(2), repeat=2)})) == 0


def test_relatively_prime_maps_have_spanning_shifts(rng):
    for d in (2, 3):
        for e in (2, 3):
            for _ in range(10):
                cmap = random_valid_map(rng, d, e)
                assert shift_span_rank(cmap) == e
