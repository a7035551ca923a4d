import itertools

from gmpy2 import mpq

import pytest

from nspoly.boxes import (
    NAMED_BOXES,
    NUM_ENTRIES,
    UNIFORM,
    Box,
    Correlators,
    box_from_correlators,
    box_from_line,
    box_index,
    box_to_line,
    correlators_from_box,
    eq4_matrix,
    make_box,
    mix,
    named_box,
    noisy,
    validate,
)
from nspoly.rational import rank, rat


def test_box_index_bijective():
    seen = {
        box_index(x, y, z, a, b, c)
        for x, y, z, a, b, c in itertools.product((0, 1), repeat=6)
    }
    assert seen == set(range(64))
    assert box_index(0, 0, 0, 0, 0, 0) == 0
    assert box_index(1, 1, 1, 1, 1, 1) == 63


def test_eq4_matrix_shape_and_rank():
    eq4 = eq4_matrix()
    assert len(eq4) == 64 and all(len(r) == 27 for r in eq4)
    # every entry of the expansion 8P = sum_k eq4[i][k] corr_k is +-1 on
    # the relevant slots and the slot-0 coefficient is always 1
    assert all(r[0] == 1 for r in eq4)
    assert all(v in (-1, 0, 1) for r in eq4 for v in r)
    assert rank([list(r) for r in eq4]) == 27


def test_correlator_roundtrip():
    for name in sorted(NAMED_BOXES):
        b = named_box(name)
        assert box_from_correlators(correlators_from_box(b)) == b


def test_uniform_box():
    c = correlators_from_box(UNIFORM)
    assert all(v == 0 for v in c.singles + c.pairs + c.triples)
    assert validate(UNIFORM.probabilities) == []


def test_named_boxes_valid():
    for name in sorted(NAMED_BOXES):
        assert validate(named_box(name).probabilities) == [], name


def test_validate_catches_bad_tables():
    bad = list(UNIFORM.probabilities)
    bad[0] = rat(-1, 8)
    bad[1] = rat(3, 8)
    assert any("< 0" in e for e in validate(bad))
    bad = [rat(1, 4)] * 64
    assert validate(bad)  # normalization broken
    # a signaling table: A's marginal depends on y
    probs = [rat(0)] * 64
    for setting in range(8):
        x, y = setting >> 2 & 1, setting >> 1 & 1
        a = x & y
        probs[8 * setting + 4 * a] = rat(1)
    table = probs
    assert any("signal" in e.lower() for e in validate(table))


def test_mix_and_noisy():
    b = named_box("Box46")
    m = mix([b, UNIFORM], [rat(1, 4), rat(3, 4)])
    assert m == noisy(b, rat(3, 4))
    assert noisy(b, 0) == b
    assert noisy(b, 1) == UNIFORM
    c = correlators_from_box(noisy(b, rat(1, 2)))
    full = correlators_from_box(b)
    assert c.triples == tuple(v / 2 for v in full.triples)


def test_line_roundtrip():
    for name in ("Box3", "GHZ", "PR-BC"):
        b = named_box(name)
        assert box_from_line(box_to_line(b)) == b
    with pytest.raises(ValueError):
        box_from_line("1 2 3")


def test_named_box_unknown():
    with pytest.raises(KeyError):
        named_box("nope")


def test_box46_correlators():
    c = correlators_from_box(named_box("Box46"))
    assert all(v == 0 for v in c.singles + c.pairs)
    for setting in range(8):
        x, y, z = setting >> 2 & 1, setting >> 1 & 1, setting & 1
        assert c.triples[setting] == (-1) ** (x * y + x * z + y * z)


def test_box3_defining_correlators():
    c = correlators_from_box(named_box("Box3"))
    # the defining modular relations fix three pair and two triple
    # correlators; everything else is uniformly random
    assert all(v == 0 for v in c.singles)
    assert sorted(c.pairs) == [-1, -1, -1] + [0] * 9
    assert sorted(c.triples) == [-1] + [0] * 6 + [1]
