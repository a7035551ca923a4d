import random

from nspoly.boxes import named_box
from nspoly.facets import corr_homog
from nspoly.scenarios import deterministic_boxes
from nspoly.symmetry import (
    GROUP_ORDER,
    all_relabelings,
    apply,
    apply_corr_signed,
    canonical_form,
    compose,
    identity_relabeling,
    inverse,
    orbit_partition,
    permute_entries,
    stabilizer_order,
)

rng = random.Random(99)
GROUP = all_relabelings()


def test_group_order_and_distinct():
    assert len(GROUP) == GROUP_ORDER == 3072
    assert len({g.entry_perm for g in GROUP}) == GROUP_ORDER


def test_identity():
    e = identity_relabeling()
    assert e.entry_perm == tuple(range(64))
    b = named_box("Box3")
    assert apply(e, b) == b


def test_closure_and_inverse_sampled():
    perms = {g.entry_perm for g in GROUP}
    b = named_box("GHZ")
    for _ in range(40):
        g, h = rng.choice(GROUP), rng.choice(GROUP)
        gh = compose(g, h)
        assert gh.entry_perm in perms
        assert apply(gh, b) == apply(g, apply(h, b))
        assert compose(g, inverse(g)).entry_perm == tuple(range(64))


def test_corr_action_consistency():
    for name in ("Box3", "Box46", "GHZ", "PR-BC"):
        b = named_box(name)
        hom = corr_homog(b)
        for _ in range(10):
            g = rng.choice(GROUP)
            assert apply_corr_signed(g, hom) == corr_homog(apply(g, b))


def test_corr_action_fixes_slot0():
    hom = corr_homog(named_box("Box44"))
    for _ in range(20):
        g = rng.choice(GROUP)
        assert apply_corr_signed(g, hom)[0] == 1


def test_canonical_form_invariant():
    b = named_box("Box46")
    rep = canonical_form(b)
    for _ in range(15):
        g = rng.choice(GROUP)
        assert canonical_form(apply(g, b)) == rep


def test_permute_entries():
    perm = tuple(reversed(range(64)))
    vals = tuple(range(64))
    out = permute_entries(perm, vals)
    assert permute_entries(perm, out) == vals


def test_deterministic_boxes_single_orbit():
    dets = deterministic_boxes()
    assert len(dets) == 64
    table = orbit_partition(dets)
    assert len(table.classes) == 1
    assert table.classes[0].size == 64


def test_orbit_stabilizer():
    for name in ("Det0", "Box46", "Box44", "PR-BC"):
        b = named_box(name)
        orbit = {apply(g, b).probabilities for g in GROUP}
        assert len(orbit) * stabilizer_order(b) == GROUP_ORDER


def test_mixed_orbit_partition():
    dets = deterministic_boxes()
    points = [named_box("Box46"), dets[0], named_box("Box46Prime"), dets[5], dets[63]]
    table = orbit_partition(points)
    assert len(table.classes) == 2
    sizes = sorted(c.size for c in table.classes)
    assert sizes == [2, 3]  # Box46/Box46Prime share a class; three det copies
