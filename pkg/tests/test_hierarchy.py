from nspoly.boxes import Box, UNIFORM, named_box, noisy, validate
from nspoly.hierarchy import (
    BIPARTITIONS,
    MODEL_SETS,
    SEQUENCES,
    bipartite_signaling_columns,
    deterministic_local_columns,
    membership,
    noise_resistance,
    ns2_columns,
    one_way_columns,
    paper_order,
    reconstruct_from_certificate,
    sequence_membership,
    sequence_noise_resistances,
)
from nspoly.rational import ONE, ZERO, rat


def test_column_counts():
    assert len(deterministic_local_columns()) == 64
    for g in BIPARTITIONS:
        # 16 x 16 pair response functions x 4 third-party strategies
        assert len(bipartite_signaling_columns(g)) == 1024
        for ordering in ("first", "second"):
            assert len(one_way_columns(g, ordering)) == 256
        # (16 deterministic + 8 PR-type bipartite boxes) x 4 strategies
        assert len(ns2_columns(g)) == 96


def test_columns_are_valid_distributions():
    for col in deterministic_local_columns()[:8]:
        assert sum(col.behavior) == 8  # one unit per input setting
        assert all(v in (0, 1) for v in col.behavior)
    for g in BIPARTITIONS:
        for col in ns2_columns(g)[:8]:
            assert validate(col.behavior) == []


def test_uniform_in_every_model():
    for model in MODEL_SETS:
        cert = membership(UNIFORM, model)
        assert cert is not None
        assert reconstruct_from_certificate(cert) == UNIFORM
    for model in ("L", "NS2"):
        assert noise_resistance(UNIFORM, model) == 0


def test_det_box_in_every_model():
    b = named_box("Det0")
    for model in MODEL_SETS:
        cert = membership(b, model)
        assert cert is not None
        assert reconstruct_from_certificate(cert) == b


def test_pr_bc_membership_pattern():
    b = named_box("PR-BC")
    assert membership(b, "L") is None
    cert = membership(b, "NS2")
    assert cert is not None
    assert reconstruct_from_certificate(cert) == b
    assert sum(cert.weights.values()) == 1


def test_pr_bc_noise_resistances():
    b = named_box("PR-BC")
    assert noise_resistance(b, "L") == rat(2, 3)
    assert noise_resistance(b, "NS2") == 0


def test_noise_resistance_definition():
    # at exactly the threshold q the noisy box is a member; above it, too
    b = named_box("PR-BC")
    q = noise_resistance(b, "L")
    assert membership(noisy(b, q), "L") is not None
    assert membership(noisy(b, q + rat(1, 100)), "L") is not None


def test_box46_l_and_ns2():
    b = named_box("Box46")
    assert noise_resistance(b, "L") == rat(1, 2)
    assert noise_resistance(b, "NS2") == rat(1, 2)
    assert membership(b, "S2") is None


def test_box44_ks2():
    b = named_box("Box44")
    assert noise_resistance(b, "KS2") == rat(3, 8)
    cert = membership(noisy(b, rat(3, 8)), "KS2")
    assert cert is not None
    assert reconstruct_from_certificate(cert) == noisy(b, rat(3, 8))


def test_sequence_direction_convention():
    # deterministic box with c-hat = x * z: A must measure before C, so the
    # box is a member exactly for the sequences placing A ahead of C
    probs = [0] * 64
    for x in range(2):
        for y in range(2):
            for z in range(2):
                probs[8 * (4 * x + 2 * y + z) + (x * z)] = rat(1)
    b = Box(tuple(probs))
    for sigma in SEQUENCES:
        member = sequence_membership(b, sigma) is not None
        assert member == (sigma.index("A") < sigma.index("C"))


def test_sequence_noise_resistances_ns2_box():
    # an NS2 member is a member for every input sequence at zero noise
    b = named_box("PR-BC")
    values = sequence_noise_resistances(b)
    assert set(values) == set(SEQUENCES)
    assert all(v == ZERO for v in values.values())
    for sigma in SEQUENCES:
        cert = sequence_membership(b, sigma)
        assert cert is not None
        assert sum(cert.weights.values()) == ONE


def test_box3_ns2():
    assert noise_resistance(named_box("Box3"), "NS2") == rat(1, 3)


def test_certificate_weights_normalized():
    cert = membership(noisy(named_box("Box46"), rat(1, 2)), "NS2")
    assert cert is not None
    assert sum(cert.weights.values()) == 1
    assert all(w > 0 for w in cert.weights.values())


def test_paper_order():
    rows = [
        (rat(1, 2),) * 5,
        (rat(2, 3), 0, 0, 0, 0),
        (0, 0, 0, 0, 0),
        (rat(1, 2),) * 5,
    ]
    order = paper_order(rows)
    assert order == [2, 1, 0, 3]
