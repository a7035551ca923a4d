from gmpy2 import mpq

from nspoly import facets as fc
from nspoly.boxes import UNIFORM, named_box
from nspoly.rational import rat
from nspoly.scenarios import deterministic_boxes
from nspoly.symmetry import all_relabelings, apply_corr_signed


def test_named_local_bounds():
    for name, (maker, bound) in fc.NAMED_FUNCTIONALS.items():
        assert fc.local_bound(maker()) == mpq(bound), name


def test_named_values_at_boxes():
    assert fc.evaluate_functional(fc.mermin_functional(), named_box("GHZ")) == 4
    assert fc.evaluate_functional(fc.svetlichny_functional(), named_box("Box46")) == 8
    assert fc.evaluate_functional(fc.gyni_functional(), UNIFORM) == rat(1, 8)
    assert fc.evaluate_functional(fc.mermin_functional(), UNIFORM) == 0


def test_inequality_from_functional_slack():
    m = fc.mermin_functional()
    r = fc.inequality_from_functional(m, 2)
    # r . (1, corr) >= 0 must hold with equality exactly at value = bound
    for b in deterministic_boxes()[:10]:
        slack = fc.functional_value(r, fc.corr_homog(b))
        assert slack >= 0
        assert (slack == 0) == (fc.evaluate_functional(m, b) == 2)
    # GHZ violates: value 4 > 2
    assert fc.functional_value(r, fc.corr_homog(named_box("GHZ"))) < 0


def test_prob_space_form_consistency():
    m = fc.mermin_functional()
    r = fc.inequality_from_functional(m, 2)
    coeffs_and_bound = fc.prob_space_form(r)
    coeffs, bound = coeffs_and_bound[:64], coeffs_and_bound[64]
    for name in ("Det0", "Box3", "GHZ", "PR-BC", "Box46"):
        b = named_box(name)
        lhs = sum(c * p for c, p in zip(coeffs, b.probabilities))
        slack_corr = fc.functional_value(r, fc.corr_homog(b))
        # B . p <= L holds iff the correlator-space slack is >= 0, with the
        # same scale
        assert bound - lhs == slack_corr


def test_positivity_inequality():
    r = fc.positivity_inequality()
    for b in deterministic_boxes()[:16]:
        assert fc.functional_value(r, fc.corr_homog(b)) >= 0
    assert fc.functional_value(r, fc.corr_homog(UNIFORM)) == 1


def test_canonical_inequality_invariant():
    r = fc.inequality_from_functional(fc.mermin_functional(), 2)
    rep = fc.canonical_inequality(r)
    group = all_relabelings()
    for g in group[::321]:
        assert fc.canonical_inequality(apply_corr_signed(g, r)) == rep


def test_ns_max_fast_matches_reference():
    tables = [b.probabilities for b in deterministic_boxes()[::5]]
    tables += [named_box(n).probabilities for n in ("GHZ", "Box46", "PR-BC", "Box3")]
    from nspoly.boxes import Box

    homs = [fc.corr_homog_scaled(Box(t)) for t in tables]
    vmat = fc.prob_tables_hom_matrix(tables)
    class_of = list(range(len(tables)))
    for name, (maker, _) in fc.NAMED_FUNCTIONALS.items():
        ref = fc.ns_max(maker(), homs, class_of)
        fast = fc.ns_max_fast(maker(), vmat, class_of)
        assert fast.ns_max == ref.ns_max, name
        assert fast.achieving_vertex_classes == ref.achieving_vertex_classes


def test_mermin_orbit_threshold_for_box46():
    """The L noise resistance of the GHZ-type extremal box, computed from the
    Mermin-facet orbit alone (no full facet enumeration)."""
    r = fc.inequality_from_functional(fc.mermin_functional(), 2)
    orbit = sorted({apply_corr_signed(g, r) for g in all_relabelings()})
    hom = fc.corr_homog_scaled(named_box("Box46"))
    members = [list(range(len(orbit)))]
    [(cat, q)] = fc.violation_thresholds(orbit, members, hom)
    assert cat == "violates"
    assert q == rat(1, 2)


def test_local_polytope_facets_bipartite_analogue():
    # tripartite facet enumeration is exercised by the workspace suite; here
    # check the facet orbit machinery on a synthetic two-class input
    r1 = fc.positivity_inequality()
    r2 = fc.inequality_from_functional(fc.mermin_functional(), 2)
    group = all_relabelings()
    facets = sorted({apply_corr_signed(g, r1) for g in group}
                    | {apply_corr_signed(g, r2) for g in group})
    classes = fc.facet_orbit_partition(facets)
    assert len(classes) == 2
    assert sum(c.size for c in classes) == len(facets)
    for c in classes:
        assert c.representative in facets
        assert len(c.member_indices) == c.size


def test_violation_thresholds_categories():
    r = fc.positivity_inequality()
    orbit = sorted({apply_corr_signed(g, r) for g in all_relabelings()})
    members = [list(range(len(orbit)))]
    # every valid box satisfies positivity: never 'violates'
    for name in ("Det0", "GHZ", "Box46"):
        hom = fc.corr_homog_scaled(named_box(name))
        [(cat, q)] = fc.violation_thresholds(orbit, members, hom)
        assert cat == "tight"
    hom = fc.corr_homog_scaled(UNIFORM)
    [(cat, q)] = fc.violation_thresholds(orbit, members, hom)
    assert cat == "interior"
