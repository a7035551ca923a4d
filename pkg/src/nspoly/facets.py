"""Facets of the local polytope and Bell-functional censuses.

Inequalities are handled in the homogeneous correlator representation: an
integer 27-vector r encodes the constraint r . (1, correlators) >= 0, which
is the unique (up to positive scaling) description of a facet within the
no-signaling affine hull. Functionals (things one evaluates, like the Mermin
expression) are 27-vectors m with value m . (1, correlators).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from gmpy2 import mpq

from .boxes import (
    EQ4,
    HOMOG_DIM,
    NUM_ENTRIES,
    BellFunctional,
    Box,
    box_index,
    correlators_from_box,
    pair_slot,
    single_slot,
    triple_slot,
)
from .polytope import extreme_rays
from .rational import ZERO, ONE, Rational, primitive_integer_form, rat
from .scenarios import deterministic_boxes
from .symmetry import all_relabelings, apply_corr_signed


def corr_homog(b: Box) -> tuple:
    return correlators_from_box(b).homogeneous()


def corr_homog_scaled(b: Box) -> tuple[int, ...]:
    """Integer vector (den, den*correlators); first entry is the denominator."""
    return primitive_integer_form(corr_homog(b), fix_sign=False)


# ---------------------------------------------------------------------------
# named functionals (value vectors)

def _zero_vec():
    return [ZERO] * HOMOG_DIM


def mermin_functional() -> tuple:
    m = _zero_vec()
    m[triple_slot(1, 0, 0)] = ONE
    m[triple_slot(0, 1, 0)] = ONE
    m[triple_slot(0, 0, 1)] = ONE
    m[triple_slot(1, 1, 1)] = -ONE
    return tuple(m)


def svetlichny_functional() -> tuple:
    m = _zero_vec()
    for x, y, z in itertools.product((0, 1), repeat=3):
        m[triple_slot(x, y, z)] = mpq((-1) ** (x * y + x * z + y * z))
    return tuple(m)


def chsh_functional() -> tuple:
    """CHSH between A and B; the third party is ignored."""
    m = _zero_vec()
    m[pair_slot(0, 1, 0, 0)] = ONE
    m[pair_slot(0, 1, 0, 1)] = ONE
    m[pair_slot(0, 1, 1, 0)] = ONE
    m[pair_slot(0, 1, 1, 1)] = -ONE
    return tuple(m)


def gyni_functional() -> tuple:
    """The guess-your-neighbor's-input winning probability."""
    coeffs = [ZERO] * NUM_ENTRIES
    for (a, b, c), (x, y, z) in (
        ((0, 0, 0), (0, 0, 0)),
        ((1, 1, 0), (0, 1, 1)),
        ((0, 1, 1), (1, 0, 1)),
        ((1, 0, 1), (1, 1, 0)),
    ):
        coeffs[box_index(x, y, z, a, b, c)] = rat(1, 4)
    return functional_from_prob_coeffs(coeffs)


def functional_from_prob_coeffs(coeffs: Sequence, offset=ZERO) -> tuple:
    """Value vector of sum_i coeffs[i] P_i + offset via the correlator
    parametrisation."""
    m = _zero_vec()
    m[0] = mpq(offset)
    for i, ci in enumerate(coeffs):
        if ci:
            for k, e in enumerate(EQ4[i]):
                if e:
                    m[k] += mpq(ci) * e / 8
    return tuple(m)


NAMED_FUNCTIONALS = {
    "Mermin": (mermin_functional, 2),
    "Svetlichny": (svetlichny_functional, 4),
    "CHSH": (chsh_functional, 2),
    "GYNI": (gyni_functional, rat(1, 4)),
}


def functional_value(m: Sequence, hom: Sequence) -> Rational:
    """m . (1, correlators); hom may be scaled, in which case the result is
    scaled by hom[0]."""
    return sum(a * b for a, b in zip(m, hom))


def evaluate_functional(m: Sequence, b: Box) -> Rational:
    return functional_value(m, corr_homog(b))


def local_bound(m: Sequence) -> Rational:
    """Max of the functional over the 64 deterministic boxes."""
    return max(evaluate_functional(m, d) for d in deterministic_boxes())


def inequality_from_functional(m: Sequence, bound) -> tuple[int, ...]:
    """Facet form r with r . (1, corr) >= 0 encoding functional <= bound."""
    r = [mpq(bound) - ZERO] + [ZERO] * (HOMOG_DIM - 1)
    r[0] = mpq(bound) - mpq(m[0])
    for k in range(1, HOMOG_DIM):
        r[k] = -mpq(m[k])
    return primitive_integer_form(r, fix_sign=False)


def prob_space_form(r: Sequence) -> tuple[int, ...]:
    """65 integers (B_0..B_63, L) with B . p <= L equivalent to
    r . (1, corr) >= 0, using input-averaged marginal expansions."""
    w = _corr_value_matrix()
    coeffs = [ZERO] * NUM_ENTRIES
    for k in range(1, HOMOG_DIM):
        if r[k]:
            for i in range(NUM_ENTRIES):
                if w[k][i]:
                    coeffs[i] -= r[k] * w[k][i]
    return primitive_integer_form(coeffs + [mpq(r[0])], fix_sign=False)


_W_CACHE: Optional[list] = None


def _corr_value_matrix():
    """w[k][i]: correlator k as a linear form on probabilities (marginals
    averaged over ignored inputs)."""
    global _W_CACHE
    if _W_CACHE is not None:
        return _W_CACHE
    w = [[ZERO] * NUM_ENTRIES for _ in range(HOMOG_DIM)]
    quarter, half = rat(1, 4), rat(1, 2)
    for inp in itertools.product((0, 1), repeat=3):
        for out in itertools.product((0, 1), repeat=3):
            i = box_index(*inp, *out)
            for p in range(3):
                w[single_slot(p, inp[p])][i] += (-1) ** out[p] * quarter
            for (p, q) in ((0, 1), (0, 2), (1, 2)):
                w[pair_slot(p, q, inp[p], inp[q])][i] += (
                    (-1) ** (out[p] + out[q]) * half
                )
            w[triple_slot(*inp)][i] += mpq((-1) ** sum(out))
    _W_CACHE = w
    return w


# ---------------------------------------------------------------------------
# facet enumeration and classification

def local_polytope_facets() -> list[tuple[int, ...]]:
    """All facets of the local polytope (dual description of the 64
    deterministic boxes), as primitive integer facet vectors."""
    rows = [corr_homog_scaled(d) for d in deterministic_boxes()]
    # deterministic boxes have +-1 correlators, so the vectors are unscaled
    assert all(r[0] == 1 for r in rows)
    return extreme_rays(rows, HOMOG_DIM)


@dataclass
class InequalityClass:
    class_id: int
    representative: tuple  # primitive integer facet vector
    size: int
    member_indices: list
    name: Optional[str] = None

    def prob_form(self) -> tuple[int, ...]:
        return prob_space_form(self.representative)


def facet_orbit_partition(facets: Sequence[tuple]) -> list[InequalityClass]:
    """Partition facet vectors into relabeling orbits; ids follow the
    lexicographic order of canonical (minimal) representatives."""
    index_of = {tuple(f): i for i, f in enumerate(facets)}
    group = all_relabelings()
    assigned = [False] * len(facets)
    raw = []
    for i, f in enumerate(facets):
        if assigned[i]:
            continue
        orbit = {tuple(f)}
        for g in group:
            orbit.add(apply_corr_signed(g, f))
        members = []
        for f2 in orbit:
            j = index_of.get(f2)
            if j is not None:
                assigned[j] = True
                members.append(j)
        members.sort()
        raw.append((min(orbit), members))
    raw.sort(key=lambda rm: rm[0])
    classes = [
        InequalityClass(cid, rep, len(members), members)
        for cid, (rep, members) in enumerate(raw)
    ]
    _attach_names(classes)
    return classes


def canonical_inequality(r: Sequence) -> tuple:
    orbit = {tuple(r)}
    for g in all_relabelings():
        orbit.add(apply_corr_signed(g, r))
    return min(orbit)


def positivity_inequality() -> tuple[int, ...]:
    """P(000|000) >= 0 as a facet vector."""
    return tuple(EQ4[box_index(0, 0, 0, 0, 0, 0)])


def _attach_names(classes: list[InequalityClass]):
    named = {"Positivity": canonical_inequality(positivity_inequality())}
    for name, (maker, bound) in NAMED_FUNCTIONALS.items():
        if name == "Svetlichny":
            continue  # not a facet of the local polytope
        named[name] = canonical_inequality(
            inequality_from_functional(maker(), bound)
        )
    by_rep = {c.representative: c for c in classes}
    for name, rep in named.items():
        cls = by_rep.get(rep)
        if cls is not None:
            cls.name = name


# ---------------------------------------------------------------------------
# censuses over the vertex list

@dataclass
class ViolationRecord:
    inequality_class_id: Optional[int]
    name: Optional[str]
    local_bound: Rational
    ns_max: Rational
    achieving_vertex_classes: list


def class_functional(cls: InequalityClass) -> tuple:
    """Value vector of B . p for the class's prob-space form B . p <= L."""
    return functional_from_prob_coeffs(cls.prob_form()[:-1])


def ns_max(
    m: Sequence,
    vertex_homs: Sequence[tuple],
    vertex_class_of: Sequence[int],
    class_id: Optional[int] = None,
    name: Optional[str] = None,
) -> ViolationRecord:
    """Maximum of the functional over the no-signaling vertices, with the set
    of vertex classes attaining it. Valid as the NS maximum because a linear
    maximum over a polytope is attained at a vertex."""
    best = None
    achieving = set()
    for idx, hom in enumerate(vertex_homs):
        val = functional_value(m, hom) / hom[0]
        if best is None or val > best:
            best = val
            achieving = {vertex_class_of[idx]}
        elif val == best:
            achieving.add(vertex_class_of[idx])
    return ViolationRecord(class_id, name, local_bound(m), best, sorted(achieving))


def vertex_hom_matrix(vertex_homs: Sequence[tuple]) -> np.ndarray:
    """Scaled correlator vectors as an int64 matrix (first column = den)."""
    return np.array(vertex_homs, dtype=np.int64)


def prob_tables_hom_matrix(tables: Sequence[Sequence]) -> np.ndarray:
    """Scaled correlator vectors (den, den*correlators) for many probability
    tables at once, exactly, as int64. Scales are positive but not primitive."""
    w4 = np.zeros((HOMOG_DIM, NUM_ENTRIES), dtype=np.int64)
    for k, row in enumerate(_corr_value_matrix()):
        if k == 0:
            continue
        w4[k] = [int(4 * v) for v in row]
    n = len(tables)
    out = np.empty((n, HOMOG_DIM), dtype=np.int64)
    nums = np.empty(NUM_ENTRIES, dtype=np.int64)
    for i, probs in enumerate(tables):
        den = 1
        for p in probs:
            d = int(mpq(p).denominator)
            den = den * d // np.gcd(int(den), d)
        nums[:] = [int(mpq(p) * den) for p in probs]
        out[i, 0] = 4 * den
        out[i, 1:] = w4[1:] @ nums
    g = np.gcd.reduce(out, axis=1)
    return out // g[:, None]


def ns_max_fast(
    m: Sequence,
    vmat: np.ndarray,
    vertex_class_of: Sequence[int],
    class_id: Optional[int] = None,
    name: Optional[str] = None,
) -> ViolationRecord:
    """ns_max with the bulk evaluation done in exact int64 arithmetic."""
    mden = 1
    for v in m:
        mden = mden * mpq(v).denominator // np.gcd(
            int(mden), int(mpq(v).denominator)
        )
    mint = np.array([int(mpq(v) * mden) for v in m], dtype=np.int64)
    dens = vmat[:, 0]
    assert np.abs(mint).max() * np.abs(vmat).max() * len(m) < 2**62
    nums = vmat @ mint  # value * mden * den, exact
    # exact max of nums/(mden*dens): compare the few distinct denominators
    best = None
    for d in np.unique(dens):
        sel = dens == d
        cand = mpq(int(nums[sel].max()), int(mden * d))
        if best is None or cand > best:
            best = cand
    achieving = set()
    idx = np.nonzero(nums * best.denominator == dens * mden * best.numerator)[0]
    for i in idx:
        achieving.add(vertex_class_of[int(i)])
    return ViolationRecord(class_id, name, local_bound(m), best, sorted(achieving))


def mermin_census(
    vertex_homs: Sequence[tuple], vertex_class_of: Sequence[int]
) -> dict[int, int]:
    """Counts per vertex class of vertices attaining the algebraic maximum 4
    of the representative Mermin functional."""
    vmat = np.asarray(vertex_homs, dtype=np.int64)
    mint = np.array([int(v) for v in mermin_functional()], dtype=np.int64)
    hits = np.nonzero(vmat @ mint == 4 * vmat[:, 0])[0]
    counts: dict[int, int] = {}
    for i in hits:
        c = vertex_class_of[int(i)]
        counts[c] = counts.get(c, 0) + 1
    return counts


def _class_slack_stats(slacks, r0_den, members):
    """(worst violating q, any tight, least slack) over one orbit."""
    best = None
    tight = False
    smin = None
    for j in members:
        s = int(slacks[j])
        if smin is None or s < smin:
            smin = s
        if s == 0:
            tight = True
        elif s < 0:
            q = mpq(s, s - r0_den)
            if best is None or q > best:
                best = q
    return best, tight, smin


def violation_thresholds(
    facets: Sequence[tuple],
    facet_class_members: Sequence[Sequence[int]],
    vertex_hom: tuple,
) -> list[tuple[str, Rational]]:
    """noise_to_class_boundary for one box against every inequality class.

    A facet with vector r has slack s = r . (1, corr) at the box and r[0] at
    the uniform box, so the noise level at which the noisy box meets the facet
    is q = s / (s - r[0]). Categories: 'violates' with the max q over the
    violated orbit members (the class stops being violated only at that q);
    'tight' (q = 0) if no member is violated but some is saturated; else
    'interior' with the signed quantity max over the orbit of -s / r[0]."""
    den = vertex_hom[0]
    farr = np.array(facets, dtype=np.int64)
    varr = np.array(vertex_hom, dtype=np.int64)
    assert (
        np.abs(farr).max() * np.abs(varr).max() * farr.shape[1] < 2**62
    ), "slack products would overflow int64"
    slacks = farr @ varr  # den * slack, exact by the bound above
    out = []
    for members in facet_class_members:
        r0_den = int(farr[members[0]][0]) * den
        best, tight, smin = _class_slack_stats(slacks, r0_den, members)
        if best is not None:
            out.append(("violates", best))
        elif tight:
            out.append(("tight", ZERO))
        else:
            out.append(("interior", mpq(-smin, r0_den)))
    return out


def noise_to_class_boundary(
    b: Box, cls: InequalityClass, facets: Sequence[tuple]
) -> tuple[str, Rational]:
    hom = corr_homog_scaled(b)
    return violation_thresholds(facets, [cls.member_indices], hom)[0]


def best_inequality_per_class(
    facets: Sequence[tuple],
    inequality_classes: Sequence[InequalityClass],
    vertex_reps_hom: Sequence[tuple],
) -> dict[int, Optional[int]]:
    """vertex class id -> id of the inequality class with the largest
    violation threshold (None for classes violating nothing)."""
    members = [c.member_indices for c in inequality_classes]
    best = {}
    for vid, hom in enumerate(vertex_reps_hom):
        rows = violation_thresholds(facets, members, hom)
        cand = None
        cand_q = None
        for cls, (cat, q) in zip(inequality_classes, rows):
            if cat == "violates" and (cand_q is None or q > cand_q):
                cand_q = q
                cand = cls.class_id
        best[vid] = cand
    return best
