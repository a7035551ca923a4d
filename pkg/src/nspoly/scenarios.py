"""H-representations of the no-signaling polytopes (tripartite and bipartite).

Two equivalent descriptions are provided for each scenario:

* probability space: positivity inequalities plus normalization and
  no-signaling equalities over the raw table entries;
* correlator space: the equalities eliminated via the correlator
  parametrisation, leaving only the positivity inequalities (the fast path
  for vertex enumeration).
"""

from __future__ import annotations

import itertools
from math import gcd

from gmpy2 import mpq

from .boxes import (
    EQ4,
    HOMOG_DIM,
    NUM_ENTRIES,
    Box,
    Correlators,
    box_from_correlators,
    box_index,
)
from .polytope import HRepresentation, VRepresentation, enumerate_vertices
from .rational import ZERO, ONE


def tripartite_prob_hrep() -> HRepresentation:
    """Positivity + normalization + no-signaling over the 64 raw entries."""
    h = HRepresentation(dim=NUM_ENTRIES)
    for i in range(NUM_ENTRIES):
        row = [ZERO] * NUM_ENTRIES
        row[i] = ONE
        h.ineq_rows.append(row)
        h.ineq_rhs.append(ZERO)
    for x, y, z in itertools.product((0, 1), repeat=3):
        row = [ZERO] * NUM_ENTRIES
        for a, b, c in itertools.product((0, 1), repeat=3):
            row[box_index(x, y, z, a, b, c)] = ONE
        h.eq_rows.append(row)
        h.eq_rhs.append(ONE)
    # marginal of the two parties != `party` must not depend on `party`'s input
    for party in range(3):
        others = [q for q in range(3) if q != party]
        for o1, o2 in itertools.product((0, 1), repeat=2):
            for i1, i2 in itertools.product((0, 1), repeat=2):
                row = [ZERO] * NUM_ENTRIES
                for u, sign in ((0, ONE), (1, -ONE)):
                    for w in (0, 1):
                        out = [0, 0, 0]
                        inp = [0, 0, 0]
                        out[others[0]], out[others[1]], out[party] = o1, o2, w
                        inp[others[0]], inp[others[1]], inp[party] = i1, i2, u
                        row[box_index(*inp, *out)] += sign
                h.eq_rows.append(row)
                h.eq_rhs.append(ZERO)
    return h


def tripartite_corr_hrep() -> HRepresentation:
    """The same polytope in the 26 correlator coordinates: 8 P >= 0 rows."""
    h = HRepresentation(dim=HOMOG_DIM - 1)
    for row in EQ4:
        h.ineq_rows.append([mpq(v) for v in row[1:]])
        h.ineq_rhs.append(mpq(-row[0]))
    return h


def corr_vertex_to_box(corr_vertex) -> Box:
    v = tuple(mpq(x) for x in corr_vertex)
    return box_from_correlators(Correlators(v[:6], v[6:18], v[18:]))


def enumerate_tripartite_vertices() -> list[Box]:
    """All extremal tripartite no-signaling boxes, deterministically ordered."""
    vrep = enumerate_vertices(tripartite_corr_hrep())
    return [corr_vertex_to_box(v) for v in vrep.vertices]


# ---------------------------------------------------------------------------
# bipartite (2 parties, 2 inputs, 2 outputs) sanity scenario

def bipartite_index(x: int, y: int, a: int, b: int) -> int:
    return 4 * (2 * x + y) + (2 * a + b)


def bipartite_prob_hrep() -> HRepresentation:
    h = HRepresentation(dim=16)
    for i in range(16):
        row = [ZERO] * 16
        row[i] = ONE
        h.ineq_rows.append(row)
        h.ineq_rhs.append(ZERO)
    for x, y in itertools.product((0, 1), repeat=2):
        row = [ZERO] * 16
        for a, b in itertools.product((0, 1), repeat=2):
            row[bipartite_index(x, y, a, b)] = ONE
        h.eq_rows.append(row)
        h.eq_rhs.append(ONE)
    for party in range(2):
        for o in (0, 1):
            for i_other in (0, 1):
                row = [ZERO] * 16
                for u, sign in ((0, ONE), (1, -ONE)):
                    for w in (0, 1):
                        out = [0, 0]
                        inp = [0, 0]
                        out[1 - party], out[party] = o, w
                        inp[1 - party], inp[party] = i_other, u
                        row[bipartite_index(*inp, *out)] += sign
                h.eq_rows.append(row)
                h.eq_rhs.append(ZERO)
    return h


def bipartite_eq4_matrix() -> list[tuple[int, ...]]:
    """4 P(ab|xy) = row . (1, A0, A1, B0, B1, AB00, AB01, AB10, AB11)."""
    rows = []
    for x, y in itertools.product((0, 1), repeat=2):
        for a, b in itertools.product((0, 1), repeat=2):
            sa, sb = (-1) ** a, (-1) ** b
            row = [0] * 9
            row[0] = 1
            row[1 + x] = sa
            row[3 + y] = sb
            row[5 + 2 * x + y] = sa * sb
            rows.append(tuple(row))
    return rows


def bipartite_corr_hrep() -> HRepresentation:
    h = HRepresentation(dim=8)
    for row in bipartite_eq4_matrix():
        h.ineq_rows.append([mpq(v) for v in row[1:]])
        h.ineq_rhs.append(mpq(-row[0]))
    return h


def bipartite_corr_vertex_to_table(corr_vertex) -> tuple:
    """16 probabilities P(ab|xy) from an 8-dim correlator vertex."""
    h = (ONE,) + tuple(mpq(x) for x in corr_vertex)
    return tuple(
        sum(m * v for m, v in zip(row, h)) / 4 for row in bipartite_eq4_matrix()
    )


def enumerate_bipartite_vertices() -> list[tuple]:
    vrep = enumerate_vertices(bipartite_corr_hrep())
    return [bipartite_corr_vertex_to_table(v) for v in vrep.vertices]


def deterministic_boxes() -> list[Box]:
    """The 64 local deterministic boxes (vertices of the local polytope)."""
    out = []
    for fa, fb, fc in itertools.product(itertools.product((0, 1), repeat=2), repeat=3):
        probs = []
        for x, y, z in itertools.product((0, 1), repeat=3):
            for a, b, c in itertools.product((0, 1), repeat=3):
                ok = a == fa[x] and b == fb[y] and c == fc[z]
                probs.append(ONE if ok else ZERO)
        out.append(Box(tuple(probs)))
    return out
