"""The local relabeling group and its orbits.

Group elements combine a party permutation, a per-party input swap and
per-party, input-conditioned output flips: 6 * 8^3 = 3072 elements. Each
element acts on boxes as a permutation of the 64 table entries and on
correlator vectors as a signed permutation of the 26 slots; both actions are
precomputed at construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from gmpy2 import mpq

from .boxes import (
    HOMOG_DIM,
    NUM_ENTRIES,
    BellFunctional,
    Box,
    box_index,
    pair_slot,
    single_slot,
    triple_slot,
)
from .rational import Rational

GROUP_ORDER = 3072


@dataclass(frozen=True)
class Relabeling:
    """party_perm sends old party p to new slot party_perm[p]; input_swap and
    output_flip are indexed by the old party, with output_flip[p] giving the
    flip bit for each value of p's (old) input."""

    party_perm: tuple[int, int, int]
    input_swap: tuple[int, int, int]
    output_flip: tuple[tuple[int, int], ...]

    # permutation of the 64 table entries: new_probs[entry_perm[i]] = probs[i]
    entry_perm: tuple[int, ...] = field(compare=False, default=())
    # signed permutation of the homogeneous correlator vector:
    # new_corr[dst] = sign * corr[src] for (src, sign) = corr_perm[dst]
    corr_perm: tuple[tuple[int, int], ...] = field(compare=False, default=())

    @staticmethod
    def make(party_perm, input_swap, output_flip) -> "Relabeling":
        perm = [0] * NUM_ENTRIES
        for inp in itertools.product((0, 1), repeat=3):
            for out in itertools.product((0, 1), repeat=3):
                new_inp = [0, 0, 0]
                new_out = [0, 0, 0]
                for p in range(3):
                    q = party_perm[p]
                    new_inp[q] = inp[p] ^ input_swap[p]
                    new_out[q] = out[p] ^ output_flip[p][inp[p]]
                perm[box_index(*inp, *out)] = box_index(*new_inp, *new_out)
        cperm = [(0, 1)] * HOMOG_DIM
        inv = [0, 0, 0]
        for p in range(3):
            inv[party_perm[p]] = p
        for subset in _party_subsets():
            old = [inv[q] for q in subset]
            for new_inputs in itertools.product((0, 1), repeat=len(subset)):
                sign = 1
                src_key = []
                for p, u_new in zip(old, new_inputs):
                    u_old = u_new ^ input_swap[p]
                    sign *= (-1) ** output_flip[p][u_old]
                    src_key.append((p, u_old))
                src_key.sort()
                dst = _slot(list(zip(subset, new_inputs)))
                src = _slot(src_key)
                cperm[dst] = (src, sign)
        return Relabeling(
            tuple(party_perm),
            tuple(input_swap),
            tuple(tuple(f) for f in output_flip),
            tuple(perm),
            tuple(cperm),
        )


def _party_subsets():
    return ((0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2))


def _slot(labeled: list[tuple[int, int]]) -> int:
    parties = tuple(p for p, _ in labeled)
    inputs = tuple(u for _, u in labeled)
    if len(parties) == 1:
        return single_slot(parties[0], inputs[0])
    if len(parties) == 2:
        return pair_slot(parties[0], parties[1], inputs[0], inputs[1])
    return triple_slot(*inputs)


@lru_cache(maxsize=1)
def all_relabelings() -> tuple[Relabeling, ...]:
    """The full group, one element per entry-permutation, 3072 in total."""
    elems = []
    for party_perm in itertools.permutations(range(3)):
        for input_swap in itertools.product((0, 1), repeat=3):
            for flips in itertools.product(
                itertools.product((0, 1), repeat=2), repeat=3
            ):
                elems.append(Relabeling.make(party_perm, input_swap, flips))
    assert len(elems) == GROUP_ORDER
    return tuple(elems)


def identity_relabeling() -> Relabeling:
    return Relabeling.make((0, 1, 2), (0, 0, 0), ((0, 0),) * 3)


@lru_cache(maxsize=1)
def _perm_lookup() -> dict[tuple[int, ...], Relabeling]:
    return {g.entry_perm: g for g in all_relabelings()}


def compose(g: Relabeling, h: Relabeling) -> Relabeling:
    """The group element with apply(compose(g, h), b) = apply(g, apply(h, b))."""
    perm = tuple(g.entry_perm[h.entry_perm[i]] for i in range(NUM_ENTRIES))
    return _perm_lookup()[perm]


def inverse(g: Relabeling) -> Relabeling:
    perm = [0] * NUM_ENTRIES
    for i, j in enumerate(g.entry_perm):
        perm[j] = i
    return _perm_lookup()[tuple(perm)]


def permute_entries(perm: Sequence[int], values: Sequence) -> tuple:
    out = [None] * len(values)
    for i, v in enumerate(values):
        out[perm[i]] = v
    return tuple(out)


def apply(g: Relabeling, b: Box) -> Box:
    return Box(permute_entries(g.entry_perm, b.probabilities))


def apply_to_inequality(g: Relabeling, f: BellFunctional, bound) -> tuple[BellFunctional, Rational]:
    """Contragredient action: evaluate(g.f, b) = evaluate(f, inverse(g).b)."""
    coeffs = permute_entries(g.entry_perm, f.coefficients)
    return BellFunctional(coeffs, f.offset), mpq(bound)


def apply_corr_signed(g: Relabeling, vec: Sequence) -> tuple:
    """Signed-permutation action on a homogeneous correlator vector."""
    return tuple(
        vec[src] if sign > 0 else -vec[src] for src, sign in g.corr_perm
    )


def canonical_form(b: Box) -> Box:
    """Lexicographic minimum of the orbit of b under the full group."""
    best = None
    probs = b.probabilities
    for g in all_relabelings():
        cand = permute_entries(g.entry_perm, probs)
        if best is None or cand < best:
            best = cand
    return Box(best)


@dataclass
class ClassEntry:
    class_id: int
    representative: Box
    size: int
    member_indices: list[int]


@dataclass
class ClassTable:
    classes: list[ClassEntry]

    def class_of(self) -> dict[int, int]:
        """vertex index -> class id."""
        out = {}
        for entry in self.classes:
            for i in entry.member_indices:
                out[i] = entry.class_id
        return out


def orbit_partition(points: Sequence[Box]) -> ClassTable:
    """Group the points into relabeling orbits; ids are assigned in
    lexicographic order of the canonical representatives."""
    scaled = [p.scaled() for p in points]
    index_of = {}
    for i, s in enumerate(scaled):
        if s in index_of:
            raise ValueError("duplicate points in orbit_partition input")
        index_of[s] = i
    group = all_relabelings()
    assigned = [False] * len(points)
    raw_classes = []
    for i, (den, nums) in enumerate(scaled):
        if assigned[i]:
            continue
        orbit = {nums}
        for g in group:
            orbit.add(permute_entries(g.entry_perm, nums))
        members = []
        for nums2 in orbit:
            j = index_of.get((den, nums2))
            if j is not None:
                assigned[j] = True
                members.append(j)
        rep_nums = min(orbit)
        rep = Box(tuple(mpq(v, den) for v in rep_nums))
        members.sort()
        raw_classes.append((rep, members))
    raw_classes.sort(key=lambda rc: rc[0].probabilities)
    classes = [
        ClassEntry(cid, rep, len(members), members)
        for cid, (rep, members) in enumerate(raw_classes)
    ]
    return ClassTable(classes)


def stabilizer_order(b: Box) -> int:
    probs = b.probabilities
    return sum(
        1 for g in all_relabelings() if permute_entries(g.entry_perm, probs) == probs
    )
