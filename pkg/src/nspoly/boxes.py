"""Tripartite behaviors (boxes): probability and correlator views.

A box is the table of 64 conditional probabilities P(abc|xyz) for three
parties with binary inputs x,y,z and binary outputs in the hat convention
a,b,c in {0,1} (physicist outputs are (-1)^a etc.). The flat index is

    index = 8*(4x + 2y + z) + (4a + 2b + c).

The dual view is the 26-vector of correlators: 6 singles <A_x>,<B_y>,<C_z>,
12 pairs <A_xB_y>,<A_xC_z>,<B_yC_z> and 8 triples <A_xB_yC_z>, which are in
affine bijection with valid boxes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm
from typing import Sequence

from gmpy2 import mpq

from .rational import ZERO, ONE, Rational, rat

NUM_ENTRIES = 64
NUM_CORRELATORS = 26

# slots in the homogeneous correlator vector (constant term at 0)
_SINGLE_BASE = 1  # A0 A1 B0 B1 C0 C1
_PAIR_BASE = 7  # AB00..AB11, AC00..AC11, BC00..BC11
_TRIPLE_BASE = 19  # ABC000..ABC111
HOMOG_DIM = 27

# pair families in party order: (0,1)=AB, (0,2)=AC, (1,2)=BC
PAIR_FAMILIES = ((0, 1), (0, 2), (1, 2))


def box_index(x: int, y: int, z: int, a: int, b: int, c: int) -> int:
    return 8 * (4 * x + 2 * y + z) + (4 * a + 2 * b + c)


def single_slot(party: int, u: int) -> int:
    return _SINGLE_BASE + 2 * party + u


def pair_slot(p: int, q: int, u: int, v: int) -> int:
    fam = PAIR_FAMILIES.index((p, q))
    return _PAIR_BASE + 4 * fam + 2 * u + v


def triple_slot(x: int, y: int, z: int) -> int:
    return _TRIPLE_BASE + 4 * x + 2 * y + z


def eq4_matrix() -> list[tuple[int, ...]]:
    """Integer matrix M with 8*P[index] = M[index] . (1, correlators)."""
    rows = []
    for x, y, z in itertools.product((0, 1), repeat=3):
        for a, b, c in itertools.product((0, 1), repeat=3):
            sa, sb, sc = (-1) ** a, (-1) ** b, (-1) ** c
            row = [0] * HOMOG_DIM
            row[0] = 1
            row[single_slot(0, x)] = sa
            row[single_slot(1, y)] = sb
            row[single_slot(2, z)] = sc
            row[pair_slot(0, 1, x, y)] = sa * sb
            row[pair_slot(0, 2, x, z)] = sa * sc
            row[pair_slot(1, 2, y, z)] = sb * sc
            row[triple_slot(x, y, z)] = sa * sb * sc
            rows.append(tuple(row))
    return rows

EQ4 = eq4_matrix()


@dataclass(frozen=True)
class Correlators:
    singles: tuple  # A0 A1 B0 B1 C0 C1
    pairs: tuple  # AB00..AB11 AC00..AC11 BC00..BC11 (first input major)
    triples: tuple  # ABC xyz in lexicographic order

    def __post_init__(self):
        assert len(self.singles) == 6 and len(self.pairs) == 12 and len(self.triples) == 8

    def homogeneous(self) -> tuple:
        return (ONE,) + tuple(mpq(v) for v in self.singles + self.pairs + self.triples)

    @staticmethod
    def from_homogeneous(h: Sequence) -> "Correlators":
        assert len(h) == HOMOG_DIM and h[0] == 1
        v = tuple(mpq(x) for x in h[1:])
        return Correlators(v[:6], v[6:18], v[18:])

    @staticmethod
    def zeros() -> "Correlators":
        return Correlators((ZERO,) * 6, (ZERO,) * 12, (ZERO,) * 8)


@dataclass(frozen=True)
class Box:
    probabilities: tuple

    def __post_init__(self):
        assert len(self.probabilities) == NUM_ENTRIES

    def __getitem__(self, idx: int) -> Rational:
        return self.probabilities[idx]

    def prob(self, x, y, z, a, b, c) -> Rational:
        return self.probabilities[box_index(x, y, z, a, b, c)]

    def scaled(self) -> tuple[int, tuple[int, ...]]:
        """(den, numerators): the table as integers over a common denominator."""
        den = 1
        for q in self.probabilities:
            den = lcm(den, int(q.denominator))
        return den, tuple(int(q * den) for q in self.probabilities)


def make_box(values: Sequence) -> Box:
    return Box(tuple(mpq(v) for v in values))


UNIFORM = make_box([rat(1, 8)] * NUM_ENTRIES)


@dataclass(frozen=True)
class BellFunctional:
    coefficients: tuple
    offset: Rational = ZERO

    def __post_init__(self):
        assert len(self.coefficients) == NUM_ENTRIES


def evaluate(f: BellFunctional, b: Box) -> Rational:
    return sum(c * p for c, p in zip(f.coefficients, b.probabilities)) + f.offset


def validate(values: Sequence) -> list[str]:
    """All violated positivity / normalization / no-signaling constraints."""
    assert len(values) == NUM_ENTRIES
    p = [mpq(v) for v in values]
    problems = []
    for x, y, z in itertools.product((0, 1), repeat=3):
        for a, b, c in itertools.product((0, 1), repeat=3):
            if p[box_index(x, y, z, a, b, c)] < 0:
                problems.append(f"P({a}{b}{c}|{x}{y}{z}) < 0")
        s = sum(
            p[box_index(x, y, z, a, b, c)]
            for a, b, c in itertools.product((0, 1), repeat=3)
        )
        if s != 1:
            problems.append(f"normalization |{x}{y}{z}) sums to {s}")
    # marginals of each pair of parties must not depend on the remaining input
    for party, name in ((2, "C"), (1, "B"), (0, "A")):
        for o1, o2 in itertools.product((0, 1), repeat=2):
            for i1, i2 in itertools.product((0, 1), repeat=2):
                margs = []
                for u in (0, 1):
                    total = ZERO
                    for w in (0, 1):
                        out = [0, 0, 0]
                        inp = [0, 0, 0]
                        others = [q for q in range(3) if q != party]
                        out[others[0]], out[others[1]], out[party] = o1, o2, w
                        inp[others[0]], inp[others[1]], inp[party] = i1, i2, u
                        total += p[box_index(*inp, *out)]
                    margs.append(total)
                if margs[0] != margs[1]:
                    problems.append(
                        f"no-signaling: marginal of parties != {name} at outputs "
                        f"{o1}{o2}, inputs {i1}{i2} depends on {name}'s input"
                    )
    return problems


def box_from_correlators(c: Correlators) -> Box:
    h = c.homogeneous()
    probs = []
    for row in EQ4:
        v = sum(m * hv for m, hv in zip(row, h) if m) / 8
        if v < 0:
            raise ValueError("not a valid behavior (negative probability)")
        probs.append(v)
    return Box(tuple(probs))


def correlators_from_box(b: Box) -> Correlators:
    """Exact inverse of box_from_correlators (marginals averaged over the
    ignored parties' inputs, which no-signaling makes immaterial)."""
    p = b.probabilities
    singles = []
    for party in range(3):
        for u in (0, 1):
            total = ZERO
            for inp in itertools.product((0, 1), repeat=3):
                if inp[party] != u:
                    continue
                for out in itertools.product((0, 1), repeat=3):
                    total += (-1) ** out[party] * p[box_index(*inp, *out)]
            singles.append(total / 4)
    pairs = []
    for pp, qq in PAIR_FAMILIES:
        for u, v in itertools.product((0, 1), repeat=2):
            total = ZERO
            for inp in itertools.product((0, 1), repeat=3):
                if inp[pp] != u or inp[qq] != v:
                    continue
                for out in itertools.product((0, 1), repeat=3):
                    total += (-1) ** (out[pp] + out[qq]) * p[box_index(*inp, *out)]
            pairs.append(total / 2)
    triples = []
    for inp in itertools.product((0, 1), repeat=3):
        total = ZERO
        for out in itertools.product((0, 1), repeat=3):
            total += (-1) ** sum(out) * p[box_index(*inp, *out)]
        triples.append(total)
    return Correlators(tuple(singles), tuple(pairs), tuple(triples))


def mix(boxes: Sequence[Box], weights: Sequence) -> Box:
    ws = [mpq(w) for w in weights]
    if len(ws) != len(boxes) or any(w < 0 for w in ws) or sum(ws) != 1:
        raise ValueError("weights must be nonnegative and sum to 1")
    probs = [ZERO] * NUM_ENTRIES
    for bx, w in zip(boxes, ws):
        for i, q in enumerate(bx.probabilities):
            probs[i] += w * q
    return Box(tuple(probs))


def noisy(b: Box, q) -> Box:
    """(1-q) b + q * uniform."""
    q = mpq(q)
    if not 0 <= q <= 1:
        raise ValueError("noise weight must lie in [0, 1]")
    eighth = q / 8
    return Box(tuple((1 - q) * p + eighth for p in b.probabilities))


def _full_correlation_box(triple_sign) -> Box:
    triples = tuple(
        mpq(triple_sign(x, y, z)) for x, y, z in itertools.product((0, 1), repeat=3)
    )
    return box_from_correlators(
        Correlators((ZERO,) * 6, (ZERO,) * 12, triples)
    )


def _pr_bc_box() -> Box:
    # a_x = 0 deterministically; B and C share a PR box: b + c = yz (mod 2)
    probs = []
    for x, y, z in itertools.product((0, 1), repeat=3):
        for a, b, c in itertools.product((0, 1), repeat=3):
            ok = a == 0 and (b + c) % 2 == (y * z) % 2
            probs.append(rat(1, 2) if ok else ZERO)
    return Box(tuple(probs))


def _box3() -> Box:
    # modular relations a0+b_y=1, a1+c0=1, a1+b_y+c1=y; every correlator not
    # fixed by them is uniformly random (zero)
    singles = [ZERO] * 6
    pairs = [ZERO] * 12
    triples = [ZERO] * 8
    for y in (0, 1):
        pairs[pair_slot(0, 1, 0, y) - _PAIR_BASE] = mpq(-1)  # <A_0 B_y> = -1
    pairs[pair_slot(0, 2, 1, 0) - _PAIR_BASE] = mpq(-1)  # <A_1 C_0> = -1
    for y in (0, 1):
        triples[triple_slot(1, y, 1) - _TRIPLE_BASE] = mpq((-1) ** y)
    return box_from_correlators(
        Correlators(tuple(singles), tuple(pairs), tuple(triples))
    )


def _ghz_box() -> Box:
    def sign(x, y, z):
        if (x, y, z) in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            return 1
        if (x, y, z) == (1, 1, 1):
            return -1
        return 0

    return _full_correlation_box(sign)


NAMED_BOXES = {
    "Det0": lambda: make_box(
        [1 if (a, b, c) == (0, 0, 0) else 0
         for _ in itertools.product((0, 1), repeat=3)
         for a, b, c in itertools.product((0, 1), repeat=3)]
    ),
    "PR-BC": _pr_bc_box,
    "Box3": _box3,
    "Box44": lambda: _full_correlation_box(lambda x, y, z: (-1) ** (x * y * z)),
    "Box45": lambda: _full_correlation_box(lambda x, y, z: (-1) ** (x * (y + z))),
    "Box46": lambda: _full_correlation_box(
        lambda x, y, z: (-1) ** (x * y + x * z + y * z)
    ),
    "Box46Prime": lambda: _full_correlation_box(
        lambda x, y, z: (-1) ** (1 + x + y + z + x * y + x * z + y * z)
    ),
    "GHZ": _ghz_box,
}


def named_box(name: str) -> Box:
    try:
        factory = NAMED_BOXES[name]
    except KeyError:
        raise KeyError(f"unknown box name {name!r}; known: {sorted(NAMED_BOXES)}")
    return factory()


# ---------------------------------------------------------------------------
# text form: 64 whitespace-separated rational tokens per line

def box_to_line(b: Box) -> str:
    from .rational import format_rational

    return " ".join(format_rational(q) for q in b.probabilities)


def box_from_line(line: str) -> Box:
    from .rational import parse_rational

    toks = line.split()
    if len(toks) != NUM_ENTRIES:
        raise ValueError(f"expected {NUM_ENTRIES} tokens, got {len(toks)}")
    return Box(tuple(parse_rational(t) for t in toks))
