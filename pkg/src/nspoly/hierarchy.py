"""The locality hierarchy L ⊆ NS2 ⊆ US2 ⊆ KS2 ⊆ S2.

Each model set is described by an explicit list of strategy columns plus, for
the sequential models, linear tying constraints between the two input
orderings of each bipartite term. Membership and noise resistance are exact
LP computations over those columns.

Bipartitions are labeled 'AB|C', 'AC|B', 'BC|A' (communicating pair | lone
party). The lone party is always deterministic (or no-signaling marginal) and
never learns the others' inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from gmpy2 import mpq

from .boxes import NUM_ENTRIES, Box, UNIFORM, box_index
from .lp import LinearProgram, LpOutcome, lp_solve
from .rational import ZERO, ONE, Rational, rat

MODEL_SETS = ("L", "NS2", "US2", "KS2", "S2")
BIPARTITIONS = ("AB|C", "AC|B", "BC|A")

_PAIR_OF = {"AB|C": (0, 1), "AC|B": (0, 2), "BC|A": (1, 2)}


@dataclass(frozen=True)
class StrategyColumn:
    behavior: tuple  # 64 rationals
    bipartition: str  # 'AB|C', 'AC|B', 'BC|A' or 'none'
    ordering: str  # 'first', 'second' or 'none'
    third_strategy: int  # response-function id of the lone party, -1 if n/a


@dataclass
class MembershipCertificate:
    model: str
    weights: dict  # variable label -> weight (only nonzero entries)


def _unary_rfs():
    """Deterministic responses to one binary input, as (r(0), r(1))."""
    return list(itertools.product((0, 1), repeat=2))


def _binary_rfs():
    """Deterministic responses to two binary inputs, keyed by (u, v)."""
    return [
        {(u, v): bits[2 * u + v] for u in (0, 1) for v in (0, 1)}
        for bits in itertools.product((0, 1), repeat=4)
    ]


def _product_behavior(resp) -> tuple:
    """resp[p](inputs 3-tuple) -> output bit; returns the 0/1 table."""
    probs = []
    for inp in itertools.product((0, 1), repeat=3):
        outs = tuple(resp[p](inp) for p in range(3))
        for out in itertools.product((0, 1), repeat=3):
            probs.append(ONE if out == outs else ZERO)
    return tuple(probs)


def deterministic_local_columns() -> list[StrategyColumn]:
    cols = []
    for fa, fb, fc in itertools.product(_unary_rfs(), repeat=3):
        beh = _product_behavior(
            [lambda i, f=fa: f[i[0]], lambda i, f=fb: f[i[1]], lambda i, f=fc: f[i[2]]]
        )
        cols.append(StrategyColumn(beh, "none", "none", -1))
    return cols


def bipartite_signaling_columns(bipartition: str) -> list[StrategyColumn]:
    """Deterministic two-way-signaling strategies for the pair, deterministic
    lone party: 16 * 16 * 4 columns."""
    p, q = _PAIR_OF[bipartition]
    t = 3 - p - q
    cols = []
    for fp, fq in itertools.product(_binary_rfs(), repeat=2):
        for it, ft in enumerate(_unary_rfs()):
            resp = [None, None, None]
            resp[p] = lambda i, f=fp, p=p, q=q: f[(i[p], i[q])]
            resp[q] = lambda i, f=fq, p=p, q=q: f[(i[p], i[q])]
            resp[t] = lambda i, f=ft, t=t: f[i[t]]
            cols.append(
                StrategyColumn(_product_behavior(resp), bipartition, "none", it)
            )
    return cols


def one_way_columns(bipartition: str, ordering: str) -> list[StrategyColumn]:
    """One-way signaling within the pair: with ordering 'first' the
    lower-labeled party answers on its own input only and the other sees both
    inputs; 'second' is the reverse. 4 * 16 * 4 columns."""
    p, q = _PAIR_OF[bipartition]
    t = 3 - p - q
    assert ordering in ("first", "second")
    cols = []
    for fsolo in _unary_rfs():
        for fpair in _binary_rfs():
            for it, ft in enumerate(_unary_rfs()):
                resp = [None, None, None]
                if ordering == "first":
                    resp[p] = lambda i, f=fsolo, p=p: f[i[p]]
                    resp[q] = lambda i, f=fpair, p=p, q=q: f[(i[p], i[q])]
                else:
                    resp[p] = lambda i, f=fpair, p=p, q=q: f[(i[p], i[q])]
                    resp[q] = lambda i, f=fsolo, q=q: f[i[q]]
                resp[t] = lambda i, f=ft, t=t: f[i[t]]
                cols.append(
                    StrategyColumn(_product_behavior(resp), bipartition, ordering, it)
                )
    return cols


def _bipartite_ns_tables() -> list[tuple]:
    """The 24 extremal bipartite no-signaling boxes as 16-entry tables
    P(ab|xy), index 4*(2x+y) + 2a+b: 16 deterministic + 8 PR variants."""
    tables = []
    for fa, fb in itertools.product(_unary_rfs(), repeat=2):
        t = []
        for x, y in itertools.product((0, 1), repeat=2):
            for a, b in itertools.product((0, 1), repeat=2):
                t.append(ONE if (a == fa[x] and b == fb[y]) else ZERO)
        tables.append(tuple(t))
    half = rat(1, 2)
    for al, be, ga in itertools.product((0, 1), repeat=3):
        t = []
        for x, y in itertools.product((0, 1), repeat=2):
            for a, b in itertools.product((0, 1), repeat=2):
                ok = (a + b) % 2 == (x * y + al * x + be * y + ga) % 2
                t.append(half if ok else ZERO)
        tables.append(tuple(t))
    return tables


def _embed_pair_table(table, bipartition: str, third_rf) -> tuple:
    """Tensor a 16-entry pair behavior with a deterministic lone-party box."""
    p, q = _PAIR_OF[bipartition]
    t = 3 - p - q
    probs = []
    for inp in itertools.product((0, 1), repeat=3):
        for out in itertools.product((0, 1), repeat=3):
            v = table[4 * (2 * inp[p] + inp[q]) + 2 * out[p] + out[q]]
            if out[t] != third_rf[inp[t]]:
                v = ZERO
            probs.append(v)
    return tuple(probs)


def ns2_columns(bipartition: str) -> list[StrategyColumn]:
    """Extremal bipartite no-signaling boxes for the pair (16 deterministic +
    8 PR) times the 4 deterministic lone-party strategies."""
    cols = []
    for table in _bipartite_ns_tables():
        for it, ft in enumerate(_unary_rfs()):
            cols.append(
                StrategyColumn(
                    _embed_pair_table(table, bipartition, ft), bipartition, "none", it
                )
            )
    return cols


# ---------------------------------------------------------------------------
# LP assembly

def _model_system(model: str):
    """Column labels, their tripartite behaviors (None entries for pair-space
    columns), reconstruction matrix rows and tie rows.

    Returns (labels, recon_cols, tie_rows) where recon_cols[j] is the
    64-vector contribution of variable j to the reconstructed behavior and
    tie_rows is a list of (row_coeffs aligned with labels, rhs=0).
    """
    labels = []
    recon_cols = []
    ties = []

    if model == "L":
        for k, col in enumerate(deterministic_local_columns()):
            labels.append(("L", k))
            recon_cols.append(col.behavior)
    elif model in ("NS2", "S2"):
        maker = ns2_columns if model == "NS2" else bipartite_signaling_columns
        for g in BIPARTITIONS:
            for k, col in enumerate(maker(g)):
                labels.append((g, k))
                recon_cols.append(col.behavior)
    elif model == "US2":
        # the sequence is unknown, so one decomposition must serve every
        # ordering: both orderings reproduce each bipartition term entrywise,
        # and the lone party's response cannot depend on the ordering (per
        # bipartition and lone-party strategy, the total first- and
        # second-ordering weights must agree)
        for g in BIPARTITIONS:
            first = one_way_columns(g, "first")
            second = one_way_columns(g, "second")
            base = len(labels)
            for k, col in enumerate(first):
                labels.append((g, "first", k))
                recon_cols.append(col.behavior)
            for k, col in enumerate(second):
                labels.append((g, "second", k))
                recon_cols.append(tuple([ZERO] * NUM_ENTRIES))
            for entry in range(NUM_ENTRIES):
                row = {}
                for k, col in enumerate(first):
                    if col.behavior[entry]:
                        row[base + k] = col.behavior[entry]
                for k, col in enumerate(second):
                    if col.behavior[entry]:
                        row[base + 256 + k] = -col.behavior[entry]
                if row:
                    ties.append(row)
            for strat in range(4):
                row = {}
                for k, col in enumerate(first):
                    if col.third_strategy == strat:
                        row[base + k] = ONE
                for k, col in enumerate(second):
                    if col.third_strategy == strat:
                        row[base + 256 + k] = -ONE
                ties.append(row)
    else:
        raise ValueError(f"unknown model set {model!r}")
    return labels, recon_cols, ties


# KS2: the input sequence is known in advance, so the parties' strategy may
# depend on it. A box is a member iff for every total order of the parties it
# admits a bipartition decomposition whose pair terms signal in the order's
# direction; each sequence is an independent LP, and the noise resistance is
# the max over sequences. Per-sequence quantities are exposed separately
# (sequence_membership, sequence_noise_resistance): the threshold for one
# fixed sequence is not invariant under party permutations, which relabel the
# sequences among themselves, so only the multiset of the six values is a
# class invariant.
SEQUENCES = ("ABC", "ACB", "BAC", "BCA", "CAB", "CBA")


def _sequence_model(sigma: str):
    """Column labels and behaviors of the directed decomposition for one
    party order sigma (no tying constraints)."""
    labels = []
    recon_cols = []
    for g in BIPARTITIONS:
        p, q = _PAIR_OF[g]
        ordering = "first" if sigma.index("ABC"[p]) < sigma.index("ABC"[q]) else "second"
        for k, col in enumerate(one_way_columns(g, ordering)):
            labels.append((sigma, g, ordering, k))
            recon_cols.append(col.behavior)
    return labels, recon_cols


def _solve_system_lp(b: Box, labels, recon_cols, ties, noise_var: bool):
    nvars = len(labels) + (1 if noise_var else 0)
    qcol = len(labels)

    a_eq = []
    b_eq = []
    for entry in range(NUM_ENTRIES):
        row = [ZERO] * nvars
        for j, col in enumerate(recon_cols):
            if col[entry]:
                row[j] = col[entry]
        if noise_var:
            # (1-q) b + q/8 = sum w col  <=>  sum w col + q (b - 1/8) = b
            row[qcol] = b.probabilities[entry] - rat(1, 8)
        a_eq.append(row)
        b_eq.append(b.probabilities[entry])
    for tie in ties:
        row = [ZERO] * nvars
        for j, v in tie.items():
            row[j] = v
        a_eq.append(row)
        b_eq.append(ZERO)

    objective = [ZERO] * nvars
    if noise_var:
        objective[qcol] = ONE
    out = lp_solve(
        LinearProgram(
            objective=objective,
            maximize=False,
            a_eq=a_eq,
            b_eq=b_eq,
            value_bound=ZERO if noise_var else None,
        )
    )
    return labels, out


def membership(b: Box, model: str) -> Optional[MembershipCertificate]:
    """An exact convex-decomposition certificate, or None if b is outside.

    For KS2 the certificate holds one decomposition per input sequence, each
    scaled by 1/6 so that the weights sum to 1 and reconstruction averages
    the six (identical) reproductions of b."""
    if model == "KS2":
        weights = {}
        for sigma in SEQUENCES:
            labels, recon_cols = _sequence_model(sigma)
            labels, out = _solve_system_lp(b, labels, recon_cols, [], noise_var=False)
            if not out.optimal:
                return None
            for lab, w in zip(labels, out.point):
                if w:
                    weights[lab] = w / 6
        return MembershipCertificate(model, weights)
    labels, recon_cols, ties = _model_system(model)
    labels, out = _solve_system_lp(b, labels, recon_cols, ties, noise_var=False)
    if not out.optimal:
        return None
    weights = {lab: w for lab, w in zip(labels, out.point) if w}
    return MembershipCertificate(model, weights)


def sequence_membership(b: Box, sigma: str) -> Optional[MembershipCertificate]:
    """Certificate that b decomposes with pair terms directed along the party
    order sigma, or None."""
    labels, recon_cols = _sequence_model(sigma)
    labels, out = _solve_system_lp(b, labels, recon_cols, [], noise_var=False)
    if not out.optimal:
        return None
    weights = {lab: w for lab, w in zip(labels, out.point) if w}
    return MembershipCertificate("KS2", weights)


def sequence_noise_resistance(b: Box, sigma: str) -> Rational:
    """Minimal q for which (1-q) b + q/8 decomposes along the party order
    sigma."""
    labels, recon_cols = _sequence_model(sigma)
    _, out = _solve_system_lp(b, labels, recon_cols, [], noise_var=True)
    assert out.optimal, "noisy box is uniform at q=1"
    return out.value


def sequence_noise_resistances(b: Box) -> dict:
    """Per-sequence noise resistances {sigma: q}; their max is the KS2 value."""
    return {sigma: sequence_noise_resistance(b, sigma) for sigma in SEQUENCES}


def noise_resistance(b: Box, model: str) -> Rational:
    """Minimal q for which (1-q) b + q/8 enters the model set."""
    if model == "KS2":
        best = ZERO
        for sigma in SEQUENCES:
            v = sequence_noise_resistance(b, sigma)
            if v > best:
                best = v
        return best
    labels, recon_cols, ties = _model_system(model)
    _, out = _solve_system_lp(b, labels, recon_cols, ties, noise_var=True)
    assert out.optimal, "noisy box is uniform at q=1, so the LP is feasible"
    return out.value


def _certificate_columns(model: str):
    if model == "KS2":
        col_of = {}
        for sigma in SEQUENCES:
            labels, recon_cols = _sequence_model(sigma)
            col_of.update(zip(labels, recon_cols))
        return col_of
    labels, recon_cols, _ = _model_system(model)
    return dict(zip(labels, recon_cols))


def reconstruct_from_certificate(cert: MembershipCertificate) -> Box:
    col_of = _certificate_columns(cert.model)
    probs = [ZERO] * NUM_ENTRIES
    for lab, w in cert.weights.items():
        col = col_of[lab]
        for i in range(NUM_ENTRIES):
            if col[i]:
                probs[i] += w * col[i]
    return Box(tuple(probs))


def noise_row(b: Box) -> tuple:
    """(L, NS2, US2, KS2, S2) noise resistances of b."""
    return tuple(noise_resistance(b, m) for m in MODEL_SETS)


def paper_order(rows: Sequence[tuple]) -> list[int]:
    """Indices sorted the way the noise table is presented: ascending by S2
    resistance, ties broken by KS2, then US2, then NS2, then L, then by the
    original (canonical) index."""
    def key(i):
        l, ns2, us2, ks2, s2 = rows[i]
        return (s2, ks2, us2, ns2, l, i)

    return sorted(range(len(rows)), key=key)
