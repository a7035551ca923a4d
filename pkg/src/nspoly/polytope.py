"""Exact double-description engine.

Converts between H-representations (equalities + inequalities) and
V-representations (vertex lists) of bounded polytopes. The core works on a
pointed polyhedral cone {x : A x >= 0} with integer rows A, maintaining the
extreme rays while inequalities are inserted one at a time. Equalities are
eliminated up front by projecting onto their affine hull, and vertices are
recovered from the homogenizing coordinate.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

import numpy as np
from gmpy2 import mpq

log = logging.getLogger(__name__)

from .rational import (
    ZERO,
    ONE,
    Rational,
    dot,
    independent_row_indices,
    nullspace_basis,
    primitive_integer_form,
    rank,
    scaled_integer_rows,
    solve_linear,
)


@dataclass
class HRepresentation:
    """eq_rows x = eq_rhs  and  ineq_rows x >= ineq_rhs  in R^dim."""

    dim: int
    eq_rows: list = field(default_factory=list)
    eq_rhs: list = field(default_factory=list)
    ineq_rows: list = field(default_factory=list)
    ineq_rhs: list = field(default_factory=list)


@dataclass
class VRepresentation:
    vertices: list
    rays: list = field(default_factory=list)


class UnboundedError(ValueError):
    pass


class EmptyPolytopeError(ValueError):
    pass


_MODP = 2147483629  # prime below 2^31; products of residues stay inside int64


def _rank_modp(mat: np.ndarray) -> int:
    """Rank of a small integer matrix over GF(_MODP); never exceeds the true rank."""
    a = np.mod(mat, _MODP).astype(np.int64)
    m, n = a.shape
    r = 0
    for col in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), _MODP - 2, _MODP)
        a[r] = a[r] * inv % _MODP
        rows = np.nonzero(a[r + 1:, col])[0]
        if rows.size:
            sub = a[r + 1 + rows]
            sub = (sub - np.outer(sub[:, col], a[r])) % _MODP
            a[r + 1 + rows] = sub
        r += 1
    return r


def _popcount_chunk(p: np.ndarray, n: np.ndarray) -> np.ndarray:
    # p: (np_, W), n: (nn, W) uint64 -> (np_, nn) int popcounts of pairwise AND
    common = p[:, None, :] & n[None, :, :]
    return np.bitwise_count(common).sum(axis=2, dtype=np.int64)


def _masks_to_np(masks: list[int], words: int) -> np.ndarray:
    out = np.zeros((len(masks), words), dtype=np.uint64)
    mask64 = (1 << 64) - 1
    for i, m in enumerate(masks):
        for w in range(words):
            out[i, w] = (m >> (64 * w)) & mask64
    return out


def _reduce_ray(ray: list[int]) -> tuple[int, ...]:
    g = 0
    for x in ray:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in ray)
    return tuple(ray)


def extreme_rays(rows: Sequence[Sequence[int]], dim: int,
                 insertion_order: Optional[Sequence[int]] = None) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {x in R^dim : rows . x >= 0}.

    Rows must be integer vectors. Raises UnboundedError when the cone has a
    lineality space (it then has no extreme-ray description).
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    if rank(rows) < dim:
        raise UnboundedError("cone is not pointed (lineality space present)")

    init = independent_row_indices(rows)[:dim]
    init_set = set(init)
    rest = [i for i in range(len(rows)) if i not in init_set]
    if insertion_order is not None:
        order = [i for i in insertion_order if i in set(rest)]
        assert sorted(order) == sorted(rest)
        rest = order

    # initial simplicial cone: rays are the columns of the inverse of the
    # chosen row submatrix
    sub = [rows[i] for i in init]
    cols = []
    for j in range(dim):
        e = [ONE if k == j else ZERO for k in range(dim)]
        sol = solve_linear(sub, e)
        assert sol is not None
        col = primitive_integer_form(sol, fix_sign=False)
        if dot(sub[j], col) < 0:
            col = tuple(-x for x in col)
        cols.append(col)

    rays: list[tuple[int, ...]] = cols
    masks: list[int] = []
    for r in rays:
        m = 0
        for pos, i in enumerate(init):
            if dot(rows[i], r) == 0:
                m |= 1 << pos
        masks.append(m)
    processed = list(init)
    arows = np.array([[abs(x) for x in r] for r in rows], dtype=object)
    small = bool((arows < 2**31).all())
    rows_np = np.array(rows, dtype=np.int64) if small else None
    need = dim - 2

    for step, row_idx in enumerate(rest):
        a = rows[row_idx]
        bit = 1 << len(processed)
        d = [dot(a, r) for r in rays]
        log.info("dd step %d/%d: %d rays", step + 1, len(rest), len(rays))
        if all(x >= 0 for x in d):
            for i, x in enumerate(d):
                if x == 0:
                    masks[i] |= bit
            processed.append(row_idx)
            continue
        pos_i = [i for i, x in enumerate(d) if x > 0]
        zero_i = [i for i, x in enumerate(d) if x == 0]
        neg_i = [i for i, x in enumerate(d) if x < 0]

        new_rays: list[tuple[int, ...]] = []
        new_masks: list[int] = []
        words = (len(processed) + 63) // 64
        pmask_np = _masks_to_np([masks[i] for i in pos_i], words)
        nmask_np = _masks_to_np([masks[i] for i in neg_i], words)
        chunk = 2048
        for p0 in range(0, len(pos_i), chunk):
            pm = pmask_np[p0:p0 + chunk]
            for n0 in range(0, len(neg_i), chunk):
                nm = nmask_np[n0:n0 + chunk]
                cnt = _popcount_chunk(pm, nm)
                cand = np.argwhere(cnt >= need)
                for pi_, ni_ in cand:
                    i = pos_i[p0 + pi_]
                    j = neg_i[n0 + ni_]
                    common = masks[i] & masks[j]
                    tight = [processed[k] for k in _bits(common)]
                    if rows_np is not None:
                        rk = _rank_modp(rows_np[tight])
                        if rk < need and rank([rows[t] for t in tight]) != need:
                            continue
                    else:
                        if rank([rows[t] for t in tight]) != need:
                            continue
                    rp, rn = rays[i], rays[j]
                    dp, dn = d[i], d[j]
                    comb = [dp * b - dn * a_ for a_, b in zip(rp, rn)]
                    new_rays.append(_reduce_ray(comb))
                    new_masks.append(common | bit)

        keep = pos_i + zero_i
        rays = [rays[i] for i in keep] + new_rays
        kept_masks = []
        for i in keep:
            m = masks[i]
            if d[i] == 0:
                m |= bit
            kept_masks.append(m)
        masks = kept_masks + new_masks
        processed.append(row_idx)

    return sorted(rays)


def _raise_empty_or_unbounded(h: HRepresentation):
    from .lp import LinearProgram, lp_solve

    n = h.dim
    probe = lp_solve(
        LinearProgram(
            objective=[ZERO] * n,
            a_eq=h.eq_rows,
            b_eq=h.eq_rhs,
            a_ge=h.ineq_rows,
            b_ge=h.ineq_rhs,
            free_vars=frozenset(range(n)),
        )
    )
    if probe.status == "infeasible":
        raise EmptyPolytopeError("no feasible point")
    raise UnboundedError("polytope is unbounded (recession ray found)")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def enumerate_vertices(h: HRepresentation) -> VRepresentation:
    """All vertices of the bounded polytope described by h, sorted.

    Raises EmptyPolytopeError / UnboundedError as appropriate.
    """
    n = h.dim
    if h.eq_rows:
        x0 = solve_linear(h.eq_rows, h.eq_rhs)
        if x0 is None:
            raise EmptyPolytopeError("equality constraints are inconsistent")
        basis = nullspace_basis(h.eq_rows, n)
    else:
        x0 = [ZERO] * n
        basis = [[ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    k = len(basis)
    if k == 0:
        for row, rhs in zip(h.ineq_rows, h.ineq_rhs):
            if dot(row, x0) < rhs:
                raise EmptyPolytopeError("no feasible point")
        return VRepresentation(vertices=[[mpq(v) for v in x0]])

    hom_rows = []
    for row, rhs in zip(h.ineq_rows, h.ineq_rhs):
        const = dot(row, x0) - mpq(rhs)
        red = [dot(row, b) for b in basis]
        if not any(red):
            if const < 0:
                raise EmptyPolytopeError("no feasible point")
            continue  # trivially satisfied
        hom_rows.append(primitive_integer_form([const] + red, fix_sign=False))
    hom_rows.append(tuple([1] + [0] * k))  # homogenizing coordinate >= 0

    try:
        rays = extreme_rays(hom_rows, k + 1)
    except UnboundedError:
        _raise_empty_or_unbounded(h)
    vertices = []
    for r in rays:
        t = r[0]
        if t == 0:
            _raise_empty_or_unbounded(h)
        assert t > 0
        u = [mpq(x, t) for x in r[1:]]
        vert = [mpq(x) for x in x0]
        for coef, b in zip(u, basis):
            if coef:
                for j in range(n):
                    vert[j] += coef * b[j]
        vertices.append(vert)
    if not vertices:
        raise EmptyPolytopeError("no feasible point")
    vertices.sort()
    return VRepresentation(vertices=vertices)


def enumerate_facets(v: VRepresentation) -> HRepresentation:
    """Facets of conv(v.vertices), as primitive integer rows g . x <= L
    (returned as -g . x >= -L in the ineq fields) plus the affine hull
    equalities."""
    pts = [[mpq(x) for x in p] for p in v.vertices]
    assert pts and not v.rays
    n = len(pts[0])
    p0 = pts[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in pts[1:]]
    idx = independent_row_indices(diffs) if diffs else []
    basis = [diffs[i] for i in idx]
    r = len(basis)

    h = HRepresentation(dim=n)
    if r < n:
        if r == 0:
            # single point: x = p0
            for j in range(n):
                row = [ZERO] * n
                row[j] = ONE
                h.eq_rows.append(row)
                h.eq_rhs.append(p0[j])
            return h
        for e in nullspace_basis(basis, n):
            ei = primitive_integer_form(e)
            h.eq_rows.append([mpq(x) for x in ei])
            h.eq_rhs.append(dot(ei, p0))

    # pivot coordinates J so that reduced coords are recoverable from x_J
    cols = [[b[j] for b in basis] for j in range(n)]  # column j of the basis matrix
    j_idx = independent_row_indices(cols)[:r]
    bj = [[basis[kk][j] for kk in range(r)] for j in j_idx]  # r x r, rows indexed by J

    def reduced_coords(p) -> list[Rational]:
        rhs = [p[j] - p0[j] for j in j_idx]
        sol = solve_linear(bj, rhs)
        assert sol is not None
        return sol

    qs = [reduced_coords(p) for p in pts]
    rows = [primitive_integer_form([ONE] + q, fix_sign=False) for q in qs]
    rays = extreme_rays(rows, r + 1)

    # inv_bj maps x_J - p0_J to reduced coords
    inv_cols = []
    for jj in range(r):
        e = [ONE if kk == jj else ZERO for kk in range(r)]
        inv_cols.append(solve_linear(bj, e))
    facets = []
    for ray in rays:
        alpha = mpq(ray[0])
        f = [mpq(x) for x in ray[1:]]
        # alpha + f . q >= 0 for all points; q = inv_bj (x_J - p0_J)
        w = [ZERO] * n
        for pos, j in enumerate(j_idx):
            w[j] = sum(f[kk] * inv_cols[pos][kk] for kk in range(r))
        bound = alpha - dot(w, p0)
        facets.append(primitive_integer_form(list(w) + [bound], fix_sign=False))
    facets.sort()
    for fac in facets:
        h.ineq_rows.append([mpq(x) for x in fac[:n]])
        h.ineq_rhs.append(mpq(-fac[n]))
    # rows satisfy w . x + bound >= 0, i.e. (-w) . x <= bound; we store
    # w . x >= -bound which is the same halfspace
    return h


def is_vertex(p: Sequence, h: HRepresentation) -> bool:
    """Exact vertex test: active constraint normals span the ambient space."""
    active = [list(row) for row in h.eq_rows]
    for row, rhs in zip(h.eq_rows, h.eq_rhs):
        if dot(row, p) != rhs:
            raise ValueError("point does not satisfy the equality constraints")
    for row, rhs in zip(h.ineq_rows, h.ineq_rhs):
        s = dot(row, p)
        if s < rhs:
            raise ValueError("point is infeasible")
        if s == rhs:
            active.append(list(row))
    return rank(active) == h.dim
