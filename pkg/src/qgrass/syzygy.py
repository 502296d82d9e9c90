"""Weight-initial relations, van der Waerden style syzygies, and the
t-coefficient relations inherited from the classical straightening basis.

The fixed weights make the squared stacked-row index of a matrix variable
and the squared shift of a lattice variable maximally negative, so initial
forms keep the terms whose shifts are as balanced as possible.
"""

from __future__ import annotations

import itertools
from typing import Optional

from . import lattice, linalg, polyring, straighten
from .errors import InternalInconsistencyError, InvalidInputError
from .lattice import Context, PluckerVar
from .polyring import Polynomial


def row_weight(ctx: Context):
    """Weight on matrix variables: x[i,j,l] gets -(p*l + i)^2."""
    p = ctx.p

    def w(v):
        return -((p * v.level + v.row) ** 2)

    return w


def shift_weight(_ctx: Optional[Context] = None):
    """Weight on lattice variables: shift a gets -a^2."""

    def w(u):
        return -(u.shift**2)

    return w


def weight_initial_r(
    gamma: PluckerVar,
    delta: PluckerVar,
    ctx: Context,
    relation: Optional[straighten.Quadric] = None,
) -> Polynomial:
    """Initial form of the straightening relation under the shift weight.

    Over all incomparable pairs these give the reduced basis of the
    relations among the row-consecutive minors.
    """
    if relation is None:
        relation = straighten.straightening_relation(gamma, delta, ctx)
    return polyring.initial_form(relation.poly, shift_weight(ctx))


def sort_signed(cols: tuple[int, ...], shift: int) -> tuple[int, Optional[PluckerVar]]:
    """Reorder a column sequence into a variable, tracking the sorting sign.

    A repeated column yields the zero element, reported as (0, None).
    """
    if len(set(cols)) != len(cols):
        return 0, None
    inv = sum(
        1
        for i in range(len(cols))
        for j in range(i + 1, len(cols))
        if cols[i] > cols[j]
    )
    return (-1 if inv % 2 else 1), PluckerVar(tuple(sorted(cols)), shift)


def _violation_index(u: PluckerVar, v: PluckerVar) -> Optional[int]:
    """Smallest 1-based i with v.cols[i] below its upper neighbor u.cols[i-d]."""
    d = v.shift - u.shift
    for i in range(d + 1, len(v.cols) + 1):
        if v.cols[i - 1] < u.cols[i - d - 1]:
            return i
    return None


def skew_syzygy_w(t: lattice.Tableau, ctx: Context) -> Polynomial:
    """Quadratic syzygy of the row-consecutive minors attached to a
    non-standard two-row tableau.

    With the first violating column at index i, the head of the upper row
    and the tail of the lower row are frozen and the remaining p+b-a+1
    entries are redistributed over both rows in all ways, each summand
    signed by its block shuffle and by the reordering signs of its rows.
    The tableau itself appears with coefficient +1 and is the leading term.
    """
    if len(t) != 2:
        raise InvalidInputError("expected a two-row tableau")
    u, v = t
    lattice.validate_var(u, ctx)
    lattice.validate_var(v, ctx)
    if u.shift > v.shift:
        raise InvalidInputError("rows must have weakly increasing shifts")
    if lattice.leq(u, v):
        raise InvalidInputError("tableau is standard")
    a, b = u.shift, v.shift
    d = b - a
    i = _violation_index(u, v)
    if i is None:
        raise InternalInconsistencyError("non-standard tableau without a violation")
    head = u.cols[: i - d - 1]
    tail = v.cols[i:]
    pool = v.cols[:i] + u.cols[i - d - 1 :]
    if any(pool[k] >= pool[k + 1] for k in range(len(pool) - 1)):
        raise InternalInconsistencyError("redistribution pool is not increasing")
    acc: dict = {}
    for picked in itertools.combinations(range(len(pool)), i):
        rest = tuple(k for k in range(len(pool)) if k not in picked)
        shuffle = sum(1 for x in picked for y in rest if x > y)
        sign = -1 if shuffle % 2 else 1
        s1, lower = sort_signed(tuple(pool[k] for k in picked) + tail, b)
        if lower is None:
            continue
        s2, upper = sort_signed(head + tuple(pool[k] for k in rest), a)
        if upper is None:
            continue
        mono = polyring.mono_from_pairs([(upper, 1), (lower, 1)])
        c = acc.get(mono, 0) + sign * s1 * s2
        if c:
            acc[mono] = c
        else:
            acc.pop(mono, None)
    out = Polynomial(acc)
    t_mono = polyring.mono_from_pairs([(u, 1), (v, 1)])
    if out.coefficient(t_mono) != 1:
        raise InternalInconsistencyError("tableau term does not carry coefficient 1")
    return out


def quantum_syzygy_v(t: lattice.Tableau, ctx: Context) -> Polynomial:
    """Unique lift of the skew syzygy whose shift-weight initial form it is.

    Solved exactly as a combination of straightening relations over the
    incomparable pairs of matching weight; the initial forms of those
    relations are linearly independent, so the combination is unique.
    """
    w_target = skew_syzygy_w(t, ctx)
    wc = shift_weight(ctx)
    u, v = t
    level = wc(u) + wc(v)
    pairs = [
        (g, d)
        for g, d in lattice.incomparable_pairs(ctx)
        if wc(g) + wc(d) == level
    ]
    relations = [straighten.straightening_relation(g, d, ctx) for g, d in pairs]
    initial_rows = [
        dict(polyring.initial_form(rel.poly, wc).terms) for rel in relations
    ]
    ckey = straighten.c_monomial_key(ctx)
    combo = linalg.solve_in_span(dict(w_target.terms), initial_rows, ckey)
    if combo is None:
        raise InternalInconsistencyError("skew syzygy is not a combination of initial forms")
    out = Polynomial.zero()
    for idx, c in combo.items():
        out = out + relations[idx].poly.scale(c)
    if polyring.initial_form(out, wc) != w_target:
        raise InternalInconsistencyError("lift does not have the requested initial form")
    return out


def non_standard_tableaux(ctx: Context) -> list[lattice.Tableau]:
    """Canonical two-row non-standard tableaux: one per incomparable pair,
    rows in canonical linear-extension order (shifts weakly increase)."""
    out = []
    for u, v in lattice.incomparable_pairs(ctx):
        if lattice.linear_key(u, ctx) > lattice.linear_key(v, ctx):
            u, v = v, u
        out.append((u, v))
    return out


def coefficient_relations(ctx: Context) -> list[Polynomial]:
    """The t-coefficient relations inherited from the classical quadrics.

    Every classical straightening relation, evaluated at the shift-graded
    generating polynomials g_alpha(t) = sum_a alpha^(a) t^a, vanishes
    identically in t; the coefficient of each power of t is a quadratic
    relation of the truncated ring.  Ordered by classical relation, then by
    t-degree.
    """
    classical_ctx = Context(ctx.p, ctx.m, 0, 0)
    classical = straighten.reduced_groebner(classical_ctx)
    out = []
    for quad in classical:
        graded: dict[int, dict] = {}
        for mono, c in quad.poly.terms.items():
            factors = []
            for var, e in mono:
                factors.extend([var] * e)
            x, y = factors
            for cx in range(ctx.q + 1):
                for cy in range(ctx.q + 1):
                    lifted = polyring.mono_from_pairs(
                        [
                            (PluckerVar(x.cols, cx), 1),
                            (PluckerVar(y.cols, cy), 1),
                        ]
                    )
                    layer = graded.setdefault(cx + cy, {})
                    layer[lifted] = layer.get(lifted, 0) + c
        for r in range(2 * ctx.q + 1):
            f = Polynomial(graded.get(r, {}))
            if f:
                out.append(f)
    return out


def rank_of_span(polys: list[Polynomial], ctx: Context) -> int:
    """Rank of a list of lattice-variable polynomials by exact elimination."""
    ckey = straighten.c_monomial_key(ctx)
    return linalg.rank_of([dict(f.terms) for f in polys], ckey)


def coefficient_relation_report(ctx: Context) -> dict:
    """Counts comparing the inherited relations with the quadratic kernel."""
    relations = coefficient_relations(ctx)
    rank = rank_of_span(relations, ctx)
    kernel_dim = len(straighten.kernel_quadrics_oracle(ctx))
    return {
        "generators": len(relations),
        "rank": rank,
        "kernel_dim": kernel_dim,
        "deficit": kernel_dim - rank,
    }
