"""Standard monomials, subduction, and the quadratic straightening basis.

The incomparable products are straightened by subduction: the leading
monomial of a product of generator images is repeatedly cancelled by the
image of a standard (comparable) pair, and the recorded steps assemble the
quadratic relation with that incomparable product as leading term.  A
brute-force linear-algebra kernel over the quadratic part serves as an
independent oracle.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import lattice, linalg, maps, polyring
from .errors import (
    InternalInconsistencyError,
    InvalidInputError,
    NotInInitialAlgebraError,
    SagbiFailureError,
)
from .lattice import Context, PluckerVar
from .maps import EMPTY_MASK, SpecMask
from .polyring import Mono, Polynomial, X_ORDER

Interval = tuple[PluckerVar, PluckerVar]


@dataclass(frozen=True)
class Quadric:
    """A quadratic relation with its designated incomparable leading pair."""

    poly: Polynomial
    lead_pair: tuple[PluckerVar, PluckerVar]


@dataclass
class SubductionTrace:
    """Audit record of one subduction run.

    Replaying the steps against the input reproduces the remainder:
    input - sum(coeff * image(u) * image(v)) == remainder.
    """

    steps: list[tuple[tuple[PluckerVar, PluckerVar], object]]
    remainder: Polynomial
    witness: Optional[Mono] = None


def _pair_mono(u: PluckerVar, v: PluckerVar) -> Mono:
    return polyring.mono_from_pairs([(u, 1), (v, 1)])


def interval_mask(ctx: Context, interval: Optional[Interval]) -> SpecMask:
    """Zero pattern for the generator images used by the straightening layer.

    With an interval, the skew-cell mask of its endpoints.  Without one,
    the full truncation is still the cell of its own top element: when
    q < n*p the matrix must be specialized so that its minors have degree
    at most q (otherwise the images generate the coordinate ring of a
    larger space and the quadratic kernel comes out too small).  At
    q = n*p that specialization is not needed and the raw images are used.
    """
    if interval is None:
        if ctx.q == ctx.n * ctx.p:
            return EMPTY_MASK
        return maps.schubert_mask(ctx, lattice.top(ctx))
    bot, top = interval
    return maps.schubert_mask(ctx, top, bot)


def hibi_binomial(u: PluckerVar, v: PluckerVar, ctx: Context) -> Quadric:
    """u*v - (u v join)*(u v meet), the toric relation of an incomparable pair."""
    lattice.validate_var(u, ctx)
    lattice.validate_var(v, ctx)
    if not lattice.incomparable(u, v):
        raise InvalidInputError(f"{u!r} and {v!r} are comparable")
    meet, join = lattice.meet_join(u, v)
    poly = Polynomial({_pair_mono(u, v): 1, _pair_mono(meet, join): -1})
    return Quadric(poly, (u, v))


def is_standard_monomial(mono: Mono, ctx: Context) -> bool:
    """True when the variables of the monomial form a multichain."""
    rows: list[PluckerVar] = []
    for v, e in mono:
        rows.extend([v] * e)
    rows.sort(key=lambda u: lattice.linear_key(u, ctx))
    return all(lattice.leq(rows[i], rows[i + 1]) for i in range(len(rows) - 1))


def standard_monomials(
    ctx: Context,
    degree: int,
    multidegree: Optional[tuple[tuple[int, ...], int]] = None,
    interval: Optional[Interval] = None,
) -> list[Mono]:
    """All standard monomials of the given degree, optionally filtered by the
    (column multiset, shift sum) multidegree."""
    elems = lattice.elements(ctx, interval)
    out: list[Mono] = []

    def extend(chain: list[PluckerVar], start: int):
        if len(chain) == degree:
            if multidegree is not None:
                cols = tuple(sorted(c for u in chain for c in u.cols))
                if cols != multidegree[0] or sum(u.shift for u in chain) != multidegree[1]:
                    return
            out.append(polyring.mono_from_pairs((u, 1) for u in chain))
            return
        for k in range(start, len(elems)):
            if not chain or lattice.leq(chain[-1], elems[k]):
                extend(chain + [elems[k]], k)

    extend([], 0)
    return out


def factor_initial(
    mono: Mono,
    ctx: Context,
    elements: Optional[list[PluckerVar]] = None,
) -> tuple[PluckerVar, PluckerVar]:
    """The unique standard pair (u, v), u <= v, with psi(u)*psi(v) == mono.

    Candidates u are pruned by the shift/level-sum budget and by column
    divisibility; the quotient is pattern-matched against the closed form
    of the leading monomials.  No factorization means the monomial lies
    outside the initial algebra; two factorizations cannot happen if the
    standard monomials are linearly independent, so that case is an
    internal error.
    """
    if elements is None:
        elements = lattice.elements(ctx)
    allowed = set(elements)
    budget = polyring.level_sum(mono)
    found = []
    for u in elements:
        if u.shift > budget or budget - u.shift > ctx.q:
            continue
        quotient = polyring.mono_div(mono, maps.psi(u, ctx))
        if quotient is None:
            continue
        v = maps.psi_invert(quotient, ctx)
        if v is None or v.shift > ctx.q or not lattice.leq(u, v):
            continue
        if v not in allowed:
            continue
        found.append((u, v))
    if not found:
        raise NotInInitialAlgebraError(mono)
    if len(found) > 1:
        raise InternalInconsistencyError(
            f"monomial admits {len(found)} standard factorizations: {found!r}"
        )
    return found[0]


def subduct(
    f: Polynomial,
    ctx: Context,
    interval: Optional[Interval] = None,
) -> SubductionTrace:
    """Cancel leading monomials by images of standard pairs until exhausted.

    Only inputs homogeneous of matrix-degree 2p are accepted (products of
    two generator images).  A leading monomial with no standard
    factorization stops the run and is reported as the witness.
    """
    two_p = 2 * ctx.p
    if any(polyring.mono_deg(m) != two_p for m in f.terms):
        raise InvalidInputError("subduction input must be homogeneous of degree 2p")
    elems = lattice.elements(ctx, interval)
    mask = interval_mask(ctx, interval)
    lead_coeff: dict[PluckerVar, object] = {}

    def image(u: PluckerVar) -> Polynomial:
        return maps.generator_image(u, ctx, mask)

    def lc(u: PluckerVar):
        if u not in lead_coeff:
            lt = X_ORDER.leading_term(image(u))
            if lt is None:
                raise InternalInconsistencyError(f"zero image for {u!r}")
            lead_coeff[u] = lt[0]
        return lead_coeff[u]

    cap = None
    steps: list[tuple[tuple[PluckerVar, PluckerVar], object]] = []
    while f:
        coeff, mono = X_ORDER.leading_term(f)
        try:
            u, v = factor_initial(mono, ctx, elems if interval else None)
        except NotInInitialAlgebraError:
            return SubductionTrace(steps, f, witness=mono)
        if cap is None:
            md = (polyring.column_multiset(mono), polyring.level_sum(mono))
            cap = len(standard_monomials(ctx, 2, md, interval)) + 1
        if len(steps) >= cap:
            raise InternalInconsistencyError("subduction exceeded its step budget")
        step = Fraction(coeff) / (lc(u) * lc(v))
        if step.denominator == 1:
            step = int(step)
        f = f - step * (image(u) * image(v))
        steps.append(((u, v), step))
    return SubductionTrace(steps, Polynomial.zero())


def straightening_relation(
    gamma: PluckerVar,
    delta: PluckerVar,
    ctx: Context,
    interval: Optional[Interval] = None,
) -> Quadric:
    """The reduced-basis quadric with leading term gamma*delta.

    Subduction of the product of the two generator images supplies the
    trailing standard terms; the shape conditions (second term is the
    join-meet product with coefficient -1, all later pairs strictly
    straddle) are asserted rather than assumed.
    """
    lattice.validate_var(gamma, ctx)
    lattice.validate_var(delta, ctx)
    if not lattice.incomparable(gamma, delta):
        raise InvalidInputError(f"{gamma!r} and {delta!r} are comparable")
    mask = interval_mask(ctx, interval)
    f = maps.generator_image(gamma, ctx, mask) * maps.generator_image(delta, ctx, mask)
    trace = subduct(f, ctx, interval)
    if trace.remainder:
        raise SagbiFailureError((gamma, delta), trace.witness)
    meet, join = lattice.meet_join(gamma, delta)
    if not trace.steps or trace.steps[0] != ((meet, join), 1):
        raise InternalInconsistencyError(
            f"first subduction step is not the meet/join pair for ({gamma!r}, {delta!r})"
        )
    terms = {_pair_mono(gamma, delta): 1}
    for (u, v), c in trace.steps:
        m = _pair_mono(u, v)
        terms[m] = terms.get(m, 0) - c
    poly = Polynomial(terms)
    for (u, v), _ in trace.steps[1:]:
        if not (
            lattice.leq(u, meet) and u != meet and lattice.leq(join, v) and v != join
        ):
            raise InternalInconsistencyError(
                f"trailing pair ({u!r}, {v!r}) does not straddle the meet/join"
            )
    for (u, v), _ in trace.steps:
        if lattice.incomparable(u, v):
            raise InternalInconsistencyError("trailing term is divisible by a lead pair")
    return Quadric(poly, (gamma, delta))


def reduced_groebner(
    ctx: Context, interval: Optional[Interval] = None
) -> list[Quadric]:
    """One straightening quadric per incomparable pair, canonically ordered."""
    return [
        straightening_relation(u, v, ctx, interval)
        for u, v in lattice.incomparable_pairs(ctx, interval)
    ]


def _check_pairs_worker(args):
    (p, m, n, q), pairs = args
    ctx = Context(p, m, n, q)
    mask = interval_mask(ctx, None)
    out = []
    for ucols, ushift, vcols, vshift in pairs:
        u = PluckerVar(tuple(ucols), ushift)
        v = PluckerVar(tuple(vcols), vshift)
        f = maps.generator_image(u, ctx, mask) * maps.generator_image(v, ctx, mask)
        trace = subduct(f, ctx)
        witness = None
        if trace.remainder:
            witness = polyring.emit_text(Polynomial.term(trace.witness), "X")
        out.append((ucols, ushift, vcols, vshift, witness))
    return out


def sagbi_check(ctx: Context, jobs: int = 1) -> dict:
    """Subduct every incomparable product; report the nonzero remainders.

    The generators pass exactly when the failure list is empty.  Pairs are
    independent, so they may be distributed over worker processes; the
    report order is fixed by the canonical pair order regardless.
    """
    pairs = lattice.incomparable_pairs(ctx)
    payload = [(u.cols, u.shift, v.cols, v.shift) for u, v in pairs]
    key = (ctx.p, ctx.m, ctx.n, ctx.q)
    if jobs > 1 and len(payload) > 1:
        chunks = [payload[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_pairs_worker, [(key, c) for c in chunks]))
        merged = {}
        for chunk in results:
            for ucols, ushift, vcols, vshift, witness in chunk:
                merged[(ucols, ushift, vcols, vshift)] = witness
        outcomes = [merged[p] for p in payload]
    else:
        outcomes = [r[4] for r in _check_pairs_worker((key, payload))]
    failures = []
    for (u, v), witness in zip(pairs, outcomes):
        if witness is not None:
            failures.append(
                {
                    "pair": [lattice.format_var(u), lattice.format_var(v)],
                    "witness_monomial": witness,
                }
            )
    return {
        "context": {"p": ctx.p, "m": ctx.m, "n": ctx.n, "q": ctx.q},
        "pairs_total": len(pairs),
        "failures": failures,
    }


def _dense_key(order_vars: list):
    """Sortable degrevlex key over a fixed ascending variable list."""
    index = {v: i for i, v in enumerate(order_vars)}
    width = len(order_vars)

    def key(m: Mono):
        vec = [0] * width
        for v, e in m:
            vec[index[v]] = e
        return (sum(vec), tuple(-x for x in vec))

    return key


def x_monomial_key(ctx: Context):
    xvars = sorted(
        (
            polyring.XVar(i, j, l)
            for i in range(1, ctx.p + 1)
            for j in range(1, ctx.width + 1)
            for l in range(ctx.n + 1)
        ),
        key=X_ORDER.var_key,
    )
    return _dense_key(xvars)


def c_monomial_key(ctx: Context, elems: Optional[list[PluckerVar]] = None):
    if elems is None:
        elems = lattice.elements(ctx)
    return _dense_key(elems)


def kernel_quadrics_oracle(
    ctx: Context, interval: Optional[Interval] = None
) -> list[Polynomial]:
    """Independent basis of the quadratic kernel by exact linear algebra.

    All products of two generator images are expanded and the relations
    among them solved exactly, grouped by the (column multiset, shift sum)
    multidegree under which the kernel splits.  The result is a reduced
    row-echelon basis in the canonical monomial coordinates.
    """
    elems = lattice.elements(ctx, interval)
    mask = interval_mask(ctx, interval)
    images = {u: maps.generator_image(u, ctx, mask) for u in elems}
    groups: dict[tuple, list[Mono]] = {}
    for i, u in enumerate(elems):
        for v in elems[i:]:
            md = (
                tuple(sorted(u.cols + v.cols)),
                u.shift + v.shift,
            )
            groups.setdefault(md, []).append(_pair_mono(u, v))
    xkey = x_monomial_key(ctx)
    ckey = c_monomial_key(ctx, elems)
    relations: list[Polynomial] = []
    for md in sorted(groups):
        monos = groups[md]
        rows = []
        for m in monos:
            prod = Polynomial.constant(1)
            for var, e in m:
                prod = prod * images[var] ** e
            rows.append(dict(prod.terms))
        for combo in linalg.nullspace(rows, xkey):
            relations.append(Polynomial({monos[i]: c for i, c in combo.items()}))
    basis_elim = linalg.Eliminator(ckey)
    for rel in relations:
        basis_elim.add(dict(rel.terms))
    basis = [Polynomial(row) for row in basis_elim.rows()]
    basis.sort(key=lambda f: ckey(max(f.terms, key=ckey)), reverse=True)
    return basis
