"""The distributive lattice of shifted column sets and its chain combinatorics.

Elements are pairs (alpha, a) of a strictly increasing p-subset of columns
and a nonnegative shift.  The partial order, meets and joins, the rank
function, the order isomorphism onto an interval of Young's poset, and
exact maximal-chain counting all live here.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import InvalidInputError, NotInImageError


@dataclass(frozen=True)
class Context:
    """Problem size: a p x (m+p) matrix with entries of degree n, shifts up to q.

    Invariant: 0 <= q <= n*p.  The stacked width N = (n+1)*(m+p) is derived.
    """

    p: int
    m: int
    n: int = 0
    q: int = 0

    def __post_init__(self):
        if self.p < 1:
            raise InvalidInputError(f"p must be >= 1, got {self.p}")
        if self.m < 1:
            raise InvalidInputError(f"m must be >= 1, got {self.m}")
        if self.n < 0:
            raise InvalidInputError(f"n must be >= 0, got {self.n}")
        if not 0 <= self.q <= self.n * self.p:
            raise InvalidInputError(
                f"q must satisfy 0 <= q <= n*p = {self.n * self.p}, got {self.q}"
            )

    @property
    def width(self) -> int:
        """Number of matrix columns, m + p."""
        return self.m + self.p

    @property
    def stacked_width(self) -> int:
        """Total column count N = (n+1)*(m+p) of the level-stacked matrix."""
        return (self.n + 1) * self.width


class PluckerVar(NamedTuple):
    """A lattice element: strictly increasing column set plus a shift."""

    cols: tuple[int, ...]
    shift: int


class YoungSeq(NamedTuple):
    """A strictly increasing sequence of positive integers."""

    entries: tuple[int, ...]


def validate_var(u: PluckerVar, ctx: Context, bound_shift: bool = True) -> None:
    """Raise InvalidInputError unless u is a well-formed element for ctx."""
    cols = u.cols
    if len(cols) != ctx.p:
        raise InvalidInputError(f"expected {ctx.p} columns, got {u!r}")
    if any(cols[i] >= cols[i + 1] for i in range(len(cols) - 1)):
        raise InvalidInputError(f"columns must be strictly increasing: {u!r}")
    if cols[0] < 1 or cols[-1] > ctx.width:
        raise InvalidInputError(f"columns must lie in [1, {ctx.width}]: {u!r}")
    if u.shift < 0:
        raise InvalidInputError(f"shift must be >= 0: {u!r}")
    if bound_shift and u.shift > ctx.q:
        raise InvalidInputError(f"shift exceeds q={ctx.q}: {u!r}")


def format_var(u: PluckerVar, compact: bool = False) -> str:
    """Render a lattice element; compact digit form only when every column <= 9."""
    if compact and all(c <= 9 for c in u.cols):
        return "%s^%d" % ("".join(str(c) for c in u.cols), u.shift)
    return "%s^%d" % (",".join(str(c) for c in u.cols), u.shift)


def parse_var(text: str, p: Optional[int] = None) -> PluckerVar:
    """Parse "2,3,5^2" (general) or "235^2" (compact digit form).

    Without commas the string is read digit by digit, unless p is given and
    equals 1, in which case the whole column part is a single number.
    """
    text = text.strip()
    if "^" not in text:
        raise InvalidInputError(f"missing shift in {text!r}")
    colpart, _, shiftpart = text.rpartition("^")
    try:
        shift = int(shiftpart)
    except ValueError:
        raise InvalidInputError(f"bad shift in {text!r}") from None
    if "," in colpart:
        try:
            cols = tuple(int(c) for c in colpart.split(","))
        except ValueError:
            raise InvalidInputError(f"bad column list in {text!r}") from None
    elif p == 1:
        try:
            cols = (int(colpart),)
        except ValueError:
            raise InvalidInputError(f"bad column in {text!r}") from None
    else:
        if not colpart.isdigit():
            raise InvalidInputError(f"bad column list in {text!r}")
        cols = tuple(int(c) for c in colpart)
    u = PluckerVar(cols, shift)
    if p is not None and len(cols) != p:
        raise InvalidInputError(f"expected {p} columns in {text!r}")
    return u


def leq(u: PluckerVar, v: PluckerVar, ctx: Optional[Context] = None) -> bool:
    """Partial order: shifts weakly increase and columns interlace.

    u <= v iff shift(u) <= shift(v) and u.cols[i] <= v.cols[i+d] for all i,
    with d the shift difference; vacuously true on the columns when d >= p.
    """
    if len(u.cols) != len(v.cols):
        raise InvalidInputError("mismatched column counts: %r vs %r" % (u, v))
    if ctx is not None:
        validate_var(u, ctx)
        validate_var(v, ctx)
    d = v.shift - u.shift
    if d < 0:
        return False
    return all(u.cols[i] <= v.cols[i + d] for i in range(len(u.cols) - d))


def incomparable(u: PluckerVar, v: PluckerVar) -> bool:
    return not leq(u, v) and not leq(v, u)


def meet_join(u: PluckerVar, v: PluckerVar) -> tuple[PluckerVar, PluckerVar]:
    """Meet and join, realized by swapping entries in violating columns.

    The two rows are aligned with the larger shift pushed further left; in
    every aligned column whose lower entry is smaller than its upper entry
    the two are swapped.  The resulting rows are the meet and the join.
    """
    if u.shift > v.shift:
        u, v = v, u
    d = v.shift - u.shift
    lo = list(u.cols)
    hi = list(v.cols)
    for k in range(d, len(v.cols)):
        if hi[k] < lo[k - d]:
            lo[k - d], hi[k] = hi[k], lo[k - d]
    meet = PluckerVar(tuple(lo), u.shift)
    join = PluckerVar(tuple(hi), v.shift)
    for w in (meet, join):
        if any(w.cols[i] >= w.cols[i + 1] for i in range(len(w.cols) - 1)):
            raise InvalidInputError(f"column swap left a non-increasing row: {w!r}")
    return meet, join


def rank(u: PluckerVar, ctx: Context) -> int:
    """Rank in the graded lattice: a*(m+p) + sum_j (alpha_j - j)."""
    return u.shift * ctx.width + sum(c - j for j, c in enumerate(u.cols, start=1))


def to_young(u: PluckerVar, ctx: Context) -> YoungSeq:
    """Order isomorphism onto sequences J with max(J) - min(J) < m + p.

    Writing the shift as p*l + r with 0 <= r < p, the top p-r columns are
    placed in level l and the bottom r columns in level l+1 of the stacked
    column range.
    """
    p, w = ctx.p, ctx.width
    l, r = divmod(u.shift, p)
    entries = [l * w + c for c in u.cols[r:]] + [(l + 1) * w + c for c in u.cols[:r]]
    return YoungSeq(tuple(entries))


def from_young(j: YoungSeq, ctx: Context) -> PluckerVar:
    """Inverse of to_young; rejects sequences outside the embedding's image."""
    seq = j.entries
    if len(seq) != ctx.p:
        raise InvalidInputError(f"expected {ctx.p} entries, got {j!r}")
    if any(seq[i] >= seq[i + 1] for i in range(len(seq) - 1)) or seq[0] < 1:
        raise InvalidInputError(f"entries must be strictly increasing and positive: {j!r}")
    w = ctx.width
    if seq[-1] - seq[0] >= w:
        raise NotInImageError(f"span of {j!r} reaches {w}, not in the image")
    l = (seq[0] - 1) // w
    low = [x - l * w for x in seq if (x - 1) // w == l]
    high = [x - (l + 1) * w for x in seq if (x - 1) // w == l + 1]
    if len(low) + len(high) != ctx.p:
        raise NotInImageError(f"{j!r} spreads over more than two levels")
    return PluckerVar(tuple(high + low), ctx.p * l + len(high))


def young_rank(j: YoungSeq) -> int:
    return sum(x - i for i, x in enumerate(j.entries, start=1))


def linear_key(u: PluckerVar, ctx: Context):
    """Canonical linear extension: ascending (shift, rank, columns).

    Shift is the primary key, mirroring the level-first variable order on
    the matrix side; rank and column lexicography break ties.
    """
    return (u.shift, rank(u, ctx), u.cols)


@functools.lru_cache(maxsize=None)
def _all_elements(ctx: Context) -> tuple[PluckerVar, ...]:
    out = [
        PluckerVar(cols, shift)
        for shift in range(ctx.q + 1)
        for cols in itertools.combinations(range(1, ctx.width + 1), ctx.p)
    ]
    out.sort(key=lambda u: linear_key(u, ctx))
    return tuple(out)


def elements(
    ctx: Context,
    interval: Optional[tuple[PluckerVar, PluckerVar]] = None,
) -> list[PluckerVar]:
    """All lattice elements (optionally within a closed interval), canonically ordered."""
    if interval is None:
        return list(_all_elements(ctx))
    bot, top = interval
    validate_var(bot, ctx)
    validate_var(top, ctx)
    if not leq(bot, top):
        raise InvalidInputError(f"invalid interval: {bot!r} is not below {top!r}")
    return [u for u in _all_elements(ctx) if leq(bot, u) and leq(u, top)]


def incomparable_pairs(
    ctx: Context,
    interval: Optional[tuple[PluckerVar, PluckerVar]] = None,
) -> list[tuple[PluckerVar, PluckerVar]]:
    """All unordered incomparable pairs, in canonical order."""
    elems = elements(ctx, interval)
    pairs = []
    for i, u in enumerate(elems):
        for v in elems[i + 1 :]:
            if incomparable(u, v):
                pairs.append((u, v))
    return pairs


def bottom(ctx: Context) -> PluckerVar:
    return PluckerVar(tuple(range(1, ctx.p + 1)), 0)


def top(ctx: Context) -> PluckerVar:
    return PluckerVar(tuple(range(ctx.m + 1, ctx.width + 1)), ctx.q)


def count_maximal_chains(
    ctx: Context,
    interval: Optional[tuple[PluckerVar, PluckerVar]] = None,
) -> int:
    """Exact number of saturated chains from the bottom to the top.

    Dynamic programming over the rank grading; covers are pairs below each
    other at rank distance one.  Counts grow fast, so everything stays in
    arbitrary-precision integers.
    """
    if interval is None:
        interval = (bottom(ctx), top(ctx))
    bot, topv = interval
    validate_var(bot, ctx)
    validate_var(topv, ctx)
    if not leq(bot, topv):
        return 0
    elems = elements(ctx, (bot, topv))
    by_rank: dict[int, list[PluckerVar]] = {}
    for u in elems:
        by_rank.setdefault(rank(u, ctx), []).append(u)
    counts = {bot: 1}
    for r in sorted(by_rank)[1:]:
        below = by_rank.get(r - 1, ())
        for u in by_rank[r]:
            counts[u] = sum(counts[v] for v in below if leq(v, u))
    return counts.get(topv, 0)


# -- tableaux ---------------------------------------------------------------

Tableau = tuple[PluckerVar, ...]


def is_standard(t: Tableau, ctx: Optional[Context] = None) -> bool:
    """Rows form a weakly increasing chain in the lattice."""
    if ctx is not None:
        for row in t:
            validate_var(row, ctx)
    return all(leq(t[i], t[i + 1]) for i in range(len(t) - 1))


def standardize(t: Tableau, ctx: Optional[Context] = None) -> Tableau:
    """Repair a tableau by bubbling meet/join swaps until the rows chain.

    Each pass replaces an adjacent offending pair by its meet and join,
    which preserves the multiset of entries in every skew column and the
    multiset of row shifts.  Terminates because the position-weighted rank
    sum strictly decreases with every swap.
    """
    if ctx is not None:
        for row in t:
            validate_var(row, ctx)
    rows = list(t)
    if not rows:
        return ()
    w = ctx.width if ctx is not None else max(r.cols[-1] for r in rows)
    maxrank = max(r.shift * w + sum(r.cols) for r in rows)
    limit = len(rows) ** 2 * (maxrank + 1) + 2
    for _ in range(limit):
        changed = False
        for i in range(len(rows) - 1):
            pair = meet_join(rows[i], rows[i + 1])
            if pair != (rows[i], rows[i + 1]):
                rows[i], rows[i + 1] = pair
                changed = True
        if not changed:
            return tuple(rows)
    raise InvalidInputError("standardization did not terminate")


def column_multisets(t: Tableau) -> dict[int, tuple[int, ...]]:
    """Multiset of entries in each skew column (entry index minus row shift)."""
    cols: dict[int, list[int]] = {}
    for row in t:
        for i, c in enumerate(row.cols, start=1):
            cols.setdefault(i - row.shift, []).append(c)
    return {k: tuple(sorted(v)) for k, v in cols.items()}
