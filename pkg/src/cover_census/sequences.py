"""Exact enumeration of 2-covers through generating-function identities.

A 2-cover of [n] is a multiset of nonempty subsets of [n] (blocks) in which
every element lies in exactly two blocks, counted with multiplicity.  The
five sequences computed here are

* ``v``: restricted proper 2-covers (all blocks distinct, any two blocks
  sharing at most one element),
* ``u``: restricted 2-covers (repeated blocks allowed; a repeated block of
  size two or more breaks restrictedness, so only singleton blocks repeat),
* ``t``: proper 2-covers, ``s``: all 2-covers,
* ``l``: restricted 2-covers modulo the triangle/star component exchange,
  the line-graph count in the exchange-class sense (see line_transform).

Everything flows from ``v``.  Adjoining repeated singleton blocks gives the
binomial transform to ``u``; substituting e^x - 1 (equivalently, applying
the Stirling transform) lifts restricted counts to unrestricted ones; and
the correction factor exp(x - x^3/6) converts ``v`` into ``l``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .combinatorics import DEFAULT_BELL_CAP, bell, stirling2
from .errors import ConsistencyError
from .series import BivariateSeries, PowerSeries

# Composition of degree-N series costs O(N^3) exact operations, so the
# always-on identity checks in full_table() cap it; products are O(N^2) and
# run at full degree.
COMPOSE_CHECK_DEGREE = 24

# Always-on spot check of the collapsed extraction against the literal
# bivariate series, kept small because the bivariate grid is quadratic.
_BIVARIATE_SPOT_DEGREE = 8


def block_count_series(max_n: int) -> BivariateSeries:
    """Bivariate series counting restricted proper 2-covers by block count.

    x marks ground-set elements (EGF convention), y marks blocks.  The
    closed form is exp(-y - x y^2 / 2) times sum_m y^m / m! (1 + x)^C(m, 2).

    The y-truncation at 2 * max_n is exact rather than an approximation:
    blocks are nonempty and each of the n elements lies in exactly two of
    them, so a 2-cover of [n] has at most 2n blocks and every discarded
    y-coefficient is genuinely zero in the x-range kept.
    """
    if max_n < 0:
        raise ValueError(f"max_n must be >= 0, got {max_n}")
    nx, ny = max_n, 2 * max_n
    prefactor = BivariateSeries.from_terms(
        {(0, 1): -1, (1, 2): Fraction(-1, 2)} if max_n >= 1 else {},
        nx,
        ny,
    ).exp()
    grid = [[Fraction(0)] * (ny + 1) for _ in range(nx + 1)]
    for m in range(ny + 1):
        pairs = m * (m - 1) // 2
        inv_mf = Fraction(1, factorial(m))
        for i in range(min(nx, pairs) + 1):
            grid[i][m] = comb(pairs, i) * inv_mf
    block_sum = BivariateSeries(nx, ny, tuple(tuple(row) for row in grid))
    return prefactor * block_sum


def sequence_from_block_series(series: BivariateSeries) -> list[int]:
    """Extract the restricted-proper counts: n! times the x^n row sum."""
    values = []
    for n in range(series.degree_x + 1):
        total = sum(series.coeffs[n], Fraction(0)) * factorial(n)
        if total.denominator != 1:
            raise ConsistencyError(
                f"block-count series row {n} sums to non-integer {total}"
            )
        values.append(int(total))
    return values


def restricted_proper_sequence(max_n: int) -> list[int]:
    """Count restricted proper 2-covers of [n] for n = 0 .. max_n.

    This collapses the bivariate block-count series analytically instead of
    materializing its quadratic grid.  Writing the prefactor as
    exp(-y) exp(-x y^2 / 2) and summing each x^n coefficient over all block
    counts (the y-truncation at 2 * max_n is exact, see
    block_count_series), the inner alternating sum over the exp(-y) index
    telescopes into derangement numbers via
    sum_{a <= A} (-1)^a / a! = derangement(A) / A!.  What remains is, for
    each pairing count b, an integer accumulation over the block count m:

        acc(b, j) = sum_m C(K, m) * derangement(K - m) * C(C(m, 2), j)

    with K = 2 * max_n - 2b, and

        v_n = n! * sum_b (-1)^b * acc(b, n - b) / (2^b * b! * K!).
    """
    if max_n < 0:
        raise ValueError(f"max_n must be >= 0, got {max_n}")
    big_m = 2 * max_n
    derangement = [1]
    for i in range(1, big_m + 1):
        derangement.append(i * derangement[-1] + (-1) ** i)
    # pair_choices[m][j] = C(C(m, 2), j) for j up to min(max_n, C(m, 2))
    pair_choices: list[list[int]] = []
    for m in range(big_m + 1):
        pairs = m * (m - 1) // 2
        row = [1]
        for j in range(1, min(max_n, pairs) + 1):
            row.append(row[-1] * (pairs - j + 1) // j)
        pair_choices.append(row)
    acc: list[list[int]] = []
    for b in range(max_n + 1):
        remaining = big_m - 2 * b
        totals = [0] * (max_n + 1)
        for m in range(remaining + 1):
            weight = comb(remaining, m) * derangement[remaining - m]
            if weight == 0:
                continue
            row = pair_choices[m]
            for j in range(min(len(row) - 1, max_n) + 1):
                totals[j] += weight * row[j]
        acc.append(totals)
    values = []
    for n in range(max_n + 1):
        total = Fraction(0)
        for b in range(n + 1):
            remaining = big_m - 2 * b
            total += Fraction(
                (-1) ** b * acc[b][n - b],
                2**b * factorial(b) * factorial(remaining),
            )
        term = total * factorial(n)
        if term.denominator != 1:
            raise ConsistencyError(
                f"restricted-proper count at n={n} is non-integer {term}"
            )
        values.append(int(term))
    return values


def binomial_transform(values: Sequence[int]) -> list[int]:
    """Apply b_n = sum_k C(n, k) a_k.

    Adjoining any set of repeated singleton blocks to a restricted proper
    2-cover is exactly what relaxes properness while preserving
    restrictedness, so this carries the ``v`` sequence to ``u``.
    """
    return [
        sum(comb(n, k) * values[k] for k in range(n + 1))
        for n in range(len(values))
    ]


def stirling_transform(values: Sequence[int]) -> list[int]:
    """Apply b_n = sum_k S(n, k) a_k, the EGF substitution x -> e^x - 1.

    Collapsing the blocks of a set partition of [n] to single points turns
    an arbitrary 2-cover into a restricted one, so this carries ``v`` to
    ``t`` and ``u`` to ``s``.
    """
    return [
        sum(stirling2(n, k) * values[k] for k in range(n + 1))
        for n in range(len(values))
    ]


def line_transform(v_series: PowerSeries) -> list[int]:
    """Line-graph counts from the restricted-proper EGF.

    A graph with n labelled edges and no isolated vertices is the same
    thing as a restricted 2-cover of the edge set (each vertex contributes
    its set of incident edges), and the triangle and the three-edge star
    are the classical pair of such graphs with equal line graphs.  The
    correction factor exp(-x^3/6) merges each triangle component with its
    star twin, giving two equivalent product forms, exp(x - x^3/6) * V(x)
    and exp(-x^3/6) * V(x) e^x; both are computed and must agree
    coefficientwise.

    The result counts covers modulo that triangle/star exchange.  For
    n <= 3 this equals the number of labelled line graphs, but from n = 4
    on it overcounts them (66 versus 60 at n = 4): line graphs with small
    components admit further labelled root collisions, such as a pendant
    edge on a triangle folding into the same diamond two ways.  The
    brute-force engine counts both quantities separately.
    """
    degree = v_series.degree
    cubic = PowerSeries.from_coeffs([0, 0, 0, Fraction(-1, 6)], degree)
    direct = (PowerSeries.x(degree) + cubic).exp() * v_series
    via_u = cubic.exp() * (v_series * PowerSeries.x(degree).exp())
    values = []
    for n in range(degree + 1):
        if direct.coefficient(n) != via_u.coefficient(n):
            raise ConsistencyError(
                f"line-graph series routes disagree at x^{n}: "
                f"{direct.coefficient(n)} vs {via_u.coefficient(n)}"
            )
        term = direct.sequence_term(n)
        if term.denominator != 1:
            raise ConsistencyError(
                f"line-graph count at n={n} is non-integer {term}"
            )
        values.append(int(term))
    return values


@dataclass(frozen=True)
class TableRow:
    """One row of the exact table: all five counts at a single n."""

    n: int
    s: int
    t: int
    u: int
    v: int
    l: int
    bell_2n: int


@dataclass(frozen=True)
class SequenceTable:
    """Exact counts for n = 0 .. max_n with cross-checked provenance."""

    max_n: int
    rows: tuple[TableRow, ...]

    def row(self, n: int) -> TableRow:
        if not 0 <= n <= self.max_n:
            raise ValueError(f"row {n} outside 0..{self.max_n}")
        return self.rows[n]

    def column(self, name: str) -> list[int]:
        return [getattr(row, name) for row in self.rows]


def _check_sequence_match(name: str, expected: Sequence[int], series: PowerSeries) -> None:
    for n, value in enumerate(expected):
        term = series.sequence_term(n)
        if term != value:
            raise ConsistencyError(
                f"{name}: first mismatch at n={n}: {value} vs {term}"
            )


def full_table(
    max_n: int,
    *,
    compose_check_degree: int = COMPOSE_CHECK_DEGREE,
    bell_cap: int = DEFAULT_BELL_CAP,
) -> SequenceTable:
    """Compute the five sequences to ``max_n`` with redundant verification.

    Every derived route is recomputed a second way and compared: the
    collapsed extraction is spot-checked against the literal bivariate
    series, the binomial and Stirling transforms against series products
    and compositions, and the line-graph counts against their two product
    forms.  Any disagreement raises ConsistencyError.
    """
    if max_n < 0:
        raise ValueError(f"max_n must be >= 0, got {max_n}")
    if 2 * max_n > bell_cap:
        raise ValueError(
            f"full_table({max_n}) needs Bell numbers to {2 * max_n}, above the"
            f" cap {bell_cap}"
        )
    v = restricted_proper_sequence(max_n)

    spot = min(max_n, _BIVARIATE_SPOT_DEGREE)
    literal = sequence_from_block_series(block_count_series(spot))
    if literal != v[: spot + 1]:
        raise ConsistencyError(
            "collapsed and literal block-count extractions disagree: "
            f"{v[: spot + 1]} vs {literal}"
        )

    u = binomial_transform(v)
    t = stirling_transform(v)
    s = stirling_transform(u)
    v_series = PowerSeries.from_sequence(v, max_n)
    l = line_transform(v_series)

    exp_x = PowerSeries.x(max_n).exp()
    u_series = v_series * exp_x
    _check_sequence_match("restricted route (V * e^x vs binomial transform)", u, u_series)

    t_series = PowerSeries.from_sequence(t, max_n)
    bell_series = (exp_x - PowerSeries.one(max_n)).exp()
    _check_sequence_match(
        "plain-cover route (T * Bell EGF vs Stirling transform)",
        s,
        t_series * bell_series,
    )

    d = min(max_n, compose_check_degree)
    shifted = (PowerSeries.x(d).exp() - PowerSeries.one(d))
    _check_sequence_match(
        "composition route for all 2-covers",
        s[: d + 1],
        u_series.truncate(d).compose(shifted),
    )
    _check_sequence_match(
        "composition route for proper 2-covers",
        t[: d + 1],
        v_series.truncate(d).compose(shifted),
    )

    rows = []
    for n in range(max_n + 1):
        if not (v[n] <= u[n] and t[n] <= s[n] and l[n] <= u[n]):
            raise ConsistencyError(
                f"count ordering violated at n={n}: "
                f"s={s[n]} t={t[n]} u={u[n]} v={v[n]} l={l[n]}"
            )
        rows.append(
            TableRow(n, s[n], t[n], u[n], v[n], l[n], bell(2 * n, cap=bell_cap))
        )
    if rows[0] != TableRow(0, 1, 1, 1, 1, 1, 1):
        raise ConsistencyError(f"row 0 should be all ones, got {rows[0]}")
    return SequenceTable(max_n, tuple(rows))
