"""Asymptotic estimators and exact probabilistic quantities for 2-covers.

The estimators live in log space throughout: Bell numbers at the sizes of
interest overflow any float, so exact integers are converted to
high-precision logarithms and compared there.  The probabilistic layer
(factorial moments, separation probability, collision bound) stays in
exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import DEFAULT_BELL_CAP, bell, binomial, falling_factorial
from .errors import ConsistencyError
from .sequences import SequenceTable, full_table

DEFAULT_W_TOLERANCE = 1e-12

_LOG2 = math.log(2.0)

REPORT_NOTE = (
    "estimator ratios converge like log log n / log n: judge them by their"
    " trend toward 1, never by tight agreement; trend regressions are"
    " warnings, exact-identity violations are failures"
)


@dataclass(frozen=True)
class WValue:
    """A solved point of w * e^w = t with its relative residual."""

    t: float
    w: float
    residual: float


def lambert_w(
    t: float,
    *,
    tolerance: float = DEFAULT_W_TOLERANCE,
    max_iterations: int = 50,
) -> WValue:
    """Solve w * e^w = t on the principal branch by Halley iteration.

    The initial guess is log t - log log t for t >= e and t itself below,
    after which convergence to the 1e-12 relative residual takes a handful
    of steps.
    """
    if t <= 0:
        raise ValueError(f"lambert_w() needs t > 0, got {t}")
    if t >= math.e:
        log_t = math.log(t)
        w = log_t - math.log(log_t)
    else:
        w = t
    for _ in range(max_iterations):
        ew = math.exp(w)
        residual = w * ew - t
        if abs(residual) <= tolerance * t:
            return WValue(t=t, w=w, residual=abs(residual) / t)
        derivative = ew * (w + 1.0)
        w -= residual / (derivative - (w + 2.0) * residual / (2.0 * w + 2.0))
    raise ArithmeticError(
        f"lambert_w({t}) did not reach residual {tolerance} in"
        f" {max_iterations} iterations"
    )


def lambert_w_expansion(t: float) -> float:
    """Three-term large-t expansion log t - log log t + log log t / log t."""
    if t <= math.e:
        raise ValueError(f"lambert_w_expansion() needs t > e, got {t}")
    log_t = math.log(t)
    log_log_t = math.log(log_t)
    return log_t - log_log_t + log_log_t / log_t


def log_integer(x: int) -> float:
    """Natural log of a positive integer of any size, error < 1e-12 relative.

    Floats cannot hold the huge Bell numbers, so the integer is split into
    a 53-bit leading mantissa and a power of two.
    """
    if x <= 0:
        raise ValueError(f"log_integer() needs x > 0, got {x}")
    bits = x.bit_length()
    if bits <= 53:
        return math.log(x)
    shift = bits - 53
    return math.log(x >> shift) + shift * _LOG2


def log_bell_asymptotic(n: int) -> float:
    """Log of the n-th Bell number by the expansion of Moser and Wyman.

    Evaluates the full expansion at w = W(n), including the e^{-w} and
    e^{-2w} correction terms; the truncation error is O(e^{-3w}).  e^w is
    taken as n / w, which the defining identity makes exact.
    """
    if n < 10:
        raise ValueError(f"log_bell_asymptotic() needs n >= 10, got {n}")
    w = lambert_w(float(n)).w
    ew = n / w
    one_plus = 1.0 + w
    main = ew * (w * w - w + 1.0) - 0.5 * math.log1p(w) - 1.0
    first = w * (2.0 * w * w + 7.0 * w + 10.0) / (24.0 * one_plus**3)
    second = (
        w
        * (2.0 * w**4 + 12.0 * w**3 + 29.0 * w * w + 40.0 * w + 36.0)
        / (48.0 * one_plus**6)
    )
    return main - first * math.exp(-w) - second * math.exp(-2.0 * w)


def log_cover_estimate(n: int, log_bell_2n: float) -> float:
    """Log of the common growth estimate for plain and proper 2-covers.

    The estimate is B_{2n} 2^{-n} sqrt(log n / (2n)), passed around in log
    space as log B_{2n} - n log 2 + (1/2) log(log n / (2n)).
    """
    if n < 2:
        raise ValueError(f"log_cover_estimate() needs n >= 2, got {n}")
    return log_bell_2n - n * _LOG2 + 0.5 * math.log(math.log(n) / (2.0 * n))


def log_restricted_estimate(n: int, log_bell_2n: float) -> float:
    """Log of the shared estimate for restricted covers and line graphs.

    The linear-space form is B_{2n} 2^{-n} n^{-1/2}
    exp(-[ (1/2) log(2n / log n) ]^2).
    """
    if n < 2:
        raise ValueError(f"log_restricted_estimate() needs n >= 2, got {n}")
    half_log = 0.5 * math.log(2.0 * n / math.log(n))
    return log_bell_2n - n * _LOG2 - 0.5 * math.log(n) - half_log * half_log


def saddle_block_count(n: int) -> int:
    """Nearest integer (half rounded up) to 2n / W(2n), the saddle point.

    This is where the dominant number of partition blocks sits when B_{2n}
    is written as a sum over block counts.
    """
    if n < 1:
        raise ValueError(f"saddle_block_count() needs n >= 1, got {n}")
    return math.floor(2.0 * n / lambert_w(2.0 * n).w + 0.5)


def log_saddle_estimate(n: int, log_bell_2n: float) -> float:
    """Log of the saddle-point form B_{2n} 2^{-n} exp(-n/m0 - n^2/m0^2)."""
    if n < 1:
        raise ValueError(f"log_saddle_estimate() needs n >= 1, got {n}")
    m0 = saddle_block_count(n)
    ratio = n / m0
    return log_bell_2n - n * _LOG2 - ratio - ratio * ratio


def merged_twin_moment(n: int, r: int, *, bell_cap: int = DEFAULT_BELL_CAP) -> Fraction:
    """r-th falling-factorial moment of the merged-twin count.

    For a uniform partition of [2n], the count X of twin pairs sharing a
    block satisfies E[(X)_r] = (n)_r B_{2n-r} / B_{2n}, exactly.
    """
    if n < 0 or r < 0:
        raise ValueError(f"merged_twin_moment() needs n, r >= 0, got {n}, {r}")
    if r > n:
        return Fraction(0)
    return Fraction(
        falling_factorial(n, r) * bell(2 * n - r, cap=bell_cap),
        bell(2 * n, cap=bell_cap),
    )


def separation_probability(n: int, *, bell_cap: int = DEFAULT_BELL_CAP) -> Fraction:
    """Exact probability that a uniform partition of [2n] is separated.

    By inclusion-exclusion over merged twin pairs this is the alternating
    sum of the factorial moments, sum_r (-1)^r E[(X)_r] / r!, and the sum
    is finite because at most n pairs can merge.
    """
    if n < 0:
        raise ValueError(f"separation_probability() needs n >= 0, got {n}")
    total = Fraction(0)
    for r in range(n + 1):
        term = merged_twin_moment(n, r, bell_cap=bell_cap) / math.factorial(r)
        total += -term if r % 2 else term
    scaled = total * bell(2 * n, cap=bell_cap)
    if scaled.denominator != 1 or not 0 <= total <= 1:
        raise ConsistencyError(
            f"separation probability at n={n} is not a count fraction: {total}"
        )
    return total


def separation_ratio(n: int, *, bell_cap: int = DEFAULT_BELL_CAP) -> float:
    """Exact separation probability over its limit shape sqrt(log n / (2n))."""
    if n < 2:
        raise ValueError(f"separation_ratio() needs n >= 2, got {n}")
    probability = separation_probability(n, bell_cap=bell_cap)
    return float(probability) / math.sqrt(math.log(n) / (2.0 * n))


def image_collision_bound(n: int, *, bell_cap: int = DEFAULT_BELL_CAP) -> Fraction:
    """Union-style upper bound on the probability of a folded-block collision.

    Two blocks of a partition of [2n] can fold to the same image only if a
    set of k twin pairs pairs up across them; bounding over k gives
    sum_{k>=1} C(n, k) 2^k B_{2n-2k} / B_{2n}.
    """
    if n < 0:
        raise ValueError(f"image_collision_bound() needs n >= 0, got {n}")
    total = Fraction(0)
    denominator = bell(2 * n, cap=bell_cap)
    for k in range(1, n + 1):
        total += Fraction(
            binomial(n, k) * (1 << k) * bell(2 * n - 2 * k, cap=bell_cap),
            denominator,
        )
    return total


def dobinski_partial_ratio(n: int, *, bell_cap: int = DEFAULT_BELL_CAP) -> float:
    """Ratio of the partial Dobinski sum over block counts up to 2n to e B_{2n}.

    The full sum sum_m m^{2n} / m! equals e B_{2n}; truncating at m = 2n
    keeps the dominant terms, and this ratio measures how much.
    """
    if n < 1:
        raise ValueError(f"dobinski_partial_ratio() needs n >= 1, got {n}")
    partial = Fraction(0)
    for m in range(2 * n + 1):
        partial += Fraction(m ** (2 * n), math.factorial(m))
    return float(partial / bell(2 * n, cap=bell_cap)) / math.e


@dataclass(frozen=True)
class ReportRow:
    """One report line: estimators at n, and exact comparisons when known.

    The ``ratio_*`` columns are linear-space quotients exact/estimate;
    ``ratio_s`` and ``ratio_t`` compare against the cover estimate,
    ``ratio_u``/``ratio_v``/``ratio_l`` against the restricted estimate,
    and ``ratio_v_saddle`` against the saddle form.  They are None when n
    is beyond the exact table.
    """

    n: int
    bell_source: str
    log_bell_2n: float
    est_st: float
    est_uvl: float
    est_saddle: float
    saddle_blocks: int
    log_s: float | None = None
    log_t: float | None = None
    log_u: float | None = None
    log_v: float | None = None
    log_l: float | None = None
    ratio_s: float | None = None
    ratio_t: float | None = None
    ratio_u: float | None = None
    ratio_v: float | None = None
    ratio_l: float | None = None
    ratio_v_saddle: float | None = None


@dataclass(frozen=True)
class AsymptoticReport:
    """Convergence report for the growth estimates over a grid of n."""

    max_n: int
    note: str
    rows: tuple[ReportRow, ...]


def report_grid(max_n: int) -> list[int]:
    """Geometric grid 4, 8, ..., with max_n appended when missing."""
    if max_n < 2:
        raise ValueError(f"asymptotic reports need max_n >= 2, got {max_n}")
    grid = []
    value = 4
    while value <= max_n:
        grid.append(value)
        value *= 2
    if not grid:
        return [max_n]
    if grid[-1] != max_n:
        grid.append(max_n)
    return grid


def asymptotic_report(
    max_n: int,
    *,
    bell_cap: int = DEFAULT_BELL_CAP,
    grid: list[int] | None = None,
    exact_table: SequenceTable | None = None,
) -> AsymptoticReport:
    """Build the exact-versus-estimate convergence report.

    Exact sequence values are computed up to min(max_n, bell_cap / 2); for
    rows beyond that, log B_{2n} falls back to the Bell-number expansion
    and the ratio columns are left empty.  Each row records which source
    supplied it.
    """
    if grid is None:
        grid = report_grid(max_n)
    else:
        grid = sorted(set(grid))
        if not grid or grid[0] < 2 or grid[-1] > max_n:
            raise ValueError(f"grid entries must lie in 2..{max_n}: {grid}")
    if exact_table is None:
        exact_table = full_table(min(max_n, bell_cap // 2), bell_cap=bell_cap)
    rows = []
    for n in grid:
        if 2 * n <= bell_cap:
            log_b = log_integer(bell(2 * n, cap=bell_cap))
            source = "exact"
        else:
            log_b = log_bell_asymptotic(2 * n)
            source = "asymptotic"
        est_st = log_cover_estimate(n, log_b)
        est_uvl = log_restricted_estimate(n, log_b)
        est_saddle = log_saddle_estimate(n, log_b)
        row = ReportRow(
            n=n,
            bell_source=source,
            log_bell_2n=log_b,
            est_st=est_st,
            est_uvl=est_uvl,
            est_saddle=est_saddle,
            saddle_blocks=saddle_block_count(n),
        )
        if n <= exact_table.max_n:
            counts = exact_table.row(n)
            logs = {
                name: log_integer(getattr(counts, name))
                for name in ("s", "t", "u", "v", "l")
            }
            row = ReportRow(
                n=n,
                bell_source=source,
                log_bell_2n=log_b,
                est_st=est_st,
                est_uvl=est_uvl,
                est_saddle=est_saddle,
                saddle_blocks=row.saddle_blocks,
                log_s=logs["s"],
                log_t=logs["t"],
                log_u=logs["u"],
                log_v=logs["v"],
                log_l=logs["l"],
                ratio_s=math.exp(logs["s"] - est_st),
                ratio_t=math.exp(logs["t"] - est_st),
                ratio_u=math.exp(logs["u"] - est_uvl),
                ratio_v=math.exp(logs["v"] - est_uvl),
                ratio_l=math.exp(logs["l"] - est_uvl),
                ratio_v_saddle=math.exp(logs["v"] - est_saddle),
            )
        rows.append(row)
    return AsymptoticReport(max_n=max_n, note=REPORT_NOTE, rows=tuple(rows))


@dataclass(frozen=True)
class TrendCheck:
    """Deviation-from-1 comparison of a ratio column at its grid endpoints."""

    column: str
    first_n: int
    last_n: int
    first_deviation: float
    last_deviation: float

    @property
    def improved(self) -> bool:
        return self.last_deviation < self.first_deviation


def ratio_trends(
    report: AsymptoticReport,
    columns: tuple[str, ...] = ("ratio_t", "ratio_v"),
) -> list[TrendCheck]:
    """Compare |ratio - 1| at the first and last grid points with exact data."""
    checks = []
    for column in columns:
        present = [
            (row.n, getattr(row, column))
            for row in report.rows
            if getattr(row, column) is not None
        ]
        if len(present) < 2:
            continue
        (first_n, first), (last_n, last) = present[0], present[-1]
        checks.append(
            TrendCheck(
                column=column,
                first_n=first_n,
                last_n=last_n,
                first_deviation=abs(first - 1.0),
                last_deviation=abs(last - 1.0),
            )
        )
    return checks
