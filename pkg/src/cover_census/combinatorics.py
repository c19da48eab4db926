"""Arbitrary-precision combinatorial primitives.

Bell and Stirling numbers are memoized in module-level triangle tables.
The tables are grown on demand and only ever appended to, so values may be
shared freely once computed; growth itself is not thread-safe and is meant
to happen from a single thread.
"""

from __future__ import annotations

import math

DEFAULT_BELL_CAP = 1024

_bell_values: list[int] = [1]
_bell_row: list[int] = [1]
_stirling_rows: list[list[int]] = [[1]]


def bell(n: int, *, cap: int = DEFAULT_BELL_CAP) -> int:
    """Return the n-th Bell number, the count of set partitions of [n].

    Computed by the Bell triangle.  Arguments above ``cap`` are rejected so
    the table size stays predictable; pass a larger cap explicitly to go
    further.
    """
    if n < 0:
        raise ValueError(f"bell() is undefined for negative n, got {n}")
    if n > cap:
        raise ValueError(f"bell({n}) exceeds the configured cap {cap}")
    global _bell_row
    while len(_bell_values) <= n:
        row = [_bell_row[-1]]
        for value in _bell_row:
            row.append(row[-1] + value)
        _bell_row = row
        _bell_values.append(row[0])
    return _bell_values[n]


def stirling2(n: int, k: int, *, cap: int = DEFAULT_BELL_CAP) -> int:
    """Return the Stirling number of the second kind S(n, k).

    S(n, k) counts partitions of [n] into exactly k nonempty blocks; it is 0
    for k > n and for k = 0 < n.  Rows of the recurrence triangle are
    memoized up to ``cap``.
    """
    if n < 0 or k < 0:
        raise ValueError(f"stirling2() needs n, k >= 0, got n={n}, k={k}")
    if n > cap:
        raise ValueError(f"stirling2({n}, {k}) exceeds the configured cap {cap}")
    if k > n:
        return 0
    while len(_stirling_rows) <= n:
        prev = _stirling_rows[-1]
        m = len(_stirling_rows)
        row = [0]
        for j in range(1, m):
            row.append(j * prev[j] + prev[j - 1])
        row.append(1)
        _stirling_rows.append(row)
    return _stirling_rows[n][k]


def binomial(n: int, k: int) -> int:
    """Return C(n, k), zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial() needs n, k >= 0, got n={n}, k={k}")
    return math.comb(n, k)


def falling_factorial(n: int, r: int) -> int:
    """Return n(n-1)...(n-r+1), zero when r > n and 1 when r = 0."""
    if n < 0 or r < 0:
        raise ValueError(f"falling_factorial() needs n, r >= 0, got n={n}, r={r}")
    return math.perm(n, r)
