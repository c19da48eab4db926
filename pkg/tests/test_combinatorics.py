"""Tests for the exact combinatorial primitives.

The brute-force reference counters here enumerate restricted growth
strings recursively and know nothing about the Bell/Stirling triangle
code they are checking.
"""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cover_census.combinatorics import (
    DEFAULT_BELL_CAP,
    bell,
    binomial,
    falling_factorial,
    stirling2,
)

BELL_KNOWN = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597]

STIRLING_KNOWN = [
    [1],
    [0, 1],
    [0, 1, 1],
    [0, 1, 3, 1],
    [0, 1, 7, 6, 1],
    [0, 1, 15, 25, 10, 1],
    [0, 1, 31, 90, 65, 15, 1],
]


def count_partitions_brute(size: int, blocks: int | None = None) -> int:
    """Count set partitions of [size] by recursive label assignment."""

    def rec(position: int, used: int) -> int:
        if position == size:
            return 1 if blocks is None or used == blocks else 0
        total = 0
        for label in range(used + 1):
            total += rec(position + 1, used + (1 if label == used else 0))
        return total

    return rec(0, 0)


class TestBell:
    def test_known_values(self):
        assert [bell(n) for n in range(len(BELL_KNOWN))] == BELL_KNOWN

    def test_matches_brute_force(self):
        for n in range(10):
            assert bell(n) == count_partitions_brute(n)

    def test_binomial_recurrence(self):
        for n in range(40):
            assert bell(n + 1) == sum(
                binomial(n, k) * bell(k) for k in range(n + 1)
            )

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            bell(-1)

    def test_cap_enforced(self):
        with pytest.raises(ValueError):
            bell(7, cap=6)
        assert bell(6, cap=6) == 203

    def test_default_cap_value(self):
        assert DEFAULT_BELL_CAP == 1024


class TestStirling2:
    def test_known_triangle(self):
        for n, row in enumerate(STIRLING_KNOWN):
            assert [stirling2(n, k) for k in range(n + 1)] == row

    def test_row_sums_are_bell(self):
        for n in range(30):
            assert sum(stirling2(n, k) for k in range(n + 1)) == bell(n)

    def test_matches_brute_force(self):
        for n in range(8):
            for k in range(n + 1):
                assert stirling2(n, k) == count_partitions_brute(n, k)

    def test_recurrence(self):
        for n in range(1, 25):
            for k in range(1, n + 1):
                assert stirling2(n, k) == k * stirling2(n - 1, k) + stirling2(
                    n - 1, k - 1
                )

    def test_out_of_range(self):
        assert stirling2(3, 5) == 0
        assert stirling2(0, 0) == 1
        assert stirling2(4, 0) == 0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            stirling2(-1, 0)
        with pytest.raises(ValueError):
            stirling2(3, -1)

    def test_cap_enforced(self):
        with pytest.raises(ValueError):
            stirling2(9, 3, cap=8)


class TestBinomial:
    def test_pascal_triangle(self):
        rows = [[1]]
        for _ in range(20):
            prev = rows[-1]
            rows.append(
                [1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1]
            )
        for n, row in enumerate(rows):
            for k, value in enumerate(row):
                assert binomial(n, k) == value

    @given(st.integers(0, 200), st.integers(0, 200))
    def test_symmetry(self, n, k):
        if k <= n:
            assert binomial(n, k) == binomial(n, n - k)

    def test_beyond_range_is_zero(self):
        assert binomial(3, 5) == 0
        assert binomial(0, 1) == 0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            binomial(-1, 0)
        with pytest.raises(ValueError):
            binomial(3, -2)


class TestFallingFactorial:
    def test_matches_product(self):
        for n in range(12):
            for r in range(n + 1):
                expected = 1
                for i in range(r):
                    expected *= n - i
                assert falling_factorial(n, r) == expected

    def test_edge_cases(self):
        assert falling_factorial(5, 0) == 1
        assert falling_factorial(0, 0) == 1
        assert falling_factorial(3, 5) == 0

    @given(st.integers(0, 100), st.integers(0, 100))
    def test_relates_to_binomial(self, n, r):
        assert falling_factorial(n, r) == binomial(n, r) * math.factorial(r)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            falling_factorial(-2, 1)
        with pytest.raises(ValueError):
            falling_factorial(2, -1)
