"""Brute-force verification engine built on set partitions of [2n].

Give each element j of [n] a twin j + n and fold any subset of [2n] back
onto [n] by reducing twins mod n.  A set partition of [2n] is *separated*
when no block contains both members of a twin pair; folding the blocks of a
separated partition yields a multiset of subsets covering every element of
[n] exactly twice, that is, a 2-cover.  Scanning all partitions of [2n]
therefore counts 2-covers with known multiplicities: a cover whose block
multiset has d repeated blocks arises from exactly 2^(n - d) separated
partitions, because each twin pair may be swapped independently except
across a repeated block.

Everything here is exhaustive and independent of the generating-function
pipeline, so agreement between the two is strong evidence of correctness.
Sizes are capped (Bell(2n) partitions get scanned) by an explicit limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .combinatorics import bell
from .errors import ConsistencyError

DEFAULT_ORACLE_LIMIT = 6


def _iter_rgs(size: int) -> Iterator[list[int]]:
    """Yield every restricted growth string of ``size`` in lexicographic order.

    The same list object is yielded each time; callers must not mutate or
    retain it.
    """
    if size == 0:
        yield []
        return
    labels = [0] * size
    bounds = [1] * size
    while True:
        yield labels
        j = size - 1
        while j > 0 and labels[j] == bounds[j]:
            j -= 1
        if j == 0:
            return
        labels[j] += 1
        nb = bounds[j]
        if labels[j] == nb:
            nb += 1
        for k in range(j + 1, size):
            labels[k] = 0
            bounds[k] = nb


@dataclass(frozen=True)
class SetPartition:
    """A set partition of [size], stored as a restricted growth string.

    ``rgs[i]`` is the block label of element i + 1; labels appear in order
    of first use, which makes the representation canonical.
    """

    size: int
    rgs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.size < 0 or len(self.rgs) != self.size:
            raise ValueError(
                f"expected {self.size} labels, got {len(self.rgs)}"
            )
        highest = 0
        for i, label in enumerate(self.rgs):
            if not 0 <= label <= highest:
                raise ValueError(
                    f"label {label} at position {i} breaks restricted growth"
                )
            if label == highest:
                highest += 1

    @property
    def block_count(self) -> int:
        return max(self.rgs) + 1 if self.rgs else 0

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Blocks as sorted tuples of 1-based elements, in label order."""
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for i, label in enumerate(self.rgs):
            out[label].append(i + 1)
        return tuple(tuple(block) for block in out)


def enumerate_partitions(size: int) -> Iterator[SetPartition]:
    """Yield all set partitions of [size] in lexicographic RGS order."""
    if size < 0:
        raise ValueError(f"size must be >= 0, got {size}")
    for labels in _iter_rgs(size):
        yield SetPartition(size, tuple(labels))


@dataclass(frozen=True)
class TwoCover:
    """A 2-cover of [n]: a block multiset covering every element twice."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_blocks(n: int, blocks: Iterable[Iterable[int]]) -> "TwoCover":
        """Canonicalize and validate a candidate block multiset."""
        canon = tuple(sorted(tuple(sorted(set(block))) for block in blocks))
        seen = [0] * (n + 1)
        for block in canon:
            if not block:
                raise ValueError("2-cover blocks must be nonempty")
            for element in block:
                if not 1 <= element <= n:
                    raise ValueError(
                        f"element {element} outside the ground set [{n}]"
                    )
                seen[element] += 1
        bad = [e for e in range(1, n + 1) if seen[e] != 2]
        if bad:
            raise ValueError(
                f"elements {bad} are not covered exactly twice"
            )
        return TwoCover(n, canon)

    @property
    def duplicate_block_pairs(self) -> int:
        """Number of repeated blocks; each repeat occurs exactly twice."""
        return len(self.blocks) - len(set(self.blocks))

    @property
    def proper(self) -> bool:
        return self.duplicate_block_pairs == 0

    @property
    def restricted(self) -> bool:
        """True when any two blocks share at most one element."""
        return all(
            len(set(a) & set(b)) <= 1
            for a, b in combinations(self.blocks, 2)
        )


@dataclass(frozen=True)
class LabeledGraph:
    """A simple graph on the labelled vertex set [n]."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for a, b in self.edges:
            if not (1 <= a < b <= self.n):
                raise ValueError(f"edge ({a}, {b}) is not valid on [{self.n}]")


def fold_block(block: Iterable[int], n: int) -> frozenset[int]:
    """Reduce a subset of [2n] onto [n] by mapping each twin j + n to j."""
    folded = set()
    for element in block:
        if not 1 <= element <= 2 * n:
            raise ValueError(f"element {element} outside [{2 * n}]")
        folded.add(element if element <= n else element - n)
    return frozenset(folded)


def merged_twin_count(rgs: Sequence[int], n: int) -> int:
    """Count twin pairs {j, j + n} sharing a block, from a growth string."""
    if len(rgs) != 2 * n:
        raise ValueError(f"expected a partition of [{2 * n}]")
    return sum(1 for j in range(n) if rgs[j] == rgs[j + n])


def image_collision_count(rgs: Sequence[int], n: int) -> int:
    """Count blocks beyond the number of distinct folded images."""
    if len(rgs) != 2 * n:
        raise ValueError(f"expected a partition of [{2 * n}]")
    if n == 0:
        return 0
    masks = [0] * (max(rgs) + 1)
    for j in range(n):
        bit = 1 << j
        masks[rgs[j]] |= bit
        masks[rgs[j + n]] |= bit
    return len(masks) - len(set(masks))


@dataclass(frozen=True)
class PartitionClassification:
    """How one partition of [2n] sits under the folding map."""

    separated: bool
    image_distinct: bool
    merged_twin_count: int
    collision_count: int
    cover: TwoCover | None


def classify_partition(partition: SetPartition, n: int) -> PartitionClassification:
    """Classify a partition of [2n] by its folding behaviour.

    Uses the set-based definitions directly, deliberately avoiding the
    bit-mask shortcuts of the census scan, so the two routes check each
    other.
    """
    if partition.size != 2 * n:
        raise ValueError(
            f"partition of [{partition.size}] cannot fold onto [{n}]"
        )
    blocks = partition.blocks()
    merged = 0
    for block in blocks:
        members = set(block)
        merged += sum(1 for j in block if j <= n and j + n in members)
    images = [fold_block(block, n) for block in blocks]
    collisions = len(images) - len(set(images))
    separated = merged == 0
    cover = None
    if separated:
        cover = TwoCover.from_blocks(n, [sorted(image) for image in images])
    return PartitionClassification(
        separated=separated,
        image_distinct=collisions == 0,
        merged_twin_count=merged,
        collision_count=collisions,
        cover=cover,
    )


def _check_oracle_size(n: int, limit: int | None) -> None:
    cap = DEFAULT_ORACLE_LIMIT if limit is None else limit
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > cap:
        raise ValueError(
            f"oracle at n={n} would scan Bell({2 * n}) partitions, above the"
            f" limit {cap}"
        )


@lru_cache(maxsize=None)
def _scan_twins(n: int) -> tuple[int, ...]:
    """Histogram of merged-twin counts over all partitions of [2n]."""
    histogram = [0] * (n + 1)
    for labels in _iter_rgs(2 * n):
        merged = 0
        for j in range(n):
            if labels[j] == labels[j + n]:
                merged += 1
        histogram[merged] += 1
    return tuple(histogram)


@lru_cache(maxsize=None)
def _full_scan(
    n: int,
) -> tuple[tuple[int, ...], int, int, tuple[int, ...], dict[tuple[int, ...], int]]:
    """Scan all partitions of [2n] once, collecting every census statistic.

    Returns (merged-twin histogram, separated count, image-distinct count,
    collision histogram over separated partitions, fiber map from folded
    cover to preimage count).  The fiber map keys are sorted tuples of
    block bit masks; treat the cached dict as read-only.
    """
    size = 2 * n
    twin_histogram = [0] * (n + 1)
    separated = 0
    image_distinct = 0
    collision_histogram = [0] * (n + 1)
    fibers: dict[tuple[int, ...], int] = {}
    for labels in _iter_rgs(size):
        merged = 0
        for j in range(n):
            if labels[j] == labels[j + n]:
                merged += 1
        twin_histogram[merged] += 1
        block_count = max(labels) + 1 if size else 0
        masks = [0] * block_count
        for j in range(n):
            bit = 1 << j
            masks[labels[j]] |= bit
            masks[labels[j + n]] |= bit
        collisions = block_count - len(set(masks))
        if collisions == 0:
            image_distinct += 1
        if merged == 0:
            separated += 1
            collision_histogram[collisions] += 1
            key = tuple(sorted(masks))
            fibers[key] = fibers.get(key, 0) + 1
    return (
        tuple(twin_histogram),
        separated,
        image_distinct,
        tuple(collision_histogram),
        fibers,
    )


def merged_twin_histogram(n: int, *, limit: int | None = None) -> tuple[int, ...]:
    """Distribution of the number of merged twin pairs over partitions of [2n].

    Entry k counts partitions in which exactly k twin pairs share a block;
    entry 0 is the number of separated partitions.
    """
    _check_oracle_size(n, limit)
    return _scan_twins(n)


def _mask_block(mask: int, n: int) -> tuple[int, ...]:
    return tuple(j + 1 for j in range(n) if (mask >> j) & 1)


def _key_duplicates(key: tuple[int, ...]) -> int:
    return len(key) - len(set(key))


def _key_restricted(key: tuple[int, ...]) -> bool:
    return all((a & b).bit_count() <= 1 for a, b in combinations(key, 2))


@dataclass(frozen=True)
class OracleCensus:
    """Exhaustive counts at one ground-set size.

    ``s``, ``t``, ``u``, ``v`` are the cover counts (all, proper,
    restricted, restricted proper).  The event counts refer to partitions
    of [2n]: ``separated`` have all twin pairs split, ``image_distinct``
    have pairwise distinct folded blocks, and ``collision_histogram`` bins
    the separated partitions by their folded-image collision count.
    """

    n: int
    s: int
    t: int
    u: int
    v: int
    separated: int
    image_distinct: int
    separated_image_distinct: int
    merged_twin_histogram: tuple[int, ...]
    collision_histogram: tuple[int, ...]
    bell_2n: int


def oracle_counts(n: int, *, limit: int | None = None) -> OracleCensus:
    """Count 2-covers of [n] by exhausting partitions of [2n].

    Verifies the multiplicity structure on the way: separated partitions
    with d collisions overcount covers with d duplicate pairs by 2^(n - d),
    giving two exact identities that must hold before returning.
    """
    _check_oracle_size(n, limit)
    twin_histogram, separated, image_distinct, collision_histogram, fibers = _full_scan(n)
    total = bell(2 * n)
    if sum(twin_histogram) != total:
        raise ConsistencyError(
            f"twin histogram sums to {sum(twin_histogram)}, expected Bell({2 * n}) = {total}"
        )
    s = t = u = v = 0
    for key in fibers:
        duplicates = _key_duplicates(key)
        restricted = _key_restricted(key)
        s += 1
        if duplicates == 0:
            t += 1
            if restricted:
                v += 1
        if restricted:
            u += 1
    weighted = sum(
        count * (1 << d) for d, count in enumerate(collision_histogram)
    )
    if s << n != weighted:
        raise ConsistencyError(
            f"block-image decomposition failed at n={n}: "
            f"s * 2^n = {s << n} but the weighted collision histogram gives {weighted}"
        )
    if t << n != collision_histogram[0]:
        raise ConsistencyError(
            f"clean-preimage identity failed at n={n}: "
            f"t * 2^n = {t << n} but {collision_histogram[0]} separated"
            f" partitions have distinct images"
        )
    return OracleCensus(
        n=n,
        s=s,
        t=t,
        u=u,
        v=v,
        separated=separated,
        image_distinct=image_distinct,
        separated_image_distinct=collision_histogram[0],
        merged_twin_histogram=twin_histogram,
        collision_histogram=collision_histogram,
        bell_2n=total,
    )


@dataclass(frozen=True)
class FiberCheck:
    """Result of verifying preimage counts of the folding map."""

    n: int
    covers: int
    proper_covers: int
    clean_preimage_total_ok: bool
    mismatches: tuple[tuple[TwoCover, int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.clean_preimage_total_ok


def fiber_check(n: int, *, limit: int | None = None) -> FiberCheck:
    """Check every cover's preimage count against 2^(n - duplicate pairs)."""
    _check_oracle_size(n, limit)
    _, _, _, collision_histogram, fibers = _full_scan(n)
    mismatches = []
    proper_covers = 0
    clean_total = 0
    for key, actual in fibers.items():
        duplicates = _key_duplicates(key)
        if duplicates == 0:
            proper_covers += 1
            clean_total += actual
        expected = 1 << (n - duplicates)
        if actual != expected:
            cover = TwoCover.from_blocks(
                n, [_mask_block(mask, n) for mask in key]
            )
            mismatches.append((cover, expected, actual))
    return FiberCheck(
        n=n,
        covers=len(fibers),
        proper_covers=proper_covers,
        clean_preimage_total_ok=clean_total == collision_histogram[0],
        mismatches=tuple(mismatches),
    )


def line_graph_of(cover: TwoCover) -> LabeledGraph:
    """Graph on the ground set joining elements that share a block.

    Defined for restricted covers, where each edge comes from a unique
    block.  This is the line-graph view: the cover's blocks are the
    vertices of an underlying simple graph whose edges are the ground-set
    elements, and two edges are adjacent exactly when they share a block.
    """
    if not cover.restricted:
        raise ValueError("line_graph_of() requires a restricted cover")
    edges = set()
    for block in cover.blocks:
        edges.update(combinations(block, 2))
    return LabeledGraph(cover.n, frozenset(edges))


def oracle_line_count(n: int, *, limit: int | None = None) -> int:
    """Count distinct labelled line graphs among restricted covers of [n].

    This is the number of distinct images of line_graph_of, that is, the
    number of graphs on the labelled vertex set [n] that are line graphs.
    Beware that it is strictly below oracle_line_class_count from n = 4 on
    (60 versus 66): collapsing a triangle with a pendant edge relabels into
    the same diamond graph two ways, so the triangle/star exchange is not
    the only way two covers can share a line graph.
    """
    _check_oracle_size(n, limit)
    fibers = _full_scan(n)[4]
    graphs = set()
    for key in fibers:
        if not _key_restricted(key):
            continue
        edges = set()
        for mask in key:
            edges.update(combinations(_mask_block(mask, n), 2))
        graphs.add(frozenset(edges))
    return len(graphs)


def _cover_components(key: tuple[int, ...], n: int) -> list[list[int]]:
    """Split a cover's block masks into connected components.

    Blocks are connected when they share an element, mirroring the
    components of the underlying graph whose vertices are the blocks.
    """
    parent = list(range(len(key)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for bit in range(n):
        owners = [i for i, mask in enumerate(key) if (mask >> bit) & 1]
        for other in owners[1:]:
            a, b = find(owners[0]), find(other)
            if a != b:
                parent[b] = a
    grouped: dict[int, list[int]] = {}
    for i, mask in enumerate(key):
        grouped.setdefault(find(i), []).append(mask)
    return list(grouped.values())


def oracle_line_class_count(n: int, *, limit: int | None = None) -> int:
    """Count restricted covers of [n] modulo the triangle/star exchange.

    A triangle component (three two-element blocks on three elements) and
    the star on the same elements (one triple block plus its three
    singletons) are the classical pair of roots with equal line graphs;
    replacing every triangle component by its star form and deduplicating
    counts the exchange classes.  This is the quantity the correction
    factor exp(-x^3/6) extracts from the restricted-cover series, so it
    matches the table's line column exactly.
    """
    _check_oracle_size(n, limit)
    fibers = _full_scan(n)[4]
    classes = set()
    for key in fibers:
        if not _key_restricted(key):
            continue
        canonical: list[int] = []
        for component in _cover_components(key, n):
            union = 0
            for mask in component:
                union |= mask
            if (
                len(component) == 3
                and union.bit_count() == 3
                and all(mask.bit_count() == 2 for mask in component)
            ):
                canonical.append(union)
                canonical.extend(
                    1 << bit for bit in range(n) if (union >> bit) & 1
                )
            else:
                canonical.extend(component)
        classes.add(tuple(sorted(canonical)))
    return len(classes)
