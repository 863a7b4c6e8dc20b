"""Ordered chain forests: data model, exhaustive enumerators, counting formulas.

An ordered chain forest of [s] is an ordered partition of {1, ..., s} into
blocks, each block itself an ordered sequence.  The first element of a
block is its leader, the last its trailer.  A forest is naturally ordered
when block leaders increase left to right.  The weight of a block counts
its elements that are smaller than its leader.

On top of the plain forests sit valued forests (a nonnegative value per
block) and A-distinguished forests: for a subset A, every block lies
wholly inside or outside A, the non-A blocks come first in increasing
leader order, the A blocks follow in decreasing leader order, and every
block has weight 0.

The enumerators here are deliberately exhaustive; they serve as the
ground truth against which the closed-form counting expressions (also in
this module) are verified.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterator, NamedTuple, Optional, Sequence

from .exactmath import binomial, pi_range

Block = tuple[int, ...]
Forest = tuple[Block, ...]


class Valued(NamedTuple):
    """A forest together with one nonnegative value per block."""

    blocks: Forest
    values: tuple[int, ...]


class Distinguished(NamedTuple):
    """A valued forest together with its distinguished subset A."""

    blocks: Forest
    values: tuple[int, ...]
    aset: frozenset[int]


# ---------------------------------------------------------------------------
# basic statistics


def block_weight(block: Sequence[int]) -> int:
    """Number of elements of the block that are smaller than its leader."""
    leader = block[0]
    return sum(1 for x in block if x < leader)


def forest_weight(blocks: Forest) -> int:
    return sum(block_weight(b) for b in blocks)


def block_ends(blocks: Forest) -> tuple[int, ...]:
    """Cumulative end position of each block in the flattened forest."""
    ends = []
    pos = 0
    for b in blocks:
        pos += len(b)
        ends.append(pos)
    return tuple(ends)


def gamma(blocks: Forest, ell: int) -> int:
    """Number of trailers after position ell in the flattened forest.

    Counts the blocks whose cumulative end position exceeds ell.  Requires
    0 <= ell <= s-1 where s is the ground-set size.
    """
    s = sum(len(b) for b in blocks)
    if not 0 <= ell <= s - 1:
        raise ValueError(f"gamma position must satisfy 0 <= ell <= {s - 1}, got {ell}")
    return sum(1 for e in block_ends(blocks) if e > ell)


def is_naturally_ordered(blocks: Forest) -> bool:
    return all(blocks[i][0] < blocks[i + 1][0] for i in range(len(blocks) - 1))


def flatten(blocks: Forest) -> tuple[int, ...]:
    return tuple(x for b in blocks for x in b)


def check_partition(blocks: Forest, s: int) -> None:
    """Assert that the blocks partition {1, ..., s} exactly."""
    seen = flatten(blocks)
    if sorted(seen) != list(range(1, s + 1)):
        raise ValueError(f"blocks do not partition [1..{s}]: {blocks}")
    if any(len(b) == 0 for b in blocks):
        raise ValueError("empty block")


def _canonical_key(blocks: Forest) -> tuple:
    return (flatten(blocks), tuple(len(b) for b in blocks))


# ---------------------------------------------------------------------------
# enumerators

def _chain_sets(elements: Sequence[int]) -> Iterator[list[list[int]]]:
    """All ways to arrange the given elements into disjoint ordered chains.

    Elements are inserted one at a time; each insertion point (a fresh
    chain, the front of a chain, or directly after any element) produces a
    distinct arrangement, so every chain set appears exactly once.
    """
    elems = list(elements)
    chains: list[list[int]] = []

    def rec(idx: int) -> Iterator[list[list[int]]]:
        if idx == len(elems):
            yield [c[:] for c in chains]
            return
        e = elems[idx]
        chains.append([e])
        yield from rec(idx + 1)
        chains.pop()
        for c in chains:
            for pos in range(len(c) + 1):
                c.insert(pos, e)
                yield from rec(idx + 1)
                del c[pos]

    yield from rec(0)


def naturally_ordered_forests(elements: Sequence[int]) -> Iterator[Forest]:
    """All naturally ordered chain forests over the given elements."""
    for cs in _chain_sets(elements):
        yield tuple(sorted((tuple(c) for c in cs), key=lambda b: b[0]))


def all_ordered_chain_forests(elements: Sequence[int]) -> Iterator[Forest]:
    """Every ordered chain forest: all block orders, all internal orders.

    Brute-force generator (permutation times cut set); exponential, kept
    as the independent cross-check for the structured enumerators.
    """
    elems = tuple(elements)
    n = len(elems)
    for perm in permutations(elems):
        for mask in range(1 << max(n - 1, 0)):
            cuts = [i for i in range(1, n) if mask >> (i - 1) & 1]
            bounds = [0] + cuts + [n]
            yield tuple(perm[bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1))


def enumerate_cf(q: int, s: int, k: int,
                 ell: Optional[int] = None, m: Optional[int] = None) -> list[Forest]:
    """Naturally ordered chain forests of [s] with k blocks and weight q.

    With ell and m given, keeps only forests with gamma(F, ell) = m.
    Returned in canonical order: lexicographic on the flattened element
    sequence, then on the block length sequence.
    """
    out = []
    for f in naturally_ordered_forests(range(1, s + 1)):
        if len(f) != k or forest_weight(f) != q:
            continue
        if ell is not None and gamma(f, ell) != m:
            continue
        out.append(f)
    out.sort(key=_canonical_key)
    return out


def enumerate_cf_refined(q: int, s: int, k: int, ell: int, m: int) -> int:
    """|CF(q, s, k, ell, m)| by exhaustive enumeration."""
    return len(enumerate_cf(q, s, k, ell, m))


@lru_cache(maxsize=None)
def cf_census(s: int) -> tuple[dict, dict]:
    """One pass over all naturally ordered forests of [s].

    Returns (totals, refined) where totals[(q, k)] counts forests and
    refined[(q, k, ell, m)] additionally classifies by gamma at each
    position.  Treat the returned dicts as read-only.
    """
    totals: dict = {}
    refined: dict = {}
    for f in naturally_ordered_forests(range(1, s + 1)):
        q = forest_weight(f)
        k = len(f)
        totals[q, k] = totals.get((q, k), 0) + 1
        ends = block_ends(f)
        for ell in range(s):
            m = sum(1 for e in ends if e > ell)
            key = (q, k, ell, m)
            refined[key] = refined.get(key, 0) + 1
    return totals, refined


# ---------------------------------------------------------------------------
# closed-form counts


def cf_count_formula(q: int, s: int, k: int) -> int:
    """Closed form for |CF(q, s, k)|: an alternating binomial and
    symmetric-sum expression over i = 0..q."""
    if q < 0 or not 1 <= k <= s:
        raise ValueError(f"need q >= 0 and 1 <= k <= s, got q={q}, k={k}, s={s}")
    total = 0
    for i in range(q + 1):
        total += ((-1) ** i * binomial(s, i)
                  * pi_range(-i + 1, s - 1 - i, s - k)
                  * binomial(k - 1 + q - i, k - 1))
    return total


def cf_refined_formula(q: int, s: int, k: int, ell: int, m: int) -> int:
    """Closed form for |CF(q, s, k, ell, m)| (the refined identity)."""
    if q < 0 or not 1 <= m <= k <= s or not 0 <= ell <= s - 1:
        raise ValueError(
            f"need q >= 0, 1 <= m <= k <= s, 0 <= ell <= s-1, "
            f"got q={q}, s={s}, k={k}, ell={ell}, m={m}")
    total = 0
    for i in range(q + 1):
        total += ((-1) ** i * binomial(s, i)
                  * pi_range(-i + 1, s - 1 - ell - i, s - ell - m)
                  * pi_range(s - ell - i, s - 1 - i, ell - (k - m))
                  * binomial(k - 1 + q - i, k - 1))
    return total


def dcf_term_formula(q: int, s: int, k: int, ell: int, m: int, i: int) -> int:
    """The i-th summand of the refined closed form, signs included."""
    return ((-1) ** i * binomial(s, i)
            * pi_range(-i + 1, s - 1 - ell - i, s - ell - m)
            * pi_range(s - ell - i, s - 1 - i, ell - (k - m))
            * binomial(k - 1 + q - i, k - 1))


def upper_term_formula(q: int, s: int, k: int, ell: int, m: int, i: int) -> int:
    """The i-th summand of the shifted (upper bound) expression."""
    return ((-1) ** i * binomial(s, i)
            * pi_range(-i, s - ell - 2 - i, s - ell - m)
            * pi_range(s - ell - i, s - 1 - i, ell - (k - m))
            * binomial(k - 1 + q - i, k - 1))


# ---------------------------------------------------------------------------
# distinguished forests


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of total into the given number of parts."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _set_partitions(elems: list[int]) -> Iterator[list[list[int]]]:
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1:]
        yield part + [[first]]


def _min_led_blocks(elements: Sequence[int]) -> Iterator[tuple[Block, ...]]:
    """All ways to break elements into weight-0 blocks.

    A block has weight 0 exactly when its leader is its minimum; the
    remaining elements may appear in any internal order.
    """
    for partition in _set_partitions(sorted(elements)):
        pools = []
        for blk in partition:
            mn = min(blk)
            rest = sorted(x for x in blk if x != mn)
            pools.append([(mn,) + p for p in permutations(rest)])
        yield from product(*pools)


def distinguished_block_count(d: Distinguished) -> int:
    """Number of trailing blocks made of A elements."""
    return sum(1 for b in d.blocks if b[0] in d.aset)


def check_distinguished(d: Distinguished) -> None:
    """Validate the structural invariants of an A-distinguished forest.

    Blocks must be homogeneous with respect to A, non-A blocks must come
    first in increasing leader order, A blocks last in decreasing leader
    order, every block must have weight 0, and there must be one value per
    block.  Raises ValueError naming the violated property.
    """
    blocks, values, aset = d
    if len(values) != len(blocks):
        raise ValueError("one value per block required")
    if any(v < 0 for v in values):
        raise ValueError("values must be nonnegative")
    seen = flatten(blocks)
    if len(set(seen)) != len(seen) or any(len(b) == 0 for b in blocks):
        raise ValueError("blocks must be nonempty and disjoint")
    split = None
    for idx, b in enumerate(blocks):
        inside = [x in aset for x in b]
        if any(inside) and not all(inside):
            raise ValueError(f"block {b} mixes A and non-A elements")
        if all(inside) and b:
            if split is None:
                split = idx
        elif split is not None:
            raise ValueError("non-A block appears after an A block")
    if split is None:
        split = len(blocks)
    ground = set(flatten(blocks))
    if not aset <= ground:
        raise ValueError("A is not a subset of the ground set")
    bpart, cpart = blocks[:split], blocks[split:]
    if set(x for b in cpart for x in b) != set(aset):
        raise ValueError("A blocks do not cover A exactly")
    for b in blocks:
        if block_weight(b) != 0:
            raise ValueError(f"block {b} has nonzero weight")
    if not is_naturally_ordered(bpart):
        raise ValueError("non-A blocks are not increasing by leader")
    if any(cpart[i][0] < cpart[i + 1][0] for i in range(len(cpart) - 1)):
        raise ValueError("A blocks are not decreasing by leader")


def _dcf_iter(q: int, s: int, need_one: bool = False) -> Iterator[Distinguished]:
    """All valued A-distinguished forests of [s] with |A| + sum(values) = q.

    With need_one, restricts to subsets A containing the element 1.
    """
    universe = tuple(range(1, s + 1))
    for i in range(0, min(q, s) + 1):
        for aset in combinations(universe, i):
            if need_one and 1 not in aset:
                continue
            rest = tuple(e for e in universe if e not in aset)
            afro = frozenset(aset)
            for bpart in _min_led_blocks(rest):
                bblocks = tuple(sorted(bpart, key=lambda b: b[0]))
                for cpart in _min_led_blocks(aset):
                    cblocks = tuple(sorted(cpart, key=lambda b: b[0], reverse=True))
                    blocks = bblocks + cblocks
                    for values in compositions(q - i, len(blocks)):
                        yield Distinguished(blocks, values, afro)


def iter_dcf(q: int, s: int, need_one: bool = False) -> Iterator[Distinguished]:
    """Unfiltered stream over DCF(q, s); see enumerate_dcf for filters."""
    return _dcf_iter(q, s, need_one)


def _dcf_sort_key(d: Distinguished) -> tuple:
    return (flatten(d.blocks), tuple(len(b) for b in d.blocks),
            d.values, tuple(sorted(d.aset)))


def enumerate_dcf(q: int, s: int, k: Optional[int] = None,
                  ell: Optional[int] = None, m: Optional[int] = None,
                  size_a: Optional[int] = None) -> list[Distinguished]:
    """Valued A-distinguished forests of [s] with |A| + sum(values) = q.

    Optional filters: block count k, gamma(F, ell) = m, and |A| = size_a.
    Canonical order: flattened elements, block lengths, values, then A.
    """
    if (ell is None) != (m is None):
        raise ValueError("ell and m must be given together")
    out = []
    for d in _dcf_iter(q, s):
        if k is not None and len(d.blocks) != k:
            continue
        if ell is not None and gamma(d.blocks, ell) != m:
            continue
        if size_a is not None and len(d.aset) != size_a:
            continue
        out.append(d)
    out.sort(key=_dcf_sort_key)
    return out


def dcf_signed_sum(q: int, s: int, k: int, ell: int, m: int, i: int) -> int:
    """Sum of (-1)^(number of A blocks) over the |A| = i slice of
    DCF(q, s, k, ell, m)."""
    return dcf_signed_census(q, s).get((i, k, ell, m), 0)


@lru_cache(maxsize=None)
def dcf_signed_census(q: int, s: int) -> dict:
    """dict (i, k, ell, m) -> signed count over all of DCF(q, s)."""
    agg: dict = {}
    for d in _dcf_iter(q, s):
        p = distinguished_block_count(d)
        sign = -1 if p % 2 else 1
        i, k = len(d.aset), len(d.blocks)
        ends = block_ends(d.blocks)
        for ell in range(s):
            m = sum(1 for e in ends if e > ell)
            key = (i, k, ell, m)
            agg[key] = agg.get(key, 0) + sign
    return agg


# ---------------------------------------------------------------------------
# the leader-1 variants used for the coefficient upper bound


def _leader_position_ok(blocks: Forest, k: int, m: int, ell: int) -> bool:
    """Leader of the (k-m+2)-th block sits at flattened position ell+2."""
    idx = k - m + 2
    if not 1 <= idx <= len(blocks):
        return False
    start = 1 + sum(len(blocks[i]) for i in range(idx - 1))
    return start == ell + 2


def _cf1_forests(u: int) -> Iterator[Forest]:
    """Forests of [u] whose last block is led by 1, all other blocks
    naturally ordered among themselves."""
    others = tuple(range(2, u + 1))
    for csize in range(0, u):
        for extra in combinations(others, csize):
            extra_set = set(extra)
            remaining = tuple(e for e in others if e not in extra_set)
            for perm in permutations(extra):
                c1 = (1,) + perm
                for cs in _chain_sets(remaining):
                    bblocks = tuple(sorted((tuple(c) for c in cs), key=lambda b: b[0]))
                    yield bblocks + (c1,)


def enumerate_cf1(q: int, s: int, k: int, ell: int, m: int) -> list[Forest]:
    """Forests of [s] counted by the upper-bound expression.

    The last block is led by 1, the other blocks are naturally ordered,
    the weight of the leading blocks plus the size of the 1-block is q,
    gamma(F, ell) = m, and the leader of the (k-m+2)-th block sits at
    position ell+2.  Requires m >= 2 (the position condition forces at
    least two blocks to end after position ell).
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got m={m}")
    if not 0 <= ell <= s - 1:
        raise ValueError(f"need 0 <= ell <= s-1, got ell={ell}")
    out = []
    for f in _cf1_forests(s):
        if len(f) != k:
            continue
        if sum(block_weight(b) for b in f[:-1]) + len(f[-1]) != q:
            continue
        if gamma(f, ell) != m:
            continue
        if not _leader_position_ok(f, k, m, ell):
            continue
        out.append(f)
    out.sort(key=_canonical_key)
    return out


def cf1_count(q: int, s: int, k: int, ell: int, m: int) -> int:
    if m < 2:
        raise ValueError(f"need m >= 2, got m={m}")
    return cf1_census(s).get((q, k, ell, m), 0)


@lru_cache(maxsize=None)
def cf1_census(u: int) -> dict:
    """dict (q, k, ell, m) -> count of the leader-1 forests of [u]."""
    census: dict = {}
    for f in _cf1_forests(u):
        k = len(f)
        q = sum(block_weight(b) for b in f[:-1]) + len(f[-1])
        ends = block_ends(f)
        for ell in range(u):
            m = sum(1 for e in ends if e > ell)
            if m < 2:
                continue
            if not _leader_position_ok(f, k, m, ell):
                continue
            key = (q, k, ell, m)
            census[key] = census.get(key, 0) + 1
    return census


def _block_of_one(blocks: Forest) -> int:
    for idx, b in enumerate(blocks):
        if 1 in b:
            return idx
    raise ValueError("element 1 missing")


def enumerate_dcf1(q: int, s: int, k: int, ell: int, m: int,
                   size_a: Optional[int] = None) -> list[Distinguished]:
    """The distinguished analogue of enumerate_cf1.

    Elements of DCF(q, s, k, ell, m) with 1 in A, value 0 on the block
    containing 1, and the leader of the (k-m+2)-th block at position
    ell+2.
    """
    out = []
    for d in _dcf_iter(q, s, need_one=True):
        if len(d.blocks) != k:
            continue
        if gamma(d.blocks, ell) != m:
            continue
        if size_a is not None and len(d.aset) != size_a:
            continue
        if not _leader_position_ok(d.blocks, k, m, ell):
            continue
        if d.values[_block_of_one(d.blocks)] != 0:
            continue
        out.append(d)
    out.sort(key=_dcf_sort_key)
    return out


def dcf1_signed_sum(q: int, s: int, k: int, ell: int, m: int, i: int) -> int:
    """Sum of (-1)^(number of A blocks - 1) over the |A| = i slice of the
    restricted distinguished forests."""
    return dcf1_signed_census(q, s).get((i, k, ell, m), 0)


@lru_cache(maxsize=None)
def dcf1_signed_census(q: int, s: int) -> dict:
    """dict (i, k, ell, m) -> signed count for the leader-1 restriction."""
    agg: dict = {}
    for d in _dcf_iter(q, s, need_one=True):
        if d.values[_block_of_one(d.blocks)] != 0:
            continue
        p = distinguished_block_count(d)
        sign = -1 if (p - 1) % 2 else 1
        i, k = len(d.aset), len(d.blocks)
        ends = block_ends(d.blocks)
        for ell in range(s):
            m = sum(1 for e in ends if e > ell)
            if not _leader_position_ok(d.blocks, k, m, ell):
                continue
            key = (i, k, ell, m)
            agg[key] = agg.get(key, 0) + sign
    return agg


# ---------------------------------------------------------------------------
# text format


def format_block(block: Block) -> str:
    return "[" + ",".join(str(x) for x in block) + "]"


def format_forest(blocks: Forest) -> str:
    return "".join(format_block(b) for b in blocks)


def format_valued(blocks: Forest, values: Sequence[int]) -> str:
    """Blocks with a ^v suffix on each block whose value is nonzero."""
    parts = []
    for b, v in zip(blocks, values):
        parts.append(format_block(b) + (f"^{v}" if v else ""))
    return "".join(parts)


def format_distinguished(d: Distinguished) -> str:
    """Valued forest followed by |A={...} with A sorted ascending."""
    aset = "{" + ",".join(str(x) for x in sorted(d.aset)) + "}"
    return format_valued(d.blocks, d.values) + "|A=" + aset
