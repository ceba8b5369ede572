"""Brute-force enumeration oracles.

Everything here counts by explicit enumeration so it can serve as the
independent check for the generating-function and formula routes.
Members of a block-descending class are generated by choosing the value
set of each block and writing it decreasingly, so those scans are
multinomial-sized; only the sorted-preimage count scans all of S_n.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass
from typing import Iterator

from .perm import Composition, Permutation, insert_entry, is_member

__all__ = [
    "FixDistribution",
    "iterate_members",
    "count_members",
    "count_Dj",
    "count_Dj_all",
    "count_Dstar",
    "count_Dhat",
    "deficiency_boundary",
    "insert_block_fixed_point",
    "count_sorted_derangement_preimage",
    "fix_distribution",
]


@dataclass(frozen=True)
class FixDistribution:
    """counts[j] = number of permutations of {1..n} with exactly j fixed
    points."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(self.counts))
        if len(self.counts) != self.n + 1:
            raise ValueError("distribution must have n+1 entries")


def _member_words(parts: tuple[int, ...], values: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if not parts:
        yield ()
        return
    head, tail = parts[0], parts[1:]
    for chosen in itertools.combinations(values, head):
        block = tuple(sorted(chosen, reverse=True))
        remaining = tuple(v for v in values if v not in set(chosen))
        for rest in _member_words(tail, remaining):
            yield block + rest


def iterate_members(a: Composition) -> Iterator[Permutation]:
    """Every permutation that decreases inside each block of ``a``,
    exactly once (in block-value-set order)."""
    for word in _member_words(a.parts, tuple(range(1, a.n + 1))):
        yield Permutation(word)


def count_members(a: Composition) -> int:
    return sum(1 for _ in _member_words(a.parts, tuple(range(1, a.n + 1))))


def _first_fixed_block(word: tuple[int, ...], a: Composition) -> int:
    """Index of the first block containing a fixed point, or k+1."""
    for j, block in enumerate(a.blocks(), 1):
        for i in block:
            if word[i - 1] == i:
                return j
    return a.k + 1


def count_Dj_all(a: Composition) -> tuple[int, ...]:
    """(|D_0(a)|, ..., |D_k(a)|) in one pass over the members."""
    hist = [0] * (a.k + 2)
    for word in _member_words(a.parts, tuple(range(1, a.n + 1))):
        hist[_first_fixed_block(word, a)] += 1
    out = []
    running = 0
    for j in range(a.k, -1, -1):
        running += hist[j + 1]
        out.append(running)
    return tuple(reversed(out))


def count_Dj(a: Composition, j: int) -> int:
    """Members with no fixed point in blocks 1..j, by direct filtering."""
    if not 0 <= j <= a.k:
        raise ValueError(f"j={j} out of range 0..{a.k}")
    total = 0
    for word in _member_words(a.parts, tuple(range(1, a.n + 1))):
        if all(
            word[i - 1] != i for t in range(1, j + 1) for i in a.block(t)
        ):
            total += 1
    return total


def count_Dstar(a: Composition, j: int) -> int:
    """Members with no fixed point in blocks 1..j-1 but at least one in
    block j."""
    if not 1 <= j <= a.k:
        raise ValueError(f"j={j} out of range 1..{a.k}")
    total = 0
    for word in _member_words(a.parts, tuple(range(1, a.n + 1))):
        if _first_fixed_block(word, a) == j:
            total += 1
    return total


def count_Dhat(a: Composition, j: int) -> int:
    """Members with a fixed point in block j and none in any other block."""
    if not 1 <= j <= a.k:
        raise ValueError(f"j={j} out of range 1..{a.k}")
    total = 0
    for word in _member_words(a.parts, tuple(range(1, a.n + 1))):
        ok = any(word[i - 1] == i for i in a.block(j)) and all(
            word[i - 1] != i
            for t in range(1, a.k + 1)
            if t != j
            for i in a.block(t)
        )
        if ok:
            total += 1
    return total


def _in_Dj(p: Permutation, a: Composition, j: int) -> bool:
    return is_member(p, a) and all(
        p.image[i - 1] != i for t in range(1, j + 1) for i in a.block(t)
    )


def deficiency_boundary(p: Permutation, a: Composition, j: int) -> int:
    """The first position of block j holding a deficiency; one past the
    block when every entry is an excedance (or the block is empty).

    Inside a fixed-point-free descending block, p[i] - i is strictly
    decreasing and never zero, so the entries split into excedances
    followed by deficiencies and this boundary is well defined.
    """
    block = a.block(j)
    for i in block:
        if p.image[i - 1] < i:
            return i
    return block.stop


def insert_block_fixed_point(p: Permutation, a: Composition, j: int) -> Permutation:
    """Insert a fixed point at the excedance/deficiency boundary of block
    j.  Sends a member of D_j(a) to a member of
    D*_j(a_1, ..., a_j + 1, ..., a_k); removing the same position undoes
    it, and the map is a bijection between those sets.
    """
    if not 1 <= j <= a.k:
        raise ValueError(f"j={j} out of range 1..{a.k}")
    if not _in_Dj(p, a, j):
        raise ValueError(f"{p!r} is not in D_{j}({a.parts})")
    r = deficiency_boundary(p, a, j)
    return insert_entry(p, r, r)


def count_sorted_derangement_preimage(a: Composition) -> int:
    """Permutations of S_n that become fixed-point free when each block
    is sorted decreasingly.  Full S_n scan."""
    n = a.n
    spans = [
        (block.start - 1, block.stop - 1)
        for block in a.blocks()
        if len(block) > 0
    ]
    total = 0
    for w in itertools.permutations(range(1, n + 1)):
        for lo, hi in spans:
            seg = sorted(w[lo:hi], reverse=True)
            if any(seg[t] == lo + 1 + t for t in range(hi - lo)):
                break
        else:
            total += 1
    return total


def fix_distribution(n: int) -> FixDistribution:
    """Exhaustive fixed-point distribution over S_n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    counts = [0] * (n + 1)
    idx = tuple(range(1, n + 1))
    for w in itertools.permutations(idx):
        counts[sum(map(operator.eq, w, idx))] += 1
    return FixDistribution(n, tuple(counts))
