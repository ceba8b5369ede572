"""Permutations in one-line notation, block compositions, and the entry
insertion/removal maps everything else in the package is built from.

Conventions shared by the whole package:

- Positions and values are 1-based.  The JSON encodings produced by the
  CLI are 1-based as well.
- The empty permutation (n = 0) is valid and is the identity for the
  insertion maps.
- Compositions may contain zero-length blocks; they contribute empty
  position intervals and every operation tolerates them.
- Colour 1 is the reserved default colour on fixed points; colours
  greater than 1 are called "essential".

All values are immutable after construction and every operation is a
pure function, so they are safe to share between worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Literal, Mapping, Sequence

__all__ = [
    "Permutation",
    "Composition",
    "ColouredPermutation",
    "identity",
    "descent_set",
    "fixed_points",
    "classify_position",
    "is_member",
    "sort_blocks",
    "insert_entry",
    "remove_entry",
    "insert_fixed_points",
    "remove_fixed_points",
]

PositionKind = Literal["excedance", "deficiency", "fixed"]


@dataclass(frozen=True)
class Permutation:
    """A bijection on {1..n}, stored in one-line notation.

    >>> p = Permutation((3, 2, 6, 4, 5, 1))
    >>> p.at(3)
    6
    >>> len(p)
    6
    """

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(self.image)
        object.__setattr__(self, "image", image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"not a permutation of 1..{len(image)}: {image!r}")

    @classmethod
    def from_word(cls, word: str) -> "Permutation":
        """Build a permutation from a digit string, e.g. ``"3214"`` (n <= 9)."""
        return cls(tuple(int(ch) for ch in word))

    def at(self, i: int) -> int:
        """The value at 1-based position ``i``."""
        if not 1 <= i <= len(self.image):
            raise ValueError(f"position {i} out of range 1..{len(self.image)}")
        return self.image[i - 1]

    def word(self) -> str:
        if len(self.image) <= 9:
            return "".join(str(v) for v in self.image)
        return ",".join(str(v) for v in self.image)

    def __len__(self) -> int:
        return len(self.image)

    def __iter__(self) -> Iterator[int]:
        return iter(self.image)

    def __repr__(self) -> str:
        return f"Permutation({self.word()!r})"


def identity(n: int) -> Permutation:
    """The identity permutation on {1..n}.

    >>> identity(3)
    Permutation('123')
    """
    return Permutation(tuple(range(1, n + 1)))


def descent_set(p: Permutation) -> set[int]:
    """Positions i with p[i] > p[i+1].

    >>> sorted(descent_set(Permutation.from_word("326451")))
    [1, 3, 5]
    >>> descent_set(identity(4))
    set()
    """
    img = p.image
    return {i for i in range(1, len(img)) if img[i - 1] > img[i]}


def fixed_points(p: Permutation) -> set[int]:
    """Positions i with p[i] = i.

    >>> sorted(fixed_points(Permutation.from_word("326451")))
    [2, 4]
    """
    return {i for i, v in enumerate(p.image, 1) if v == i}


def classify_position(p: Permutation, i: int) -> PositionKind:
    """Classify position ``i`` as excedance (p[i] > i), deficiency
    (p[i] < i) or fixed (p[i] = i)."""
    v = p.at(i)
    if v > i:
        return "excedance"
    if v < i:
        return "deficiency"
    return "fixed"


@dataclass(frozen=True)
class Composition:
    """An ordered sequence of nonnegative block lengths covering {1..n}.

    Block ``j`` occupies the positions ``prefix_sums[j-1]+1 ..
    prefix_sums[j]``; zero-length parts give empty blocks.

    >>> c = Composition((4, 2))
    >>> c.n, c.k
    (6, 2)
    >>> list(c.block(2))
    [5, 6]
    """

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(a) for a in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(a < 0 for a in parts):
            raise ValueError(f"composition parts must be nonnegative: {parts!r}")

    @classmethod
    def from_string(cls, text: str) -> "Composition":
        """Parse a comma-separated list, e.g. ``"4,2"``."""
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(int(tok) for tok in text.split(",")))

    @cached_property
    def prefix_sums(self) -> tuple[int, ...]:
        """Running totals c_0 = 0, c_1, ..., c_k = n."""
        sums = [0]
        for a in self.parts:
            sums.append(sums[-1] + a)
        return tuple(sums)

    @property
    def n(self) -> int:
        return self.prefix_sums[-1]

    @property
    def k(self) -> int:
        return len(self.parts)

    def block(self, j: int) -> range:
        """Positions of block ``j`` (1-based, possibly empty)."""
        if not 1 <= j <= self.k:
            raise ValueError(f"block index {j} out of range 1..{self.k}")
        return range(self.prefix_sums[j - 1] + 1, self.prefix_sums[j] + 1)

    def blocks(self) -> Iterator[range]:
        for j in range(1, self.k + 1):
            yield self.block(j)

    def replace_part(self, j: int, value: int) -> "Composition":
        """A copy with block ``j`` resized to ``value``."""
        if not 1 <= j <= self.k:
            raise ValueError(f"block index {j} out of range 1..{self.k}")
        parts = list(self.parts)
        parts[j - 1] = value
        return Composition(tuple(parts))

    def __repr__(self) -> str:
        return f"Composition({self.parts!r})"


def is_member(p: Permutation, a: Composition) -> bool:
    """True iff ``p`` strictly decreases inside every block of ``a``.

    >>> is_member(Permutation.from_word("654321"), Composition((4, 2)))
    True
    >>> is_member(Permutation.from_word("123456"), Composition((4, 2)))
    False
    """
    if len(p) != a.n:
        raise ValueError(f"permutation size {len(p)} != composition total {a.n}")
    img = p.image
    for block in a.blocks():
        for i in range(block.start, block.stop - 1):
            if img[i - 1] <= img[i]:
                return False
    return True


def sort_blocks(p: Permutation, a: Composition) -> Permutation:
    """Sort the entries of each block into decreasing order.

    >>> sort_blocks(Permutation.from_word("25134"), Composition((3, 2)))
    Permutation('52143')
    """
    if len(p) != a.n:
        raise ValueError(f"permutation size {len(p)} != composition total {a.n}")
    out: list[int] = []
    for block in a.blocks():
        out.extend(sorted(p.image[block.start - 1 : block.stop - 1], reverse=True))
    return Permutation(tuple(out))


def insert_entry(p: Permutation, pos: int, val: int) -> Permutation:
    """Insert value ``val`` at position ``pos``; existing values >= val
    are incremented and later entries shift right.

    >>> insert_entry(Permutation.from_word("21"), 3, 2)
    Permutation('312')
    """
    n = len(p)
    if not 1 <= pos <= n + 1:
        raise ValueError(f"insertion position {pos} out of range 1..{n + 1}")
    if not 1 <= val <= n + 1:
        raise ValueError(f"insertion value {val} out of range 1..{n + 1}")
    shifted = [x + 1 if x >= val else x for x in p.image]
    return Permutation(tuple(shifted[: pos - 1] + [val] + shifted[pos - 1 :]))


def remove_entry(p: Permutation, pos: int) -> Permutation:
    """Remove the entry at position ``pos``; larger values decrement and
    later entries shift left.  Inverse of :func:`insert_entry`:
    ``remove_entry(insert_entry(p, j, k), j) == p``.

    >>> remove_entry(Permutation.from_word("3214"), 1)
    Permutation('213')
    """
    n = len(p)
    if n == 0:
        raise ValueError("cannot remove from the empty permutation")
    if not 1 <= pos <= n:
        raise ValueError(f"removal position {pos} out of range 1..{n}")
    v = p.image[pos - 1]
    rest = [x - 1 if x > v else x for i, x in enumerate(p.image, 1) if i != pos]
    return Permutation(tuple(rest))


@dataclass(frozen=True)
class ColouredPermutation:
    """A permutation plus a colour on each fixed point inside a scope.

    ``scope`` is the set of positions whose fixed points carry colours;
    a fixed point outside the scope is plain.  Every in-scope fixed
    point has exactly one colour in ``1..lam`` (colour 1 being the
    default), so with ``lam = 0`` the scope must be fixed-point free.
    """

    perm: Permutation
    lam: int
    scope: frozenset[int]
    colour_items: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "scope", frozenset(self.scope))
        items = tuple(sorted((int(p), int(c)) for p, c in self.colour_items))
        object.__setattr__(self, "colour_items", items)
        n = len(self.perm)
        if self.lam < 0:
            raise ValueError("colour count must be nonnegative")
        if not self.scope <= set(range(1, n + 1)):
            raise ValueError("scope must be a subset of the positions")
        expected = {i for i in self.scope if self.perm.at(i) == i}
        got = {p for p, _ in items}
        if got != expected:
            raise ValueError(
                f"colour domain {sorted(got)} != in-scope fixed points {sorted(expected)}"
            )
        if len(got) != len(items):
            raise ValueError("duplicate colour assignment")
        for p, c in items:
            if not 1 <= c <= self.lam:
                raise ValueError(f"colour {c} at position {p} outside 1..{self.lam}")

    @classmethod
    def make(
        cls,
        perm: Permutation,
        lam: int,
        scope: frozenset[int] | set[int] | None = None,
        colours: Mapping[int, int] | None = None,
    ) -> "ColouredPermutation":
        """Construct with default colour 1 filled in for any in-scope
        fixed point missing from ``colours``.  ``scope`` defaults to all
        positions."""
        if scope is None:
            scope = frozenset(range(1, len(perm) + 1))
        colours = dict(colours or {})
        full = {
            i: colours.get(i, 1) for i in scope if perm.at(i) == i
        }
        extra = set(colours) - set(full)
        if extra:
            raise ValueError(f"colours given at non-fixed or out-of-scope positions: {sorted(extra)}")
        return cls(perm, lam, frozenset(scope), tuple(sorted(full.items())))

    @property
    def colour_map(self) -> dict[int, int]:
        return dict(self.colour_items)

    def colour_of(self, pos: int) -> int:
        for p, c in self.colour_items:
            if p == pos:
                return c
        raise KeyError(f"position {pos} carries no colour")

    def essentials(self) -> dict[int, int]:
        """The fixed points coloured with a non-default colour."""
        return {p: c for p, c in self.colour_items if c > 1}

    def render(self) -> str:
        """Compact text form, e.g. ``'2134 3:2,4:1'``."""
        word = self.perm.word()
        if not self.colour_items:
            return word
        cols = ",".join(f"{p}:{c}" for p, c in self.colour_items)
        return f"{word} {cols}"

    def __repr__(self) -> str:
        return f"ColouredPermutation({self.render()!r}, lam={self.lam})"


def _shift_positions_up(positions: frozenset[int], at: int) -> frozenset[int]:
    return frozenset(s + 1 if s >= at else s for s in positions)


def _shift_positions_down(positions: frozenset[int], removed: int) -> frozenset[int]:
    return frozenset(s - 1 if s > removed else s for s in positions if s != removed)


def insert_fixed_points(
    p: Permutation | ColouredPermutation,
    positions: Sequence[int] | set[int],
    new_colours: Mapping[int, int] | None = None,
):
    """Insert a fixed point at each position of ``positions``, applied in
    increasing order.  Positions refer to the final word, so inserting
    {1, 3} into ``21`` gives ``1432``.

    On a :class:`ColouredPermutation` existing colours move with their
    fixed points; each inserted fixed point joins the scope and takes
    its colour from ``new_colours`` (default colour 1).

    >>> insert_fixed_points(Permutation.from_word("21"), {1, 3})
    Permutation('1432')
    """
    order = sorted(positions)
    if isinstance(p, Permutation):
        out = p
        for f in order:
            out = insert_entry(out, f, f)
        return out
    new_colours = dict(new_colours or {})
    word, lam, scope = p.perm, p.lam, p.scope
    colours = p.colour_map
    for f in order:
        word = insert_entry(word, f, f)
        scope = _shift_positions_up(scope, f) | {f}
        colours = {(t + 1 if t >= f else t): c for t, c in colours.items()}
        colour = new_colours.get(f, 1)
        if not 1 <= colour <= lam:
            raise ValueError(f"colour {colour} for inserted fixed point {f} outside 1..{lam}")
        colours[f] = colour
    return ColouredPermutation(word, lam, scope, tuple(sorted(colours.items())))


def remove_fixed_points(
    p: Permutation | ColouredPermutation,
    positions: Sequence[int] | set[int],
):
    """Remove the fixed points at ``positions``, applied in decreasing
    order; colours of surviving fixed points are preserved.  Inverse of
    :func:`insert_fixed_points` on its image.

    >>> remove_fixed_points(Permutation.from_word("1432"), {1})
    Permutation('321')
    """
    order = sorted(positions, reverse=True)
    if isinstance(p, Permutation):
        out = p
        for f in order:
            if out.at(f) != f:
                raise ValueError(f"position {f} is not a fixed point")
            out = remove_entry(out, f)
        return out
    word, lam, scope = p.perm, p.lam, p.scope
    colours = p.colour_map
    for f in order:
        if word.at(f) != f:
            raise ValueError(f"position {f} is not a fixed point")
        word = remove_entry(word, f)
        scope = _shift_positions_down(scope, f)
        colours = {
            (t - 1 if t > f else t): c for t, c in colours.items() if t != f
        }
    return ColouredPermutation(word, lam, scope, tuple(sorted(colours.items())))
