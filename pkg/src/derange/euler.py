"""Generalized Euler difference tables and the bijections behind their
recurrences.

The e-table is defined by e(n, n) = n! and
e(n, k-1) = e(n, k) + (lam - 1) * e(n-1, k-1); dividing by k! gives the
d-table, whose entry d(n, k) counts D(k, n, lam): permutations with a
decreasing k-prefix whose fixed points after position k each carry one
of ``lam`` colours.  Colour 1 is the default; colours above 1 mark
"essential" fixed points, and the insertion maps below (theta, eta,
zeta) realise the table recurrences

    d(n, k-1) = k d(n, k) + (lam-1) d(n-1, k-1)
    d(n, k)   = n d(n-1, k) + (lam-1) d(n-2, k-1)
    d(n, k)   = (n + lam - 1) d(n-1, k) - (lam-1)(n-k-1) d(n-2, k)

as invertible (for zeta1: two-to-one on a characterised set) maps.

Internally the maps track essential fixed points by their value while
entries are spliced in and out; a coloured fixed point may transiently
stop being fixed mid-composition, but lands on a fixed point again when
the map completes, keeping its colour.  Default-coloured fixed points
are plain structure and may appear or disappear freely.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .lamfak import LambdaPolynomial
from .perm import ColouredPermutation, Permutation

__all__ = [
    "DifferenceTable",
    "build_tables",
    "tail_scope",
    "make_coloured",
    "in_Dkn",
    "enumerate_Dkn",
    "theta",
    "theta_inverse",
    "eta",
    "eta_inverse",
    "zeta1",
    "zeta2",
    "dkn_change_basis",
]


# ---------------------------------------------------------------------------
# difference tables


@dataclass(frozen=True)
class DifferenceTable:
    """Triangular tables of polynomials in the colour count, indexed
    (n, k) with 0 <= k <= n <= n_max.  The d-table extends to k = -1
    with d(n, -1) = (lam-1)^(n+1) and d(-1, -1) = 1."""

    n_max: int
    e_rows: tuple[tuple[LambdaPolynomial, ...], ...]
    d_rows: tuple[tuple[LambdaPolynomial, ...], ...]

    def e(self, n: int, k: int) -> LambdaPolynomial:
        if not 0 <= k <= n <= self.n_max:
            raise ValueError(f"(n, k)=({n}, {k}) outside the table")
        return self.e_rows[n][k]

    def d(self, n: int, k: int) -> LambdaPolynomial:
        if k == -1:
            return self.d_extended(n)
        if not 0 <= k <= n <= self.n_max:
            raise ValueError(f"(n, k)=({n}, {k}) outside the table")
        return self.d_rows[n][k]

    @staticmethod
    def d_extended(n: int) -> LambdaPolynomial:
        """The k = -1 column: (lam-1)^(n+1), so that d(-1, -1) = 1."""
        if n < -1:
            raise ValueError("n must be at least -1")
        return (LambdaPolynomial((0, 1)) - 1) ** (n + 1)


def _poly_div_exact(p: LambdaPolynomial, divisor: int) -> LambdaPolynomial:
    out = []
    for c in p.coeffs:
        q, r = divmod(c, divisor)
        if r:
            raise ArithmeticError(f"coefficient {c} not divisible by {divisor}")
        out.append(q)
    return LambdaPolynomial(tuple(out))


def build_tables(n_max: int) -> DifferenceTable:
    """Both tables as exact polynomials; the division by k! is checked
    coefficientwise (a remainder would mean the recurrence is wrong)."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    lam_minus_one = LambdaPolynomial((-1, 1))
    e_rows: list[list[LambdaPolynomial]] = []
    for n in range(n_max + 1):
        row = [LambdaPolynomial((0,))] * (n + 1)
        row[n] = LambdaPolynomial.constant(math.factorial(n))
        for k in range(n, 0, -1):
            row[k - 1] = row[k] + lam_minus_one * e_rows[n - 1][k - 1]
        e_rows.append(row)
    d_rows = [
        [_poly_div_exact(e_rows[n][k], math.factorial(k)) for k in range(n + 1)]
        for n in range(n_max + 1)
    ]
    return DifferenceTable(
        n_max,
        tuple(tuple(row) for row in e_rows),
        tuple(tuple(row) for row in d_rows),
    )


def dkn_change_basis(
    n: int, k: int, nu: int, lam: int, values: Sequence[int] | None = None
) -> int:
    """d(n, k) at colour count ``nu`` from its values at ``lam``:
    sum over j of C(n-k, j) * values[n-j] * (nu-lam)^j, where values[m]
    holds d(m, k) at ``lam`` (computed from the table when omitted)."""
    if not 0 <= k <= n:
        raise ValueError(f"(n, k)=({n}, {k}) invalid")
    if values is None:
        table = build_tables(n)
        values = [0] * (n + 1)
        for m in range(k, n + 1):
            values[m] = table.d(m, k).eval_at(lam)
    return sum(
        math.comb(n - k, j) * values[n - j] * (nu - lam) ** j
        for j in range(n - k + 1)
    )


# ---------------------------------------------------------------------------
# coloured permutations with a decreasing prefix


def tail_scope(k: int, n: int) -> frozenset[int]:
    """The coloured positions for a decreasing prefix of length k."""
    return frozenset(range(k + 1, n + 1))


def make_coloured(
    word: Sequence[int], essentials: dict[int, int], k: int, lam: int
) -> ColouredPermutation:
    """Assemble a member of D(k, n, lam) from a word and its essential
    colours; default colours are filled in on the remaining tail fixed
    points."""
    perm = Permutation(tuple(word))
    return ColouredPermutation.make(
        perm, lam, scope=tail_scope(k, len(perm)), colours=essentials
    )


def in_Dkn(p: ColouredPermutation, k: int, n: int, lam: int) -> bool:
    """Membership test: size n, decreasing k-prefix, tail scope, colour
    budget lam."""
    if len(p.perm) != n or p.lam != lam or p.scope != tail_scope(k, n):
        return False
    img = p.perm.image
    return all(img[i - 1] > img[i] for i in range(1, k))


def _require_dkn(p: ColouredPermutation, k: int, n: int, lam: int) -> None:
    if not in_Dkn(p, k, n, lam):
        raise ValueError(f"{p!r} is not in D({k}, {n}, {lam})")


def enumerate_Dkn(n: int, k: int, lam: int) -> Iterator[ColouredPermutation]:
    """All members of D(k, n, lam): decreasing k-prefix, every fixed
    point past position k coloured in 1..lam (with lam = 0 such fixed
    points are forbidden)."""
    if not 0 <= k <= n:
        raise ValueError(f"(n, k)=({n}, {k}) invalid")
    if lam < 0:
        raise ValueError("lam must be nonnegative")
    values = range(1, n + 1)
    for chosen in itertools.combinations(values, k):
        prefix = tuple(sorted(chosen, reverse=True))
        rest = tuple(v for v in values if v not in set(chosen))
        for tail in itertools.permutations(rest):
            word = prefix + tail
            fps = [i for i in range(k + 1, n + 1) if word[i - 1] == i]
            if lam == 0:
                if not fps:
                    yield make_coloured(word, {}, k, lam)
                continue
            for combo in itertools.product(range(1, lam + 1), repeat=len(fps)):
                yield make_coloured(word, dict(zip(fps, combo)), k, lam)


# ---------------------------------------------------------------------------
# raw-word splice helpers with essential-colour transport
#
# Essentials travel as {value: colour}; the splices keep the dictionary
# keyed by whatever value currently holds each colour.


def _splice_in(
    word: tuple[int, ...], pos: int, val: int, ess: dict[int, int]
) -> tuple[tuple[int, ...], dict[int, int]]:
    shifted = [x + 1 if x >= val else x for x in word]
    new_word = tuple(shifted[: pos - 1] + [val] + shifted[pos - 1 :])
    return new_word, {(v + 1 if v >= val else v): c for v, c in ess.items()}


def _splice_out(
    word: tuple[int, ...], pos: int, ess: dict[int, int]
) -> tuple[tuple[int, ...], int, dict[int, int]]:
    val = word[pos - 1]
    if val in ess:
        raise ValueError(f"essential value {val} removed without bookkeeping")
    rest = tuple(
        x - 1 if x > val else x for i, x in enumerate(word, 1) if i != pos
    )
    return rest, val, {(v - 1 if v > val else v): c for v, c in ess.items()}


def _pop_essentials(
    word: tuple[int, ...], ess: dict[int, int], positions: Sequence[int]
) -> tuple[tuple[int, ...], dict[int, int], list[int]]:
    """Remove the essential fixed points at ``positions`` (in decreasing
    order), returning their colours listed by increasing position."""
    order = sorted(positions)
    colours = [ess[f] for f in order]
    ess = {v: c for v, c in ess.items() if v not in set(order)}
    for f in reversed(order):
        if word[f - 1] != f:
            raise ValueError(f"position {f} is not a fixed point")
        word, _, ess = _splice_out(word, f, ess)
    return word, ess, colours


def _push_essentials(
    word: tuple[int, ...],
    ess: dict[int, int],
    positions: Sequence[int],
    colours: Sequence[int],
) -> tuple[tuple[int, ...], dict[int, int]]:
    """Insert fixed points at ``positions`` (in increasing order),
    colouring them with ``colours`` in the same order."""
    for f, c in zip(sorted(positions), colours):
        word, ess = _splice_in(word, f, f, ess)
        ess[f] = c
    return word, ess


def _essential_run(p: ColouredPermutation, k: int) -> int:
    """Length of the consecutive run of essential fixed points starting
    at position k+1."""
    ess = p.essentials()
    t = 0
    while (k + 1 + t) in ess:
        t += 1
    return t


# ---------------------------------------------------------------------------
# theta: d(n, k-1) = k d(n, k) + (lam-1) d(n-1, k-1)


def theta(
    x: int, p: ColouredPermutation, k: int, n: int, lam: int
) -> ColouredPermutation:
    """Map into D(k-1, n, lam).

    First branch (p of size n, x = j in 1..k): the prefix entry at
    position j is taken out and re-inserted at position k, shortening
    the decreasing prefix by one.  Second branch (p of size n-1,
    x = colour in 2..lam): a fixed point k coloured x is inserted.
    """
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    if len(p.perm) == n:
        _require_dkn(p, k, n, lam)
        j = x
        if not 1 <= j <= k:
            raise ValueError(f"j={j} out of range 1..{k}")
        ess = dict(p.essentials())
        word = p.perm.image
        v = word[j - 1]
        word, removed, ess = _splice_out(word, j, ess)
        assert removed == v
        word, ess = _splice_in(word, k, v, ess)
        return make_coloured(word, ess, k - 1, lam)
    if len(p.perm) == n - 1:
        _require_dkn(p, k - 1, n - 1, lam)
        c = x
        if not 2 <= c <= lam:
            raise ValueError(f"colour {c} out of range 2..{lam}")
        word, ess = _splice_in(p.perm.image, k, k, dict(p.essentials()))
        ess[k] = c
        return make_coloured(word, ess, k - 1, lam)
    raise ValueError(f"permutation size {len(p.perm)} fits neither branch")


def theta_inverse(
    q: ColouredPermutation, k: int, n: int, lam: int
) -> tuple[int, ColouredPermutation]:
    """Recover the branch and argument: position k of the image holds an
    essential fixed point exactly for the colour branch."""
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    _require_dkn(q, k - 1, n, lam)
    ess = dict(q.essentials())
    word = q.perm.image
    if word[k - 1] == k and ess.get(k, 1) > 1:
        c = ess.pop(k)
        word, removed, ess = _splice_out(word, k, ess)
        assert removed == k
        return c, make_coloured(word, ess, k - 1, lam)
    v = word[k - 1]
    j = 1 + sum(1 for i in range(k - 1) if word[i] > v)
    word, removed, ess = _splice_out(word, k, ess)
    assert removed == v
    word, ess = _splice_in(word, j, v, ess)
    return j, make_coloured(word, ess, k, lam)


# ---------------------------------------------------------------------------
# eta: d(n, k) = n d(n-1, k) + (lam-1) d(n-2, k-1)


def _insert_after_prefix(
    word: tuple[int, ...], ess: dict[int, int], j: int, k: int
) -> tuple[tuple[int, ...], dict[int, int]]:
    """Insert the element j at the first slot past the prefix without
    disturbing the essential fixed points below j: those are removed,
    the value j - (number removed) goes in at position k+1, and the
    essentials return to their original positions."""
    below = sorted(f for f in ess if f < j)
    word, ess, colours = _pop_essentials(word, ess, below)
    word, ess = _splice_in(word, k + 1, j - len(below), ess)
    word, ess = _push_essentials(word, ess, below, colours)
    return word, ess


def eta(
    x: int, p: ColouredPermutation, k: int, n: int, lam: int
) -> ColouredPermutation:
    """Map into D(k, n, lam).

    First branch (p of size n-1, x = j in 1..n): insert the element j as
    early as possible after position k, leaving essential fixed points
    undisturbed.  Covers every permutation whose run of essential fixed
    points starting at k+1 is empty or followed by an entry on or above
    the diagonal.

    Second branch (p of size n-2, x = a colour): remove the essential
    fixed points, merge the k-th remaining entry into the prefix, insert
    its former rank m after the new prefix, insert a fixed point k+1
    coloured x before it, and restore the essentials two positions
    later.  Covers the permutations whose essential run at k+1 is
    non-empty and followed by an entry below the diagonal or by the end
    of the word.  The colour argument 1 is accepted as an alias for
    colour 2.
    """
    if not 0 <= k <= n - 1:
        raise ValueError(f"k={k} out of range 0..{n - 1}")
    if len(p.perm) == n - 1:
        _require_dkn(p, k, n - 1, lam)
        j = x
        if not 1 <= j <= n:
            raise ValueError(f"j={j} out of range 1..{n}")
        word, ess = _insert_after_prefix(p.perm.image, dict(p.essentials()), j, k)
        return make_coloured(word, ess, k, lam)
    if len(p.perm) == n - 2:
        if k == 0:
            # the colour branch at k = 0 corresponds to the formal k = -1
            # table column, which has no permutation model; the element
            # branch covers everything except the all-essential identity
            # colourings, which the extended row counts
            raise ValueError("the colour branch needs k >= 1")
        _require_dkn(p, k - 1, n - 2, lam)
        c = 2 if x == 1 else x
        if not 2 <= c <= lam:
            raise ValueError(f"colour {x} out of range 2..{lam}")
        ess = dict(p.essentials())
        fixed = sorted(ess)
        word, ess, colours = _pop_essentials(p.perm.image, ess, fixed)
        if len(word) >= k:
            # m = rank of the k-th entry among the first k, then sort it in
            m = sum(1 for t in word[:k] if t <= word[k - 1])
            word = tuple(sorted(word[:k], reverse=True)) + word[k:]
            word, ess = _splice_in(word, k + 1, m, ess)
        else:
            # every entry past the prefix was an essential fixed point;
            # the word is the decreasing prefix (k-1, ..., 1)
            word, ess = _splice_in(word, 1, k, ess)
        word, ess = _splice_in(word, k + 1, k + 1, ess)
        ess[k + 1] = c
        word, ess = _push_essentials(word, ess, [f + 2 for f in fixed], colours)
        return make_coloured(word, ess, k, lam)
    raise ValueError(f"permutation size {len(p.perm)} fits neither branch")


def eta_inverse(
    q: ColouredPermutation, k: int, n: int, lam: int
) -> tuple[int, ColouredPermutation]:
    """Recover the branch from the essential run at k+1 and the entry
    following it, then unwind the construction."""
    if not 0 <= k <= n - 1:
        raise ValueError(f"k={k} out of range 0..{n - 1}")
    _require_dkn(q, k, n, lam)
    t = _essential_run(q, k)
    word = q.perm.image
    second_branch = t >= 1 and (k + t + 1 > n or word[k + t] < k + t + 1)
    if second_branch and k == 0:
        raise ValueError("not in the element-branch image (all-essential identity at k = 0)")
    ess = dict(q.essentials())
    if not second_branch:
        j = word[k + t]
        below = sorted(f for f in ess if f < j)
        word, ess, colours = _pop_essentials(word, ess, below)
        word, removed, ess = _splice_out(word, k + 1, ess)
        assert removed == j - len(below)
        word, ess = _push_essentials(word, ess, below, colours)
        return j, make_coloured(word, ess, k, lam)
    c = ess.pop(k + 1)
    shifted = sorted(ess)
    word, ess, colours = _pop_essentials(word, ess, shifted)
    word, ess, _ = _pop_essentials(word, {k + 1: c}, [k + 1])
    if len(word) == k:
        # degenerate shape: the word is (k, k-1, ..., 1)
        word, removed, ess = _splice_out(word, word.index(k) + 1, ess)
        assert removed == k
    else:
        m = word[k]
        word, removed, ess = _splice_out(word, k + 1, ess)
        assert removed == m
        val = word[k - m]
        word, removed, ess = _splice_out(word, k - m + 1, ess)
        assert removed == val
        word, ess = _splice_in(word, k, val, ess)
    word, ess = _push_essentials(word, ess, [f - 2 for f in shifted], colours)
    return c, make_coloured(word, ess, k - 1, lam)


# ---------------------------------------------------------------------------
# zeta: d(n, k) = (n + lam - 1) d(n-1, k) - (lam-1)(n-k-1) d(n-2, k)


def zeta1(
    j: int, c: int, p: ColouredPermutation, k: int, lam: int
) -> ColouredPermutation:
    """Insert the element j as early as possible after position k; when
    j = k+1 the new entry is a fixed point and takes colour c (elsewhere
    c must be 1).  Surjective onto D(k, n, lam); a permutation is hit
    twice exactly when its essential run at k+1 is non-empty and
    followed by an entry on or above the diagonal."""
    n = len(p.perm) + 1
    _require_dkn(p, k, n - 1, lam)
    if not 1 <= j <= n:
        raise ValueError(f"j={j} out of range 1..{n}")
    if c != 1:
        if j != k + 1:
            raise ValueError("a non-default colour requires j = k+1")
        if not 2 <= c <= lam:
            raise ValueError(f"colour {c} out of range 2..{lam}")
    word, ess = _insert_after_prefix(p.perm.image, dict(p.essentials()), j, k)
    if j == k + 1 and c > 1:
        ess[k + 1] = c
    return make_coloured(word, ess, k, lam)


def zeta2(
    c: int, j: int, p: ColouredPermutation, k: int, lam: int
) -> ColouredPermutation:
    """Insert a fixed point k+1 with non-default colour c followed by a
    plain entry j > k+1; essentials return to their original positions.
    Its image is exactly the doubly-covered set of :func:`zeta1`."""
    n = len(p.perm) + 2
    _require_dkn(p, k, n - 2, lam)
    if not 2 <= c <= lam:
        raise ValueError(f"colour {c} out of range 2..{lam}")
    if not k + 2 <= j <= n:
        raise ValueError(f"j={j} out of range {k + 2}..{n}")
    ess = dict(p.essentials())
    fixed = sorted(ess)
    word, ess, colours = _pop_essentials(p.perm.image, ess, fixed)
    word, ess = _splice_in(word, k + 1, k + 1, ess)
    ess[k + 1] = c
    word, ess = _splice_in(word, k + 2, j, ess)
    word, ess = _push_essentials(word, ess, fixed, colours)
    return make_coloured(word, ess, k, lam)
