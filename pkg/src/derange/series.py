"""Truncated multivariate power series with exact integer coefficients.

A series lives in k variables with a fixed per-variable degree cap; the
coefficient of interest never exceeds the caps, and truncating there is
exact because every factor used here has nonnegative exponents.  The
representation is a sparse exponent-vector map, and all arithmetic is
arbitrary-precision integer arithmetic.  Caps are pinned at
construction: combining series with different caps is an error rather
than a silent re-truncation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .perm import Composition

__all__ = [
    "MultiSeries",
    "multinomial",
    "series_one",
    "series_from_terms",
    "series_mul",
    "inv_one_plus_var",
    "inv_one_minus_sum",
    "coeff_Dj",
    "coeff_Dj_sequence",
]


def multinomial(parts: Sequence[int]) -> int:
    """(sum parts)! / prod(part!) as an exact integer."""
    total = 0
    out = 1
    for part in parts:
        if part < 0:
            return 0
        total += part
        out *= math.comb(total, part)
    return out


@dataclass(frozen=True)
class MultiSeries:
    """Sparse truncated series: exponent vector -> integer coefficient.

    Absent exponents are zero; stored exponents satisfy 0 <= e <= caps
    componentwise and zero coefficients are dropped.
    """

    caps: tuple[int, ...]
    coeffs: Mapping[tuple[int, ...], int]

    def __post_init__(self) -> None:
        caps = tuple(int(c) for c in self.caps)
        object.__setattr__(self, "caps", caps)
        if any(c < 0 for c in caps):
            raise ValueError("caps must be nonnegative")
        cleaned = {}
        for exp, c in self.coeffs.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(caps):
                raise ValueError(f"exponent {exp} has wrong arity for caps {caps}")
            if any(e < 0 or e > d for e, d in zip(exp, caps)):
                raise ValueError(f"exponent {exp} outside caps {caps}")
            if c:
                cleaned[exp] = int(c)
        object.__setattr__(self, "coeffs", cleaned)

    def coeff(self, exp: Sequence[int]) -> int:
        """The coefficient at ``exp``; reading beyond the caps is an error
        because those coefficients were truncated away."""
        exp = tuple(exp)
        if len(exp) != len(self.caps) or any(
            e < 0 or e > d for e, d in zip(exp, self.caps)
        ):
            raise ValueError(f"exponent {exp} outside caps {self.caps}")
        return self.coeffs.get(exp, 0)

    def __repr__(self) -> str:
        return f"MultiSeries(caps={self.caps}, terms={len(self.coeffs)})"


def series_one(caps: Sequence[int]) -> MultiSeries:
    """The multiplicative identity at the given caps."""
    caps = tuple(caps)
    return MultiSeries(caps, {(0,) * len(caps): 1})


def series_from_terms(
    caps: Sequence[int], terms: Mapping[tuple[int, ...], int]
) -> MultiSeries:
    return MultiSeries(tuple(caps), dict(terms))


def series_mul(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    """Truncated convolution; requires equal caps."""
    if a.caps != b.caps:
        raise ValueError(f"cap mismatch: {a.caps} vs {b.caps}")
    caps = a.caps
    out: dict[tuple[int, ...], int] = {}
    for e1, c1 in a.coeffs.items():
        for e2, c2 in b.coeffs.items():
            exp = tuple(x + y for x, y in zip(e1, e2))
            if all(e <= d for e, d in zip(exp, caps)):
                out[exp] = out.get(exp, 0) + c1 * c2
    return MultiSeries(caps, out)


def inv_one_plus_var(i: int, caps: Sequence[int]) -> MultiSeries:
    """The geometric expansion of 1/(1 + x_i): coefficient (-1)^j at
    exponent j in variable ``i`` (1-based), zero elsewhere."""
    caps = tuple(caps)
    if not 1 <= i <= len(caps):
        raise ValueError(f"variable index {i} out of range 1..{len(caps)}")
    terms = {}
    for j in range(caps[i - 1] + 1):
        exp = [0] * len(caps)
        exp[i - 1] = j
        terms[tuple(exp)] = -1 if j % 2 else 1
    return MultiSeries(caps, terms)


def inv_one_minus_sum(caps: Sequence[int]) -> MultiSeries:
    """The expansion of 1/(1 - x_1 - ... - x_k): the coefficient at an
    exponent vector e is the multinomial (sum e)!/prod(e_i!)."""
    caps = tuple(caps)
    terms = {
        exp: multinomial(exp)
        for exp in itertools.product(*(range(c + 1) for c in caps))
    }
    return MultiSeries(caps, terms)


def _parts(a: Composition | Sequence[int]) -> tuple[int, ...]:
    if isinstance(a, Composition):
        return a.parts
    return Composition(tuple(a)).parts


def coeff_Dj_sequence(a: Composition | Sequence[int]) -> list[int]:
    """Coefficients of x^a in the generating functions for |D_j(a)|,
    j = 0..k, sharing the partial products."""
    parts = _parts(a)
    series = inv_one_minus_sum(parts)
    out = [series.coeff(parts)]
    for i in range(1, len(parts) + 1):
        series = series_mul(series, inv_one_plus_var(i, parts))
        out.append(series.coeff(parts))
    return out


def coeff_Dj(a: Composition | Sequence[int], j: int) -> int:
    """|D_j(a)| extracted as the coefficient of x^a in
    1/((1+x_1)...(1+x_j)(1-x_1-...-x_k))."""
    parts = _parts(a)
    if not 0 <= j <= len(parts):
        raise ValueError(f"j={j} out of range 0..{len(parts)}")
    series = inv_one_minus_sum(parts)
    for i in range(1, j + 1):
        series = series_mul(series, inv_one_plus_var(i, parts))
    return series.coeff(parts)
