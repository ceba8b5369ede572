"""Colour-count polynomials: the lambda-factorial and the formulas that
count block-descending derangements through it.

f_lam(n) is the polynomial sum over S_n of lam^(number of fixed points);
specialising lam = 1 gives n! and lam = 0 gives the derangement numbers.
All polynomials carry exact integer coefficients, so the "independent of
lambda" statements below become degree assertions instead of multi-point
sampling.  Numeric evaluation is a fold over coefficients and is exact
for integer arguments; no floating point is used anywhere.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .perm import Composition
from .series import multinomial

__all__ = [
    "LambdaPolynomial",
    "LAMBDA",
    "lambda_factorial",
    "lambda_factorial_truncexp",
    "derangement_number",
    "change_basis",
    "poly_derivative_check",
    "explicit_D_count",
    "lamfak_rhs",
    "derangement_basis_count",
    "mu_coloured_count",
]


@dataclass(frozen=True)
class LambdaPolynomial:
    """Integer-coefficient polynomial in the colour count, stored as a
    coefficient tuple with the constant term first and trailing zeros
    trimmed (the zero polynomial is the empty tuple)."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = list(int(c) for c in self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def constant(cls, c: int) -> "LambdaPolynomial":
        return cls((c,))

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self!r}")
        return self.coeffs[0] if self.coeffs else 0

    def eval_at(self, x: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def derivative(self) -> "LambdaPolynomial":
        return LambdaPolynomial(
            tuple(i * c for i, c in enumerate(self.coeffs) if i > 0)
        )

    def to_strings(self) -> list[str]:
        """Coefficients as decimal strings, constant term first."""
        if not self.coeffs:
            return ["0"]
        return [str(c) for c in self.coeffs]

    def __add__(self, other: "LambdaPolynomial | int") -> "LambdaPolynomial":
        other = _as_poly(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return LambdaPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "LambdaPolynomial":
        return LambdaPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "LambdaPolynomial | int") -> "LambdaPolynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other: "LambdaPolynomial | int") -> "LambdaPolynomial":
        return _as_poly(other) - self

    def __mul__(self, other: "LambdaPolynomial | int") -> "LambdaPolynomial":
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return LambdaPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LambdaPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "LambdaPolynomial":
        if power < 0:
            raise ValueError("negative power")
        out = LambdaPolynomial((1,))
        for _ in range(power):
            out = out * self
        return out

    def __repr__(self) -> str:
        return f"LambdaPolynomial({self.coeffs!r})"


def _as_poly(x: "LambdaPolynomial | int") -> LambdaPolynomial:
    if isinstance(x, LambdaPolynomial):
        return x
    return LambdaPolynomial((int(x),))


LAMBDA = LambdaPolynomial((0, 1))


@lru_cache(maxsize=None)
def lambda_factorial(n: int) -> LambdaPolynomial:
    """f_lam(n) by the recurrence f(n) = n*f(n-1) + (lam-1)^n, f(0) = 1.

    The coefficient of lam^j is the number of permutations of {1..n}
    with exactly j fixed points.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return LambdaPolynomial((1,))
    return n * lambda_factorial(n - 1) + (LAMBDA - 1) ** n


def lambda_factorial_truncexp(n: int) -> LambdaPolynomial:
    """f_lam(n) as n! times the degree-n truncation of exp(lam - 1),
    expanded exactly: sum over j of (n!/j!) * (lam-1)^j.  Agrees with
    :func:`lambda_factorial` coefficientwise."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = LambdaPolynomial(())
    base = LambdaPolynomial((1,))
    for j in range(n + 1):
        # n!/j! stays integral: it is the falling factorial n(n-1)...(j+1).
        out = out + (math.factorial(n) // math.factorial(j)) * base
        base = base * (LAMBDA - 1)
    return out


@lru_cache(maxsize=None)
def derangement_number(n: int) -> int:
    """D_n via D_n = n*D_{n-1} + (-1)^n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    return n * derangement_number(n - 1) + (-1) ** n


def change_basis(n: int, nu: int, lam: int, values: Sequence[int]) -> int:
    """Rewrite f_nu(n) in terms of the table values[m] = f_lam(m):
    sum over j of C(n, j) * values[n-j] * (nu-lam)^j."""
    if len(values) < n + 1:
        raise ValueError("need table values for 0..n")
    return sum(
        math.comb(n, j) * values[n - j] * (nu - lam) ** j for j in range(n + 1)
    )


def poly_derivative_check(n: int) -> bool:
    """True iff d/dlam f_lam(n) = n * f_lam(n-1) as polynomials."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return lambda_factorial(n).derivative() == n * lambda_factorial(n - 1)


def _b_vectors(bounds: tuple[int, ...]):
    return itertools.product(*(range(b + 1) for b in bounds))


def explicit_D_count(a: Composition) -> int:
    """The alternating factorial formula for |D(a)|:
    sum over 0 <= b <= a of (-1)^|b| (n-|b|)! / prod (a_i - b_i)!."""
    total = 0
    for b in _b_vectors(a.parts):
        weight = sum(b)
        rest = [ai - bi for ai, bi in zip(a.parts, b)]
        total += (-1) ** weight * multinomial(rest)
    return total


def lamfak_rhs(a: Composition) -> LambdaPolynomial:
    """The lambda-factorial refinement of the alternating formula:
    sum over 0 <= b <= a of (-1)^|b| f(n-|b|) prod C(a_i, b_i) f(b_i),
    computed symbolically.  The result is a constant polynomial whose
    value is the number of words that become fixed-point free when
    block-sorted by ``a``."""
    n = a.n
    total = LambdaPolynomial(())
    for b in _b_vectors(a.parts):
        weight = sum(b)
        term = lambda_factorial(n - weight)
        for ai, bi in zip(a.parts, b):
            term = term * (math.comb(ai, bi) * lambda_factorial(bi))
        if weight % 2:
            term = -term
        total = total + term
    return total


def derangement_basis_count(a: Composition) -> int:
    """|D(a)| from the derangement-number basis:
    (1/prod a_i!) sum over b of (-1)^|b| D_{n-|b|} prod C(a_i,b_i) D_{b_i}.
    The division must come out exact; a remainder signals a bug."""
    n = a.n
    numerator = 0
    for b in _b_vectors(a.parts):
        weight = sum(b)
        term = derangement_number(n - weight)
        for ai, bi in zip(a.parts, b):
            term *= math.comb(ai, bi) * derangement_number(bi)
        numerator += (-1) ** weight * term
    denominator = math.prod(math.factorial(ai) for ai in a.parts)
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise ArithmeticError(
            f"inexact division {numerator}/{denominator} for {a.parts}"
        )
    return quotient


def mu_coloured_count(a: Composition, mu: Sequence[int], lam: int) -> int:
    """Weighted count of block-descending words with at most one coloured
    fixed point per block, block i drawing from mu_i colours:

        sum over c in {0,1}^k, 0 <= b <= a-c of
            (-1)^|b| f(n - |c| - |b|) prod C(a_i-c_i, b_i) f(b_i) mu_i^c_i

    evaluated at the given integer ``lam`` (the value is independent of
    it).  Counts pairs (word, colouring) where the fixed points of the
    block-sorted word already sit in place in the word itself.
    """
    if len(mu) != a.k:
        raise ValueError("mu must give one colour count per block")
    if any(m < 0 for m in mu):
        raise ValueError("colour counts must be nonnegative")
    n = a.n
    f = [lambda_factorial(m).eval_at(lam) for m in range(n + 1)]
    total = 0
    for c in itertools.product((0, 1), repeat=a.k):
        if any(ci > ai for ci, ai in zip(c, a.parts)):
            continue
        weight_c = sum(c)
        colour_ways = math.prod(m ** ci for m, ci in zip(mu, c))
        if colour_ways == 0:
            continue
        for b in _b_vectors(tuple(ai - ci for ai, ci in zip(a.parts, c))):
            weight_b = sum(b)
            term = f[n - weight_c - weight_b]
            for ai, ci, bi in zip(a.parts, c, b):
                term *= math.comb(ai - ci, bi) * f[bi]
            total += (-1) ** weight_b * term * colour_ways
    return total
