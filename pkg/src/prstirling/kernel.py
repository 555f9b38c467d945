"""Exact arithmetic kernel: combinatorial triangles and polynomial basis changes.

All values are `fractions.Fraction`. The signed first-kind convention is used
throughout: (x)_n = sum_k s1(n,k) x^k. Triangle caches are append-only lists of
fully built rows, so concurrent readers never observe a partial row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[Fraction, int]


def factorial(n: int) -> Fraction:
    """n! as an exact rational."""
    if n < 0:
        raise ValueError(f"factorial requires n >= 0, got {n}")
    return Fraction(math.factorial(n))


def binomial(n: int, k: int) -> Fraction:
    """C(n, k); zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial requires n, k >= 0, got ({n}, {k})")
    return Fraction(math.comb(n, k))


# Row i of each cache is the full triangle row [T(i, 0), ..., T(i, i)].
_S1_ROWS: list[list[int]] = [[1]]
_S2_ROWS: list[list[int]] = [[1]]


def _grow_s1(n: int) -> None:
    while len(_S1_ROWS) <= n:
        i = len(_S1_ROWS)
        prev = _S1_ROWS[i - 1]
        row = [0] * (i + 1)
        for k in range(i + 1):
            above = prev[k] if k < i else 0
            left = prev[k - 1] if k >= 1 else 0
            row[k] = left - (i - 1) * above
        _S1_ROWS.append(row)


def _grow_s2(n: int) -> None:
    while len(_S2_ROWS) <= n:
        i = len(_S2_ROWS)
        prev = _S2_ROWS[i - 1]
        row = [0] * (i + 1)
        for k in range(i + 1):
            above = prev[k] if k < i else 0
            left = prev[k - 1] if k >= 1 else 0
            row[k] = k * above + left
        _S2_ROWS.append(row)


def stirling1_signed(n: int, k: int) -> Fraction:
    """Signed Stirling number of the first kind s(n, k)."""
    if n < 0 or k < 0:
        raise ValueError(f"stirling1_signed requires n, k >= 0, got ({n}, {k})")
    if k > n:
        return Fraction(0)
    _grow_s1(n)
    return Fraction(_S1_ROWS[n][k])


def stirling2(n: int, k: int) -> Fraction:
    """Classical Stirling number of the second kind S(n, k)."""
    if n < 0 or k < 0:
        raise ValueError(f"stirling2 requires n, k >= 0, got ({n}, {k})")
    if k > n:
        return Fraction(0)
    _grow_s2(n)
    return Fraction(_S2_ROWS[n][k])


class Basis(Enum):
    MONOMIAL = "monomial"
    FALLING_FACTORIAL = "falling"


@dataclass(frozen=True)
class Polynomial:
    """Dense exact polynomial in a declared basis.

    coefficients[k] multiplies x^k (monomial basis) or (x)_k (falling-factorial
    basis). Canonical form: no trailing zeros except the zero polynomial,
    which is the single coefficient [0].
    """

    basis: Basis
    coefficients: tuple[Fraction, ...]

    @staticmethod
    def make(basis: Basis, coeffs: Iterable[RationalLike]) -> "Polynomial":
        cs = [Fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        return Polynomial(basis, tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return len(self.coefficients) == 1 and self.coefficients[0] == 0

    def __call__(self, x: RationalLike) -> Fraction:
        x = Fraction(x)
        if self.basis is Basis.MONOMIAL:
            acc = Fraction(0)
            for c in reversed(self.coefficients):
                acc = acc * x + c
            return acc
        acc = Fraction(0)
        for k, c in enumerate(self.coefficients):
            acc += c * falling_factorial(x, k, 1)
        return acc


def falling_factorial(x: RationalLike, n: int, lam: RationalLike = 0) -> Fraction:
    """(x)_{n,lam} = x (x - lam) ... (x - (n-1) lam); lam=1 is the ordinary
    falling factorial and lam=0 gives x^n."""
    if n < 0:
        raise ValueError(f"falling_factorial requires n >= 0, got {n}")
    x = Fraction(x)
    lam = Fraction(lam)
    acc = Fraction(1)
    for i in range(n):
        acc *= x - i * lam
    return acc


def degenerate_falling_coeffs(n: int, lam: RationalLike) -> Polynomial:
    """Monomial coefficients of the degenerate falling factorial of order n.

    The coefficient of x^k is s1(n, k) * lam^(n-k).
    """
    if n < 0:
        raise ValueError(f"degenerate_falling_coeffs requires n >= 0, got {n}")
    lam = Fraction(lam)
    coeffs = [Fraction(1)]
    for i in range(n):
        shift = i * lam
        # multiply by (x - i*lam)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= c * shift
        coeffs = nxt
    return Polynomial.make(Basis.MONOMIAL, coeffs)


def convert_basis(p: Polynomial, target: Basis) -> Polynomial:
    """Express the same polynomial in the target basis.

    Monomial -> falling uses the second-kind triangle; falling -> monomial uses
    the signed first-kind triangle. Exact inverse operations.
    """
    if p.basis is target:
        return p
    tri = stirling2 if target is Basis.FALLING_FACTORIAL else stirling1_signed
    out = [Fraction(0)] * len(p.coefficients)
    for n, c in enumerate(p.coefficients):
        if c == 0:
            continue
        for k in range(n + 1):
            out[k] += c * tri(n, k)
    return Polynomial.make(target, out)


def shift_argument(p: Polynomial, r: int) -> Polynomial:
    """q(x) = p(x + r) for a monomial-basis polynomial, by binomial expansion."""
    if p.basis is not Basis.MONOMIAL:
        raise ValueError("shift_argument requires a monomial-basis polynomial")
    if r < 0:
        raise ValueError(f"shift_argument requires r >= 0, got {r}")
    if r == 0:
        return p
    out = [Fraction(0)] * len(p.coefficients)
    for n, c in enumerate(p.coefficients):
        if c == 0:
            continue
        # (x + r)^n = sum_k C(n,k) r^(n-k) x^k
        power = Fraction(1)
        for k in range(n, -1, -1):
            out[k] += c * binomial(n, k) * power
            power *= r
    return Polynomial.make(Basis.MONOMIAL, out)
