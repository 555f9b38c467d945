"""Probabilistic degenerate r-Bell polynomials.

Exact coefficients and evaluation come straight from the Stirling triangle;
the convolution form is an independent exact route. The truncated
Dobinski-style series is the only floating-point computation in the package
and always reports its own convergence diagnostics.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .kernel import binomial
from .stirling import StirlingContext, prob_r_stirling2, prob_stirling2

RationalLike = Union[Fraction, int]

DEFAULT_MAX_TERMS = 10000
MAX_TERMS_ENV = "PRSTIRLING_MAX_TERMS"


@dataclass(frozen=True)
class BellPolynomial:
    """Coefficient vector of the degree-n Bell polynomial for one context.

    coefficients[k] is the (n+r, k+r) Stirling entry; the constant term is the
    degenerate factorial moment E[(S_r)_{n,lam}].
    """

    context: StirlingContext
    n: int
    coefficients: tuple[Fraction, ...]

    def __call__(self, x: RationalLike) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def bell_coeffs(ctx: StirlingContext, n: int) -> BellPolynomial:
    """Exact coefficient vector (length n + 1)."""
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    return BellPolynomial(ctx, n, tuple(prob_r_stirling2(ctx, n, k) for k in range(n + 1)))


def bell_eval(ctx: StirlingContext, n: int, x: RationalLike) -> Fraction:
    """Exact value at rational x, by Horner evaluation of bell_coeffs."""
    return bell_coeffs(ctx, n)(x)


def bell_via_convolution(ctx: StirlingContext, n: int, x: RationalLike) -> Fraction:
    """Same value through the binomial convolution with the r = 0 polynomials:

    sum_{m=0}^{n} C(n,m) E[(S_r)_{m,lam}] Bel^Y_{n-m}(x)
    """
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    x = Fraction(x)
    total = Fraction(0)
    for m in range(n + 1):
        fm = ctx.oracle.degenerate_factorial_moment(ctx.r, m, ctx.lam)
        if fm == 0:
            continue
        inner = sum(
            (prob_stirling2(ctx.oracle, ctx.lam, n - m, k) * x**k for k in range(n - m + 1)),
            Fraction(0),
        )
        total += binomial(n, m) * fm * inner
    return total


@dataclass(frozen=True)
class DobinskiResult:
    """Outcome of the truncated series evaluation."""

    value: float
    terms_used: int
    last_term: float
    tolerance: float
    converged: bool


def bell_dobinski(
    ctx: StirlingContext,
    n: int,
    x: float,
    tolerance: float,
    max_terms: Optional[int] = None,
) -> DobinskiResult:
    """Float approximation via the series e^(-x) sum_k x^k E[(S_{k+r})_{n,lam}] / k!.

    Stopping rule: truncate at the smallest K > n * (1 + ceil(|lam|)) + r +
    ceil(x) such that the last three consecutive terms each have magnitude
    below tolerance * e^(-x) / 8. The factorial moments grow only polynomially
    in k for every supported preset, so terms decay super-geometrically once k
    dominates x; the three-term window guards against alternating near-zeros
    for negative lam, and the lam factor in the minimum index skips the
    leading window where the degenerate product still has roots (at
    0, lam, ..., (n-1) lam) and terms are spuriously tiny. Accumulation is
    compensated (Kahan); each exact moment is converted to float
    independently.
    """
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    if x < 0:
        raise ValueError(f"series evaluation requires x >= 0, got {x}")
    if tolerance <= 0:
        raise ValueError(f"tolerance must be > 0, got {tolerance}")
    if max_terms is None:
        max_terms = int(os.environ.get(MAX_TERMS_ENV, DEFAULT_MAX_TERMS))

    scale = math.exp(-x)
    threshold = tolerance * scale / 8.0
    min_k = n * (1 + math.ceil(abs(ctx.lam))) + ctx.r + math.ceil(x)

    total = 0.0
    comp = 0.0  # Kahan compensation
    weight = 1.0  # x^k / k!
    small_streak = 0
    term = 0.0
    k = 0
    while k < max_terms:
        term = weight * float(ctx.oracle.degenerate_factorial_moment(k + ctx.r, n, ctx.lam))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) < threshold:
            small_streak += 1
        else:
            small_streak = 0
        if k > min_k and small_streak >= 3:
            return DobinskiResult(total * scale, k + 1, term * scale, tolerance, True)
        k += 1
        weight *= x / k
    return DobinskiResult(math.nan, max_terms, term * scale, tolerance, False)
