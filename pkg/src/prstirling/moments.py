"""Random variables as exact moment sequences, and moments of their iid sums.

Every downstream formula consumes only raw moments E[S_j^m], so a random
variable is represented purely by its moment sequence. Presets keep all
moments rational; a custom oracle accepts any raw moment sequence, in which
case results are formal moment identities (no positive-definiteness check).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .kernel import binomial, factorial, stirling1_signed, stirling2

RationalLike = Union[Fraction, int]


class DistributionError(ValueError):
    """Invalid distribution configuration (bad parameters, empty support)."""


class MomentOracle:
    """A random variable presented as the exact sequence m -> E[Y^m].

    Instances compare and hash by (kind, parameters); the moment caches are
    derived data. Caches are append-only, so concurrent readers are safe.
    """

    def __init__(self, kind: str, params: tuple[Fraction, ...], *, formal: bool = False):
        self.kind = kind
        self.params = params
        self.formal = formal
        self._moments: list[Fraction] = [Fraction(1)]
        # _sum_rows[j][m] = E[S_j^m]; row 0 is the constant 0 variable.
        self._sum_rows: list[list[Fraction]] = [[Fraction(1)]]
        self._dfm_cache: dict[tuple[int, int, Fraction], Fraction] = {}

    # ---- constructors -------------------------------------------------

    @staticmethod
    def point(c: RationalLike) -> "MomentOracle":
        """Degenerate distribution at c."""
        return MomentOracle("point", (Fraction(c),))

    @staticmethod
    def bernoulli(p: RationalLike) -> "MomentOracle":
        p = Fraction(p)
        if not 0 <= p <= 1:
            raise DistributionError(f"bernoulli parameter must lie in [0, 1], got {p}")
        return MomentOracle("bernoulli", (p,))

    @staticmethod
    def binomial_dist(n: int, p: RationalLike) -> "MomentOracle":
        p = Fraction(p)
        if n < 0:
            raise DistributionError(f"binomial count must be >= 0, got {n}")
        if not 0 <= p <= 1:
            raise DistributionError(f"binomial parameter must lie in [0, 1], got {p}")
        return MomentOracle("binomial", (Fraction(n), p))

    @staticmethod
    def uniform_discrete(support: Sequence[RationalLike]) -> "MomentOracle":
        if not support:
            raise DistributionError("discrete uniform requires a nonempty support")
        return MomentOracle("uniform_discrete", tuple(Fraction(v) for v in support))

    @staticmethod
    def uniform_continuous(a: RationalLike, b: RationalLike) -> "MomentOracle":
        a, b = Fraction(a), Fraction(b)
        if a >= b:
            raise DistributionError(f"continuous uniform requires a < b, got [{a}, {b}]")
        return MomentOracle("uniform_continuous", (a, b))

    @staticmethod
    def poisson(mu: RationalLike) -> "MomentOracle":
        mu = Fraction(mu)
        if mu < 0:
            raise DistributionError(f"poisson mean must be >= 0, got {mu}")
        return MomentOracle("poisson", (mu,))

    @staticmethod
    def geometric(p: RationalLike) -> "MomentOracle":
        """Geometric on {1, 2, ...} with success probability p."""
        p = Fraction(p)
        if not 0 < p <= 1:
            raise DistributionError(f"geometric parameter must lie in (0, 1], got {p}")
        return MomentOracle("geometric", (p,))

    @staticmethod
    def from_moments(moments: Sequence[RationalLike]) -> "MomentOracle":
        """Custom oracle from raw moments E[Y^0], E[Y^1], ...

        The sequence is taken at face value: identities computed from it hold
        as formal moment identities whether or not a matching random variable
        exists.
        """
        ms = tuple(Fraction(v) for v in moments)
        if not ms:
            raise DistributionError("custom moment sequence must be nonempty")
        if ms[0] != 1:
            raise DistributionError(f"moment of order 0 must equal 1, got {ms[0]}")
        return MomentOracle("moments", ms, formal=True)

    # ---- identity -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MomentOracle):
            return NotImplemented
        return (self.kind, self.params) == (other.kind, other.params)

    def __hash__(self) -> int:
        return hash((self.kind, self.params))

    def __repr__(self) -> str:
        return f"MomentOracle({self.describe()!r})"

    def describe(self) -> str:
        """Canonical expression in the distribution grammar."""
        def fmt(v: Fraction) -> str:
            return str(v)

        k, ps = self.kind, self.params
        if k == "point":
            return f"point({fmt(ps[0])})"
        if k == "bernoulli":
            return f"bernoulli({fmt(ps[0])})"
        if k == "binomial":
            return f"binomial({ps[0].numerator},{fmt(ps[1])})"
        if k == "uniform_discrete":
            return "uniform{" + ",".join(fmt(v) for v in ps) + "}"
        if k == "uniform_continuous":
            return f"uniform[{fmt(ps[0])},{fmt(ps[1])}]"
        if k == "poisson":
            return f"poisson({fmt(ps[0])})"
        if k == "geometric":
            return f"geometric({fmt(ps[0])})"
        return "moments[" + ",".join(fmt(v) for v in ps) + "]"

    # ---- moments ------------------------------------------------------

    def moment(self, m: int) -> Fraction:
        """Exact raw moment E[Y^m]."""
        if m < 0:
            raise ValueError(f"moment order must be >= 0, got {m}")
        while len(self._moments) <= m:
            self._moments.append(self._compute_moment(len(self._moments)))
        return self._moments[m]

    def _compute_moment(self, m: int) -> Fraction:
        k, ps = self.kind, self.params
        if k == "point":
            return ps[0] ** m
        if k == "bernoulli":
            return ps[0]
        if k == "binomial":
            n, p = ps[0].numerator, ps[1]
            q = 1 - p
            return sum(
                (binomial(n, i) * p**i * q ** (n - i) * Fraction(i) ** m for i in range(n + 1)),
                Fraction(0),
            )
        if k == "uniform_discrete":
            return sum((v**m for v in ps), Fraction(0)) / len(ps)
        if k == "uniform_continuous":
            a, b = ps
            return (b ** (m + 1) - a ** (m + 1)) / ((m + 1) * (b - a))
        if k == "poisson":
            mu = ps[0]
            return sum((stirling2(m, j) * mu**j for j in range(m + 1)), Fraction(0))
        if k == "geometric":
            # E[(X)_j] = j! (1-p)^(j-1) / p^j for j >= 1, converted through
            # the second-kind triangle to raw moments.
            p = ps[0]
            return sum(
                (stirling2(m, j) * factorial(j) * (1 - p) ** (j - 1) / p**j for j in range(1, m + 1)),
                Fraction(0),
            )
        # custom sequence
        if m >= len(ps):
            raise DistributionError(
                f"custom oracle provides moments up to order {len(ps) - 1}, requested {m}"
            )
        return ps[m]

    def sum_moment(self, j: int, m: int) -> Fraction:
        """Exact E[S_j^m] for S_j the sum of j independent copies of Y.

        Built row by row with the binomial convolution
        E[S_j^m] = sum_i C(m, i) E[S_{j-1}^i] E[Y^(m-i)].
        """
        if j < 0 or m < 0:
            raise ValueError(f"sum_moment requires j, m >= 0, got ({j}, {m})")
        # row 0: S_0 = 0 almost surely
        while len(self._sum_rows[0]) <= m:
            self._sum_rows[0].append(Fraction(0))
        for row_j in range(1, j + 1):
            if row_j >= len(self._sum_rows):
                self._sum_rows.append([Fraction(1)])
            row = self._sum_rows[row_j]
            prev = self._sum_rows[row_j - 1]
            while len(row) <= m:
                mm = len(row)
                if len(prev) <= mm:
                    # ensure the previous row covers order mm
                    self.sum_moment(row_j - 1, mm)
                val = sum(
                    (binomial(mm, i) * prev[i] * self.moment(mm - i) for i in range(mm + 1)),
                    Fraction(0),
                )
                row.append(val)
        return self._sum_rows[j][m]

    def degenerate_factorial_moment(self, j: int, n: int, lam: RationalLike) -> Fraction:
        """Exact E[(S_j)_{n,lam}] via the first-kind expansion of the
        degenerate falling factorial: sum_k s1(n,k) lam^(n-k) E[S_j^k]."""
        if n < 0:
            raise ValueError(f"order must be >= 0, got {n}")
        lam = Fraction(lam)
        key = (j, n, lam)
        cached = self._dfm_cache.get(key)
        if cached is not None:
            return cached
        total = Fraction(0)
        for k in range(n + 1):
            s1 = stirling1_signed(n, k)
            if s1 == 0:
                continue
            total += s1 * lam ** (n - k) * self.sum_moment(j, k)
        self._dfm_cache[key] = total
        return total
