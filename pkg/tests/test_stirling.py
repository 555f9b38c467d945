from fractions import Fraction

import pytest

from prstirling.kernel import Basis, convert_basis, degenerate_falling_coeffs, shift_argument
from prstirling.moments import MomentOracle
from prstirling.stirling import (
    StirlingContext,
    prob_r_stirling2,
    prob_r_stirling2_via_conv,
    prob_r_stirling2_via_shift,
    prob_stirling2,
    stirling_triangle,
)

from oracles import partition_count

F = Fraction

PRESETS = {
    "point(1)": MomentOracle.point(1),
    "bernoulli(1/2)": MomentOracle.bernoulli(F(1, 2)),
    "uniform{0,1,2}": MomentOracle.uniform_discrete([0, 1, 2]),
    "poisson(1)": MomentOracle.poisson(1),
}
LAMBDAS = [F(-1, 2), F(0), F(1, 3), F(1), F(2)]


def degenerate_r_row(n, lam, r):
    """Oracle: falling-factorial coefficients of the r-shifted degenerate
    falling factorial, via kernel expansion only."""
    p = shift_argument(degenerate_falling_coeffs(n, lam), r)
    coeffs = list(convert_basis(p, Basis.FALLING_FACTORIAL).coefficients)
    return coeffs + [F(0)] * (n + 1 - len(coeffs))


def test_base_cases():
    y = PRESETS["bernoulli(1/2)"]
    assert prob_stirling2(y, F(1, 3), 0, 0) == 1
    assert prob_stirling2(y, F(1, 3), 2, 5) == 0
    ctx = StirlingContext(y, F(1, 3), 2)
    assert prob_r_stirling2(ctx, 0, 0) == 1
    assert prob_r_stirling2(ctx, 1, 4) == 0


def test_point_examples():
    o = MomentOracle.point(1)
    assert prob_stirling2(o, F(1, 3), 2, 1) == F(2, 3)  # 1 - lam
    ctx = StirlingContext(o, F(1, 3), 1)
    assert prob_r_stirling2(ctx, 2, 1) == F(8, 3)
    assert prob_r_stirling2_via_conv(ctx, 2, 1) == F(8, 3)
    assert prob_r_stirling2_via_shift(ctx, 2, 1) == F(8, 3)


def test_bernoulli_examples():
    y = PRESETS["bernoulli(1/2)"]
    assert prob_stirling2(y, F(1, 3), 2, 1) == F(1, 3)
    ctx = StirlingContext(y, F(7, 5), 1)
    assert prob_r_stirling2(ctx, 1, 0) == F(1, 2)  # E[Y]


def test_r_zero_reduces_to_plain():
    for name, y in PRESETS.items():
        for lam in (F(0), F(1, 3)):
            ctx = StirlingContext(y, lam, 0)
            for n in range(6):
                for k in range(n + 1):
                    assert prob_r_stirling2(ctx, n, k) == prob_stirling2(y, lam, n, k)
                    assert prob_r_stirling2_via_conv(ctx, n, k) == prob_stirling2(y, lam, n, k)
                    assert prob_r_stirling2_via_shift(ctx, n, k) == prob_stirling2(y, lam, n, k)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_three_way_agreement_small_grid(name):
    y = PRESETS[name]
    for lam in LAMBDAS:
        for r in range(3):
            ctx = StirlingContext(y, lam, r)
            for n in range(6):
                for k in range(n + 1):
                    a = prob_r_stirling2(ctx, n, k)
                    assert prob_r_stirling2_via_conv(ctx, n, k) == a
                    assert prob_r_stirling2_via_shift(ctx, n, k) == a


def test_reduction_to_degenerate_r_stirling():
    o = MomentOracle.point(1)
    for lam in LAMBDAS:
        for r in range(4):
            ctx = StirlingContext(o, lam, r)
            for n in range(8):
                expected = degenerate_r_row(n, lam, r)
                got = [prob_r_stirling2(ctx, n, k) for k in range(n + 1)]
                assert got == expected, (lam, r, n)


def test_classical_limit_partition_counts():
    ctx = StirlingContext(MomentOracle.point(1), F(0), 0)
    for n in range(8):
        for k in range(n + 1):
            assert prob_r_stirling2(ctx, n, k) == partition_count(n, k)


def test_diagonal_is_mean_power():
    for name, y in PRESETS.items():
        mean = y.moment(1)
        for lam in (F(-1, 2), F(1, 3), F(2)):
            for r in range(3):
                ctx = StirlingContext(y, lam, r)
                for n in range(11):
                    assert prob_r_stirling2(ctx, n, n) == mean**n, (name, lam, r, n)


def test_triangle_shape():
    ctx = StirlingContext(PRESETS["poisson(1)"], F(1, 3), 2)
    rows = stirling_triangle(ctx, 5)
    assert len(rows) == 6
    for n, row in enumerate(rows):
        assert len(row) == n + 1
        assert row == [prob_r_stirling2(ctx, n, k) for k in range(n + 1)]


def test_context_validation():
    with pytest.raises(ValueError):
        StirlingContext(MomentOracle.point(1), F(1, 3), -1)
