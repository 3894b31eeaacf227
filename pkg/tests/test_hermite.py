"""Hermite recurrence against an exact rational oracle."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gkquad import DEGREE_MAX, HermiteSequence, hermite_eval, normalized_sequence
from gkquad.errors import DegreeOverflowError
from gkquad.hermite import normalized_table


def exact_hermite(n: int, x: Fraction) -> Fraction:
    """Exact probabilists' Hermite value via the integer recurrence.

    Computed entirely in rational arithmetic, so this is an oracle with
    no rounding of its own: H_{k+1} = x H_k - k H_{k-1}.
    """
    prev, cur = Fraction(1), x
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, x * cur - k * prev
    return cur


def test_small_degree_values_are_exact_integers():
    assert hermite_eval(0, 3.0) == 1.0
    assert hermite_eval(1, 3.0) == 3.0
    assert hermite_eval(2, 3.0) == 8.0
    assert hermite_eval(3, 2.0) == 2.0
    assert hermite_eval(6, 2.0) == -11.0


@pytest.mark.parametrize("n", [0, 1, 2, 3, 5, 8, 13, 21, 34])
@pytest.mark.parametrize("x", [-7.5, -2.0, -0.375, 0.0, 0.5, 1.0, 4.25, 6.0])
def test_eval_matches_rational_oracle(n, x):
    got = hermite_eval(n, x)
    want = exact_hermite(n, Fraction(x))
    if want == 0:
        assert got == 0.0
    else:
        assert math.isclose(got, float(want), rel_tol=1e-12)


@given(
    n=st.integers(min_value=2, max_value=40),
    x=st.floats(min_value=-9.0, max_value=9.0, allow_nan=False),
)
def test_normalized_recurrence_residual(n, x):
    """hhat_{n} satisfies sqrt(n) hhat_n = x hhat_{n-1} - sqrt(n-1) hhat_{n-2}."""
    seq = normalized_sequence(x, n).values
    lhs = math.sqrt(n) * seq[n]
    rhs = x * seq[n - 1] - math.sqrt(n - 1) * seq[n - 2]
    scale = max(abs(lhs), abs(rhs), 1.0)
    assert abs(lhs - rhs) <= 1e-12 * scale


@pytest.mark.parametrize("x", [-3.0, -1.25, 0.0, 0.75, 2.5])
def test_normalized_is_raw_over_root_factorial(x):
    seq = normalized_sequence(x, 12).values
    for n in range(13):
        want = float(exact_hermite(n, Fraction(x))) / math.sqrt(math.factorial(n))
        assert math.isclose(seq[n], want, rel_tol=1e-11, abs_tol=1e-13)


def test_normalized_values_respect_growth_envelope():
    xs = np.linspace(-15.0, 15.0, 301)
    table = normalized_table(xs, 60)
    bound = 1.087 * np.exp(xs**2 / 4.0)
    assert np.all(np.abs(table) <= bound[:, None] * (1.0 + 1e-12))


def test_table_rows_match_sequences():
    xs = np.array([-2.0, 0.3, 1.7])
    table = normalized_table(xs, 25)
    for i, x in enumerate(xs):
        np.testing.assert_array_equal(table[i], normalized_sequence(float(x), 25).values)


def test_sequence_container_is_frozen_and_read_only():
    seq = normalized_sequence(1.5, 6)
    assert isinstance(seq, HermiteSequence)
    assert seq.degree_max == 6
    assert seq.point == 1.5
    assert seq.values.shape == (7,)
    with pytest.raises(Exception):
        seq.values[0] = 99.0
    with pytest.raises(Exception):
        seq.degree_max = 3


def test_degree_guard():
    normalized_sequence(0.0, DEGREE_MAX)
    with pytest.raises(DegreeOverflowError):
        normalized_sequence(0.0, DEGREE_MAX + 1)
    with pytest.raises(DegreeOverflowError):
        hermite_eval(DEGREE_MAX + 1, 0.0)


def test_degree_guard_is_a_value_error():
    with pytest.raises(ValueError):
        hermite_eval(-1, 0.0)


def test_non_finite_input_propagates():
    assert math.isnan(hermite_eval(3, float("nan")))
    assert math.isnan(normalized_sequence(float("nan"), 5).values[3])
