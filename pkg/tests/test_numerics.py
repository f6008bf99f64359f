"""Tests for backend classification, exact arithmetic and adaptive summation."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from f3sum import (
    BackendMismatchError,
    EvaluationResult,
    FLOAT64,
    InexactPowerError,
    NotConvergedError,
    RATIONAL,
    TruncationPolicy,
    adaptive_sum,
    classify_backend,
    coerce_number,
    exact_div,
    is_integer_valued,
    is_nonpositive_integer,
    number_pow,
    pochhammer,
    pochhammer_product,
)


class TestClassifyBackend:
    def test_ints_alone_are_exact(self):
        assert classify_backend([5, -3, 0]) == RATIONAL

    def test_float(self):
        assert classify_backend([0.5, 2]) == FLOAT64

    def test_fraction(self):
        assert classify_backend([Fraction(1, 3), 7]) == RATIONAL

    def test_mix_rejected(self):
        with pytest.raises(BackendMismatchError):
            classify_backend([0.5, Fraction(1, 3)])

    def test_bool_rejected(self):
        with pytest.raises(BackendMismatchError):
            classify_backend([True])

    def test_unknown_type_rejected(self):
        with pytest.raises(BackendMismatchError):
            classify_backend(["1/2"])
        with pytest.raises(BackendMismatchError):
            classify_backend([1 + 2j])


class TestCoerceNumber:
    def test_int_passes_through(self):
        assert coerce_number(3, FLOAT64) == 3
        assert coerce_number(3, RATIONAL) == 3

    def test_fraction_to_float_allowed(self):
        assert coerce_number(Fraction(1, 2), FLOAT64) == 0.5

    def test_float_to_rational_refused(self):
        with pytest.raises(BackendMismatchError, match="p/q"):
            coerce_number(0.5, RATIONAL)

    def test_matching_backend(self):
        assert coerce_number(0.25, FLOAT64) == 0.25
        assert coerce_number(Fraction(2, 7), RATIONAL) == Fraction(2, 7)


class TestIntegerPredicates:
    @pytest.mark.parametrize("v", [0, -1, -7, Fraction(-4, 1), -3.0, 0.0])
    def test_nonpositive_integers(self, v):
        assert is_nonpositive_integer(v)

    @pytest.mark.parametrize("v", [1, 0.5, Fraction(-1, 2), -2.5, 2])
    def test_not_nonpositive_integers(self, v):
        assert not is_nonpositive_integer(v)

    def test_integer_valued(self):
        assert is_integer_valued(4)
        assert is_integer_valued(4.0)
        assert is_integer_valued(Fraction(8, 2))
        assert not is_integer_valued(4.5)
        assert not is_integer_valued(Fraction(1, 3))


class TestExactDiv:
    def test_int_over_int_is_exact(self):
        q = exact_div(1, 3)
        assert isinstance(q, Fraction)
        assert q == Fraction(1, 3)

    def test_float_stays_float(self):
        assert exact_div(1.0, 3) == pytest.approx(1 / 3)
        assert isinstance(exact_div(1, 3.0), float)

    def test_fraction_over_int(self):
        assert exact_div(Fraction(1, 2), 4) == Fraction(1, 8)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            exact_div(1, 0)


class TestNumberPow:
    def test_int_base_int_exp(self):
        assert number_pow(2, 10) == 1024
        assert number_pow(2, -2) == Fraction(1, 4)

    def test_fraction_base_int_exp(self):
        assert number_pow(Fraction(2, 3), 3) == Fraction(8, 27)
        assert number_pow(Fraction(2, 3), -1) == Fraction(3, 2)

    def test_float_base(self):
        assert number_pow(1.5, 2) == 2.25
        assert number_pow(4.0, 0.5) == 2.0

    def test_negative_float_base_fractional_exp(self):
        with pytest.raises(ValueError):
            number_pow(-2.0, 0.5)

    def test_rational_base_fractional_exp(self):
        with pytest.raises(InexactPowerError):
            number_pow(Fraction(1, 2), 0.5)

    def test_zero_to_negative(self):
        with pytest.raises(ZeroDivisionError):
            number_pow(0, -1)


class TestPochhammer:
    def test_known_values(self):
        assert pochhammer(3, 4) == 360
        assert pochhammer(0.5, 2) == 0.75
        assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)

    def test_empty_product(self):
        assert pochhammer(7, 0) == 1
        assert pochhammer(0.0, 0) == 1

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            pochhammer(1, -1)
        with pytest.raises(ValueError):
            pochhammer(1, 1.5)

    def test_terminating(self):
        assert pochhammer(-3, 4) == 0
        assert pochhammer(-3, 3) == -6

    @given(
        x=st.fractions(min_value=-10, max_value=10, max_denominator=50),
        k=st.integers(min_value=0, max_value=12),
    )
    def test_recurrence(self, x, k):
        assert pochhammer(x, k + 1) == pochhammer(x, k) * (x + k)

    def test_product(self):
        assert pochhammer_product([2, 3], 2) == pochhammer(2, 2) * pochhammer(3, 2)
        assert pochhammer_product([], 5) == 1


class TestTruncationPolicy:
    def test_defaults(self):
        p = TruncationPolicy()
        assert p.tol == 1e-12
        assert p.max_total_degree == 28
        assert p.stall_window == 3

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"tol": 0.0},
            {"tol": -1e-9},
            {"max_total_degree": 0},
            {"max_total_degree": -5},
            {"stall_window": 0},
        ],
    )
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(ValueError):
            TruncationPolicy(**kwargs)

    def test_frozen(self):
        p = TruncationPolicy()
        with pytest.raises(AttributeError):
            p.tol = 1e-6


class TestEvaluationResult:
    def test_terminated_implies_converged(self):
        with pytest.raises(ValueError):
            EvaluationResult(
                value=1.0,
                shells_used=2,
                last_shell_magnitude=0.0,
                converged=False,
                terminated_exactly=True,
            )

    def test_plain_construction(self):
        r = EvaluationResult(
            value=Fraction(1, 4),
            shells_used=3,
            last_shell_magnitude=0.25,
            converged=True,
            terminated_exactly=True,
        )
        assert r.value == Fraction(1, 4)


class TestAdaptiveSum:
    def test_geometric_needs_wide_cap(self):
        # ratio 0.5 needs roughly 41 terms for 1e-12 relative accuracy
        policy = TruncationPolicy(tol=1e-12, max_total_degree=80, stall_window=3)
        res = adaptive_sum(lambda k: 0.5**k, policy)
        assert res.converged
        assert not res.terminated_exactly
        assert res.value == pytest.approx(2.0, rel=1e-11)

    def test_geometric_fails_closed_at_default_cap(self):
        res = adaptive_sum(lambda k: 0.5**k, TruncationPolicy())
        assert not res.converged

    def test_fast_series_at_default_policy(self):
        # sum_k (2)_k / k! * 0.2^k = (1 - 0.2)^(-2)
        res = adaptive_sum(
            lambda k: pochhammer(2, k) * 0.2**k / pochhammer(1, k), TruncationPolicy()
        )
        assert res.converged
        assert res.value == pytest.approx(1.5625, rel=1e-12)

    def test_exact_bound_sums_fully(self):
        res = adaptive_sum(
            lambda k: Fraction(1, 2) ** k, TruncationPolicy(), exact_bound=4
        )
        assert res.terminated_exactly
        assert res.converged
        assert res.value == Fraction(31, 16)
        assert res.shells_used == 5

    def test_exact_bound_above_cap_falls_back(self):
        policy = TruncationPolicy(tol=1e-12, max_total_degree=10, stall_window=3)
        res = adaptive_sum(lambda k: 0.0 if k else 1.0, policy, exact_bound=50)
        assert res.converged
        assert not res.terminated_exactly

    def test_strict_raises(self):
        with pytest.raises(NotConvergedError):
            adaptive_sum(lambda k: 1.0, TruncationPolicy(), strict=True)

    def test_nonstrict_reports_divergence(self):
        res = adaptive_sum(lambda k: float(k + 1), TruncationPolicy())
        assert not res.converged
