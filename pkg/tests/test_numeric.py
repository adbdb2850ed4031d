import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xicheck.errors import BudgetError, CapacityError, ContractError, DomainError
from xicheck.numeric import (
    BERNOULLI_CAPACITY,
    DEFAULT_CONTEXT,
    BernoulliTable,
    PrecisionContext,
    as_complex,
    bernoulli,
    bernoulli_fraction,
    euler_maclaurin_tail,
    integrate_finite,
    integrate_semi_infinite,
    truncation_point,
)


class TestPrecisionContext:
    def test_defaults(self):
        ctx = PrecisionContext()
        assert ctx.target_rel_tol == 1e-10
        assert ctx.identity_tol == 1e-8
        assert ctx.em_order == 8

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"target_rel_tol": 1e-6, "identity_tol": 1e-8},
            {"identity_tol": 1.5},
            {"em_order": 3},
            {"em_order": 0},
            {"max_quad_evals": 999},
            {"tmax": -1.0},
            {"digits": -2},
        ],
    )
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(ContractError):
            PrecisionContext(**kwargs)


def test_as_complex_rejects_nonfinite():
    with pytest.raises(DomainError):
        as_complex(complex(math.nan, 0))
    with pytest.raises(DomainError):
        as_complex(math.inf)
    assert as_complex(2) == 2 + 0j


class TestBernoulli:
    def test_small_values(self):
        assert bernoulli(0) == 1.0
        assert bernoulli_fraction(2) == Fraction(1, 6)
        assert bernoulli_fraction(4) == Fraction(-1, 30)
        assert bernoulli_fraction(12) == Fraction(-691, 2730)

    def test_odd_convention(self):
        assert bernoulli(1) == -0.5
        assert all(bernoulli(n) == 0.0 for n in range(3, 40, 2))

    def test_capacity(self):
        assert BERNOULLI_CAPACITY >= 60
        with pytest.raises(CapacityError):
            bernoulli(BERNOULLI_CAPACITY + 2)
        with pytest.raises(DomainError):
            bernoulli(-1)

    def test_table(self):
        table = BernoulliTable.build(30)
        assert table.values[:3] == (Fraction(1), Fraction(1, 6), Fraction(-1, 30))
        assert len(table.values) == 31

    @given(st.integers(min_value=1, max_value=BERNOULLI_CAPACITY - 1))
    @settings(max_examples=40, deadline=None)
    def test_recurrence_exact(self, n):
        assert BernoulliTable.build(1).recurrence_residual(n) == 0

    @given(st.integers(min_value=1, max_value=60))
    @settings(max_examples=30, deadline=None)
    def test_recurrence_float(self, n):
        terms = [math.comb(n + 1, k) * bernoulli(k) for k in range(n + 1)]
        scale = max(abs(t) for t in terms)
        assert abs(math.fsum(terms)) <= 1e-14 * scale


class TestEulerMaclaurin:
    def test_inverse_fourth_power(self):
        # oracle: mpmath zeta(4, 10)
        def derivs(k, x):
            # d^k/dx^k x^{-4} = (-1)^k (k+3)!/3! x^{-4-k}
            return (-1) ** k * math.factorial(k + 3) / 6 * x ** (-4 - k)

        tail = euler_maclaurin_tail(lambda k: k ** -4.0, derivs, 10, integral=10 ** -3 / 3)
        assert tail.value.real == pytest.approx(3.8665021738164473e-4, rel=1e-12)
        assert tail.err_estimate < 1e-14

    def test_geometric(self):
        tail = euler_maclaurin_tail(
            lambda k: math.exp(-k),
            lambda k, x: (-1) ** k * math.exp(-x),
            5,
            integral=math.exp(-5),
        )
        assert tail.value.real == pytest.approx(math.exp(-5) / (1 - math.exp(-1)), rel=1e-10)

    def test_divergent_rejected(self):
        # from N = 1 the Bernoulli corrections stall near 1e-2 and are refused
        with pytest.raises(ContractError):
            euler_maclaurin_tail(
                lambda k: k ** -2.0,
                lambda k, x: (-1) ** k * math.factorial(k + 1) * x ** (-2 - k),
                1,
                integral=1.0,
            )

    def test_inverse_square_shifted(self):
        head = math.fsum(k ** -2.0 for k in range(1, 10))
        tail = euler_maclaurin_tail(
            lambda k: k ** -2.0,
            lambda k, x: (-1) ** k * math.factorial(k + 1) * x ** (-2 - k),
            10,
            integral=0.1,
        )
        assert head + tail.value.real == pytest.approx(math.pi ** 2 / 6, rel=1e-13)


class TestQuadrature:
    def test_constant(self):
        assert integrate_finite(lambda x: 1.0, 0.0, 1.0).value == pytest.approx(1.0, abs=1e-15)

    def test_cos(self):
        assert integrate_finite(math.cos, 0.0, math.pi / 2).value.real == pytest.approx(1.0, rel=1e-14)

    def test_bose_first_moment(self):
        # oracle: Gamma(2) zeta(2); the [40, inf) tail is below 1e-15
        res = integrate_finite(lambda x: x / math.expm1(x), 1e-300, 40.0)
        assert res.value.real == pytest.approx(math.pi ** 2 / 6, rel=1e-12)

    def test_exponential(self):
        res = integrate_semi_infinite(lambda t: math.exp(-t), 1.0)
        assert res.value.real == pytest.approx(1.0, rel=1e-12)
        assert res.truncation_point > 0

    def test_damped_cosine(self):
        res = integrate_semi_infinite(lambda t: math.exp(-t) * math.cos(t), 1.0)
        assert res.value.real == pytest.approx(0.5, rel=1e-11)

    def test_bose_cubic(self):
        res = integrate_semi_infinite(lambda t: t ** 3 / math.expm1(t) if t > 0 else 0.0, 0.9)
        assert res.value.real == pytest.approx(math.pi ** 4 / 15, rel=1e-11)

    def test_complex_integrand(self):
        res = integrate_finite(lambda t: complex(math.cos(t), math.sin(t)), 0.0, math.pi)
        assert abs(res.value - 2j) < 1e-14

    def test_budget_error_carries_estimate(self):
        ctx = PrecisionContext(max_quad_evals=1000)
        with pytest.raises(BudgetError) as info:
            integrate_finite(lambda x: math.sin(1 / x) if x else 0.0, 0.0, 1.0, ctx, rel_tol=1e-14)
        assert info.value.best_estimate is not None

    def test_nonfinite_sample(self):
        with pytest.raises(DomainError):
            integrate_finite(lambda x: math.nan, 0.0, 1.0)

    def test_bad_interval(self):
        with pytest.raises(ContractError):
            integrate_finite(math.sin, 1.0, 0.0)

    def test_bad_decay(self):
        with pytest.raises(ContractError):
            integrate_semi_infinite(math.exp, 0.0)

    def test_tmax_and_stretch(self):
        ctx = PrecisionContext(tmax=30.0)
        res = integrate_semi_infinite(lambda t: math.exp(-t), 1.0, ctx)
        assert res.truncation_point == 30.0
        res = integrate_semi_infinite(lambda t: math.exp(-t), 1.0, ctx, stretch=1.25)
        assert res.truncation_point == pytest.approx(37.5)

    def test_evals_within_budget(self):
        res = integrate_semi_infinite(lambda t: math.exp(-t) * math.cos(5 * t), 1.0)
        assert 0 < res.evals <= DEFAULT_CONTEXT.max_quad_evals
        assert res.err_estimate >= 0


coeffs = st.floats(min_value=-3, max_value=3, allow_nan=False)
freqs = st.floats(min_value=0.1, max_value=5)


@given(coeffs, coeffs, freqs, freqs)
@settings(max_examples=25, deadline=None)
def test_quadrature_linearity(a, b, w1, w2):
    def f(x):
        return math.sin(w1 * x) * math.exp(-x)

    def g(x):
        return math.cos(w2 * x) / (1 + x * x)

    rf = integrate_finite(f, 0.0, 3.0)
    rg = integrate_finite(g, 0.0, 3.0)
    rh = integrate_finite(lambda x: a * f(x) + b * g(x), 0.0, 3.0)
    bound = 2 * (rh.err_estimate + abs(a) * rf.err_estimate + abs(b) * rg.err_estimate) + 1e-14
    assert abs(rh.value - (a * rf.value + b * rg.value)) <= bound


@given(st.floats(min_value=0.05, max_value=0.95))
@settings(max_examples=25, deadline=None)
def test_interval_additivity(frac):
    def f(x):
        return math.exp(-x) * math.cos(3 * x) + x ** 0.5

    a, c = 0.0, 4.0
    b = a + frac * (c - a)
    whole = integrate_finite(f, a, c)
    left = integrate_finite(f, a, b)
    right = integrate_finite(f, b, c)
    assert abs(whole.value - left.value - right.value) <= whole.err_estimate + left.err_estimate + right.err_estimate + 1e-13


@given(st.floats(min_value=0.05, max_value=5), st.floats(min_value=0.1, max_value=3))
@settings(max_examples=40, deadline=None)
def test_truncation_monotone_in_decay(rate, scale):
    def f(t):
        return scale * math.exp(-rate * t) * (1 + t * t)

    t1 = truncation_point(f, rate, 1e-11)
    t2 = truncation_point(f, 2 * rate, 1e-11)
    assert t2 <= t1


def test_fast_decay_mass_near_start():
    # all the mass sits within ~5/150 of the origin; a uniform width-4 first
    # panel used to converge to the wrong value here
    res = integrate_semi_infinite(lambda x: x ** 5 * math.exp(-150 * x), 135.0)
    assert res.value.real == pytest.approx(120 / 150 ** 6, rel=1e-11)


def test_breakpoints_validated():
    with pytest.raises(ContractError):
        integrate_finite(math.sin, 0.0, 1.0, breakpoints=[0.0, 0.7, 0.5, 1.0])
    res = integrate_finite(math.sin, 0.0, math.pi, breakpoints=[0.0, 0.1, 1.0, math.pi])
    assert res.value.real == pytest.approx(2.0, rel=1e-14)
