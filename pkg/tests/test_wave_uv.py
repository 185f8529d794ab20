import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from fracwave.core import cpow_branch
from fracwave.differint import GridFunction
from fracwave.fields import Axis
from fracwave.wave_uv import (
    SIN_COS,
    ICPair,
    UniquenessWarning,
    binomial_coeff,
    binomial_operator_check,
    check_admissible,
    eta_closed_form,
    eta_ode_oracle,
    fundamental_solution,
    general_solution,
    ivp_solution,
    sincos_field,
)


@pytest.fixture(scope="module")
def sincos_ic():
    return ICPair.from_functions(np.sin, np.cos, -2 * math.pi - 0.5, 4 * math.pi + 0.5, 1e-3)


# -- fundamental and general solutions -------------------------------------


def test_fundamental_examples():
    assert fundamental_solution(1, 1, 2, 1) == pytest.approx(0.5)
    assert fundamental_solution(0.5, 0.5, 2, 1) == pytest.approx(
        3**-0.5 / (2 * math.pi), rel=1e-14
    )
    assert fundamental_solution(0.5, 0.5, 2, 1) == pytest.approx(0.09189, abs=1e-5)
    for a, b in ((0.5, 0.5), (1, 1), (0.3, 1.7)):
        assert fundamental_solution(a, b, 1, 2) == 0.0


def test_fundamental_cone_edges():
    assert math.isnan(fundamental_solution(0.5, 1, 1, 1))
    assert math.isnan(fundamental_solution(1, 0.5, 1, -1))
    assert fundamental_solution(1, 1, 1, 1) == pytest.approx(0.5 * 0.5 * 1)  # H(0) = 1/2


def test_fundamental_integer_degenerate():
    # 1/Gamma(0) = 0 kills the kernel off its singular support
    assert fundamental_solution(0, 1, 2, 1) == 0.0


@settings(max_examples=60, deadline=None)
@given(
    st.floats(0.1, 2.0),
    st.floats(0.1, 2.0),
    st.floats(-5, 5),
    st.floats(-5, 5),
)
def test_fundamental_zero_outside_cone(a, b, x, t):
    if x + t < 0 or x - t < 0:
        assert fundamental_solution(a, b, x, t) == 0.0


def test_fundamental_limit_to_half():
    vals = [fundamental_solution(a, a, 2.0, 0.5) for a in (0.9, 0.99, 0.999)]
    gaps = [abs(v - 0.5) for v in vals]
    assert gaps[0] > gaps[1] > gaps[2] and gaps[2] < 1e-2


def test_general_solution_cases():
    phi = np.sin
    psi = np.cos
    x, t = 2.0, 0.7
    assert general_solution(1, 1, phi, psi, x, t) == pytest.approx(phi(x + t) + psi(x - t))
    assert general_solution(1, 0, phi, psi, x, t) == pytest.approx(phi(x + t))
    assert general_solution(0, 0, phi, psi, x, t) == 0


def test_general_solution_fractional_and_grid():
    phi = GridFunction.from_function(np.sin, -5, 5, 1e-3)
    psi = GridFunction.from_function(np.cos, -5, 5, 1e-3)
    x, t = 0.5, 1.5
    got = general_solution(0.5, 0.7, phi, psi, x, t)
    ref = cpow_branch(x - t, -0.5) / math.gamma(0.5) * math.sin(x + t) + (x + t) ** -0.3 / math.gamma(
        0.7
    ) * math.cos(x - t)
    assert got == pytest.approx(ref, abs=1e-6)
    with pytest.raises(ValueError):
        general_solution(0.5, 0.7, phi, psi, 4.0, 3.0)


# -- eta -------------------------------------------------------------------


def grid_data(start=-0.5, stop=10.5, step=1e-3):
    g = GridFunction.from_function(lambda x: np.sin(x) + 0.3 * x, start, stop, step)
    h = GridFunction.from_function(lambda x: np.cos(2 * x), start, stop, step)
    return g, h


def test_eta_vanishes_at_order_one():
    g, h = grid_data()
    np.testing.assert_array_equal(eta_closed_form(1, 1, g, h, np.linspace(0.1, 5, 7)), 0)


@pytest.mark.parametrize("alpha", [0.6, 0.75, 0.9])
def test_eta_sin_cos_display(alpha):
    # alpha = beta, g = sin, h = cos: eta = 2(alpha-1) x^{2 alpha-3} int_0^x z^{2-2 alpha} cos z dz
    g = GridFunction.from_function(np.sin, -0.5, 6.5, 1e-3)
    h = GridFunction.from_function(np.cos, -0.5, 6.5, 1e-3)
    for x in (0.3, 1.0, 4.2, 6.0):
        inner, _ = integrate.quad(lambda z: z ** (2 - 2 * alpha) * math.cos(z), 0, x)
        ref = 2 * (alpha - 1) * x ** (2 * alpha - 3) * inner
        assert eta_closed_form(alpha, alpha, g, h, x) == pytest.approx(ref, abs=1e-8)


def test_eta_negative_argument_real():
    g = GridFunction.from_function(np.sin, -6.5, 6.5, 1e-3)
    h = GridFunction.from_function(np.cos, -6.5, 6.5, 1e-3)
    val = eta_closed_form(0.75, 0.75, g, h, -2.0)
    # with alpha = beta only h = cos enters, so eta is even in x under y = x s
    assert np.isrealobj(val) or abs(np.imag(val)) < 1e-12
    assert np.real(val) == pytest.approx(np.real(eta_closed_form(0.75, 0.75, g, h, 2.0)), abs=1e-9)


@pytest.mark.parametrize("alpha,beta", [(0.75, 0.75), (0.9, 0.6), (0.5, 0.8)])
def test_eta_closed_form_vs_ode(alpha, beta):
    g, h = grid_data()
    eps = 4 * g.step
    xg = np.linspace(2 * eps, 10.0, 400)
    ode = eta_ode_oracle(alpha, beta, g, h, xg)
    closed = eta_closed_form(alpha, beta, g, h, xg)
    assert np.abs(closed - ode.values).max() < 1e-4


def test_eta_ode_oracle_zero_case_and_start():
    g, h = grid_data()
    xg = np.linspace(0.01, 5, 50)
    np.testing.assert_allclose(eta_ode_oracle(1, 1, g, h, xg).values, 0, atol=1e-14)
    with pytest.raises(ValueError):
        eta_ode_oracle(0.75, 0.75, g, h, np.linspace(0.0, 1, 5))


# -- initial-value problem -------------------------------------------------


def test_dalembert(sincos_ic):
    xs = np.linspace(0, 2 * math.pi, 41)
    X, T = np.meshgrid(xs, xs, indexing="ij")
    f = ivp_solution(1, 1, sincos_ic, X, T)
    ref = 0.5 * (np.sin(X + T) + np.sin(X - T))
    ref = ref + np.vectorize(lambda a, b: integrate.quad(math.cos, a, b)[0])(X - T, X + T) / 2
    assert np.abs(f - ref).max() < 1e-6


@pytest.mark.parametrize("alpha,beta", [(0.75, 0.75), (0.9, 0.6), (1.0, 0.5)])
def test_initial_displacement(sincos_ic, alpha, beta):
    x = np.linspace(0.25, 6.0, 24)
    f0 = ivp_solution(alpha, beta, sincos_ic, x, np.zeros_like(x))
    assert np.abs(f0 - np.sin(x)).max() < 1e-4


@pytest.mark.parametrize("alpha,beta", [(0.75, 0.75), (0.9, 0.6)])
def test_initial_velocity(sincos_ic, alpha, beta):
    x = np.linspace(0.25, 6.0, 24)
    d = 1e-3
    ft = (ivp_solution(alpha, beta, sincos_ic, x, d) - ivp_solution(alpha, beta, sincos_ic, x, -d)) / (
        2 * d
    )
    assert np.abs(ft - np.cos(x)).max() < 1e-2


def test_initial_velocity_offset_when_g0_nonzero():
    # f_t(x, 0) = h(x) - (alpha - beta) g(0)/x
    ic = ICPair.from_functions(np.cos, np.sin, -3, 9, 1e-3)
    alpha, beta = 0.9, 0.6
    x = np.linspace(0.5, 5, 10)
    d = 1e-3
    ft = (ivp_solution(alpha, beta, ic, x, d) - ivp_solution(alpha, beta, ic, x, -d)) / (2 * d)
    np.testing.assert_allclose(ft.real, np.sin(x) - (alpha - beta) / x, atol=1e-3)


def test_ivp_grid_and_callable_sources_agree(sincos_ic):
    x = np.linspace(0.5, 5, 7)
    t = np.linspace(0.1, 1.5, 7)
    np.testing.assert_allclose(
        ivp_solution(0.8, 0.7, sincos_ic, x, t), ivp_solution(0.8, 0.7, SIN_COS, x, t), atol=1e-6
    )


def test_ivp_cone_edge_masked(sincos_ic):
    assert np.isnan(ivp_solution(0.75, 0.75, sincos_ic, 1.0, 1.0).real)


def test_ivp_outside_initial_grid():
    ic = ICPair.from_functions(np.sin, np.cos, -1, 1, 1e-3)
    with pytest.raises(ValueError):
        ivp_solution(1, 1, ic, 0.9, 0.5)


def test_admissibility():
    with pytest.warns(UniquenessWarning):
        check_admissible(0.5, 0.5)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        check_admissible(0.75, 0.75)
    for bad in ((0, 0.5), (1.2, 0.5), (0.5, 1.5)):
        with pytest.raises(ValueError):
            check_admissible(*bad)


def test_icpair_validation():
    g = GridFunction.from_function(np.sin, 0, 1, 1e-2)
    with pytest.raises(ValueError):
        ICPair(g, GridFunction.from_function(np.cos, 0, 1, 2e-2))
    with pytest.raises(ValueError):
        ICPair.from_functions(np.sin, np.cos, 1, 2, 1e-2)


# -- figure fields ---------------------------------------------------------

AX = Axis.span(0, 4 * math.pi, 61)


def test_field_order_one_is_travelling_wave():
    field = sincos_field(1, 1, AX, AX)
    X, T = np.meshgrid(AX.values, AX.values, indexing="ij")
    assert not field.mask.any()
    np.testing.assert_allclose(field.values.real, np.sin(X + T), atol=1e-12)


def test_field_order_zero_all_masked():
    assert sincos_field(0, 0, AX, AX).mask.all()


def test_field_half_order_suppressed_below_diagonal():
    with pytest.warns(UniquenessWarning):
        field = sincos_field(0.5, 0.5, AX, AX)
    X, T = np.meshgrid(AX.values, AX.values, indexing="ij")
    below = (X < T) & ~field.mask
    live = ~field.mask
    assert np.abs(field.values.real[below]).max() < 1e-2 * np.abs(field.values.real[live]).max()
    assert field.mask[np.isclose(X, T)].all()


def test_field_trend_three_quarters_vs_half():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UniquenessWarning)
        half = sincos_field(0.5, 0.5, AX, AX)
    three = sincos_field(0.75, 0.75, AX, AX)
    X, T = np.meshgrid(AX.values, AX.values, indexing="ij")
    below = X < T
    m_half = np.abs(half.values.real[below & ~half.mask]).mean()
    m_three = np.abs(three.values.real[below & ~three.mask]).mean()
    assert m_half < m_three


# -- binomial --------------------------------------------------------------


def test_binomial_coefficients():
    assert [binomial_coeff(2, k) for k in range(5)] == [1, 2, 1, 0, 0]
    assert binomial_coeff(0.5, 1) == pytest.approx(0.5)
    assert binomial_coeff(0.5, 2) == pytest.approx(-1 / 8)
    g = math.gamma
    assert binomial_coeff(0.3, 3) == pytest.approx(g(1.3) / (g(0.3 - 2) * 6), rel=1e-13)
    with pytest.raises(ValueError):
        binomial_coeff(0.5, -1)


def test_binomial_operator_examples():
    assert binomial_operator_check(2 + 1j, 0.7, 1.0, 3).relerr < 1e-15
    assert binomial_operator_check(2, 1, 0.5, 40).relerr < 1e-6
    res = binomial_operator_check(1 + 1j, 0.3, 0.5, 60)
    assert res.target == pytest.approx(cpow_branch(1.3 + 1j, 0.5))
    assert res.relerr < 1e-6
    with pytest.raises(ValueError):
        binomial_operator_check(1, 1, 0.5, 10)
    with pytest.raises(ValueError):
        binomial_operator_check(2, 1, 0.5, 201)


@pytest.mark.parametrize("ratio", [0.2, 0.4, 0.6])
def test_binomial_monotone_convergence(ratio):
    errs = [binomial_operator_check(1.0, ratio, 0.37, K).relerr for K in range(0, 60, 10)]
    # monotone until the error reaches rounding level
    live = [e for e in errs if e > 1e-14]
    assert len(live) >= 2
    assert all(b < a for a, b in zip(live, live[1:]))


def test_general_solution_reproduces_ivp(sincos_ic):
    # phi(u) = Gamma(alpha)/2 u^(1-alpha) (g + A)(u), psi(v) = Gamma(beta)/2 v^(1-beta) (g - A)(v)
    from fracwave.wave_uv import _big_a

    alpha, beta = 0.8, 0.7
    src = sincos_ic.source

    def phi(u):
        return math.gamma(alpha) / 2 * cpow_branch(u, 1 - alpha) * (src.g(u) + _big_a(alpha, beta, src, u))

    def psi(v):
        return math.gamma(beta) / 2 * cpow_branch(v, 1 - beta) * (src.g(v) - _big_a(alpha, beta, src, v))

    x = np.array([0.7, 2.0, 3.5, 5.0])
    t = np.array([0.3, 1.1, 0.4, 2.2])
    np.testing.assert_allclose(
        general_solution(alpha, beta, phi, psi, x, t), ivp_solution(alpha, beta, sincos_ic, x, t), atol=1e-10
    )
