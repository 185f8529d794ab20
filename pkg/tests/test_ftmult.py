import math
import warnings

import numpy as np
import pytest
from scipy import integrate

from fracwave.core import cpow_branch
from fracwave.differint import GridFunction, SupportWarning
from fracwave.ftmult import (
    INV_SQRT_2PI,
    bump,
    ft_quadrature,
    laplacian_multiplier_compare,
    multiplier_check,
    write_report,
)


def bump_grid(step=1e-3, stop=20.0):
    return GridFunction.from_function(bump, 0.0, stop, step)


def unit_mass_bump():
    f = bump_grid(1e-3, 4.0)
    mass = np.trapezoid(f.values.real, dx=f.step)
    return f.with_values(f.values / mass)


def test_zero_frequency_is_mass():
    assert ft_quadrature(unit_mass_bump(), 0.0) == pytest.approx(INV_SQRT_2PI, rel=1e-12)


def test_even_function_has_real_transform():
    f = GridFunction.from_function(lambda x: bump(x, 0.0, 1.0), -2, 2, 1e-3)
    for w in (0.5, 1.7, 3.0):
        assert abs(ft_quadrature(f, w).imag) < 1e-10


def test_against_adaptive_quadrature():
    w = 2.3
    re, _ = integrate.quad(lambda t: bump(np.array([t]))[0] * math.cos(w * t), 1, 3, limit=200)
    im, _ = integrate.quad(lambda t: -bump(np.array([t]))[0] * math.sin(w * t), 1, 3, limit=200)
    ref = INV_SQRT_2PI * complex(re, im)
    assert ft_quadrature(bump_grid(1e-3, 4.0), w) == pytest.approx(ref, rel=1e-6)


def test_step_refinement():
    coarse = ft_quadrature(bump_grid(2e-3, 4.0), 1.5)
    fine = ft_quadrature(bump_grid(1e-3, 4.0), 1.5)
    assert abs(coarse - fine) / abs(fine) < 1e-6


def test_vectorised_and_linear():
    f = bump_grid(1e-3, 4.0)
    g = GridFunction.from_function(lambda x: bump(x, 2.0, 0.5), 0, 4, 1e-3)
    ws = np.array([0.5, 1.0, 2.0])
    vec = ft_quadrature(f, ws)
    np.testing.assert_allclose(vec, [ft_quadrature(f, w) for w in ws], rtol=1e-13)
    combo = f.with_values(2 * f.values - 3j * g.values)
    np.testing.assert_allclose(
        ft_quadrature(combo, ws), 2 * vec - 3j * ft_quadrature(g, ws), atol=1e-14
    )


def test_support_warning():
    f = GridFunction.from_function(np.cos, 0, 1, 1e-2)
    with pytest.warns(SupportWarning):
        ft_quadrature(f, 1.0)


def test_order_zero_exact():
    rows = multiplier_check(bump_grid(1e-3, 4.0), 0.0, [1.0, 2.0])
    for r in rows:
        assert r.lhs == r.rhs and r.relerr == 0.0


def test_order_one():
    rows = multiplier_check(bump_grid(), 1.0, np.linspace(0.5, 4.0, 8))
    assert max(r.relerr for r in rows) < 1e-4


def test_half_order_desk_scale():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SupportWarning)
        rows = multiplier_check(bump_grid(), 0.5, np.linspace(1.0, 4.0, 13))
    for r in rows:
        assert r.rhs == pytest.approx(cpow_branch(1j * r.omega, 0.5) * ft_quadrature(bump_grid(), r.omega))
    assert max(r.relerr for r in rows) < 5e-2


def test_order_one_error_decreases_with_step():
    errs = [
        max(r.relerr for r in multiplier_check(bump_grid(h, 6.0), 1.0, [1.0, 3.0]))
        for h in (4e-3, 2e-3)
    ]
    assert errs[1] < errs[0]


def test_order_range():
    with pytest.raises(ValueError):
        multiplier_check(bump_grid(1e-2, 4.0), 1.5, [1.0])


def test_laplacian_examples():
    for w in (1.0, -2.0, 3.5):
        distributional, classical = laplacian_multiplier_compare(w, 1.0)
        assert distributional == pytest.approx(w * w, abs=1e-12) and classical == pytest.approx(w * w)
    assert laplacian_multiplier_compare(2.0, 0.5)[0] == pytest.approx(-2j, abs=1e-15)
    assert laplacian_multiplier_compare(-2.0, 0.5)[0] == pytest.approx(2j, abs=1e-15)
    with pytest.raises(ValueError):
        laplacian_multiplier_compare(0.0, 0.5)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("w", [1.0, 2.0, 5.0])
def test_laplacian_differs_for_fractional_orders(alpha, w):
    distributional, classical = laplacian_multiplier_compare(w, alpha)
    assert abs(distributional - classical) > 1e-6


def test_report_format(tmp_path):
    rows = multiplier_check(bump_grid(1e-3, 4.0), 1.0, [1.0, 2.0])
    path = tmp_path / "r.csv"
    write_report(rows, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "omega,lhs_re,lhs_im,rhs_re,rhs_im,relerr"
    assert len(lines) == 3
