"""Wave equation fractionalised in the characteristic variables u = x+t, v = x-t.

The equation ``d^beta/du^beta d^alpha/dv^alpha f = 0`` has the fundamental
solution ``delta^(-beta)(u) delta^(-alpha)(v) / 2`` and, for initial data
``f(x, 0) = g``, ``f_t(x, 0) = h``, the solution

    f = 1/2 ((x+t)/(x-t))**(1-alpha) [g(x+t) + A(x+t)]
      + 1/2 ((x-t)/(x+t))**(1-beta)  [g(x-t) - A(x-t)],

    A(z) = int_0^z h(y) + eta(y) dy,
    eta(x) = x**(alpha+beta-3) int_0^x y**(2-alpha-beta) F(y) dy,
    F = (alpha-beta) g' + (alpha+beta-2) h.

Substituting ``y = x s`` gives ``eta(x) = int_0^1 s**p F(x s) ds`` with
``p = 2 - alpha - beta``; the prefactor singularity at the origin cancels and
the same expression holds for ``x < 0`` on the package branch.  The ``s**p``
weight is integrated exactly by Gauss-Jacobi quadrature.

When ``alpha != beta`` the initial velocity is recovered only if ``g(0) = 0``:
the time derivative at ``t = 0`` is ``h(x) - (alpha-beta) g(0)/x``.
"""

import functools
import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy import integrate, special

from .core import (
    check_order,
    cpow_branch,
    heaviside,
    recip_gamma,
)
from .differint import GridFunction, inverse_derivative, zero_function
from .fields import Field2D, map_chunks

#: Gauss-Jacobi nodes used for each inner integral over [0, 1].
QUAD_NODES = 96


class UniquenessWarning(UserWarning):
    """Orders outside the range where the initial-value solution is unique."""


class ICSource(NamedTuple):
    """Callables for the initial data: ``g``, ``g'``, ``h`` and ``H = int_0 h``."""

    g: Callable
    dg: Callable
    h: Callable
    H: Callable


SIN_COS = ICSource(np.sin, np.cos, np.cos, np.sin)


@dataclass(frozen=True)
class ICPair:
    """Sampled initial data ``f(x, 0) = g`` and ``f_t(x, 0) = h`` on one grid."""

    g: GridFunction
    h: GridFunction

    def __post_init__(self):
        if len(self.g) != len(self.h) or not (
            math.isclose(self.g.start, self.h.start, abs_tol=1e-12)
            and math.isclose(self.g.step, self.h.step, rel_tol=1e-12)
        ):
            raise ValueError("g and h must share the same grid")
        if not self.g.start <= 0 <= self.g.stop:
            raise ValueError("the initial-data grid must contain the origin")

    @functools.cached_property
    def source(self):
        gs = self.g.spline()
        hs = self.h.spline()
        anti = inverse_derivative(self.h)
        Hs = anti.spline()
        return ICSource(
            _bounded(gs, self.g),
            _bounded(gs.derivative(), self.g),
            _bounded(hs, self.h),
            _bounded(Hs, self.h),
        )

    @classmethod
    def from_functions(cls, g, h, start, stop, step):
        return cls(
            GridFunction.from_function(g, start, stop, step),
            GridFunction.from_function(h, start, stop, step),
        )


def _bounded(spline, grid):
    lo = grid.start - 1e-9 * grid.step
    hi = grid.stop + 1e-9 * grid.step

    def call(x):
        x = np.asarray(x, dtype=float)
        if np.any(x < lo) or np.any(x > hi):
            raise ValueError(f"evaluation outside initial-data grid [{grid.start}, {grid.stop}]")
        return spline(x)

    return call


def _as_source(ic):
    return ic.source if isinstance(ic, ICPair) else ic


def check_admissible(alpha, beta):
    """Validate ``0 < alpha <= 1`` and ``0 < beta <= 1``; warn if ``beta <= 1 - alpha``."""
    alpha = check_order(alpha)
    beta = check_order(beta, "beta")
    if not (0 < alpha <= 1 and 0 < beta <= 1):
        raise ValueError(f"need 0 < alpha, beta <= 1, got ({alpha}, {beta})")
    if beta <= 1 - alpha:
        warnings.warn(
            f"beta={beta} <= 1 - alpha; the initial-value solution is not unique",
            UniquenessWarning,
            stacklevel=3,
        )
    return alpha, beta


@functools.lru_cache(maxsize=32)
def _jacobi01(n, q):
    """Nodes/weights for ``int_0^1 s**q G(s) ds``."""
    u, w = special.roots_jacobi(n, 0.0, q)
    return (1.0 + u) / 2.0, w * 2.0 ** (-q - 1.0)


def _weighted_unit_integral(func, z, q, nodes=QUAD_NODES):
    """``int_0^1 s**q func(z s) ds`` for each entry of ``z``."""
    s, w = _jacobi01(nodes, float(q))
    z = np.asarray(z, dtype=float)
    return func(np.multiply.outer(z, s)) @ w


def _eta(alpha, beta, src, x):
    c_g = alpha - beta
    c_h = alpha + beta - 2.0
    if c_g == 0 and c_h == 0:
        return np.zeros(np.shape(x))

    def F(y):
        return c_g * src.dg(y) + c_h * src.h(y)

    return np.real_if_close(_weighted_unit_integral(F, x, 2.0 - alpha - beta))


def _big_a(alpha, beta, src, z):
    """``A(z) = int_0^z h + eta``."""
    z = np.asarray(z, dtype=float)
    c_g = alpha - beta
    c_h = alpha + beta - 2.0
    out = src.H(z) - src.H(0.0)
    if c_g == 0 and c_h == 0:
        return out
    p = 2.0 - alpha - beta
    if p <= 0:
        raise ValueError("eta integral diverges for alpha + beta >= 2 unless alpha = beta = 1")
    g0 = src.g(0.0)
    H0 = src.H(0.0)

    def G(y):
        return c_g * (src.g(y) - g0) + c_h * (src.H(y) - H0)

    return out + _weighted_unit_integral(G, z, p - 1.0)


def fundamental_solution(alpha, beta, x, t):
    """``(x+t)**(beta-1) (x-t)**(alpha-1) / (2 Gamma(beta) Gamma(alpha)) H(x+t) H(x-t)``.

    Exactly zero outside the cone ``x+t > 0, x-t > 0``.  On the cone edges
    where a negative exponent makes the value unbounded the result is NaN
    (the masking marker).
    """
    alpha = check_order(alpha)
    beta = check_order(beta, "beta")
    u = np.asarray(np.add(x, t), dtype=float)
    v = np.asarray(np.subtract(x, t), dtype=float)
    inside = (u >= 0) & (v >= 0)
    coef = 0.5 * recip_gamma(alpha) * recip_gamma(beta)
    uu = np.where(inside, u, 1.0)
    vv = np.where(inside, v, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = uu ** (beta - 1.0) * vv ** (alpha - 1.0)
    singular = inside & (((u == 0) & (beta < 1)) | ((v == 0) & (alpha < 1)))
    out = np.where(inside, coef * val * heaviside(u) * heaviside(v), 0.0)
    out = np.where(singular & (coef != 0), np.nan, np.where(singular, 0.0, out))
    return float(out) if out.ndim == 0 else out


def general_solution(alpha, beta, phi, psi, x, t):
    """``(x-t)**(alpha-1)/Gamma(alpha) phi(x+t) + (x+t)**(beta-1)/Gamma(beta) psi(x-t)``.

    ``phi`` and ``psi`` are callables or :class:`GridFunction` (linearly
    interpolated; evaluation outside the grid raises).  Negative bases are
    powered on the package branch.
    """
    alpha = check_order(alpha)
    beta = check_order(beta, "beta")
    phi = phi.interp if isinstance(phi, GridFunction) else phi
    psi = psi.interp if isinstance(psi, GridFunction) else psi
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    out = 0j
    if recip_gamma(alpha) != 0:
        out = out + zero_function(alpha, x - t) * phi(x + t)
    if recip_gamma(beta) != 0:
        out = out + zero_function(beta, x + t) * psi(x - t)
    out = np.asarray(out, dtype=complex) + np.zeros(np.broadcast(x, t).shape)
    return complex(out) if out.ndim == 0 else out


def eta_closed_form(alpha, beta, g, h, x):
    """``eta(x)`` for sampled initial data ``g``, ``h``; vectorised over ``x``.

    ``x`` may be negative; the integral is taken on the package branch and is
    real for real data.
    """
    alpha = check_order(alpha)
    beta = check_order(beta, "beta")
    src = ICPair(g, h).source
    out = _eta(alpha, beta, src, x)
    return out.item() if np.ndim(out) == 0 else out


def eta_ode_oracle(alpha, beta, g, h, x_grid, eps=None):
    """Integrate ``(3-alpha-beta) eta + x eta' = F`` from ``eps`` over ``x_grid``.

    Independent check on :func:`eta_closed_form`: ``g'`` comes from finite
    differences of the samples, and the ODE is solved with an adaptive
    Dormand-Prince 8(5,3) method starting from the closed-form value at
    ``eps`` (default ``4*step``).  Returns the solution sampled on ``x_grid``.
    """
    alpha = check_order(alpha)
    beta = check_order(beta, "beta")
    if eps is None:
        eps = 4.0 * g.step
    x_grid = np.asarray(x_grid, dtype=float)
    if x_grid[0] < eps:
        raise ValueError(f"x_grid must start at or beyond eps={eps}")
    xs = g.x
    dg = np.gradient(g.values.real, g.step, edge_order=2)
    hv = h.values.real
    c_g = alpha - beta
    c_h = alpha + beta - 2.0
    k = 3.0 - alpha - beta

    def rhs(x, eta):
        F = c_g * np.interp(x, xs, dg) + c_h * np.interp(x, xs, hv)
        return (F - k * eta) / x

    eta0 = float(eta_closed_form(alpha, beta, g, h, eps))
    sol = integrate.solve_ivp(
        rhs,
        (eps, x_grid[-1]),
        [eta0],
        method="DOP853",
        t_eval=x_grid,
        rtol=1e-10,
        atol=1e-12,
    )
    if not sol.success:
        raise RuntimeError(f"eta ODE integration failed: {sol.message}")
    step = x_grid[1] - x_grid[0] if x_grid.size > 1 else 1.0
    return GridFunction(x_grid[0], step, sol.y[0])


def _prefactor(num, den, expo):
    """``(num/den)**expo`` on the package branch; NaN where it is unbounded."""
    num = np.asarray(num, dtype=float)
    if expo == 0:
        return np.ones(num.shape, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = num / np.asarray(den, dtype=float)
    out = np.full(num.shape, np.nan, dtype=complex)
    ok = np.isfinite(ratio) & (ratio != 0)
    out[ok] = cpow_branch(ratio[ok], expo)
    if expo > 0:
        out[ratio == 0] = 0.0
    else:
        out[np.isinf(ratio)] = 0.0
    return out


def _ivp(alpha, beta, src, x, t):
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    u = x + t
    v = x - t
    zs, inv = np.unique(np.concatenate([u.ravel(), v.ravel()]), return_inverse=True)
    A = map_chunks(lambda z: _big_a(alpha, beta, src, z), zs)
    gz = src.g(zs)
    A_u = A[inv[: u.size]].reshape(u.shape)
    A_v = A[inv[u.size :]].reshape(v.shape)
    g_u = gz[inv[: u.size]].reshape(u.shape)
    g_v = gz[inv[u.size :]].reshape(v.shape)
    r1 = _prefactor(u, v, 1.0 - alpha)
    r2 = _prefactor(v, u, 1.0 - beta)
    return 0.5 * r1 * (g_u + A_u) + 0.5 * r2 * (g_v - A_v)


def ivp_solution(alpha, beta, ic, x, t):
    """Initial-value solution for ``f(x,0) = g``, ``f_t(x,0) = h``.

    ``ic`` is an :class:`ICPair` (or an :class:`ICSource` of callables).
    Requires ``0 < alpha, beta <= 1``; a :class:`UniquenessWarning` is issued
    when ``beta <= 1 - alpha``.  Cells on ``x = t`` (``x = -t``) where the
    prefactor blows up are returned as NaN.
    """
    alpha, beta = check_admissible(alpha, beta)
    out = _ivp(alpha, beta, _as_source(ic), x, t)
    return complex(out) if np.ndim(out) == 0 else out


def sincos_field(alpha, beta, x_axis, t_axis):
    """Field of the solution with ``f(x,0) = sin x``, ``f_t(x,0) = cos x``.

    ``alpha = beta = 0`` has no solution of this form and yields a fully
    masked field.
    """
    alpha = check_order(alpha)
    beta = check_order(beta, "beta")
    if alpha == 0 and beta == 0:
        shape = (x_axis.count, t_axis.count)
        return Field2D(x_axis, t_axis, np.zeros(shape), np.ones(shape, dtype=bool))
    alpha, beta = check_admissible(alpha, beta)
    return Field2D.evaluate(lambda X, T: _ivp(alpha, beta, SIN_COS, X, T), x_axis, t_axis)


def binomial_coeff(beta, k):
    """Generalised binomial coefficient ``Gamma(beta+1) / (Gamma(beta-k+1) k!)``.

    Evaluated as the falling-factorial product, which is the entire extension
    in ``beta`` and vanishes for integer ``0 <= beta < k``.
    """
    beta = check_order(beta, "beta")
    if k < 0:
        raise ValueError("k must be non-negative")
    c = 1.0
    for j in range(k):
        c *= (beta - j) / (j + 1)
    return c


class BinomialCheck(NamedTuple):
    partial_sum: complex
    target: complex
    relerr: float


def binomial_operator_check(a, b, beta, K):
    """Partial sum of ``sum_k C(beta, k) a**(beta-k) b**k`` against ``(a+b)**beta``.

    This is the binomial expansion of ``(d_x + d_t)**beta`` applied to a mode
    ``exp(a x + b t)``.  Needs ``|b| < |a|``.
    """
    beta = check_order(beta, "beta")
    if not abs(b) < abs(a):
        raise ValueError("binomial series diverges for |b| >= |a|")
    if not 0 <= K <= 200:
        raise ValueError("K must lie in [0, 200]")
    total = 0j
    for k in range(K + 1):
        total += binomial_coeff(beta, k) * cpow_branch(a, beta - k) * complex(b) ** k
    target = cpow_branch(complex(a) + complex(b), beta)
    return BinomialCheck(total, target, abs(total - target) / abs(target))
