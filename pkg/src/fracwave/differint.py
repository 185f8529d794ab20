"""The differintegral on uniformly sampled functions and on simple distributions.

The operator with order ``alpha > 0`` is the Riemann-Liouville integral

.. math::

    S^\\alpha f(x) = \\int_{x_0}^{x} f(t)\\, \\delta^{(-\\alpha)}(x - t)\\, dt,
    \\qquad \\delta^{(-\\alpha)}(x) = \\frac{x^{\\alpha-1}}{\\Gamma(\\alpha)} H(x),

with the base point ``x_0`` at the start of the grid.  Negative orders are
realised as ``D^n S^{n-|alpha|}`` with ``n = ceil(|alpha|)``.
"""

import csv
import io
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import interpolate, signal

from .core import (
    SingularityError,
    check_order,
    cpow_branch,
    heaviside,
    recip_gamma,
)

#: Sign of the exponent in the phase ``exp(sign * i*pi*alpha)`` applied when
#: differintegrating a distribution.
PAIRING_PHASE_SIGN = -1

#: Relative size of the end samples above which a test function is not
#: considered compactly supported on its grid.
SUPPORT_TOL = 1e-8

MAX_INTEGRAL_ORDER = 4.0
MAX_DERIVATIVE_ORDER = 2.0

# direct convolution is faster below this length, FFT above
_FFT_THRESHOLD = 4096


class SupportWarning(UserWarning):
    """A test function does not vanish at the ends of its grid."""


@dataclass(frozen=True)
class GridFunction:
    """Uniform samples ``values[j] = f(start + j*step)``."""

    start: float
    step: float
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("values must be a non-empty 1-D sequence")
        if not self.step > 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if not (math.isfinite(self.start) and np.all(np.isfinite(values))):
            raise ValueError("grid start and samples must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "step", float(self.step))
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, func, start, stop, step):
        """Sample ``func`` on ``[start, stop]`` (stop included up to rounding)."""
        n = int(round((stop - start) / step)) + 1
        x = start + step * np.arange(n)
        return cls(start, step, func(x))

    def __len__(self):
        return self.values.size

    @property
    def x(self):
        return self.start + self.step * np.arange(self.values.size)

    @property
    def stop(self):
        return self.start + self.step * (self.values.size - 1)

    def with_values(self, values):
        return GridFunction(self.start, self.step, values)

    def interp(self, x):
        """Linear interpolation; raises ``ValueError`` outside the grid."""
        x = np.asarray(x, dtype=float)
        tol = 1e-9 * self.step
        if np.any(x < self.start - tol) or np.any(x > self.stop + tol):
            raise ValueError(
                f"evaluation outside grid [{self.start}, {self.stop}]"
            )
        xs = self.x
        out = np.interp(x, xs, self.values.real) + 1j * np.interp(
            x, xs, self.values.imag
        )
        return complex(out) if out.ndim == 0 else out

    def spline(self):
        """Cubic spline through the samples (complex-valued)."""
        if len(self) < 4:
            raise ValueError("a cubic spline needs at least 4 samples")
        return interpolate.CubicSpline(self.x, self.values)


@dataclass(frozen=True)
class PointMass:
    """``weight * delta(x - location)``."""

    location: float
    weight: complex = 1.0


@dataclass(frozen=True)
class HeavisideStep:
    """``H(x - location)``."""

    location: float


@dataclass(frozen=True)
class FunctionDistribution:
    """Regular distribution ``phi -> int f(x) phi(x) dx``."""

    f: GridFunction = field(repr=False)


def kernel_delta(alpha, x):
    """Fractional delta ``x**(alpha-1) / Gamma(alpha) * H(x)`` for ``alpha > 0``.

    Raises ``SingularityError`` at ``x = 0`` when ``alpha < 1``.
    """
    alpha = check_order(alpha)
    if alpha <= 0:
        raise ValueError("kernel_delta needs alpha > 0")
    x = np.asarray(x, dtype=float)
    if alpha < 1 and np.any(x == 0):
        raise SingularityError(f"delta^(-{alpha}) is unbounded at 0")
    pos = np.where(x > 0, x, 1.0)
    out = np.where(
        x > 0,
        pos ** (alpha - 1) * recip_gamma(alpha),
        0.0,
    )
    if alpha >= 1:
        # at the origin x**(alpha-1) is 0 (alpha > 1) or 1 (alpha == 1)
        at_zero = (0.0 if alpha > 1 else 1.0) * recip_gamma(alpha)
        out = np.where(x == 0, at_zero * heaviside(0.0), out)
    return float(out) if out.ndim == 0 else out


def zero_function(alpha, x):
    """Zero function ``x**(alpha-1) / Gamma(alpha)``: the kernel without ``H``.

    Vanishes identically at ``alpha = 0, -1, -2, ...``.  Negative ``x`` with a
    non-integer exponent gives a complex value on the package branch.
    """
    alpha = check_order(alpha)
    x = np.asarray(x, dtype=float)
    rg = recip_gamma(alpha)
    if rg == 0:
        out = np.zeros_like(x)
    elif alpha < 1 and np.any(x == 0):
        raise SingularityError(f"zero function of order {alpha} is unbounded at 0")
    elif alpha == round(alpha) or np.all(x > 0):
        out = x ** (alpha - 1) * rg
    else:
        out = cpow_branch(x, alpha - 1) * rg
    out = np.asarray(out)
    return out.item() if out.ndim == 0 else out


def product_weights(alpha, n):
    """Product-trapezoid weights for the fractional integral.

    Returns ``(first, conv)`` such that on a grid of ``n`` points with step
    ``h`` the integral at index ``k`` is

        h**alpha / Gamma(alpha + 2) * (first[k]*f[0] + sum_{j=1..k} conv[k-j]*f[j])

    which integrates ``(x - t)**(alpha-1)`` exactly against the piecewise-linear
    interpolant of ``f``.
    """
    k = np.arange(n, dtype=float)
    a1 = alpha + 1.0
    conv = np.empty(n)
    conv[0] = 1.0
    if n > 1:
        kk = k[1:]
        conv[1:] = (kk + 1) ** a1 - 2 * kk**a1 + (kk - 1) ** a1
    first = np.zeros(n)
    if n > 1:
        kk = k[1:]
        first[1:] = (kk - 1) ** a1 - (kk - alpha - 1) * kk**alpha
    return first, conv


def _causal_convolve(conv, f):
    n = f.size
    if n > _FFT_THRESHOLD:
        return signal.fftconvolve(conv, f)[:n]
    return np.convolve(conv, f)[:n]


def frac_integral(f, alpha):
    """Fractional integral ``S^alpha f`` on the grid of ``f`` (``0 < alpha <= 4``).

    Uses product integration: the singular kernel is integrated exactly against
    the piecewise-linear interpolant of ``f``, so smooth data converge at
    second order away from the base point.
    """
    alpha = check_order(alpha)
    if not 0 < alpha <= MAX_INTEGRAL_ORDER:
        raise ValueError(
            f"frac_integral needs 0 < alpha <= {MAX_INTEGRAL_ORDER}, got {alpha}"
        )
    if len(f) < 2:
        raise ValueError("frac_integral needs at least 2 samples")
    values = f.values
    first, conv = product_weights(alpha, len(f))
    tail = values.copy()
    tail[0] = 0.0
    acc = _causal_convolve(conv, tail) + first * values[0]
    acc[0] = 0.0
    scale = f.step**alpha * recip_gamma(alpha + 2.0)
    return f.with_values(scale * acc)


def _gradient(values, step, times):
    for _ in range(times):
        values = np.gradient(values, step, edge_order=2)
    return values


def frac_derivative(f, alpha):
    """Riemann-Liouville derivative ``D^n S^(n - alpha) f``, ``n = ceil(alpha)``.

    ``0 <= alpha <= 2``; ``alpha = 0`` returns ``f`` unchanged.  The integer
    derivatives use second-order central differences with one-sided stencils
    at the ends.
    """
    alpha = check_order(alpha)
    if not 0 <= alpha <= MAX_DERIVATIVE_ORDER:
        raise ValueError(
            f"frac_derivative needs 0 <= alpha <= {MAX_DERIVATIVE_ORDER}, got {alpha}"
        )
    if alpha == 0:
        return f
    n = math.ceil(alpha)
    if len(f) < n + 2:
        raise ValueError(
            f"order {alpha} needs at least {n + 2} samples, got {len(f)}"
        )
    rest = n - alpha
    inner = f if rest == 0 else frac_integral(f, rest)
    return f.with_values(_gradient(inner.values, f.step, n))


def differintegrate(f, alpha):
    """``S^alpha f``: integrate for ``alpha > 0``, differentiate for ``alpha < 0``."""
    alpha = check_order(alpha)
    if alpha > 0:
        return frac_integral(f, alpha)
    if alpha < 0:
        return frac_derivative(f, -alpha)
    return f


def inverse_derivative(f, origin=0.0, eps=None):
    """Antiderivative of ``f`` normalised to vanish at ``origin``.

    Non-finite samples within ``eps`` (default ``4*step``) of the origin are
    dropped and the integrand there is replaced by the linear extrapolation of
    the two nearest finite samples outside the excluded neighbourhood, which
    discards the divergent part at the lower limit.  Elsewhere the integral is
    the exact antiderivative of the cubic spline through the samples.

    ``f`` is a :class:`GridFunction` or, when the samples themselves blow up
    at the origin, any object with ``start``, ``step`` and ``values``.
    """
    values = np.asarray(f.values, dtype=complex)
    x = f.start + f.step * np.arange(values.size)
    if eps is None:
        eps = 4.0 * f.step
    if not f.start - 1e-12 <= origin <= f.start + f.step * (values.size - 1) + 1e-12:
        raise ValueError("origin must lie inside the grid")
    bad = ~np.isfinite(values)
    if np.any(bad):
        near = np.abs(x - origin) <= eps
        if np.any(bad & ~near):
            raise SingularityError("non-finite samples away from the origin")
        values = values.copy()
        for side in (x < origin, x >= origin):
            mask = near & side
            if not np.any(mask):
                continue
            outside = np.flatnonzero(side & ~near & np.isfinite(values))
            order = np.argsort(np.abs(x[outside] - origin))[:2]
            if order.size < 2:
                raise SingularityError("not enough samples to extrapolate")
            i0, i1 = outside[order]
            slope = (values[i1] - values[i0]) / (x[i1] - x[i0])
            values[mask] = values[i0] + slope * (x[mask] - x[i0])
    spline = interpolate.CubicSpline(x, values)
    anti = spline.antiderivative()
    return GridFunction(f.start, f.step, anti(x) - anti(origin))


def _check_support(phi):
    mag = np.abs(phi.values)
    peak = mag.max()
    if peak > 0 and max(mag[0], mag[-1]) > SUPPORT_TOL * peak:
        warnings.warn(
            "test function does not vanish at the grid ends",
            SupportWarning,
            stacklevel=3,
        )


def _trapezoid_from(g, a):
    """Trapezoid rule for the integral of ``g`` over ``[a, stop]``."""
    x = g.x
    if a <= g.start:
        return complex(np.trapezoid(g.values, dx=g.step))
    if a >= g.stop:
        return 0j
    j = int(np.searchsorted(x, a, side="right"))
    ga = g.interp(a)
    head = 0.5 * (ga + g.values[j]) * (x[j] - a)
    return complex(head + np.trapezoid(g.values[j:], dx=g.step))


def distribution_pair(T, alpha, phi):
    """Pair the order-``alpha`` derivative of the distribution ``T`` with ``phi``.

    Computes ``exp(-i*pi*alpha) * T[S^(-alpha) phi]``: ``alpha > 0`` moves
    ``alpha`` derivatives onto the test function, ``alpha < 0`` moves
    ``|alpha|`` integrations.  ``-2 < alpha < 2``.

    ``T`` is a :class:`PointMass`, :class:`HeavisideStep` or
    :class:`FunctionDistribution` (whose samples must share ``phi``'s grid).
    """
    alpha = check_order(alpha)
    if not -2 < alpha < 2:
        raise ValueError(f"distribution_pair needs -2 < alpha < 2, got {alpha}")
    _check_support(phi)
    moved = differintegrate(phi, -alpha)
    if isinstance(T, PointMass):
        paired = complex(T.weight) * moved.interp(T.location)
    elif isinstance(T, HeavisideStep):
        paired = _trapezoid_from(moved, T.location)
    elif isinstance(T, FunctionDistribution):
        if len(T.f) != len(phi) or not np.isclose(T.f.start, phi.start) or not np.isclose(
            T.f.step, phi.step
        ):
            raise ValueError("function-backed distribution must share phi's grid")
        paired = complex(np.trapezoid(T.f.values * moved.values, dx=phi.step))
    else:
        raise TypeError(f"unsupported distribution {type(T).__name__}")
    return np.exp(PAIRING_PHASE_SIGN * 1j * math.pi * alpha) * paired


def write_csv(f, path=None):
    """Write ``x,re,im`` rows; returns the text when ``path`` is None."""
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "re", "im"])
    for xv, v in zip(f.x, f.values):
        writer.writerow([f"{float(xv):.17g}", f"{v.real:.17g}", f"{v.imag:.17g}"])
    text = buf.getvalue()
    if path is None:
        return text
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return None


def read_csv(path):
    """Read a ``x,re,im`` file back into a :class:`GridFunction`."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError(f"{path}: no samples")
    x = np.array([float(r["x"]) for r in rows])
    values = np.array([complex(float(r["re"]), float(r["im"])) for r in rows])
    step = (x[-1] - x[0]) / (len(x) - 1) if len(x) > 1 else 1.0
    if len(x) > 2 and not np.allclose(np.diff(x), step, rtol=1e-9, atol=1e-12):
        raise ValueError(f"{path}: samples are not uniformly spaced")
    return GridFunction(x[0], step, values)
