"""Fractional Fourier series on the torus and the fractional delta series.

For ``f(x) = sum_n c_n exp(i n x)`` the order-``beta`` derivative has
coefficients ``d_n = (i n)**beta * c_n``, with the power taken on the branch
of :func:`fracwave.core.cpow_branch`.
"""

import csv
import io
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import check_order, cpow_branch
from .differint import GridFunction

TWO_PI = 2.0 * math.pi

# |c_0| above this makes a fractional integral non-periodic
CONSTANT_MODE_TOL = 1e-12


class AliasingWarning(UserWarning):
    """More modes requested than the sampling resolves."""


@dataclass(frozen=True)
class FourierSpectrum:
    """Coefficients ``coeffs[n + N]`` of ``exp(i n x)`` for ``n = -N..N``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 != 1:
            raise ValueError("a spectrum needs 2N+1 coefficients")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_dict(cls, coeffs, N=None):
        """Build from ``{n: c_n}``; missing modes are zero."""
        if N is None:
            N = max((abs(n) for n in coeffs), default=0)
        c = np.zeros(2 * N + 1, dtype=complex)
        for n, v in coeffs.items():
            c[n + N] = v
        return cls(c)

    @property
    def N(self):
        return (self.coeffs.size - 1) // 2

    @property
    def n(self):
        return np.arange(-self.N, self.N + 1)

    def __getitem__(self, n):
        if abs(n) > self.N:
            return 0j
        return complex(self.coeffs[n + self.N])


def _check_periodic_grid(f):
    period = f.step * len(f)
    if not (math.isclose(period, TWO_PI, rel_tol=1e-9) and abs(f.start) < 1e-12):
        raise ValueError(
            "expected samples of one period on [0, 2*pi) without the endpoint"
        )


def analyze(f, N):
    """Fourier coefficients ``c_n`` for ``|n| <= N`` of one period sampled on [0, 2pi).

    The sum ``(1/2pi) * sum_j f(x_j) exp(-i n x_j) * step`` is the trapezoid
    rule for a periodic integrand, exact for trigonometric polynomials of
    degree below the Nyquist limit.
    """
    _check_periodic_grid(f)
    if N < 0:
        raise ValueError("N must be non-negative")
    if N > (len(f) - 1) // 2:
        warnings.warn(
            f"N={N} exceeds the Nyquist limit {(len(f) - 1) // 2}",
            AliasingWarning,
            stacklevel=2,
        )
    n = np.arange(-N, N + 1)
    basis = np.exp(-1j * np.outer(n, f.x))
    return FourierSpectrum(basis @ f.values / len(f))


def multiplier(n, beta):
    """``(i n)**beta`` on the package branch, with the n = 0 entry set to
    0 for beta > 0 and 1 for beta = 0.  Undefined (raises) for beta < 0 at n = 0.
    """
    beta = check_order(beta, "beta")
    n = np.asarray(n)
    nonzero = n != 0
    out = np.empty(n.shape, dtype=complex)
    out[nonzero] = cpow_branch(1j * n[nonzero], beta)
    if np.any(~nonzero):
        if beta < 0:
            raise ValueError("(i*0)**beta is undefined for beta < 0")
        out[~nonzero] = 1.0 if beta == 0 else 0.0
    return out


def frac_coeffs(spec, beta):
    """Coefficients ``d_n = (i n)**beta * c_n`` of the order-``beta`` derivative.

    Negative ``beta`` integrates and is only allowed when the constant mode
    vanishes.
    """
    beta = check_order(beta, "beta")
    c = spec.coeffs
    N = spec.N
    if beta < 0 and abs(c[N]) > CONSTANT_MODE_TOL:
        raise ValueError(
            "fractional integration of a nonzero constant mode is not periodic"
        )
    m = np.zeros(c.size, dtype=complex)
    n = spec.n
    m[n != 0] = cpow_branch(1j * n[n != 0], beta)
    if beta == 0:
        m[N] = 1.0
    return FourierSpectrum(m * c)


def synthesize(spec, x):
    """``sum_{n=-N..N} c_n exp(i n x)`` at scalar or array ``x``."""
    x = np.asarray(x, dtype=float)
    out = np.exp(1j * np.multiply.outer(x, spec.n)) @ spec.coeffs
    return complex(out) if out.ndim == 0 else out


def delta_series_partial(alpha, N, x):
    """Partial sum ``sum_{|n|<=N} (i n)**alpha exp(i n x)`` of the fractional delta.

    The ``n = 0`` term is 1 for ``alpha = 0`` and 0 for ``alpha > 0``.
    """
    alpha = check_order(alpha)
    if N < 1:
        raise ValueError("N must be at least 1")
    n = np.arange(-N, N + 1)
    weights = multiplier(n, alpha)
    x = np.asarray(x, dtype=float)
    out = np.exp(1j * np.multiply.outer(x, n)) @ weights
    return complex(out) if out.ndim == 0 else out


def pair_delta_series(phi, alpha, N, x):
    """``(1/2pi) * int_T phi(t) D_N(x - t) dt`` with ``D_N`` the partial delta series.

    ``phi`` holds one period on [0, 2pi).  Converges to the order-``alpha``
    derivative of ``phi`` at ``x`` as ``N`` grows.
    """
    _check_periodic_grid(phi)
    x = np.asarray(x, dtype=float)
    kernel = delta_series_partial(alpha, N, np.subtract.outer(x, phi.x))
    out = kernel @ phi.values / len(phi)
    return complex(out) if out.ndim == 0 else out


def write_csv(spec, path=None):
    """Write ``n,re,im`` rows for ``n = -N..N``; returns text when ``path`` is None."""
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "re", "im"])
    for n, c in zip(spec.n, spec.coeffs):
        writer.writerow([int(n), f"{c.real:.17g}", f"{c.imag:.17g}"])
    text = buf.getvalue()
    if path is None:
        return text
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return None


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    coeffs = {int(r["n"]): complex(float(r["re"]), float(r["im"])) for r in rows}
    N = max(abs(n) for n in coeffs)
    if sorted(coeffs) != list(range(-N, N + 1)):
        raise ValueError(f"{path}: rows must cover n = -N..N")
    return FourierSpectrum.from_dict(coeffs, N)


def periodic_grid(func, samples):
    """Sample ``func`` at ``samples`` equispaced points of [0, 2pi)."""
    step = TWO_PI / samples
    return GridFunction(0.0, step, func(step * np.arange(samples)))
