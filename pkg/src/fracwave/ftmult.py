"""Fourier-multiplier form of the differintegral.

Checks ``F[f^(alpha)](w) = (i w)**alpha * F[f](w)`` with the unitary transform
``F[f](w) = (2 pi)**-1/2 * int f(t) exp(-i w t) dt``, and compares the
multiplier ``-(i w)**(2 alpha)`` of the fractional Laplacian obtained this way
with the classical ``|w|**(2 alpha)``.
"""

import csv
import io
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import check_order, cpow_branch
from .differint import SUPPORT_TOL, SupportWarning, frac_derivative

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class MultiplierRow:
    omega: float
    lhs: complex
    rhs: complex
    relerr: float


def _warn_support(f):
    mag = np.abs(f.values)
    peak = mag.max()
    if peak > 0 and max(mag[0], mag[-1]) > SUPPORT_TOL * peak:
        warnings.warn(
            "function does not vanish at the grid ends", SupportWarning, stacklevel=3
        )


def ft_quadrature(f, omega):
    """Trapezoid approximation of ``(2pi)**-1/2 * int f(t) exp(-i omega t) dt``.

    ``omega`` may be a scalar or an array.
    """
    _warn_support(f)
    omega = np.asarray(omega, dtype=float)
    phase = np.exp(-1j * np.multiply.outer(omega, f.x))
    out = INV_SQRT_2PI * np.trapezoid(phase * f.values, dx=f.step, axis=-1)
    return complex(out) if out.ndim == 0 else out


def multiplier_check(f, alpha, omegas):
    """Compare the transform of the grid derivative with the multiplier form.

    Returns one :class:`MultiplierRow` per frequency with
    ``lhs = F[D^alpha f](w)``, ``rhs = (i w)**alpha F[f](w)`` and their
    relative difference.  The grid derivative starts at the first sample, so
    for fractional ``alpha`` the identity is only as good as the decay of the
    derivative's tail inside the grid.
    """
    alpha = check_order(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError(f"multiplier_check needs 0 <= alpha <= 1, got {alpha}")
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    deriv = frac_derivative(f, alpha)
    lhs = np.atleast_1d(ft_quadrature(deriv, omegas))
    rhs = cpow_branch(1j * omegas, alpha) * np.atleast_1d(ft_quadrature(f, omegas))
    rows = []
    for w, l, r in zip(omegas, lhs, rhs):
        denom = abs(r)
        err = abs(l - r) / denom if denom > 0 else abs(l - r)
        rows.append(MultiplierRow(float(w), complex(l), complex(r), float(err)))
    return rows


def laplacian_multiplier_compare(omega, alpha):
    """Return ``(-(i w)**(2 alpha), |w|**(2 alpha))``.

    The two agree for integer ``alpha`` only.
    """
    alpha = check_order(alpha)
    if omega == 0:
        raise ValueError("omega must be nonzero")
    distributional = -cpow_branch(1j * omega, 2.0 * alpha)
    classical = abs(omega) ** (2.0 * alpha)
    return distributional, classical


def write_report(rows, path=None):
    """Write ``omega,lhs_re,lhs_im,rhs_re,rhs_im,relerr``; returns text when ``path`` is None."""
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["omega", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "relerr"])
    for r in rows:
        writer.writerow(
            [f"{v:.17g}" for v in (r.omega, r.lhs.real, r.lhs.imag, r.rhs.real, r.rhs.imag, r.relerr)]
        )
    text = buf.getvalue()
    if path is None:
        return text
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return None


def bump(x, center=2.0, half_width=1.0):
    """Smooth compactly supported bump ``exp(-1/(1 - s**2))``, ``s = (x - center)/half_width``."""
    s = (np.asarray(x, dtype=float) - center) / half_width
    inside = np.abs(s) < 1
    out = np.zeros_like(s)
    out[inside] = np.exp(-1.0 / (1.0 - s[inside] ** 2))
    return out
