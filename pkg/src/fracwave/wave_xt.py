"""Wave equation fractionalised in x and t: ``d^beta_t f - d^alpha_x f = 0``.

Exponential modes ``exp(w**alpha t + w**beta x)`` solve the equation, and the
powers are multivalued.  With ``f(x, 0) = sin x`` and periodicity in x the
solution is

    f = 1/(2i) [exp(i**r t + i x) - exp((-i)**r t - i x)],   r = alpha/beta,

whose amplitude grows, stays fixed or decays with the sign of cos(r pi/2).
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import branch_arg, check_order, cpow_branch
from .fields import Field2D

#: Modes whose exponent has a real part beyond this are masked.
OVERFLOW_EXPONENT = 700.0


class Damping(enum.Enum):
    GROWTH = "growth"
    DECAY = "decay"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class BranchSet:
    """Values of ``base**exponent`` on the branches ``k`` of the logarithm."""

    base: complex
    exponent: float
    ks: tuple
    values: np.ndarray

    def __getitem__(self, k):
        return complex(self.values[self.ks.index(k)])


def omega_powers(omega, p, k_range):
    """All branch values ``exp(p (log|w| + i (theta0 + 2 pi k)))`` for ``k`` in ``k_range``.

    ``theta0`` lies in ``[-pi/2, 3pi/2)``, so ``k = 0`` is :func:`cpow_branch`.
    ``k_range`` is an iterable of integers or an inclusive ``(lo, hi)`` pair.
    """
    p = check_order(p, "p")
    omega = complex(omega)
    if omega == 0:
        raise ValueError("omega must be nonzero")
    if isinstance(k_range, tuple) and len(k_range) == 2:
        ks = tuple(range(k_range[0], k_range[1] + 1))
    else:
        ks = tuple(int(k) for k in k_range)
    theta = branch_arg(omega) + 2.0 * math.pi * np.asarray(ks, dtype=float)
    values = np.exp(p * (math.log(abs(omega)) + 1j * theta))
    if 0 in ks:
        values[ks.index(0)] = cpow_branch(omega, p)
    return BranchSet(omega, p, ks, values)


def mode(omega, alpha, beta, x, t, branch_t=0, branch_x=0):
    """``exp(w**alpha t + w**beta x)`` on the chosen branches; NaN when it would overflow."""
    alpha = check_order(alpha)
    beta = check_order(beta, "beta")
    wa = omega_powers(omega, alpha, [branch_t])[branch_t]
    wb = omega_powers(omega, beta, [branch_x])[branch_x]
    expo = wa * np.asarray(t, dtype=float) + wb * np.asarray(x, dtype=float)
    big = np.real(expo) > OVERFLOW_EXPONENT
    out = np.exp(np.where(big, 0.0, expo))
    out = np.where(big, np.nan, out)
    return complex(out) if np.ndim(out) == 0 else out


def _ratio(alpha, beta):
    alpha = check_order(alpha)
    beta = check_order(beta, "beta")
    if beta == 0:
        raise ValueError("beta must be nonzero")
    return alpha / beta


def sin_solution(alpha, beta, x, t):
    """Periodic solution with ``f(x, 0) = sin x``; real for every real ``alpha/beta``."""
    r = _ratio(alpha, beta)
    ip = cpow_branch(1j, r)
    im = cpow_branch(-1j, r)
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    e1 = ip * t + 1j * x
    e2 = im * t - 1j * x
    big = np.maximum(np.real(e1), np.real(e2)) > OVERFLOW_EXPONENT
    out = (np.exp(np.where(big, 0.0, e1)) - np.exp(np.where(big, 0.0, e2))) / 2j
    out = np.where(big, np.nan, out)
    return complex(out) if np.ndim(out) == 0 else out


def amplitude(alpha, beta, t):
    """``sup_x |sin_solution(x, t)| = exp(cos(r pi/2) t)``."""
    r = _ratio(alpha, beta)
    return np.exp(cpow_branch(1j, r).real * np.asarray(t, dtype=float))


def damping_classify(alpha, beta):
    """Growth, decay or neutral amplitude for ``r = alpha/beta`` in (0, 2)."""
    r = _ratio(alpha, beta)
    if not 0 < r < 2:
        raise ValueError(f"alpha/beta must lie in (0, 2), got {r}")
    if r == 1:
        return Damping.NEUTRAL
    c = math.cos(r * math.pi / 2)
    return Damping.GROWTH if c > 0 else Damping.DECAY


def sin_field(alpha, beta, x_axis, t_axis):
    """Grid evaluation of :func:`sin_solution`."""
    _ratio(alpha, beta)
    return Field2D.evaluate(lambda X, T: sin_solution(alpha, beta, X, T), x_axis, t_axis)


def sup_over_x(field):
    """Per-time amplitude of a field that is a sinusoid of period 2pi in x.

    Fits ``a sin x + b cos x`` to each column by least squares and returns
    ``sqrt(a**2 + b**2)``, the supremum over all real x rather than over the
    grid samples.
    """
    x = field.x_axis.values
    basis = np.column_stack([np.sin(x), np.cos(x)])
    coef, *_ = np.linalg.lstsq(basis, field.values.real, rcond=None)
    return np.hypot(coef[0], coef[1])
