"""Special functions and branch-consistent complex powers.

Every complex power in the package goes through :func:`cpow_branch`, which
places the branch cut of the logarithm along the negative imaginary axis,
``arg z in [-pi/2, 3*pi/2)``.  The lower end is closed so that ``(-i)**p`` is
defined and equals the complex conjugate of ``i**p``.
"""

import math

import numpy as np
from scipy import special

#: Lower end of the argument interval used by :func:`cpow_branch`.
BRANCH_LOW = -0.5 * math.pi

#: Value assigned to the Heaviside step at the origin.
HEAVISIDE_AT_ZERO = 0.5


class PoleError(ValueError):
    """Raised when Gamma is evaluated at a non-positive integer."""


class SingularityError(ValueError):
    """Raised when a kernel or prefactor is evaluated at an unbounded point."""


def check_order(value, name="alpha"):
    """Validate a real fractional order and return it as a float."""
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


def _is_pole(x):
    return x <= 0 and x == math.floor(x)


def gamma(x):
    """Gamma function of a real argument.

    Raises
    ------
    PoleError
        If ``x`` is a non-positive integer.
    OverflowError
        If the result is not representable as a double.
    """
    x = float(x)
    if _is_pole(x):
        raise PoleError(f"Gamma has a pole at {x}")
    return math.gamma(x)


def recip_gamma(x):
    """``1/Gamma(x)``, an entire function: exactly zero at the Gamma poles."""
    x = np.asarray(x, dtype=float)
    out = special.rgamma(x)
    return float(out) if out.ndim == 0 else out


def heaviside(x):
    """Heaviside step with ``H(0) = 1/2``."""
    out = np.heaviside(np.asarray(x, dtype=float), HEAVISIDE_AT_ZERO)
    return float(out) if out.ndim == 0 else out


def branch_arg(z):
    """Argument of ``z`` normalised into ``[-pi/2, 3*pi/2)``."""
    theta = np.angle(np.asarray(z, dtype=complex))
    theta = np.where(theta < BRANCH_LOW, theta + 2.0 * math.pi, theta)
    return float(theta) if theta.ndim == 0 else theta


def cpow_branch(z, p):
    """Complex power ``z**p`` with the cut along the negative imaginary axis.

    Computes ``exp(p * (log|z| + i*theta))`` with ``theta = branch_arg(z)``.
    ``z`` may be an array; ``p`` is a real scalar.  ``cpow_branch(0, p)`` is 0
    for ``p > 0``.

    Raises
    ------
    ValueError
        If any ``z`` is zero and ``p <= 0``.
    """
    p = check_order(p, "p")
    z = np.asarray(z, dtype=complex)
    zero = z == 0
    if p <= 0 and np.any(zero):
        raise ValueError(f"0**{p} is undefined")
    if p == 0:
        out = np.ones_like(z)
    elif p == 1:
        out = z.copy()
    else:
        safe = np.where(zero, 1.0, z)
        log_z = np.log(np.abs(safe)) + 1j * branch_arg(safe)
        out = np.where(zero, 0.0, np.exp(p * log_z))
    return complex(out) if out.ndim == 0 else out
