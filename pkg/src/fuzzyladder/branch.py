"""Complex square root with the cut along the negative imaginary axis.

Arguments are taken in [-pi/2, 3pi/2), so that for r > 0

    sqrt(-r) = +i sqrt(r)      and      1/sqrt(-r) = -i / sqrt(r).

Every complex root in the package goes through :func:`branch_sqrt`.  On the
closed right half plane and the upper half plane it agrees with the
principal root; the two differ only in the open third quadrant.
"""
import math

import numpy as np

__all__ = ["branch_sqrt", "inv_branch_sqrt"]


def _scalar(z):
    z = complex(z)
    r = abs(z)
    if r == 0.0:
        return 0j
    theta = math.atan2(z.imag, z.real)
    if theta < -math.pi / 2:
        theta += 2 * math.pi
    s = math.sqrt(r)
    return complex(s * math.cos(theta / 2), s * math.sin(theta / 2))


def branch_sqrt(z):
    """Square root on the branch with arg(z) in [-pi/2, 3pi/2).

    Accepts Python scalars or numpy arrays.  Negative zero imaginary parts do
    not flip the sign of the root on the negative real axis.
    """
    if np.ndim(z) == 0:
        return _scalar(z)
    z = np.asarray(z, dtype=complex)
    theta = np.arctan2(z.imag, z.real)
    theta = np.where(theta < -np.pi / 2, theta + 2 * np.pi, theta)
    return np.sqrt(np.abs(z)) * np.exp(0.5j * theta)


def inv_branch_sqrt(z):
    """``1 / branch_sqrt(z)``; raises ZeroDivisionError at the origin."""
    return 1.0 / branch_sqrt(z)
