"""Select the quadrature kernel at import time.

The compiled ``_quadext`` module is preferred; the pure-Python ``_quadpy``
module is used when the extension was not built or when the environment
variable ``FUZZYLADDER_PURE_PYTHON`` is set to a non-empty value.
"""
import os

from . import _quadpy

KERNELS = {"python": _quadpy.integrate_side}

try:
    from ._quadext import integrate_side as _ext_integrate_side
except ImportError:  # extension not built
    _ext_integrate_side = None
else:
    KERNELS["cython"] = _ext_integrate_side

if _ext_integrate_side is not None and not os.environ.get("FUZZYLADDER_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

integrate_side = KERNELS[BACKEND]


def get_kernel(name=None):
    """Return the kernel called ``name`` (``"cython"`` or ``"python"``), or the active one."""
    if name is None:
        return integrate_side
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(f"kernel {name!r} is not available; have {sorted(KERNELS)}") from None
