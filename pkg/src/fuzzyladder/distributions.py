"""Normalised frequency-width distributions in dimensionless form.

Units are hbar = m = omega = 1 throughout.  A distribution is described by
its dimensionless width ``zeta = Gamma / (2 omega)`` and acts on the
dimensionless detuning ``x = delta_omega / omega`` through the density
``f'(x) = omega * f(delta_omega)``.
"""
from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _densities
from .errors import DeltaHasNoDensity, InvalidSpec

__all__ = [
    "KINDS",
    "DistributionSpec",
    "density",
    "shifted_integrand",
    "normalization_residual",
    "read_table_csv",
]

KINDS = ("delta", "lorentzian", "uniform", "gaussian", "tabulated")

_CODES = {
    "lorentzian": _densities.LORENTZIAN,
    "uniform": _densities.UNIFORM,
    "gaussian": _densities.GAUSSIAN,
    "tabulated": _densities.TABULATED,
}


@dataclass(frozen=True)
class DistributionSpec:
    """A normalised width distribution.

    Parameters
    ----------
    kind : str
        One of ``delta``, ``lorentzian``, ``uniform``, ``gaussian``, ``tabulated``.
    zeta : float
        Dimensionless width.  For ``gaussian`` this is the standard deviation
        of ``x``.  Ignored for ``tabulated``; must be 0 for ``delta``.
    table : tuple of (x, density) pairs, optional
        Required for ``tabulated``; linearly interpolated, zero outside.
    """

    kind: str
    zeta: float = 0.0
    table: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown distribution kind {self.kind!r}; expected one of {KINDS}")
        zeta = float(self.zeta)
        object.__setattr__(self, "zeta", zeta)
        if not math.isfinite(zeta) or zeta < 0:
            raise InvalidSpec(f"zeta must be finite and >= 0, got {self.zeta}")
        if self.kind == "delta":
            if zeta != 0.0:
                raise InvalidSpec("delta distribution has no width; use zeta=0")
        elif self.kind == "tabulated":
            self._check_table()
        elif zeta == 0.0:
            raise InvalidSpec(f"{self.kind} distribution requires zeta > 0")

    def _check_table(self):
        if self.table is None or len(self.table) < 2:
            raise InvalidSpec("tabulated distribution needs at least two (x, f) rows")
        table = tuple((float(x), float(f)) for x, f in self.table)
        object.__setattr__(self, "table", table)
        xs = np.array([r[0] for r in table])
        fs = np.array([r[1] for r in table])
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(fs))):
            raise InvalidSpec("table contains non-finite values")
        if np.any(np.diff(xs) <= 0):
            raise InvalidSpec("table x values must be strictly increasing")
        if np.any(fs < 0):
            raise InvalidSpec("table densities must be non-negative")
        # Only f peaked at zero is physically motivated; asymmetric tables are
        # accepted but flagged.
        mirrored = np.interp(-xs, xs, fs, left=0.0, right=0.0)
        scale = max(float(fs.max()), 1e-300)
        if np.max(np.abs(mirrored - fs)) > 1e-9 * scale:
            warnings.warn("tabulated distribution is not symmetric about x = 0", stacklevel=3)

    # -- constructors -----------------------------------------------------
    @classmethod
    def delta(cls):
        return cls("delta", 0.0)

    @classmethod
    def lorentzian(cls, zeta):
        return cls("lorentzian", zeta)

    @classmethod
    def uniform(cls, zeta):
        return cls("uniform", zeta)

    @classmethod
    def gaussian(cls, sigma):
        return cls("gaussian", sigma)

    @classmethod
    def tabulated(cls, x, f):
        return cls("tabulated", 0.0, tuple(zip(x, f)))

    @classmethod
    def from_width(cls, kind, gamma, omega):
        """Build from a physical width ``gamma`` and frequency ``omega`` (zeta = gamma / 2 omega)."""
        if omega <= 0:
            raise InvalidSpec("omega must be positive")
        return cls(kind, gamma / (2.0 * omega))

    @classmethod
    def from_csv(cls, path):
        x, f = read_table_csv(path)
        return cls.tabulated(x, f)

    # -- helpers ----------------------------------------------------------
    @property
    def code(self):
        if self.kind == "delta":
            raise DeltaHasNoDensity("delta distribution has no pointwise density")
        return _CODES[self.kind]

    @cached_property
    def table_arrays(self):
        if self.table is None:
            return np.zeros(0), np.zeros(0)
        arr = np.array(self.table, dtype=float)
        return arr[:, 0].copy(), arr[:, 1].copy()

    @property
    def support(self):
        """Closed support interval ``(lo, hi)`` of f'; infinite ends for smooth kinds."""
        if self.kind == "uniform":
            return -self.zeta, self.zeta
        if self.kind == "tabulated":
            xs, _ = self.table_arrays
            return float(xs[0]), float(xs[-1])
        if self.kind == "delta":
            return 0.0, 0.0
        return -math.inf, math.inf

    def breakpoints(self):
        """Detunings where the quadrature should start a new panel."""
        if self.kind == "tabulated":
            return tuple(float(v) for v in self.table_arrays[0])
        if self.kind == "uniform":
            return (-self.zeta, 0.0, self.zeta)
        pts = [0.0]
        for m in (0.25, 1.0, 4.0, 16.0, 64.0, 256.0):
            pts += [-m * self.zeta, m * self.zeta]
        return tuple(sorted(pts))


def density(spec: DistributionSpec, x):
    """Dimensionless density f'(x); scalar in, scalar out, arrays broadcast."""
    tx, tf = spec.table_arrays
    out = _densities.density_array(spec.code, spec.zeta, tx, tf, x)
    if np.ndim(x) == 0:
        return float(out)
    return out


def shifted_integrand(spec: DistributionSpec, k: int, x):
    """g_k(x) = (x - 1)**k * f'(x - 1) for k in {0, 1}."""
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")
    xm = np.asarray(x, dtype=float) - 1.0
    out = xm**k * _densities.density_array(spec.code, spec.zeta, *spec.table_arrays, xm)
    if np.ndim(x) == 0:
        return float(out)
    return out


def normalization_residual(spec: DistributionSpec, rel_tol: float = 1e-12) -> float:
    """|integral of f'(x) over the real line - 1|, using the moment quadrature engine."""
    from .moments import side_integrals

    right, left, _err = side_integrals(spec, k=0, tpow=1, rel_tol=rel_tol)
    return abs(right + left - 1.0)


def read_table_csv(path):
    """Read a two-column CSV with a header row (canonically ``x,f``).

    Any two-column header is accepted so that curves written by the CLI can be
    fed back in.  Returns ``(x, f)`` as float arrays.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or len(header) < 2:
            raise InvalidSpec(f"{path}: expected a header row with two columns")
        xs, fs = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < 2:
                raise InvalidSpec(f"{path}:{lineno}: expected two columns")
            try:
                xs.append(float(row[0]))
                fs.append(float(row[1]))
            except ValueError:
                raise InvalidSpec(f"{path}:{lineno}: non-numeric value") from None
    return np.array(xs), np.array(fs)
