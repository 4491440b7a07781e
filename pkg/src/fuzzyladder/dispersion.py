"""Frequency-dependent widths and the single-excitation energy they imply.

A width law ``Gamma(omega) = g * omega**mu`` gives the dimensionless width
``zeta(omega) = Gamma / (2 omega)``; the single-excitation energy is
``C(zeta(omega)) * omega`` in units with hbar = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .distributions import DistributionSpec
from .errors import NonPositiveOmega
from .moments import commutation_function, moments_analytic

__all__ = [
    "GammaModel",
    "ModeOccupation",
    "ConstraintReport",
    "zeta_of",
    "commutation_at",
    "excitation_energy",
    "constraint_report",
    "multimode_energy",
    "dispersion_curve",
]

MODEL_KINDS = ("lorentzian", "uniform")


@dataclass(frozen=True)
class GammaModel:
    g: float
    mu: float
    c: float = 1.0
    kind: str = "lorentzian"

    def __post_init__(self):
        if not (math.isfinite(self.g) and self.g > 0):
            raise ValueError("g must be positive and finite")
        if not math.isfinite(self.mu):
            raise ValueError("mu must be finite")
        if not (math.isfinite(self.c) and self.c > 0):
            raise ValueError("c must be positive and finite")
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"kind must be one of {MODEL_KINDS}, got {self.kind!r}")

    @classmethod
    def parse(cls, text: str, kind: str = "lorentzian") -> "GammaModel":
        """Build from ``"g,mu,c"`` (``c`` optional)."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) not in (2, 3):
            raise ValueError(f"gamma model must look like g,mu,c; got {text!r}")
        try:
            vals = [float(p) for p in parts]
        except ValueError:
            raise ValueError(f"gamma model must look like g,mu,c; got {text!r}") from None
        return cls(*vals, kind=kind)

    def gamma(self, omega: float) -> float:
        return self.g * omega**self.mu


@dataclass(frozen=True)
class ModeOccupation:
    omega: float
    n: int = 0

    def __post_init__(self):
        if not self.omega > 0:
            raise NonPositiveOmega(f"mode frequency must be positive, got {self.omega}")
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("occupation must be a non-negative integer")


@dataclass(frozen=True)
class ConstraintReport:
    finite_zero_limit: bool
    large_omega_exponent_ok: bool
    monotonic_on_grid: bool
    violations: tuple
    zero_limit_energy: float
    notes: tuple = field(default=())

    @property
    def ok(self) -> bool:
        return (self.finite_zero_limit and self.large_omega_exponent_ok
                and self.monotonic_on_grid and not self.violations)


def _check_omega(omega):
    if not omega > 0:
        raise NonPositiveOmega(f"omega must be positive, got {omega}")


def zeta_of(model: GammaModel, omega: float) -> float:
    _check_omega(omega)
    return 0.5 * model.g * omega ** (model.mu - 1.0)


def commutation_at(model: GammaModel, omega: float) -> float:
    """C(zeta(omega)) from the kind's exact moments."""
    zeta = zeta_of(model, omega)
    spec = DistributionSpec(model.kind, zeta)
    return commutation_function(moments_analytic(spec)).C


def excitation_energy(model: GammaModel, omega: float) -> float:
    return commutation_at(model, omega) * omega


def dispersion_curve(model: GammaModel, omega_grid: Iterable[float],
                     parallel: bool = False) -> list[tuple[float, float]]:
    """``(omega, energy)`` pairs sorted by omega."""
    omegas = sorted(float(w) for w in omega_grid)
    for w in omegas:
        _check_omega(w)
    if parallel and len(omegas) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor() as pool:
            energies = list(pool.map(lambda w: excitation_energy(model, w), omegas))
    else:
        energies = [excitation_energy(model, w) for w in omegas]
    return list(zip(omegas, energies))


def constraint_report(model: GammaModel, omega_grid: Sequence[float]) -> ConstraintReport:
    """Check a width law against the small- and large-omega requirements.

    ``violations`` lists grid frequencies where ``c omega**2 > 1`` and
    ``Gamma(omega) >= omega sqrt(c omega**2 - 1)``.
    """
    grid = np.asarray(list(omega_grid), dtype=float)
    if grid.size == 0 or np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("omega grid must be positive and strictly increasing")
    energies = np.array([excitation_energy(model, w) for w in grid])
    monotonic = bool(np.all(np.diff(energies) >= -1e-12 * np.maximum(1.0, np.abs(energies[1:]))))
    violations = []
    for w in grid:
        s = model.c * w * w - 1.0
        if s > 0 and not model.gamma(w) < w * math.sqrt(s):
            violations.append(float(w))
    # energy at the smallest probe frequency stands in for the omega -> 0 limit
    w_small = min(1e-8, float(grid[0]))
    notes = []
    finite = model.mu > 1.0
    if not finite:
        notes.append("mu <= 1 fails the small-omega width criterion although the energy still tends to 0")
    return ConstraintReport(
        finite_zero_limit=finite,
        large_omega_exponent_ok=model.mu <= 2.0,
        monotonic_on_grid=monotonic,
        violations=tuple(violations),
        zero_limit_energy=excitation_energy(model, w_small),
        notes=tuple(notes),
    )


def multimode_energy(modes: Iterable[ModeOccupation], model: GammaModel) -> float:
    """Sum of C(omega) omega (n + 1/2) over occupied modes."""
    return float(sum(excitation_energy(model, m.omega) * (m.n + 0.5) for m in modes))
