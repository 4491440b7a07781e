"""Position-space wavefunctions, displacements and fuzzy coherent states."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid
from scipy.linalg import expm

from .errors import DegreeTooLarge, DimMismatch, DisplacementTooLarge
from .fock import FockVector, LadderSet, fuzzy_fock_state, fuzzy_ladder, fuzzy_vacuum, sharp_ladder
from .moments import FuzzyCoefficients

__all__ = [
    "Grid",
    "DisplacementArg",
    "hermite_table",
    "hermite_wavefunction",
    "wavefunction",
    "position_density",
    "rescale_displacement",
    "displacement_matrix",
    "fuzzy_displacement_matrix",
    "coherent_displaced",
    "coherent_sum",
    "coherent_phase_space",
    "fidelity",
    "expectation",
]

MAX_HERMITE_DEGREE = 400


@dataclass(frozen=True, eq=False)
class Grid:
    """Dimensionless positions in units of the oscillator length."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size == 0:
            raise ValueError("grid must be a non-empty 1-d array")
        if not np.all(np.isfinite(pts)):
            raise ValueError("grid points must be finite")
        if pts.size > 1 and np.any(np.diff(pts) <= 0):
            raise ValueError("grid points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @classmethod
    def linspace(cls, start=-5.0, stop=5.0, num=1001):
        return cls(np.linspace(start, stop, int(num)))

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """Parse ``"A:B:N"`` into N evenly spaced points from A to B."""
        try:
            a, b, n = text.split(":")
            return cls.linspace(float(a), float(b), int(n))
        except ValueError:
            raise ValueError(f"grid must look like A:B:N, got {text!r}") from None

    def integrate(self, values):
        return float(trapezoid(values, self.points))


@dataclass(frozen=True)
class DisplacementArg:
    """Displacement amplitude and its rescaled counterpart.

    ``z_rescaled`` is ``u z - v conj(z)``.  ``z_generator`` is
    ``conj(u) z - v conj(z)``, the amplitude for which the sharp generator
    ``zz a_dag - conj(zz) a`` equals ``z a_fuzzy_dag - conj(z) a_fuzzy``
    exactly; the two coincide whenever ``u`` is real.
    """

    z: complex
    z_rescaled: complex
    z_generator: complex


def hermite_table(nmax: int, xi) -> np.ndarray:
    """Rows 0..nmax of normalised oscillator eigenfunctions on ``xi``.

    Uses phi_{n+1} = xi sqrt(2/(n+1)) phi_n - sqrt(n/(n+1)) phi_{n-1}.
    """
    if nmax > MAX_HERMITE_DEGREE:
        raise DegreeTooLarge(f"degree {nmax} exceeds {MAX_HERMITE_DEGREE}")
    if nmax < 0:
        raise ValueError("degree must be non-negative")
    xi = np.asarray(xi, dtype=float)
    out = np.empty((nmax + 1,) + xi.shape)
    out[0] = math.pi**-0.25 * np.exp(-0.5 * xi * xi)
    if nmax >= 1:
        out[1] = math.sqrt(2.0) * xi * out[0]
    for n in range(1, nmax):
        out[n + 1] = xi * math.sqrt(2.0 / (n + 1)) * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


def hermite_wavefunction(n: int, grid: Grid) -> np.ndarray:
    return hermite_table(n, grid.points)[n]


def wavefunction(state: FockVector, grid: Grid) -> np.ndarray:
    """Complex position amplitude sum_j alpha_j phi_j(xi)."""
    table = hermite_table(state.dim - 1, grid.points)
    return state.coeffs @ table


def position_density(state: FockVector, grid: Grid) -> np.ndarray:
    return np.abs(wavefunction(state, grid)) ** 2


# ---------------------------------------------------------------------------
# displacements


def rescale_displacement(z: complex, coeffs: FuzzyCoefficients) -> DisplacementArg:
    z = complex(z)
    u, v = coeffs.u, coeffs.v
    return DisplacementArg(
        z=z,
        z_rescaled=u * z - v * z.conjugate(),
        z_generator=u.conjugate() * z - v * z.conjugate(),
    )


def _check_amplitude(dim, zz):
    if abs(zz) ** 2 >= dim / 8:
        raise DisplacementTooLarge(f"|z|^2 = {abs(zz) ** 2:.3g} must stay below dim/8 = {dim / 8:.3g}")


def displacement_matrix(dim: int, zeta_arg) -> np.ndarray:
    """Sharp displacement exp(zz a_dag - conj(zz) a) in a truncated basis.

    ``zeta_arg`` may be a complex amplitude or a :class:`DisplacementArg`, in
    which case its ``z_generator`` is used.
    """
    zz = zeta_arg.z_generator if isinstance(zeta_arg, DisplacementArg) else complex(zeta_arg)
    a, ad, _, _ = sharp_ladder(dim)
    _check_amplitude(dim, zz)
    return expm(zz * ad - zz.conjugate() * a)


def fuzzy_displacement_matrix(ls: LadderSet, z: complex) -> np.ndarray:
    """exp(z a_fuzzy_dag - conj(z) a_fuzzy)."""
    z = complex(z)
    _check_amplitude(ls.dim, rescale_displacement(z, ls.coeffs).z_generator)
    return expm(z * ls.a_fuzzy_dag - z.conjugate() * ls.a_fuzzy)


def _normalised(vec, label):
    return FockVector(vec / np.linalg.norm(vec), label)


def coherent_displaced(z: complex, coeffs: FuzzyCoefficients, dim: int = 64) -> FockVector:
    """Displaced fuzzy vacuum D_fuzzy(z)|0_fuzzy>."""
    vac = fuzzy_vacuum(coeffs, dim)
    D = displacement_matrix(dim, rescale_displacement(z, coeffs))
    return _normalised(D @ vac.coeffs, f"displaced z={complex(z)}")


def coherent_sum(z: complex, coeffs: FuzzyCoefficients, dim: int = 64,
                 tol: float = 1e-16) -> FockVector:
    """exp(-|z|^2/2) sum_n z^n/sqrt(n!) |n_fuzzy>, truncated once terms drop below ``tol``."""
    z = complex(z)
    if abs(z) ** 2 >= dim / 8:
        raise DisplacementTooLarge(f"|z|^2 = {abs(z) ** 2:.3g} must stay below dim/8")
    ls = fuzzy_ladder(dim, coeffs)
    vac = fuzzy_vacuum(coeffs, dim)
    nmax = (dim - 9) // 2
    total = np.zeros(dim, dtype=complex)
    state = vac.coeffs.copy()
    amp = 1.0 + 0j
    for n in range(nmax + 1):
        if n:
            state = ls.a_fuzzy_dag @ state
            state /= np.linalg.norm(state)
            amp *= z / math.sqrt(n)
        total += amp * state
        if abs(amp) < tol and n > abs(z) ** 2:
            break
    total *= math.exp(-0.5 * abs(z) ** 2)
    return _normalised(total, f"coherent sum z={z}")


def coherent_phase_space(z: complex, coeffs: FuzzyCoefficients, dim: int = 32,
                         n_radial: int = 96, n_angular: int = 96) -> FockVector:
    """Displaced fuzzy vacuum assembled from the coherent-state resolution of unity.

    Integrates ``<w|D(zz)|0_fuzzy> |w> d^2w / pi`` over the disk
    ``|w| <= |zz| + 6`` with Gauss-Legendre radii and uniform angles.  The
    overlap carries the displacement phase
    ``exp((zz conj(w) - conj(zz) w)/2)`` in front of ``<w - zz|0_fuzzy>``.
    Meant as an independent check on :func:`coherent_displaced`.
    """
    zz = rescale_displacement(z, coeffs).z_generator
    vac = fuzzy_vacuum(coeffs, dim)
    alpha = vac.coeffs
    radius = abs(zz) + 6.0
    xr, wr = np.polynomial.legendre.leggauss(n_radial)
    r = 0.5 * radius * (xr + 1.0)
    wr = 0.5 * radius * wr
    th = 2 * math.pi * np.arange(n_angular) / n_angular
    wth = 2 * math.pi / n_angular
    R, TH = np.meshgrid(r, th, indexing="ij")
    W = R * np.exp(1j * TH)
    weight = (wr[:, None] * R * wth) / math.pi
    n = np.arange(dim)
    log_fact = np.array([math.lgamma(k + 1) for k in n])

    def coherent_coeffs(c):
        # <n|c> = exp(-|c|^2/2) c^n / sqrt(n!)
        with np.errstate(divide="ignore", invalid="ignore"):
            powers = np.where(n[:, None, None] == 0, 1.0 + 0j, c[None] ** n[:, None, None])
        return np.exp(-0.5 * np.abs(c) ** 2)[None] * powers / np.exp(0.5 * log_fact)[:, None, None]

    shifted = coherent_coeffs(W - zz)
    overlap = np.einsum("n,nij->ij", alpha, shifted.conj())
    phase = np.exp(0.5 * (zz * W.conj() - zz.conjugate() * W))
    amp = phase * overlap * weight
    out = np.einsum("ij,nij->n", amp, coherent_coeffs(W))
    return _normalised(out, f"phase-space z={complex(z)}")


def fidelity(a: FockVector, b: FockVector) -> float:
    if a.dim != b.dim:
        raise DimMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    return float(abs(np.vdot(a.coeffs, b.coeffs)) ** 2)


def expectation(state: FockVector, op: np.ndarray) -> complex:
    return complex(np.vdot(state.coeffs, op @ state.coeffs))
