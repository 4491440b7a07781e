"""Truncated Fock-space matrices for sharp and fuzzy ladder operators.

Basis states are |0>, ..., |N-1>.  Operator identities such as
``[a, a_dag] = 1`` only hold on a leading block of the truncated matrices;
the helpers here take an explicit ``border`` that drops trailing rows and
columns before comparing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .branch import inv_branch_sqrt
from .errors import (
    DegenerateC,
    DimTooSmall,
    NonConvergentSeries,
    NonPositiveRatio,
    NotHermitian,
    TailTooFat,
    TruncationOverflow,
    ZeroRatio,
)
from .moments import FuzzyCoefficients

__all__ = [
    "SharpOperators",
    "LadderSet",
    "FockVector",
    "HamiltonianSpec",
    "sharp_ladder",
    "annihilator_at_frequency",
    "cross_commutator_value",
    "fuzzy_ladder",
    "number_operator",
    "hamiltonian",
    "fuzzy_vacuum",
    "vacuum_closed_form",
    "vacuum_decay_ratio",
    "auto_dim",
    "fuzzy_fock_state",
    "spectrum",
    "eigenstates",
    "interior",
    "commutator",
]

DEFAULT_DIM = 64
DEFAULT_TAIL_TOL = 1e-14


class SharpOperators(NamedTuple):
    a: np.ndarray
    a_dag: np.ndarray
    q: np.ndarray
    p: np.ndarray


@dataclass(frozen=True, eq=False)
class LadderSet:
    dim: int
    a_sharp: np.ndarray
    a_sharp_dag: np.ndarray
    a_fuzzy: np.ndarray
    a_fuzzy_dag: np.ndarray
    coeffs: FuzzyCoefficients
    hbar_omega: float = 1.0


@dataclass(frozen=True, eq=False)
class FockVector:
    coeffs: np.ndarray
    label: str = ""

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def tail_weight(self, width: int = 2) -> float:
        return float(np.sum(np.abs(self.coeffs[-width:]) ** 2))


@dataclass(frozen=True)
class HamiltonianSpec:
    """Charged oscillator in a uniform field: H = hbar_omega (n + 1/2) - drive (a_dag + a).

    ``drive`` folds the charge, field and length scale into one number.
    """

    hbar_omega: float = 1.0
    drive: float = 0.0
    fuzzy: bool = True

    def __post_init__(self):
        if not math.isfinite(self.drive):
            raise ValueError("drive must be finite")
        if not self.hbar_omega > 0:
            raise ValueError("hbar_omega must be positive")


def _check_dim(dim, minimum=3):
    if int(dim) != dim or dim < minimum:
        raise DimTooSmall(f"dimension must be an integer >= {minimum}, got {dim}")
    return int(dim)


def interior(M, border=1):
    """Leading block of ``M`` with ``2*border`` trailing rows/columns removed."""
    n = M.shape[0] - 2 * border
    if n <= 0:
        raise DimTooSmall("matrix too small for the requested border")
    return M[:n, :n]


def commutator(A, B):
    return A @ B - B @ A


def sharp_ladder(dim: int) -> SharpOperators:
    """Annihilator, creator, position and momentum (hbar = m = omega = 1)."""
    dim = _check_dim(dim)
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)
    ad = a.conj().T
    q = (a + ad) / math.sqrt(2.0)
    p = 1j * (ad - a) / math.sqrt(2.0)
    return SharpOperators(a, ad, q, p)


def annihilator_at_frequency(dim: int, ratio: float) -> np.ndarray:
    """Annihilator of frequency ``ratio * omega`` written in the omega basis.

    Negative ratios use the branch ``1/sqrt(-1) = -i`` and turn annihilation
    into creation: ``ratio = -1`` gives ``i * a_dag``.
    """
    if ratio == 0:
        raise ZeroRatio("frequency ratio must be non-zero")
    a, ad, _, _ = sharp_ladder(dim)
    x = ratio - 1.0
    return inv_branch_sqrt(complex(ratio)) * (a + 0.5 * x * (ad + a))


def cross_commutator_value(r: float) -> float:
    """[a_omega, a_omega'] for r = omega'/omega > 0."""
    if not r > 0:
        raise NonPositiveRatio(f"ratio must be positive, got {r}")
    s = math.sqrt(r)
    return 0.5 * (s - 1.0 / s)


def fuzzy_ladder(dim: int, coeffs: FuzzyCoefficients, hbar_omega: float = 1.0) -> LadderSet:
    a, ad, _, _ = sharp_ladder(dim)
    af = coeffs.u * a + coeffs.v * ad
    return LadderSet(
        dim=a.shape[0],
        a_sharp=a,
        a_sharp_dag=ad,
        a_fuzzy=af,
        a_fuzzy_dag=af.conj().T,
        coeffs=coeffs,
        hbar_omega=hbar_omega,
    )


def number_operator(ls: LadderSet) -> np.ndarray:
    C = ls.coeffs.C
    if C <= 1e-12:
        raise DegenerateC(f"commutation function {C} too small to define a number operator")
    return (ls.a_fuzzy_dag @ ls.a_fuzzy) / C


def hamiltonian(ls: LadderSet, hspec: HamiltonianSpec | None = None) -> np.ndarray:
    """Oscillator Hamiltonian built from fuzzy (or sharp) ladder matrices."""
    hspec = hspec or HamiltonianSpec(hbar_omega=ls.hbar_omega)
    eye = np.eye(ls.dim)
    if hspec.fuzzy:
        a, ad, zero_point = ls.a_fuzzy, ls.a_fuzzy_dag, 0.5 * ls.coeffs.C
    else:
        a, ad, zero_point = ls.a_sharp, ls.a_sharp_dag, 0.5
    H = hspec.hbar_omega * (ad @ a + zero_point * eye)
    if hspec.drive:
        H = H - hspec.drive * (ad + a)
    # product of a truncated pair is Hermitian up to rounding; make it exact
    return 0.5 * (H + H.conj().T)


# ---------------------------------------------------------------------------
# fuzzy vacuum


def vacuum_decay_ratio(coeffs: FuzzyCoefficients) -> complex:
    """Ratio -I1 / (2 I0 + I1) between successive even vacuum coefficients (up to the product factor)."""
    I0, I1 = coeffs.I0, coeffs.I1
    lead = 2.0 * I0 + I1
    if lead == 0:
        raise NonConvergentSeries("2 I0 + I1 = 0: the vacuum recursion is singular")
    return -I1 / lead


def auto_dim(coeffs: FuzzyCoefficients, tail_tol: float = DEFAULT_TAIL_TOL) -> int:
    """Smallest even dimension whose vacuum tail is below ``tail_tol``, at least 16."""
    rho = abs(vacuum_decay_ratio(coeffs))
    if rho >= 1.0:
        raise NonConvergentSeries(f"vacuum series ratio {rho:.6g} >= 1")
    if rho == 0.0:
        return 16
    dim = 2 * math.ceil(math.log(tail_tol) / math.log(rho)) + 8
    dim = max(16, dim)
    return dim + (dim % 2)


def vacuum_closed_form(coeffs: FuzzyCoefficients, dim: int) -> np.ndarray:
    """Unnormalised even coefficients from the explicit product formula, alpha_0 = 1."""
    ratio = vacuum_decay_ratio(coeffs)
    alpha = np.zeros(dim, dtype=complex)
    for k in range((dim + 1) // 2):
        prod = math.prod((2 * l - 1) / (2 * l) for l in range(1, k + 1))
        alpha[2 * k] = ratio**k * math.sqrt(prod)
    return alpha


def fuzzy_vacuum(coeffs: FuzzyCoefficients, dim: int | None = None,
                 tail_tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """State annihilated by the fuzzy annihilator, in the sharp Fock basis.

    Coefficients follow the two-term recursion
    ``(2 I0 + I1) sqrt(n+1) alpha[n+1] + I1 sqrt(n) alpha[n-1] = 0`` with
    ``alpha[1] = 0``; the vector is normalised with ``alpha[0]`` real and
    positive.  ``dim=None`` sizes the truncation from the decay ratio.
    """
    I0, I1 = coeffs.I0, coeffs.I1
    lead = 2.0 * I0 + I1
    if abs(vacuum_decay_ratio(coeffs)) >= 1.0:
        raise NonConvergentSeries("|I1 / (2 I0 + I1)| >= 1: the vacuum is not normalisable")
    if dim is None:
        dim = auto_dim(coeffs, tail_tol)
    dim = _check_dim(dim)
    alpha = np.zeros(dim, dtype=complex)
    alpha[0] = 1.0
    for n in range(1, dim - 1):
        alpha[n + 1] = -I1 * math.sqrt(n) * alpha[n - 1] / (lead * math.sqrt(n + 1))
    alpha /= np.linalg.norm(alpha)
    vac = FockVector(alpha, "fuzzy vacuum")
    tail = vac.tail_weight(2)
    if tail > tail_tol:
        raise TailTooFat(
            f"vacuum tail weight {tail:.3g} exceeds {tail_tol:.3g} at dim={dim}; "
            f"try dim >= {auto_dim(coeffs, tail_tol)}"
        )
    return vac


def fuzzy_fock_state(n: int, vac: FockVector, ls: LadderSet, margin: int = 8,
                     tail_tol: float = 1e-10) -> FockVector:
    """Normalised ``(a_fuzzy_dag)**n |vacuum>``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if 2 * n + margin >= ls.dim:
        raise TruncationOverflow(f"n={n} needs dim > {2 * n + margin}, have {ls.dim}")
    psi = vac.coeffs.copy()
    for _ in range(n):
        psi = ls.a_fuzzy_dag @ psi
    psi = psi / np.linalg.norm(psi)
    out = FockVector(psi, f"fuzzy |{n}>")
    if out.tail_weight(2) > tail_tol:
        raise TruncationOverflow(f"fuzzy |{n}> leaks {out.tail_weight(2):.3g} into the truncation edge")
    return out


# ---------------------------------------------------------------------------
# spectra


def _check_hermitian(H, tol=1e-10):
    dev = np.max(np.abs(H - H.conj().T)) if H.size else 0.0
    if dev > tol * max(1.0, np.max(np.abs(H))):
        raise NotHermitian(f"matrix deviates from Hermitian by {dev:.3g}")


def spectrum(H: np.ndarray, count: int | None = None) -> np.ndarray:
    """Lowest ``count`` eigenvalues (ascending); ``count`` at most dim // 2."""
    _check_hermitian(H)
    dim = H.shape[0]
    count = dim // 2 if count is None else count
    if count > dim // 2:
        raise ValueError(f"only the lowest dim//2 = {dim // 2} levels are trusted")
    w = np.linalg.eigvalsh(0.5 * (H + H.conj().T))
    return w[:count]


def _parity_weight(vec):
    return float(np.sum(np.abs(vec[0::2]) ** 2))


def eigenstates(H: np.ndarray, count: int | None = None, degeneracy_tol: float = 1e-10):
    """Lowest eigenpairs; degenerate levels list parity-even-dominant vectors first.

    Each eigenvector's phase is fixed so its largest component is real positive.
    """
    _check_hermitian(H)
    dim = H.shape[0]
    count = dim // 2 if count is None else count
    if count > dim // 2:
        raise ValueError(f"only the lowest dim//2 = {dim // 2} levels are trusted")
    w, V = np.linalg.eigh(0.5 * (H + H.conj().T))
    order = sorted(range(dim), key=lambda i: (round(w[i] / degeneracy_tol), -_parity_weight(V[:, i])))
    w = w[order][:count]
    V = V[:, order][:, :count]
    for j in range(V.shape[1]):
        i = int(np.argmax(np.abs(V[:, j])))
        V[:, j] *= abs(V[i, j]) / V[i, j]
    return w, V
