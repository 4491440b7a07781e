"""Linear-unitary and antiunitary transforms of truncated operators."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, DimTooSmall
from .fock import interior

__all__ = [
    "LINEAR_UNITARY",
    "ANTIUNITARY",
    "SymmetryTransform",
    "SymmetryVerdict",
    "parity_transform",
    "time_reversal_transform",
    "transform_operator",
    "invariance_verdict",
]

LINEAR_UNITARY = "linear_unitary"
ANTIUNITARY = "antiunitary"
VERDICT_BORDER = 1  # one trailing row/column per side, two in total


@dataclass(frozen=True, eq=False)
class SymmetryTransform:
    """``kind`` is linear_unitary or antiunitary; ``matrix`` is the unitary part."""

    kind: str
    matrix: np.ndarray
    name: str = ""

    def __post_init__(self):
        if self.kind not in (LINEAR_UNITARY, ANTIUNITARY):
            raise ValueError(f"unknown transform kind {self.kind!r}")
        U = np.asarray(self.matrix, dtype=complex)
        if U.ndim != 2 or U.shape[0] != U.shape[1]:
            raise ValueError("transform matrix must be square")
        if np.max(np.abs(U @ U.conj().T - np.eye(U.shape[0]))) > 1e-10:
            raise ValueError("transform matrix is not unitary")
        object.__setattr__(self, "matrix", U)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SymmetryVerdict:
    invariant: bool
    deviation: float
    tolerance: float


def _check(dim):
    if dim < 2:
        raise DimTooSmall("transform needs dim >= 2")


def parity_transform(dim: int) -> SymmetryTransform:
    _check(dim)
    return SymmetryTransform(LINEAR_UNITARY, np.diag((-1.0) ** np.arange(dim)), "parity")


def time_reversal_transform(dim: int) -> SymmetryTransform:
    """Complex conjugation in the Fock basis, whose position wavefunctions are real."""
    _check(dim)
    return SymmetryTransform(ANTIUNITARY, np.eye(dim), "time_reversal")


def transform_operator(t: SymmetryTransform, A: np.ndarray) -> np.ndarray:
    A = np.asarray(A)
    if A.shape != t.matrix.shape:
        raise DimMismatch(f"operator shape {A.shape} does not match transform {t.matrix.shape}")
    U = t.matrix
    if t.kind == ANTIUNITARY:
        A = A.conj()
    return U @ A @ U.conj().T


def invariance_verdict(t: SymmetryTransform, H: np.ndarray, tol: float) -> SymmetryVerdict:
    """Compare ``O H O^-1`` with ``H`` in spectral norm on the interior block."""
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    diff = interior(transform_operator(t, H) - H, VERDICT_BORDER)
    dev = float(np.linalg.norm(diff, 2)) if diff.size else 0.0
    return SymmetryVerdict(dev <= tol, dev, tol)
