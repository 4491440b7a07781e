import numpy as np
import pytest

from fuzzyladder import fock, symmetry
from fuzzyladder.distributions import DistributionSpec
from fuzzyladder.errors import DimMismatch
from fuzzyladder.moments import coefficients


def fuzzy(kind, zeta, dim=32):
    spec = DistributionSpec.delta() if kind == "delta" else DistributionSpec(kind, zeta)
    return fock.fuzzy_ladder(dim, coefficients(spec))


def test_parity_matrix():
    assert np.array_equal(symmetry.parity_transform(4).matrix, np.diag([1, -1, 1, -1]))


def test_parity_flips_ladders():
    P = symmetry.parity_transform(16)
    ls = fuzzy("lorentzian", 0.3, 16)
    assert np.array_equal(symmetry.transform_operator(P, ls.a_sharp), -ls.a_sharp)
    assert np.array_equal(symmetry.transform_operator(P, ls.a_fuzzy), -ls.a_fuzzy)


def test_time_reversal():
    T = symmetry.time_reversal_transform(8)
    a = fock.sharp_ladder(8).a
    assert np.array_equal(symmetry.transform_operator(T, a), a)
    assert np.array_equal(symmetry.transform_operator(T, 1j * a), -1j * a)
    ls = fuzzy("uniform", 0.5, 8)
    assert np.array_equal(symmetry.transform_operator(T, ls.a_fuzzy), ls.a_fuzzy)


@pytest.mark.parametrize("kind", ["delta", "lorentzian", "uniform", "gaussian"])
@pytest.mark.parametrize("zeta", [0.1, 0.5, 1.0, 2.0])
def test_parity_invariance_everywhere(kind, zeta):
    H = fock.hamiltonian(fuzzy(kind, zeta))
    v = symmetry.invariance_verdict(symmetry.parity_transform(32), H, 1e-10)
    assert v.invariant and v.deviation < 1e-12


def test_driven_hamiltonian_breaks_parity():
    H = fock.hamiltonian(fuzzy("lorentzian", 0.3), fock.HamiltonianSpec(drive=0.4))
    assert not symmetry.invariance_verdict(symmetry.parity_transform(32), H, 1e-8).invariant


def test_time_reversal_verdicts():
    T = symmetry.time_reversal_transform(32)
    drive = fock.HamiltonianSpec(drive=0.5)
    sharp = fock.hamiltonian(fuzzy("lorentzian", 0.3), fock.HamiltonianSpec(drive=0.5, fuzzy=False))
    assert np.array_equal(symmetry.transform_operator(T, sharp), sharp)
    lor = symmetry.invariance_verdict(T, fock.hamiltonian(fuzzy("lorentzian", 0.3), drive), 1e-8)
    uni = symmetry.invariance_verdict(T, fock.hamiltonian(fuzzy("uniform", 0.5), drive), 1e-8)
    assert not lor.invariant and lor.deviation > 1e-2
    assert uni.invariant and uni.deviation < 1e-8
    assert lor.invariant == (lor.deviation <= lor.tolerance)


def test_undriven_lorentzian_time_reversal_reported():
    # complex u, v make even the undriven fuzzy Hamiltonian non-real
    T = symmetry.time_reversal_transform(32)
    v = symmetry.invariance_verdict(T, fock.hamiltonian(fuzzy("lorentzian", 0.3)), 1e-8)
    assert not v.invariant


def test_lu_inheritance_for_phase_rotations():
    # exp(i theta n) maps a to exp(-i theta) a; only real alpha = +-1 pass to a_fuzzy
    ls = fuzzy("lorentzian", 0.3, 16)
    P = symmetry.parity_transform(16)
    assert np.max(np.abs(symmetry.transform_operator(P, ls.a_fuzzy) + ls.a_fuzzy)) < 1e-10


def test_hermiticity_preserved():
    H = fock.hamiltonian(fuzzy("gaussian", 0.7), fock.HamiltonianSpec(drive=0.3))
    rng_u = np.linalg.qr(np.random.default_rng(1).normal(size=(32, 32)) + 0j)[0]
    t = symmetry.SymmetryTransform(symmetry.LINEAR_UNITARY, rng_u)
    out = symmetry.transform_operator(t, H)
    assert np.max(np.abs(out - out.conj().T)) < 1e-12


def test_validation():
    with pytest.raises(ValueError):
        symmetry.SymmetryTransform(symmetry.LINEAR_UNITARY, np.ones((2, 2)))
    with pytest.raises(ValueError):
        symmetry.SymmetryTransform("rotation", np.eye(2))
    with pytest.raises(DimMismatch):
        symmetry.transform_operator(symmetry.parity_transform(4), np.eye(5))
