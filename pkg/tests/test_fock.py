import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzzyladder import fock
from fuzzyladder.distributions import DistributionSpec
from fuzzyladder.errors import (
    DegenerateC,
    DimTooSmall,
    NonConvergentSeries,
    NonPositiveRatio,
    NotHermitian,
    TailTooFat,
    TruncationOverflow,
    ZeroRatio,
)
from fuzzyladder.moments import FuzzyCoefficients, coefficients

LOR = coefficients(DistributionSpec.lorentzian(0.3))
UNI = coefficients(DistributionSpec.uniform(0.5))
SHARP = coefficients(DistributionSpec.delta())


def eye_block(M, border=1):
    block = fock.interior(M, border)
    return block, np.eye(block.shape[0])


def test_sharp_matrix_elements():
    a = fock.sharp_ladder(3).a
    assert np.allclose(a[0], [0, 1, 0]) and np.allclose(a[1], [0, 0, math.sqrt(2)])


def test_sharp_canonical_pairs():
    ops = fock.sharp_ladder(16)
    block, eye = eye_block(fock.commutator(ops.a, ops.a_dag))
    assert np.allclose(block, eye, rtol=0, atol=1e-14)
    block, eye = eye_block(fock.commutator(ops.q, ops.p))
    assert np.allclose(block, 1j * eye, atol=1e-14)


def test_dim_too_small():
    with pytest.raises(DimTooSmall):
        fock.sharp_ladder(2)


def test_annihilator_at_frequency():
    assert np.array_equal(fock.annihilator_at_frequency(16, 1.0), fock.sharp_ladder(16).a)
    a = fock.sharp_ladder(16).a
    block, eye = eye_block(fock.commutator(a, fock.annihilator_at_frequency(16, 4.0)))
    assert np.allclose(block, 0.75 * eye, atol=1e-13)
    flipped = fock.annihilator_at_frequency(16, -1.0)
    assert np.allclose(flipped, 1j * fock.sharp_ladder(16).a_dag, atol=1e-15)
    block, eye = eye_block(-1j * fock.commutator(a, flipped))
    assert np.allclose(block, eye, atol=1e-14)
    with pytest.raises(ZeroRatio):
        fock.annihilator_at_frequency(8, 0.0)


def test_equal_frequency_limit_is_linear():
    a = fock.sharp_ladder(16).a
    errs = [np.max(np.abs(fock.annihilator_at_frequency(16, 1 + h) - a)) for h in (1e-2, 1e-3, 1e-4)]
    assert errs[0] / errs[1] == pytest.approx(10, rel=0.05)
    assert errs[1] / errs[2] == pytest.approx(10, rel=0.05)


def test_cross_commutator_matches_matrices():
    assert fock.cross_commutator_value(1.0) == 0
    assert fock.cross_commutator_value(4.0) == pytest.approx(0.75)
    assert fock.cross_commutator_value(0.25) == pytest.approx(-0.75)
    a1 = fock.annihilator_at_frequency(16, 1.0)
    for r in (0.5, 2.0, 9.0):
        block, eye = eye_block(fock.commutator(a1, fock.annihilator_at_frequency(16, r)))
        assert np.allclose(block, fock.cross_commutator_value(r) * eye, atol=1e-12)
    with pytest.raises(NonPositiveRatio):
        fock.cross_commutator_value(-1.0)


def test_fuzzy_ladder_structure():
    ls = fock.fuzzy_ladder(32, LOR)
    assert np.array_equal(ls.a_fuzzy, LOR.u * ls.a_sharp + LOR.v * ls.a_sharp_dag)
    other = np.conj(LOR.u) * ls.a_sharp_dag + np.conj(LOR.v) * ls.a_sharp
    assert np.allclose(ls.a_fuzzy_dag, other, atol=0)
    assert np.array_equal(fock.fuzzy_ladder(8, SHARP).a_fuzzy, fock.sharp_ladder(8).a)


@pytest.mark.parametrize("coeffs,expected", [(LOR, 0.957826285221151), (UNI, UNI.C)])
def test_interior_commutator(coeffs, expected):
    ls = fock.fuzzy_ladder(32, coeffs)
    block, eye = eye_block(fock.commutator(ls.a_fuzzy, ls.a_fuzzy_dag))
    assert np.max(np.abs(block - expected * eye)) < 1e-10


def test_number_operator():
    assert np.allclose(fock.number_operator(fock.fuzzy_ladder(6, SHARP)), np.diag(np.arange(6.0)))
    ls = fock.fuzzy_ladder(48, LOR)
    N = fock.number_operator(ls)
    assert np.max(np.abs(N - N.conj().T)) < 1e-12
    assert np.linalg.eigvalsh(N)[0] < 1e-6
    block = fock.interior(fock.commutator(ls.a_fuzzy, N), 1)
    assert np.max(np.abs(block - fock.interior(ls.a_fuzzy, 1))) < 1e-9
    block = fock.interior(fock.commutator(ls.a_fuzzy_dag, N), 1)
    assert np.max(np.abs(block + fock.interior(ls.a_fuzzy_dag, 1))) < 1e-9
    with pytest.raises(DegenerateC):
        fock.number_operator(fock.fuzzy_ladder(8, FuzzyCoefficients(0.5, 0.5, 0.0)))


def test_sharp_hamiltonian():
    H = fock.hamiltonian(fock.fuzzy_ladder(10, LOR), fock.HamiltonianSpec(fuzzy=False))
    assert np.allclose(np.linalg.eigvalsh(H)[:8], np.arange(8) + 0.5, atol=1e-10)


def test_fuzzy_hamiltonian_levels():
    H = fock.hamiltonian(fock.fuzzy_ladder(64, LOR))
    w = fock.spectrum(H, 4)
    assert w[0] == pytest.approx(0.478913142610576, abs=1e-9)
    assert w[1] - w[0] == pytest.approx(0.957826285221151, abs=1e-9)


def test_uniform_spectrum_spacing():
    w = fock.spectrum(fock.hamiltonian(fock.fuzzy_ladder(96, UNI)), 10)
    assert np.allclose(np.diff(w), UNI.C, atol=1e-8)


def test_spectrum_count_and_hermiticity():
    H = fock.hamiltonian(fock.fuzzy_ladder(16, LOR))
    with pytest.raises(ValueError):
        fock.spectrum(H, 9)
    bad = H.copy()
    bad[0, 1] += 1.0
    with pytest.raises(NotHermitian):
        fock.spectrum(bad, 2)


def test_sharp_spectrum():
    w = fock.spectrum(fock.hamiltonian(fock.fuzzy_ladder(32, SHARP)), 10)
    assert np.allclose(w, np.arange(10) + 0.5, atol=1e-9)


def test_vacuum_values():
    vac = fock.fuzzy_vacuum(LOR, 64)
    assert abs(vac.coeffs[0]) ** 2 == pytest.approx(2 / math.sqrt(4.09), abs=1e-12)
    assert vac.coeffs[0].imag == 0 and vac.coeffs[0].real > 0
    assert abs(vac.coeffs[2] / vac.coeffs[0]) == pytest.approx(0.3 / math.sqrt(4.09) * math.sqrt(0.5), abs=1e-12)
    assert np.all(vac.coeffs[1::2] == 0)
    assert np.linalg.norm(fock.fuzzy_ladder(64, LOR).a_fuzzy @ vac.coeffs) < 1e-8
    assert np.array_equal(fock.fuzzy_vacuum(SHARP, 8).coeffs, np.eye(8)[0])


def test_vacuum_matches_lorentzian_series():
    # coefficients (zeta/(2i - zeta))^k sqrt((k-1/2)!/k!) up to the common factor
    z = 0.3
    vac = fock.fuzzy_vacuum(LOR, 64)
    ratio = z / (2j - z)
    for k in range(1, 20):
        expected = ratio**k * math.sqrt(math.gamma(k + 0.5) / math.gamma(k + 1) / math.gamma(0.5))
        assert vac.coeffs[2 * k] / vac.coeffs[0] == pytest.approx(expected, rel=1e-12)


def test_recursion_matches_closed_form():
    for coeffs in (LOR, UNI, coefficients(DistributionSpec.gaussian(0.8))):
        vac = fock.fuzzy_vacuum(coeffs, 64, tail_tol=1.0)
        closed = fock.vacuum_closed_form(coeffs, 64)
        closed /= np.linalg.norm(closed)
        even = vac.coeffs[0:62:2]
        nz = np.abs(even) > 1e-290
        assert np.all(np.abs(closed[0:62:2][nz] - even[nz]) <= 1e-12 * np.abs(even[nz]))


def test_truncation_convergence():
    resid = []
    for dim in (16, 32, 64, 128):
        vac = fock.fuzzy_vacuum(LOR, dim, tail_tol=1.0)
        resid.append(np.linalg.norm(fock.fuzzy_ladder(dim, LOR).a_fuzzy @ vac.coeffs))
    assert all(b <= a * 1.01 or b < 1e-15 for a, b in zip(resid, resid[1:]))
    assert resid[-1] < 1e-15


def test_tail_and_series_errors():
    with pytest.raises(TailTooFat):
        fock.fuzzy_vacuum(coefficients(DistributionSpec.lorentzian(5.0)), 8)
    # I1 / (2 I0 + I1) with |ratio| >= 1
    bad = FuzzyCoefficients(u=0.5 + 0j, v=1.0 + 0j, C=-0.75)
    with pytest.raises(NonConvergentSeries):
        fock.fuzzy_vacuum(bad, 16)
    with pytest.raises(NonConvergentSeries):
        fock.fuzzy_vacuum(FuzzyCoefficients(u=1.0 + 0j, v=1.0 + 0j, C=0.0), 16)


def test_auto_dim_meets_tail():
    for z in (0.1, 1.0, 5.0):
        c = coefficients(DistributionSpec.lorentzian(z))
        dim = fock.auto_dim(c, 1e-14)
        assert dim % 2 == 0 and dim >= 16
        assert fock.fuzzy_vacuum(c).tail_weight() <= 1e-14


def test_fock_states():
    ls = fock.fuzzy_ladder(64, LOR)
    vac = fock.fuzzy_vacuum(LOR, 64)
    assert np.allclose(fock.fuzzy_fock_state(0, vac, ls).coeffs, vac.coeffs, rtol=0, atol=1e-15)
    one = fock.fuzzy_fock_state(1, vac, ls)
    assert np.all(one.coeffs[0::2] == 0)
    assert np.linalg.norm(ls.a_fuzzy_dag @ vac.coeffs) ** 2 == pytest.approx(LOR.C, abs=1e-8)
    for n in range(6):
        state = fock.fuzzy_fock_state(n, vac, ls)
        assert np.linalg.norm(ls.a_fuzzy_dag @ state.coeffs) ** 2 == pytest.approx(LOR.C * (n + 1), abs=1e-7)
        assert np.linalg.norm(ls.a_fuzzy @ state.coeffs) ** 2 == pytest.approx(LOR.C * n, abs=1e-7)
    with pytest.raises(TruncationOverflow):
        fock.fuzzy_fock_state(30, vac, ls)


def test_fock_states_are_orthonormal():
    ls = fock.fuzzy_ladder(64, LOR)
    vac = fock.fuzzy_vacuum(LOR, 64)
    S = np.array([fock.fuzzy_fock_state(n, vac, ls).coeffs for n in range(6)])
    assert np.allclose(S.conj() @ S.T, np.eye(6), atol=1e-10)


@pytest.mark.parametrize("coeffs", [LOR, UNI])
def test_eigenvector_parity(coeffs):
    H = fock.hamiltonian(fock.fuzzy_ladder(64, coeffs))
    w, V = fock.eigenstates(H, 20)
    for j in range(V.shape[1]):
        even = np.sum(np.abs(V[0::2, j]) ** 2)
        assert min(even, 1 - even) < 1e-8


def test_eigenstates_are_fuzzy_fock_states():
    ls = fock.fuzzy_ladder(64, LOR)
    vac = fock.fuzzy_vacuum(LOR, 64)
    _, V = fock.eigenstates(fock.hamiltonian(ls), 5)
    for n in range(5):
        state = fock.fuzzy_fock_state(n, vac, ls)
        assert abs(np.vdot(V[:, n], state.coeffs)) ** 2 == pytest.approx(1, abs=1e-10)


def test_eigenstates_degenerate_order_even_first():
    # two exactly degenerate levels: one even vector, one odd vector
    H = np.diag([1.0, 1.0, 2.0, 3.0])
    w, V = fock.eigenstates(H, 2)
    assert abs(V[0, 0]) == 1 and abs(V[1, 1]) == 1


@settings(max_examples=20, deadline=None)
@given(st.floats(0.01, 3.0))
def test_commutator_property(z):
    c = coefficients(DistributionSpec.lorentzian(z))
    ls = fock.fuzzy_ladder(24, c)
    block, eye = eye_block(fock.commutator(ls.a_fuzzy, ls.a_fuzzy_dag))
    assert np.max(np.abs(block - c.C * eye)) < 1e-12
