import math

import numpy as np
import pytest

from fuzzyladder.dispersion import (
    GammaModel,
    ModeOccupation,
    commutation_at,
    constraint_report,
    dispersion_curve,
    excitation_energy,
    multimode_energy,
    zeta_of,
)
from fuzzyladder.errors import NonPositiveOmega

OMEGAS = np.linspace(0.01, 10, 300)


def test_zeta_of():
    assert zeta_of(GammaModel(1, 1), 3.7) == 0.5
    assert zeta_of(GammaModel(1, 2), 2.0) == 1.0
    with pytest.raises(NonPositiveOmega):
        zeta_of(GammaModel(1, 1), 0.0)


def test_model_validation():
    with pytest.raises(ValueError):
        GammaModel(0, 1)
    with pytest.raises(ValueError):
        GammaModel(1, 1, kind="gaussian")
    assert GammaModel.parse("2,1.5,3") == GammaModel(2, 1.5, 3)
    with pytest.raises(ValueError):
        GammaModel.parse("2")


def test_linear_and_saturating():
    m1 = GammaModel(1, 1)
    for w in (0.1, 1, 7):
        assert excitation_energy(m1, w) == pytest.approx(w / math.sqrt(1.25), rel=1e-14)
    const = 0.3
    m2 = GammaModel(2 * math.sqrt(const), 2)
    for w in OMEGAS:
        assert excitation_energy(m2, w) == pytest.approx(w / math.sqrt(1 + const * w * w), abs=1e-12)
    assert excitation_energy(m2, 1e-6) / 1e-6 == pytest.approx(1, abs=1e-12)


def test_envelope_containment():
    lo_hi = [(excitation_energy(GammaModel(2, 1), w), excitation_energy(GammaModel(2, 2), w)) for w in OMEGAS]
    for mu in np.linspace(1, 2, 9):
        m = GammaModel(2, mu)
        for w, (e1, e2) in zip(OMEGAS, lo_hi):
            e = excitation_energy(m, w)
            assert min(e1, e2) - 1e-12 <= e <= max(e1, e2) + 1e-12


def test_sub_linear_for_lorentzian_only():
    m = GammaModel(0.7, 1.5)
    assert all(excitation_energy(m, w) <= w for w in OMEGAS)
    # the uniform kind has C > 1 for zeta < 1
    assert excitation_energy(GammaModel(0.7, 1.5, kind="uniform"), 1.0) > 1.0


def test_limit_recovery():
    for g in (1e-3, 1e-5):
        m = GammaModel(g, 1.5)
        assert max(abs(excitation_energy(m, w) / w - 1) for w in OMEGAS) < g


def test_constraint_report():
    r1 = constraint_report(GammaModel(1, 1), OMEGAS)
    assert not r1.finite_zero_limit and r1.notes
    assert r1.zero_limit_energy < 1e-7
    r2 = constraint_report(GammaModel(0.01, 2), OMEGAS)
    assert r2.monotonic_on_grid and r2.finite_zero_limit and r2.large_omega_exponent_ok
    assert not constraint_report(GammaModel(1, 3), OMEGAS).large_omega_exponent_ok
    # Gamma = 5 omega^2 against omega sqrt(omega^2 - 1) fails wherever omega > 1
    r = constraint_report(GammaModel(5, 2), OMEGAS)
    assert r.violations and min(r.violations) > 1 and not r.ok
    with pytest.raises(ValueError):
        constraint_report(GammaModel(1, 1), [2.0, 1.0])


def test_multimode_energy():
    m = GammaModel(0.6, 1)
    assert multimode_energy([], m) == 0
    assert multimode_energy([ModeOccupation(1.0, 0)], m) == pytest.approx(0.478913, abs=1e-6)
    a = [ModeOccupation(1.0, 2), ModeOccupation(2.5, 1)]
    b = [ModeOccupation(0.3, 4)]
    assert multimode_energy(a + b, m) == pytest.approx(multimode_energy(a, m) + multimode_energy(b, m))
    with pytest.raises(NonPositiveOmega):
        ModeOccupation(-1.0)


def test_curve_ordering_and_parallel():
    m = GammaModel(1.3, 1.7)
    grid = [3.0, 0.5, 2.0, 1.0]
    serial = dispersion_curve(m, grid)
    assert [w for w, _ in serial] == sorted(grid)
    assert dispersion_curve(m, grid, parallel=True) == serial


def test_uniform_commutation_is_definitional():
    m = GammaModel(4.0, 1.0, kind="uniform")  # zeta = 2
    assert commutation_at(m, 1.0) == pytest.approx(2 / 3, abs=1e-14)
