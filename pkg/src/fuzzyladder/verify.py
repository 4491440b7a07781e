"""Self-check suites run by ``fuzzyladder verify``.

Each check returns ``(passed, detail)``; the runner prints one line per check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import fock, states, symmetry
from .dispersion import GammaModel, excitation_energy
from .distributions import DistributionSpec
from .moments import (
    coefficients,
    commutation_function,
    compare_uniform_published,
    moments_analytic,
    moments_quadrature,
    prop1_check,
)

__all__ = ["Check", "CHECKS", "SUITES", "run_suite"]

ZETA_GRID = (0.1, 0.3, 0.5, 1.0, 2.0, 5.0)
UNIFORM_GRID = (0.1, 0.5, 0.9, 1.5, 3.0)


@dataclass(frozen=True)
class Check:
    number: int
    suite: str
    title: str
    run: Callable[[], tuple]


def _lorentzian_commutator():
    worst_a = worst_q = 0.0
    for z in ZETA_GRID:
        spec = DistributionSpec.lorentzian(z)
        exact = 1.0 / math.sqrt(1.0 + z * z)
        worst_a = max(worst_a, abs(commutation_function(moments_analytic(spec)).C - exact))
        worst_q = max(worst_q, abs(commutation_function(moments_quadrature(spec)).C - exact))
    return worst_a <= 1e-10 and worst_q <= 1e-6, f"analytic dev {worst_a:.2e}, quadrature dev {worst_q:.2e}"


def _residue_vs_quadrature():
    worst = 0.0
    shape_ok = True
    for z in ZETA_GRID:
        spec = DistributionSpec.lorentzian(z)
        a, q = moments_analytic(spec), moments_quadrature(spec)
        for x, y in ((a.I0, q.I0), (a.I1, q.I1)):
            worst = max(worst, abs(x.real - y.real), abs(x.imag - y.imag))
        rep = prop1_check(spec)
        poles = [p for p, _ in rep.poles]
        shape_ok &= (
            set(rep.alpha) <= {-2.0, -1.0}
            and rep.beta == (0.0, 0.0)
            and len(poles) == 1
            and poles[0] == complex(1.0, z)
            and rep.conditions_met
        )
    return worst <= 1e-6 and shape_ok, f"max component dev {worst:.2e}, report shape {'ok' if shape_ok else 'wrong'}"


def _uniform_moments():
    worst = 0.0
    flagged = []
    for z in UNIFORM_GRID:
        spec = DistributionSpec.uniform(z)
        a, q = moments_analytic(spec), moments_quadrature(spec)
        for x, y in ((a.I0, q.I0), (a.I1, q.I1)):
            worst = max(worst, abs(x - y))
        cmp = compare_uniform_published(z)
        if cmp["flagged"]:
            flagged.append(f"{z:g}:{cmp['definitional']:.6f}vs{cmp['published']:.6f}")
    detail = f"closed form vs quadrature {worst:.2e}"
    if flagged:
        detail += "; published C differs at " + ", ".join(flagged)
    return worst <= 1e-8, detail


def _spec_for(kind, zeta):
    if kind == "tabulated":
        # triangular density of half-width 2 zeta: same second moment scale as the others
        w = 2.0 * zeta
        x = np.linspace(-w, w, 201)
        f = (w - np.abs(x)) / (w * w)
        return DistributionSpec.tabulated(x, f)
    return DistributionSpec(kind, zeta)


def _matrix_commutator():
    worst = 0.0
    for kind in ("lorentzian", "uniform", "gaussian", "tabulated"):
        c = coefficients(_spec_for(kind, 0.5))
        ls = fock.fuzzy_ladder(64, c)
        comm = fock.interior(fock.commutator(ls.a_fuzzy, ls.a_fuzzy_dag), 1)
        worst = max(worst, float(np.max(np.abs(comm - c.C * np.eye(comm.shape[0])))))
    return worst <= 1e-8, f"max interior dev {worst:.2e} over four kinds"


def _fuzzy_vacuum():
    z = 0.3
    c = coefficients(DistributionSpec.lorentzian(z))
    vac = fock.fuzzy_vacuum(c, 64)
    overlap = abs(vac.coeffs[0]) ** 2
    target = 2.0 / math.sqrt(z * z + 4.0)
    ls = fock.fuzzy_ladder(64, c)
    resid = float(np.linalg.norm(ls.a_fuzzy @ vac.coeffs))
    closed = fock.vacuum_closed_form(c, 64)
    closed = closed / np.linalg.norm(closed)
    even = vac.coeffs[0::2]
    rel = float(np.max(np.abs(closed[0::2] - even) / np.maximum(np.abs(even), 1e-300)))
    odd_zero = bool(np.all(vac.coeffs[1::2] == 0))
    ok = abs(overlap - target) <= 1e-8 and resid < 1e-8 and rel <= 1e-12 and odd_zero
    return ok, (f"|<0|0f>|^2={overlap:.9f} (dev {abs(overlap - target):.1e}), |a vac|={resid:.1e}, "
                f"closed-form rel dev {rel:.1e}, odd zero {odd_zero}")


def _spectrum():
    c = coefficients(DistributionSpec.lorentzian(0.3))
    H = fock.hamiltonian(fock.fuzzy_ladder(96, c))
    w = fock.spectrum(H, 8)
    dev = float(np.max(np.abs(w - c.C * (np.arange(8) + 0.5))))
    spacing = float(np.max(np.abs(np.diff(w) - c.C)))
    return dev <= 1e-6 and spacing <= 1e-6, f"level dev {dev:.2e}, spacing dev {spacing:.2e}"


def _densities():
    c = coefficients(DistributionSpec.lorentzian(0.3))
    grid = states.Grid.linspace(-5.0, 5.0, 1001)
    ls = fock.fuzzy_ladder(64, c)
    vac = fock.fuzzy_vacuum(c, 64)
    norm_dev = parity_dev = 0.0
    dens = {}
    for n in (0, 1):
        d = states.position_density(fock.fuzzy_fock_state(n, vac, ls), grid)
        dens[n] = d
        norm_dev = max(norm_dev, abs(grid.integrate(d) - 1.0))
        parity_dev = max(parity_dev, float(np.max(np.abs(d - d[::-1]))))
    sharp = np.exp(-grid.points**2) / math.sqrt(math.pi)
    visible = float(np.max(np.abs(dens[0] - sharp)))
    ok = norm_dev <= 1e-6 and parity_dev <= 1e-10 and visible >= 1e-3
    return ok, f"norm dev {norm_dev:.1e}, parity dev {parity_dev:.1e}, sup |fuzzy-sharp| {visible:.2e}"


DISPLACEMENT_BORDER = 16


def _displacement():
    c = coefficients(DistributionSpec.lorentzian(0.3))
    ls = fock.fuzzy_ladder(64, c)
    worst = worst_z = 0.0
    for z in (1.0, 1j, 1 + 1j):
        D = states.fuzzy_displacement_matrix(ls, z)
        M = fock.interior(D.conj().T @ ls.a_fuzzy @ D - ls.a_fuzzy, DISPLACEMENT_BORDER)
        worst = max(worst, float(np.max(np.abs(M - c.C * z * np.eye(M.shape[0])))))
        arg = states.rescale_displacement(z, c)
        worst_z = max(worst_z, abs(arg.z_rescaled - (c.u * z - c.v * complex(z).conjugate())))
    return worst <= 1e-6 and worst_z <= 1e-12, f"covariance dev {worst:.2e}, rescaling dev {worst_z:.1e}"


def _symmetry():
    worst_parity = 0.0
    for kind in ("delta", "lorentzian", "uniform", "gaussian"):
        for z in (0.1, 0.5, 1.0, 2.0):
            spec = DistributionSpec.delta() if kind == "delta" else DistributionSpec(kind, z)
            H = fock.hamiltonian(fock.fuzzy_ladder(32, coefficients(spec)))
            v = symmetry.invariance_verdict(symmetry.parity_transform(32), H, 1e-12)
            worst_parity = max(worst_parity, v.deviation)
    tr = symmetry.time_reversal_transform(32)
    drive = fock.HamiltonianSpec(drive=0.5)
    H_l = fock.hamiltonian(fock.fuzzy_ladder(32, coefficients(DistributionSpec.lorentzian(0.3))), drive)
    H_u = fock.hamiltonian(fock.fuzzy_ladder(32, coefficients(DistributionSpec.uniform(0.5))), drive)
    broken = symmetry.invariance_verdict(tr, H_l, 1e-8)
    kept = symmetry.invariance_verdict(tr, H_u, 1e-8)
    ok = worst_parity < 1e-12 and broken.deviation > 1e-2 and kept.deviation < 1e-8
    return ok, (f"parity dev {worst_parity:.1e}; time reversal: lorentzian dev {broken.deviation:.3f}, "
                f"uniform dev {kept.deviation:.1e}")


def _dispersion():
    omegas = np.linspace(0.01, 10.0, 400)
    m1 = GammaModel(2.0, 1.0)
    m2 = GammaModel(2.0, 2.0)
    lin = max(abs(excitation_energy(m1, w) - w / math.sqrt(2.0)) for w in omegas)
    sat = max(abs(excitation_energy(m2, w) - w / math.sqrt(1.0 + w * w)) for w in omegas)
    outside = 0
    for mu in (1.25, 1.5, 1.75):
        m = GammaModel(2.0, mu)
        for w in omegas:
            e, e1, e2 = excitation_energy(m, w), excitation_energy(m1, w), excitation_energy(m2, w)
            if not (min(e1, e2) - 1e-12 <= e <= max(e1, e2) + 1e-12):
                outside += 1
    ok = lin <= 1e-12 and sat <= 1e-12 and outside == 0
    return ok, f"linear dev {lin:.1e}, saturating dev {sat:.1e}, points outside envelopes {outside}"


def _degenerate():
    c = coefficients(DistributionSpec.delta())
    exact = c.C == 1.0 and c.u == 1.0 and c.v == 0.0
    ls = fock.fuzzy_ladder(32, c)
    same = bool(np.array_equal(ls.a_fuzzy, ls.a_sharp))
    w = fock.spectrum(fock.hamiltonian(ls), 16)
    spec_dev = float(np.max(np.abs(w - (np.arange(16) + 0.5))))
    zdev = max(abs(states.rescale_displacement(z, c).z_rescaled - z) for z in (1, 1j, 0.3 - 0.7j))
    ok = exact and same and spec_dev < 1e-10 and zdev == 0.0
    return ok, f"exact coeffs {exact}, a_fuzzy == a {same}, spectrum dev {spec_dev:.1e}, z dev {zdev:.1e}"


CHECKS = (
    Check(1, "moments", "Lorentzian commutation function", _lorentzian_commutator),
    Check(2, "moments", "residue route vs quadrature", _residue_vs_quadrature),
    Check(3, "moments", "uniform moments", _uniform_moments),
    Check(4, "fock", "deformed commutator matrix identity", _matrix_commutator),
    Check(5, "fock", "fuzzy vacuum", _fuzzy_vacuum),
    Check(6, "fock", "fuzzy spectrum", _spectrum),
    Check(7, "states", "position densities", _densities),
    Check(8, "states", "displacement covariance", _displacement),
    Check(9, "symmetry", "symmetry verdicts", _symmetry),
    Check(10, "dispersion", "dispersion envelopes", _dispersion),
    Check(11, "degenerate", "delta limit", _degenerate),
)

SUITES = ("all",) + tuple(dict.fromkeys(c.suite for c in CHECKS))


def run_suite(suite: str = "all", echo=print) -> list:
    """Run the checks of ``suite``; returns ``[(check, passed, detail), ...]``."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    results = []
    for check in CHECKS:
        if suite != "all" and check.suite != suite:
            continue
        try:
            passed, detail = check.run()
        except Exception as exc:  # a crash is a failed check, not a crashed run
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((check, bool(passed), detail))
        if echo:
            echo(f"[{'PASS' if passed else 'FAIL'}] {check.number:2d} {check.title}: {detail}")
    return results
